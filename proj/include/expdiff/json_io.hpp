// Copyright 2026 The expdiff Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// JSON forms of the public types.
//
//   scalar      exact: "3", "-1/4", "3-4i", "1/2+3/4i"
//               approx: 0.5 or {"re": 0.5, "im": -1.0}
//   form        {"field": "real"|"complex", "dim": n, "entries": [[...], ...]}
//   solutions   {"outcome": "two_affine"|"no_solution"|"exponential_family", ...}
//   candidate   {"kind": "affine", "w": [...], "c": ...}
//               {"kind": "exponential", "a": [...]}
//               {"kind": "zero"}
//               {"kind": "tabulated", "dim": n, "points": [{"x": [...], "f": ...}]}
//
// All from_json functions throw ParseError on malformed input.

#pragma once

#include <json.hpp>

#include "expdiff/form.hpp"
#include "expdiff/solver.hpp"
#include "expdiff/verifier.hpp"

namespace expdiff {

using Json = nlohmann::json;

Json scalar_to_json(const Scalar& s);
Scalar scalar_from_json(const Json& j);

Json vector_to_json(const Vector& v);
Vector vector_from_json(const Json& j);

Json form_to_json(const BilinearForm& m);
/// `field_override`, when set, replaces the "field" member.
BilinearForm form_from_json(const Json& j, std::optional<Field> field_override = std::nullopt);

Json solution_set_to_json(const SolutionSet& s);
SolutionSet solution_set_from_json(const Json& j);

Json report_to_json(const VerificationReport& r);
VerificationReport report_from_json(const Json& j);

Json candidate_to_json(const Candidate& c);
Candidate candidate_from_json(const Json& j);

}  // namespace expdiff
