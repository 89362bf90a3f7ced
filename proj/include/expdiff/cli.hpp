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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "expdiff/scalar.hpp"
#include "expdiff/solver.hpp"
#include "expdiff/verifier.hpp"

namespace expdiff::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;  // also: sweep disagreement
inline constexpr int kExitBadInput = 2;

enum class Command { Solve, Verify, Oracle, Sweep };
enum class OutputFormat { Json, Text };

struct CliConfig {
  Command command = Command::Solve;
  std::optional<std::string> alpha;        // --alpha
  std::optional<std::string> matrix_path;  // --matrix
  std::optional<Field> field;              // --field
  double tol = kDefaultTol;
  std::uint64_t seed = 0;
  std::size_t samples = 1000;
  OutputFormat output = OutputFormat::Text;

  // verify
  std::optional<std::string> candidate_path;  // --candidate
  std::optional<std::string> affine;          // --affine "w1,w2"
  std::string constant = "1";                 // --constant
  std::optional<std::string> exponential;     // --exponential "a1,a2"
  bool zero = false;                          // --zero

  // sweep
  std::size_t sweep_dim = 2;
  int sweep_range = 2;
  bool serial = false;
  bool inject_bug = false;
};

/// Runs one command line (without argv[0]). Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Human-readable rendering, e.g. "two solutions: f(x)=1+2x, f(x)=1-2x".
std::string describe(const SolutionSet& s);
std::string describe(const VerificationReport& r);
/// "1+2x" or "1+x1-(1/2)x2".
std::string affine_text(const Vector& w);

}  // namespace expdiff::cli
