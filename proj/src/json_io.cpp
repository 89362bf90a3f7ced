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

#include "expdiff/json_io.hpp"

#include <string>

namespace expdiff {

namespace {

[[noreturn]] void malformed(const std::string& what) { throw ParseError("malformed JSON: " + what); }

const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) malformed(std::string("missing \"") + key + "\"");
  return j.at(key);
}

std::size_t index_from_json(const Json& j) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
    malformed("expected a non-negative integer");
  }
  return j.get<std::size_t>();
}

}  // namespace

Json scalar_to_json(const Scalar& s) {
  if (s.is_exact()) return format_scalar(s);
  const auto z = s.to_complex();
  if (z.imag() == 0.0) return z.real();
  return Json{{"re", z.real()}, {"im", z.imag()}};
}

Scalar scalar_from_json(const Json& j) {
  if (j.is_string()) return parse_scalar(j.get<std::string>());
  if (j.is_number_integer()) return Scalar(mpq_class(mpz_class(j.dump(), 10)));
  if (j.is_number_float()) return Scalar::approx(j.get<double>());
  if (j.is_object()) {
    const Json& re = member(j, "re");
    const Json& im = j.contains("im") ? j.at("im") : Json(0.0);
    if (!re.is_number() || !im.is_number()) malformed("complex parts must be numbers");
    return Scalar::approx(re.get<double>(), im.get<double>());
  }
  malformed("expected a scalar, got " + j.dump());
}

Json vector_to_json(const Vector& v) {
  Json out = Json::array();
  for (const auto& c : v) out.push_back(scalar_to_json(c));
  return out;
}

Vector vector_from_json(const Json& j) {
  if (!j.is_array()) malformed("expected an array of scalars");
  Vector v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v[i] = scalar_from_json(j[i]);
  return v;
}

Json form_to_json(const BilinearForm& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.dim(); ++j) row.push_back(scalar_to_json(m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return Json{{"field", std::string(to_string(m.field()))}, {"dim", m.dim()}, {"entries", rows}};
}

BilinearForm form_from_json(const Json& j, std::optional<Field> field_override) {
  Field field = Field::Real;
  if (field_override) {
    field = *field_override;
  } else if (j.contains("field")) {
    if (!j.at("field").is_string()) malformed("\"field\" must be a string");
    field = parse_field(j.at("field").get<std::string>());
  }
  const Json& entries = member(j, "entries");
  if (!entries.is_array()) malformed("\"entries\" must be an array of rows");
  std::vector<std::vector<Scalar>> rows;
  for (const auto& row : entries) {
    if (!row.is_array()) malformed("each row must be an array");
    std::vector<Scalar> r;
    for (const auto& e : row) r.push_back(scalar_from_json(e));
    rows.push_back(std::move(r));
  }
  if (j.contains("dim") && index_from_json(j.at("dim")) != rows.size()) {
    throw DimensionMismatch("\"dim\" does not match the number of rows");
  }
  return BilinearForm::from_rows(field, rows);
}

// ---------------------------------------------------------------------------

Json solution_set_to_json(const SolutionSet& s) {
  Json out{{"field", std::string(to_string(s.field))}, {"dim", s.dim}};
  if (const auto* two = std::get_if<TwoAffine>(&s.outcome)) {
    out["outcome"] = "two_affine";
    out["plus"] = vector_to_json(two->plus.w);
    out["minus"] = vector_to_json(two->minus.w);
    if (two->params) {
      out["params"] = Json{{"a", scalar_to_json(two->params->a)}, {"z0", vector_to_json(two->params->z0)}};
    }
  } else if (std::holds_alternative<ExponentialFamily>(s.outcome)) {
    out["outcome"] = "exponential_family";
    out["family"] = "f = 0 or f(x) = exp(a.x)";
  } else {
    const auto& ns = std::get<NoSolution>(s.outcome);
    out["outcome"] = "no_solution";
    out["reason"] = std::string(to_string(ns.reason));
    if (ns.witness_vector) {
      out["witness"] = vector_to_json(*ns.witness_vector);
    } else if (ns.witness_pair) {
      out["witness"] = Json::array({ns.witness_pair->first, ns.witness_pair->second});
    } else {
      out["witness"] = nullptr;
    }
    if (ns.residual) out["residual"] = *ns.residual;
  }
  if (s.from_oracle) out["oracle"] = true;
  return out;
}

SolutionSet solution_set_from_json(const Json& j) {
  SolutionSet s;
  s.field = parse_field(member(j, "field").get<std::string>());
  s.dim = index_from_json(member(j, "dim"));
  s.from_oracle = j.contains("oracle") && j.at("oracle").is_boolean() && j.at("oracle").get<bool>();
  const Json& outcome = member(j, "outcome");
  if (!outcome.is_string()) malformed("\"outcome\" must be a string");
  const std::string kind = outcome.get<std::string>();
  if (kind == "two_affine") {
    TwoAffine two{AffineSolution{vector_from_json(member(j, "plus"))},
                  AffineSolution{vector_from_json(member(j, "minus"))}, std::nullopt};
    if (j.contains("params")) {
      const Json& p = j.at("params");
      two.params = ScaleParameters{scalar_from_json(member(p, "a")), vector_from_json(member(p, "z0"))};
    }
    s.outcome = std::move(two);
  } else if (kind == "exponential_family") {
    s.outcome = ExponentialFamily{s.dim};
  } else if (kind == "no_solution") {
    NoSolution ns{parse_no_solution_reason(member(j, "reason").get<std::string>()), std::nullopt, std::nullopt,
                  std::nullopt};
    if (j.contains("witness") && !j.at("witness").is_null()) {
      const Json& w = j.at("witness");
      if (ns.reason == NoSolutionReason::NotSymmetric) {
        if (!w.is_array() || w.size() != 2) malformed("asymmetry witness must be [i, j]");
        ns.witness_pair = std::make_pair(index_from_json(w[0]), index_from_json(w[1]));
      } else {
        ns.witness_vector = vector_from_json(w);
      }
    }
    if (j.contains("residual")) {
      if (!j.at("residual").is_number()) malformed("\"residual\" must be a number");
      ns.residual = j.at("residual").get<double>();
    }
    s.outcome = std::move(ns);
  } else {
    malformed("unknown outcome '" + kind + "'");
  }
  return s;
}

// ---------------------------------------------------------------------------

Json report_to_json(const VerificationReport& r) {
  Json out{{"passed", r.passed}, {"max_residual", r.max_residual}, {"samples", r.samples},
           {"seed", r.seed},     {"tol", r.tol},                   {"exact", r.exact}};
  if (r.failing_pair) {
    out["failing_pair"] = Json{{"x", vector_to_json(r.failing_pair->x)},
                               {"y", vector_to_json(r.failing_pair->y)},
                               {"residual", scalar_to_json(r.failing_pair->residual)}};
  } else {
    out["failing_pair"] = nullptr;
  }
  return out;
}

VerificationReport report_from_json(const Json& j) {
  VerificationReport r;
  try {
    r.passed = member(j, "passed").get<bool>();
    r.max_residual = member(j, "max_residual").get<double>();
    r.samples = index_from_json(member(j, "samples"));
    r.seed = member(j, "seed").get<std::uint64_t>();
    r.tol = member(j, "tol").get<double>();
    r.exact = j.contains("exact") && j.at("exact").get<bool>();
  } catch (const nlohmann::json::exception& e) {
    malformed(e.what());
  }
  if (j.contains("failing_pair") && !j.at("failing_pair").is_null()) {
    const Json& p = j.at("failing_pair");
    r.failing_pair = FailingPair{vector_from_json(member(p, "x")), vector_from_json(member(p, "y")),
                                 scalar_from_json(member(p, "residual"))};
  }
  return r;
}

// ---------------------------------------------------------------------------

Json candidate_to_json(const Candidate& c) {
  return std::visit(
      [](const auto& v) -> Json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, AffineCandidate>) {
          return Json{{"kind", "affine"}, {"w", vector_to_json(v.w)}, {"c", scalar_to_json(v.c)}};
        } else if constexpr (std::is_same_v<T, ExponentialCandidate>) {
          return Json{{"kind", "exponential"}, {"a", vector_to_json(v.a)}};
        } else if constexpr (std::is_same_v<T, ZeroCandidate>) {
          return Json{{"kind", "zero"}};
        } else {
          Json pts = Json::array();
          for (const auto& [x, f] : v.points()) pts.push_back(Json{{"x", vector_to_json(x)}, {"f", scalar_to_json(f)}});
          return Json{{"kind", "tabulated"}, {"dim", v.dim()}, {"points", pts}};
        }
      },
      c);
}

Candidate candidate_from_json(const Json& j) {
  const Json& kind_j = member(j, "kind");
  if (!kind_j.is_string()) malformed("\"kind\" must be a string");
  const std::string kind = kind_j.get<std::string>();
  if (kind == "affine") {
    Scalar c = j.contains("c") ? scalar_from_json(j.at("c")) : Scalar(1);
    return AffineCandidate{vector_from_json(member(j, "w")), std::move(c)};
  }
  if (kind == "exponential") return ExponentialCandidate{vector_from_json(member(j, "a"))};
  if (kind == "zero") return ZeroCandidate{};
  if (kind == "tabulated") {
    TabulatedCandidate t(index_from_json(member(j, "dim")));
    const Json& pts = member(j, "points");
    if (!pts.is_array()) malformed("\"points\" must be an array");
    for (const auto& p : pts) t.set(vector_from_json(member(p, "x")), scalar_from_json(member(p, "f")));
    return t;
  }
  malformed("unknown candidate kind '" + kind + "'");
}

}  // namespace expdiff
