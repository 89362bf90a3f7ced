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

#include "expdiff/cli.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "expdiff/json_io.hpp"
#include "expdiff/oracle.hpp"

namespace expdiff::cli {

namespace {

std::string join_vector(const Vector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += format_scalar(v[i]);
  }
  return s + ")";
}

// Signed coefficient text in front of a variable: "+", "-2", "+(1/2)", "+2i",
// "-(2-1i)".
std::string coefficient_text(const Scalar& c) {
  if (c.is_exact()) {
    const auto& g = c.exact();
    auto magnitude_text = [](const mpq_class& q) -> std::string {
      if (q == 1) return "";
      if (q.get_den() == 1) return q.get_str();
      return "(" + q.get_str() + ")";
    };
    if (g.is_real()) return (sgn(g.re) < 0 ? "-" : "+") + magnitude_text(abs(g.re));
    if (sgn(g.re) == 0) {
      const mpq_class m = abs(g.im);
      return (sgn(g.im) < 0 ? "-" : "+") + (m == 1 ? std::string() : magnitude_text(m)) + "i";
    }
    // Pull the sign out when the leading part is negative: "-(2-1i)".
    return sgn(g.re) < 0 ? "-(" + format_scalar(-c) + ")" : "+(" + format_scalar(c) + ")";
  }
  const auto z = c.to_complex();
  if (z.imag() == 0.0) {
    return (z.real() < 0 ? "-" : "+") + format_scalar(Scalar::approx(std::abs(z.real())));
  }
  return z.real() < 0 ? "-(" + format_scalar(-c) + ")" : "+(" + format_scalar(c) + ")";
}

std::vector<Scalar> parse_list(const std::string& text) {
  std::vector<Scalar> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_scalar(item));
  if (out.empty()) throw ParseError("empty coefficient list");
  return out;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("'" + path + "': " + e.what());
  }
}

BilinearForm load_form(const CliConfig& cfg) {
  const int sources = (cfg.alpha ? 1 : 0) + (cfg.matrix_path ? 1 : 0);
  if (sources != 1) throw ParseError("exactly one of --alpha or --matrix is required");
  if (cfg.alpha) return BilinearForm(cfg.field.value_or(Field::Real), 1, {parse_scalar(*cfg.alpha)});
  return form_from_json(read_json_file(*cfg.matrix_path), cfg.field);
}

Candidate load_candidate(const CliConfig& cfg, std::size_t dim) {
  const int sources = (cfg.candidate_path ? 1 : 0) + (cfg.affine ? 1 : 0) + (cfg.exponential ? 1 : 0) +
                      (cfg.zero ? 1 : 0);
  if (sources != 1) {
    throw ParseError("exactly one of --candidate, --affine, --exponential or --zero is required");
  }
  if (cfg.candidate_path) return candidate_from_json(read_json_file(*cfg.candidate_path));
  if (cfg.zero) return ZeroCandidate{};
  if (cfg.exponential) return ExponentialCandidate{Vector(parse_list(*cfg.exponential))};
  Vector w(parse_list(*cfg.affine));
  if (w.size() != dim) throw DimensionMismatch("--affine has " + std::to_string(w.size()) + " coefficients");
  return AffineCandidate{std::move(w), parse_scalar(cfg.constant)};
}

int run_solve(const CliConfig& cfg, std::ostream& out) {
  const BilinearForm m = load_form(cfg);
  const SolutionSet s = cfg.alpha ? solve_scalar(m.at(0, 0), m.field(), cfg.tol) : solve_matrix(m, cfg.tol);
  if (cfg.output == OutputFormat::Json) out << solution_set_to_json(s).dump() << '\n';
  else out << describe(s) << '\n';
  return kExitOk;
}

int run_verify(const CliConfig& cfg, std::ostream& out) {
  const BilinearForm m = load_form(cfg);
  const Candidate f = load_candidate(cfg, m.dim());
  const VerificationReport r = verify(f, m, cfg.samples, cfg.seed, cfg.tol);
  if (cfg.output == OutputFormat::Json) out << report_to_json(r).dump() << '\n';
  else out << describe(r) << '\n';
  return r.passed ? kExitOk : kExitVerificationFailed;
}

int run_oracle(const CliConfig& cfg, std::ostream& out) {
  const BilinearForm m = load_form(cfg);
  const oracle::OracleResult r = oracle::run_oracle(m, cfg.tol);
  const SolutionSet s = oracle::to_solution_set(r, cfg.tol);
  if (cfg.output == OutputFormat::Json) {
    out << solution_set_to_json(s).dump() << '\n';
  } else {
    const bool agree = oracle::agrees_with(r, solve_matrix(m, cfg.tol), cfg.tol);
    out << "oracle: " << describe(s) << '\n'
        << "polynomial solutions found: " << r.assignments.size() << '\n'
        << (agree ? "agrees with solver" : "DISAGREES with solver") << '\n';
  }
  return kExitOk;
}

int run_sweep(const CliConfig& cfg, std::ostream& out) {
  if (cfg.sweep_dim < 1 || cfg.sweep_dim > oracle::kMaxDim) {
    throw ParseError("--dim must be between 1 and " + std::to_string(oracle::kMaxDim));
  }
  if (cfg.sweep_range < 0) throw ParseError("--range must be non-negative");
  const auto corpus = oracle::symmetric_corpus(cfg.field.value_or(Field::Real), cfg.sweep_dim, cfg.sweep_range);
  oracle::SweepOptions opts;
  opts.parallel = !cfg.serial;
  opts.inject_bug = cfg.inject_bug;
  opts.tol = cfg.tol;
  const oracle::SweepReport rep = oracle::sweep(corpus, opts);

  if (cfg.output == OutputFormat::Json) {
    Json dis = Json::array();
    for (std::size_t k : rep.disagreements) dis.push_back(form_to_json(corpus[k]));
    out << Json{{"total", rep.total}, {"agreed", rep.agreed}, {"disagreements", dis}}.dump() << '\n';
  } else {
    out << rep.agreed << "/" << rep.total << " agree\n";
    for (std::size_t k : rep.disagreements) out << "  disagreement: " << form_to_json(corpus[k]).dump() << '\n';
  }
  return rep.all_agree() ? kExitOk : kExitVerificationFailed;
}

}  // namespace

std::string affine_text(const Vector& w) {
  std::string s = "1";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i].is_zero()) continue;
    s += coefficient_text(w[i]);
    s += w.size() == 1 ? "x" : "x" + std::to_string(i + 1);
  }
  return s;
}

std::string describe(const SolutionSet& s) {
  if (const auto* two = std::get_if<TwoAffine>(&s.outcome)) {
    std::string text =
        "two solutions: f(x)=" + affine_text(two->plus.w) + ", f(x)=" + affine_text(two->minus.w);
    if (two->params) {
      text += "\n  w = a*M*z0 with a = " + format_scalar(two->params->a) + ", z0 = " + join_vector(two->params->z0);
    }
    return text;
  }
  if (std::holds_alternative<ExponentialFamily>(s.outcome)) {
    return "exponential family: f=0 or f(x)=exp(a·x)";
  }
  const auto& ns = std::get<NoSolution>(s.outcome);
  switch (ns.reason) {
    case NoSolutionReason::NotRankOne:
      return "no solution (rank exceeds one)";
    case NoSolutionReason::NegativeDiagonal:
      return "no solution (negative diagonal: phi(z0,z0) < 0 at z0 = " +
             (ns.witness_vector ? join_vector(*ns.witness_vector) : std::string("?")) + ")";
    case NoSolutionReason::NotSymmetric:
      return "no solution (form is not symmetric: M[" + std::to_string(ns.witness_pair->first) + "][" +
             std::to_string(ns.witness_pair->second) + "] != M[" + std::to_string(ns.witness_pair->second) +
             "][" + std::to_string(ns.witness_pair->first) + "])";
    case NoSolutionReason::Unsatisfiable:
      return "no solution (constraint system unsatisfiable)";
  }
  return "no solution";
}

std::string describe(const VerificationReport& r) {
  std::ostringstream os;
  os << (r.passed ? "passed" : "FAILED") << ": max residual " << r.max_residual << " over " << r.samples
     << " samples (seed " << r.seed << ", tol " << r.tol << (r.exact ? ", exact" : ", floating") << ")";
  if (r.failing_pair) {
    os << "\n  failing pair: x = " << join_vector(r.failing_pair->x) << ", y = " << join_vector(r.failing_pair->y)
       << ", residual = " << format_scalar(r.failing_pair->residual);
  }
  return os.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CliConfig cfg;
  CLI::App app{"Solver and verifier for f(x+y) = f(x)f(y) - phi(x,y)", "expdiff"};
  app.require_subcommand(1);

  std::string field_text;
  std::string output_text = "text";
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--field", field_text, "real|complex")->check(CLI::IsMember({"real", "complex"}));
    sub->add_option("--tol", cfg.tol, "relative tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--seed", cfg.seed, "sampling seed");
    sub->add_option("--samples", cfg.samples, "sample pairs")->check(CLI::Range(std::size_t{1}, std::size_t{100000000}));
    sub->add_option("--output", output_text, "json|text")->check(CLI::IsMember({"json", "text"}));
  };
  auto add_input = [&](CLI::App* sub) {
    sub->add_option("--alpha", cfg.alpha, "scalar alpha, for phi(x,y) = alpha*x*y");
    sub->add_option("--matrix", cfg.matrix_path, "JSON file holding the form");
  };

  CLI::App* solve = app.add_subcommand("solve", "solve for all f");
  add_input(solve);
  add_common(solve);

  CLI::App* verify_cmd = app.add_subcommand("verify", "check a candidate f against a form");
  add_input(verify_cmd);
  add_common(verify_cmd);
  verify_cmd->add_option("--candidate", cfg.candidate_path, "JSON candidate file");
  verify_cmd->add_option("--affine", cfg.affine, "comma-separated w for f(x) = w.x + c");
  verify_cmd->add_option("--constant", cfg.constant, "constant c of an affine candidate");
  verify_cmd->add_option("--exponential", cfg.exponential, "comma-separated a for f(x) = exp(a.x)");
  verify_cmd->add_flag("--zero", cfg.zero, "f == 0");

  CLI::App* oracle_cmd = app.add_subcommand("oracle", "brute-force polynomial oracle (n <= 3)");
  add_input(oracle_cmd);
  add_common(oracle_cmd);

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "solver/oracle agreement over all small symmetric forms");
  add_common(sweep_cmd);
  sweep_cmd->add_option("--dim", cfg.sweep_dim, "matrix dimension (1..3)");
  sweep_cmd->add_option("--range", cfg.sweep_range, "entries range over [-range, range]");
  sweep_cmd->add_flag("--serial", cfg.serial, "use the serial reference loop");
  sweep_cmd->add_flag("--inject-bug", cfg.inject_bug, "test hook: corrupt solver output");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  }

  try {
    if (!field_text.empty()) cfg.field = parse_field(field_text);
    cfg.output = output_text == "json" ? OutputFormat::Json : OutputFormat::Text;
    if (solve->parsed()) return run_solve(cfg, out);
    if (verify_cmd->parsed()) return run_verify(cfg, out);
    if (oracle_cmd->parsed()) return run_oracle(cfg, out);
    if (sweep_cmd->parsed()) return run_sweep(cfg, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  }
  return kExitBadInput;
}

}  // namespace expdiff::cli
