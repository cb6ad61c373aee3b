#include "urep/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace urep::cli {

namespace {

struct KindParams {
  std::vector<std::string> vectors;
  std::vector<std::string> scalars;
};

const std::map<std::string, KindParams>& set_params_by_kind() {
  static const std::map<std::string, KindParams> table = {
      {"box", {{"lower", "upper"}, {}}},
      {"ball", {{"center"}, {"radius"}}},
      {"halfspace", {{"normal", "window_lower", "window_upper"}, {"offset"}}},
      {"sphere", {{"center"}, {"radius"}}},
      {"annulus", {{"center"}, {"inner_radius", "outer_radius"}}},
      {"box_minus_ball", {{"lower", "upper", "center"}, {"radius"}}},
      {"two_ball_union", {{"center_a", "center_b"}, {"radius_a", "radius_b"}}},
  };
  return table;
}

const std::map<std::string, std::vector<std::string>>& bifunction_params_by_kind() {
  static const std::map<std::string, std::vector<std::string>> table = {
      {"affine_vi", {"A", "b"}},
      {"quadratic", {"P", "Q", "q"}},
      {"zero", {}},
  };
  return table;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& item : items) {
    if (!out.empty()) out += ", ";
    out += item;
  }
  return out;
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_vector(const std::vector<double>& xs, std::size_t row = 0) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i > 0) out += (row > 0 && i % row == 0) ? "; " : " ";
    out += format_double(xs[i]);
  }
  return out;
}

Point to_point(const std::vector<double>& xs) {
  return Eigen::Map<const Point>(xs.data(), static_cast<Eigen::Index>(xs.size()));
}

Matrix to_matrix(const std::vector<double>& xs, Eigen::Index n) {
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = xs[static_cast<std::size_t>(i * n + j)];
  }
  return m;
}

class LineParser {
 public:
  LineParser(const std::string& source, std::size_t line) : source_(source), line_(line) {}

  [[noreturn]] void fail(const std::string& message) const {
    std::ostringstream os;
    os << source_ << ":" << line_ << ": " << message;
    throw ParseError(os.str());
  }

  double number(const std::string& key, const std::string& token) const {
    const char* begin = token.c_str();
    char* end = nullptr;
    const double value = std::strtod(begin, &end);
    if (token.empty() || end != begin + token.size() || std::isnan(value)) {
      fail("field " + key + ": '" + token + "' is not a number");
    }
    return value;
  }

  std::vector<double> numbers(const std::string& key, const std::string& value) const {
    std::string spaced = value;
    std::replace(spaced.begin(), spaced.end(), ';', ' ');
    std::replace(spaced.begin(), spaced.end(), ',', ' ');
    std::istringstream in(spaced);
    std::vector<double> out;
    std::string token;
    while (in >> token) out.push_back(number(key, token));
    if (out.empty()) fail("field " + key + ": expected at least one number");
    return out;
  }

  std::uint64_t integer(const std::string& key, const std::string& token) const {
    if (token.empty() || token.find_first_not_of("0123456789") != std::string::npos) {
      fail("field " + key + ": '" + token + "' is not a nonnegative integer");
    }
    try {
      return std::stoull(token);
    } catch (const std::exception&) {
      fail("field " + key + ": '" + token + "' is out of range");
    }
  }

  bool boolean(const std::string& key, const std::string& token) const {
    if (token == "true") return true;
    if (token == "false") return false;
    fail("field " + key + ": expected true or false, got '" + token + "'");
  }

 private:
  const std::string& source_;
  std::size_t line_;
};

ConstraintSet build_set(const RunConfig& rc) {
  const ParamMap& s = rc.set_params;
  auto vec = [&](const char* name) { return to_point(s.at(name)); };
  auto scalar = [&](const char* name) { return s.at(name).front(); };
  const auto kind = set_kind_from_string(rc.set_kind);
  if (!kind) throw InvalidArgument("unknown set kind " + rc.set_kind);
  switch (*kind) {
    case SetKind::Box:
      return ConstraintSet::box(vec("lower"), vec("upper"));
    case SetKind::Ball:
      return ConstraintSet::ball(vec("center"), scalar("radius"));
    case SetKind::Halfspace:
      return ConstraintSet::halfspace(vec("normal"), scalar("offset"),
                                      {vec("window_lower"), vec("window_upper")});
    case SetKind::Sphere:
      return ConstraintSet::sphere(vec("center"), scalar("radius"));
    case SetKind::Annulus:
      return ConstraintSet::annulus(vec("center"), scalar("inner_radius"), scalar("outer_radius"));
    case SetKind::BoxMinusBall:
      return ConstraintSet::box_minus_ball(vec("lower"), vec("upper"), vec("center"),
                                           scalar("radius"));
    case SetKind::TwoBallUnion:
      return ConstraintSet::two_ball_union(vec("center_a"), scalar("radius_a"), vec("center_b"),
                                           scalar("radius_b"));
  }
  throw InvalidArgument("unknown set kind " + rc.set_kind);
}

Bifunction build_bifunction(const RunConfig& rc, Eigen::Index n) {
  const ParamMap& b = rc.bifunction_params;
  if (rc.bifunction_kind == "affine_vi") {
    return affine_vi_bifunction(to_matrix(b.at("A"), n), to_point(b.at("b")));
  }
  if (rc.bifunction_kind == "quadratic") {
    return quadratic_bifunction(to_matrix(b.at("P"), n), to_matrix(b.at("Q"), n),
                                to_point(b.at("q")));
  }
  if (rc.bifunction_kind == "zero") return zero_bifunction(n);
  throw InvalidArgument("unknown bifunction kind " + rc.bifunction_kind);
}

// Checks kind names, parameter presence and sizes; returns the set dimension
// when it can be determined.
std::optional<std::size_t> check_structure(const RunConfig& rc, std::vector<std::string>& issues) {
  std::optional<std::size_t> dim;

  const auto& set_table = set_params_by_kind();
  const auto set_it = set_table.find(rc.set_kind);
  if (rc.set_kind.empty()) {
    issues.push_back("problem.set.kind: missing");
  } else if (set_it == set_table.end()) {
    std::vector<std::string> allowed;
    for (const auto& [name, _] : set_table) allowed.push_back(name);
    issues.push_back("problem.set.kind: unknown kind '" + rc.set_kind +
                     "' (allowed: " + join(allowed) + ")");
  } else {
    const KindParams& kp = set_it->second;
    std::set<std::string> known(kp.vectors.begin(), kp.vectors.end());
    known.insert(kp.scalars.begin(), kp.scalars.end());
    for (const auto& [name, _] : rc.set_params) {
      if (!known.count(name)) {
        issues.push_back("problem.set." + name + ": not a parameter of set kind " + rc.set_kind);
      }
    }
    for (const auto& name : kp.vectors) {
      auto it = rc.set_params.find(name);
      if (it == rc.set_params.end()) {
        issues.push_back("problem.set." + name + ": missing");
      } else if (!dim) {
        dim = it->second.size();
      } else if (it->second.size() != *dim) {
        issues.push_back("problem.set." + name + ": expected " + std::to_string(*dim) + " entries");
      }
    }
    for (const auto& name : kp.scalars) {
      auto it = rc.set_params.find(name);
      if (it == rc.set_params.end()) {
        issues.push_back("problem.set." + name + ": missing");
      } else if (it->second.size() != 1) {
        issues.push_back("problem.set." + name + ": expected a single number");
      }
    }
  }

  const auto& bif_table = bifunction_params_by_kind();
  const auto bif_it = bif_table.find(rc.bifunction_kind);
  if (rc.bifunction_kind.empty()) {
    issues.push_back("problem.bifunction.kind: missing");
  } else if (bif_it == bif_table.end()) {
    issues.push_back("problem.bifunction.kind: unknown kind '" + rc.bifunction_kind +
                     "' (allowed: " + join(kBifunctionKinds) + ")");
  } else {
    const auto& names = bif_it->second;
    for (const auto& [name, _] : rc.bifunction_params) {
      if (std::find(names.begin(), names.end(), name) == names.end()) {
        issues.push_back("problem.bifunction." + name + ": not a parameter of bifunction kind " +
                         rc.bifunction_kind);
      }
    }
    for (const auto& name : names) {
      auto it = rc.bifunction_params.find(name);
      if (it == rc.bifunction_params.end()) {
        issues.push_back("problem.bifunction." + name + ": missing");
        continue;
      }
      if (!dim) continue;
      const bool is_matrix = std::isupper(static_cast<unsigned char>(name[0]));
      const std::size_t expected = is_matrix ? *dim * *dim : *dim;
      if (it->second.size() != expected) {
        issues.push_back("problem.bifunction." + name + ": expected " + std::to_string(expected) +
                         " entries");
      }
    }
  }

  if (rc.start.empty()) {
    issues.push_back("problem.start: missing");
  } else if (dim && rc.start.size() != *dim) {
    issues.push_back("problem.start: expected " + std::to_string(*dim) + " entries");
  }
  return dim;
}

void validate(const RunConfig& rc) {
  std::vector<std::string> issues;
  const auto dim = check_structure(rc, issues);

  auto positive = [&](const char* field, double value) {
    if (!(value > 0.0)) issues.push_back(std::string(field) + ": must be positive");
  };
  if (!(rc.k > 0.0) || !std::isfinite(rc.k))
    issues.push_back("problem.k: must be positive and finite");
  positive("problem.r", rc.r);
  if (std::find(kSchemes.begin(), kSchemes.end(), rc.scheme) == kSchemes.end()) {
    issues.push_back("scheme: unknown scheme '" + rc.scheme + "' (allowed: " + join(kSchemes) +
                     ")");
  }
  if (rc.lambda) positive("solver.lambda", *rc.lambda);
  if (!(rc.gamma >= 0.0 && rc.gamma < 1.0 / 3.0)) {
    issues.push_back("solver.gamma: must lie in [0, 1/3)");
  }
  if (rc.alpha) positive("solver.alpha", *rc.alpha);
  positive("solver.outer_tol", rc.outer_tol);
  positive("solver.inner_tol", rc.inner_tol);
  positive("solver.line_search_tol", rc.line_search_tol);
  if (rc.max_outer == 0) issues.push_back("solver.max_outer: must be positive");
  if (rc.max_inner == 0) issues.push_back("solver.max_inner: must be positive");
  if (rc.residual_budget == 0) issues.push_back("solver.residual_budget: must be positive");
  if (rc.oracle_resolution < 2) issues.push_back("oracle.resolution: must be at least 2");
  if (rc.oracle_membership_tol && !(*rc.oracle_membership_tol >= 0.0)) {
    issues.push_back("oracle.membership_tol: must be nonnegative");
  }
  if (rc.scheme == "descent" && std::isinf(rc.r) && !rc.alpha) {
    issues.push_back("solver.alpha: required for the descent scheme when problem.r = inf");
  }
  if (rc.output_dir.empty()) issues.push_back("output.dir: must not be empty");
  if (rc.trace_file.empty()) issues.push_back("output.trace: must not be empty");
  if (rc.summary_file.empty()) issues.push_back("output.summary: must not be empty");

  if (issues.empty() && dim) {
    try {
      const Problem p = build_problem(rc);
      if (!p.set().contains(to_point(rc.start))) {
        issues.push_back("problem.start: not in the constraint set");
      }
    } catch (const Error& e) {
      issues.push_back(std::string("problem: ") + e.what());
    }
  }
  if (!issues.empty()) throw ValidationError(std::move(issues));
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> issues)
    : Error("invalid config:\n  " +
            [&] {
              std::string all;
              for (const auto& i : issues) all += (all.empty() ? "" : "\n  ") + i;
              return all;
            }()),
      issues_(std::move(issues)) {}

RunConfig parse_config_text(const std::string& text, const std::string& source) {
  RunConfig rc;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string raw;
  std::size_t line_no = 0;

  while (std::getline(in, raw)) {
    ++line_no;
    const LineParser lp(source, line_no);
    const std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) lp.fail("expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) lp.fail("missing key before '='");
    if (value.empty()) lp.fail("field " + key + ": missing value");
    if (!seen.insert(key).second) lp.fail("duplicate key " + key);

    static const std::string kBif = "problem.bifunction.";
    static const std::string kSet = "problem.set.";
    if (key == "problem.bifunction.kind") {
      rc.bifunction_kind = value;
    } else if (key.rfind(kBif, 0) == 0) {
      rc.bifunction_params[key.substr(kBif.size())] = lp.numbers(key, value);
    } else if (key == "problem.set.kind") {
      rc.set_kind = value;
    } else if (key.rfind(kSet, 0) == 0) {
      rc.set_params[key.substr(kSet.size())] = lp.numbers(key, value);
    } else if (key == "problem.k") {
      rc.k = lp.number(key, value);
    } else if (key == "problem.r") {
      rc.r = lp.number(key, value);
    } else if (key == "problem.start") {
      rc.start = lp.numbers(key, value);
    } else if (key == "scheme") {
      rc.scheme = value;
    } else if (key == "solver.lambda") {
      rc.lambda = lp.number(key, value);
    } else if (key == "solver.gamma") {
      rc.gamma = lp.number(key, value);
    } else if (key == "solver.alpha") {
      rc.alpha = lp.number(key, value);
    } else if (key == "solver.outer_tol") {
      rc.outer_tol = lp.number(key, value);
    } else if (key == "solver.inner_tol") {
      rc.inner_tol = lp.number(key, value);
    } else if (key == "solver.max_outer") {
      rc.max_outer = lp.integer(key, value);
    } else if (key == "solver.max_inner") {
      rc.max_inner = lp.integer(key, value);
    } else if (key == "solver.line_search_tol") {
      rc.line_search_tol = lp.number(key, value);
    } else if (key == "solver.seed") {
      rc.seed = lp.integer(key, value);
    } else if (key == "solver.residual_budget") {
      rc.residual_budget = lp.integer(key, value);
    } else if (key == "solver.verify") {
      rc.verify = lp.boolean(key, value);
    } else if (key == "oracle.enabled") {
      rc.oracle = lp.boolean(key, value);
    } else if (key == "oracle.resolution") {
      rc.oracle_resolution = lp.integer(key, value);
    } else if (key == "oracle.membership_tol") {
      rc.oracle_membership_tol = lp.number(key, value);
    } else if (key == "output.dir") {
      rc.output_dir = value;
    } else if (key == "output.trace") {
      rc.trace_file = value;
    } else if (key == "output.summary") {
      rc.summary_file = value;
    } else {
      lp.fail("unknown key " + key);
    }
  }
  validate(rc);
  return rc;
}

RunConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string() + ": cannot open file");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config_text(text.str(), path.string());
}

std::string emit_config(const RunConfig& rc) {
  std::ostringstream os;
  const std::size_t n = rc.start.size();
  os << "problem.bifunction.kind = " << rc.bifunction_kind << "\n";
  for (const auto& [name, values] : rc.bifunction_params) {
    const bool is_matrix = !name.empty() && std::isupper(static_cast<unsigned char>(name[0]));
    os << "problem.bifunction." << name << " = " << format_vector(values, is_matrix ? n : 0)
       << "\n";
  }
  os << "problem.set.kind = " << rc.set_kind << "\n";
  for (const auto& [name, values] : rc.set_params) {
    os << "problem.set." << name << " = " << format_vector(values) << "\n";
  }
  os << "problem.k = " << format_double(rc.k) << "\n";
  os << "problem.r = " << format_double(rc.r) << "\n";
  os << "problem.start = " << format_vector(rc.start) << "\n";
  os << "scheme = " << rc.scheme << "\n";
  if (rc.lambda) os << "solver.lambda = " << format_double(*rc.lambda) << "\n";
  os << "solver.gamma = " << format_double(rc.gamma) << "\n";
  if (rc.alpha) os << "solver.alpha = " << format_double(*rc.alpha) << "\n";
  os << "solver.outer_tol = " << format_double(rc.outer_tol) << "\n";
  os << "solver.inner_tol = " << format_double(rc.inner_tol) << "\n";
  os << "solver.max_outer = " << rc.max_outer << "\n";
  os << "solver.max_inner = " << rc.max_inner << "\n";
  os << "solver.line_search_tol = " << format_double(rc.line_search_tol) << "\n";
  os << "solver.seed = " << rc.seed << "\n";
  os << "solver.residual_budget = " << rc.residual_budget << "\n";
  os << "solver.verify = " << (rc.verify ? "true" : "false") << "\n";
  os << "oracle.enabled = " << (rc.oracle ? "true" : "false") << "\n";
  os << "oracle.resolution = " << rc.oracle_resolution << "\n";
  if (rc.oracle_membership_tol) {
    os << "oracle.membership_tol = " << format_double(*rc.oracle_membership_tol) << "\n";
  }
  os << "output.dir = " << rc.output_dir << "\n";
  os << "output.trace = " << rc.trace_file << "\n";
  os << "output.summary = " << rc.summary_file << "\n";
  return os.str();
}

Problem build_problem(const RunConfig& rc) {
  ConstraintSet set = build_set(rc);
  Bifunction f = build_bifunction(rc, set.dim());
  return Problem(std::move(f), std::move(set), rc.k, rc.r);
}

SolverConfig build_solver_config(const RunConfig& rc, const Problem& problem) {
  SolverConfig cfg;
  cfg.lambda = rc.lambda ? *rc.lambda : default_lambda(problem, 100, rc.seed);
  cfg.gamma_schedule = constant_gamma(rc.scheme == "inertial" ? rc.gamma : 0.0);
  cfg.alpha = rc.alpha.value_or(0.0);
  cfg.outer_tol = rc.outer_tol;
  cfg.inner_tol = rc.inner_tol;
  cfg.max_outer = rc.max_outer;
  cfg.max_inner = rc.max_inner;
  cfg.line_search_tol = rc.line_search_tol;
  cfg.seed = rc.seed;
  cfg.residual_budget = rc.residual_budget;
  cfg.verify = rc.verify;
  return cfg;
}

}  // namespace urep::cli
