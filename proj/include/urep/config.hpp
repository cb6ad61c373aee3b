#pragma once

#include "urep/core_model.hpp"
#include "urep/errors.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace urep::cli {

/// Malformed input: the message carries "<source>:<line>: ...".
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Every violated invariant of an otherwise well-formed config.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<std::string> issues);
  const std::vector<std::string>& issues() const { return issues_; }

 private:
  std::vector<std::string> issues_;
};

using ParamMap = std::map<std::string, std::vector<double>>;

/// One solver run as described by a config file such as
///
///   problem.bifunction.kind = affine_vi
///   problem.bifunction.A = 1 0; 0 1
///   problem.bifunction.b = -2 0
///   problem.set.kind = ball
///   problem.set.center = 0 0
///   problem.set.radius = 1
///   problem.k = 1
///   problem.r = 1
///   problem.start = 0 -1
///   scheme = proximal
struct RunConfig {
  std::string bifunction_kind;
  ParamMap bifunction_params;
  std::string set_kind;
  ParamMap set_params;
  double k = 1.0;
  double r = kInfinity;
  std::vector<double> start;

  std::string scheme = "proximal";

  std::optional<double> lambda;
  double gamma = 0.2;
  std::optional<double> alpha;
  double outer_tol = 1e-8;
  double inner_tol = 1e-12;
  std::size_t max_outer = 500;
  std::size_t max_inner = 10000;
  double line_search_tol = 1e-10;
  std::uint64_t seed = 0;
  std::size_t residual_budget = 9;
  bool verify = false;

  bool oracle = false;
  std::size_t oracle_resolution = 200;
  std::optional<double> oracle_membership_tol;

  std::string output_dir = "out";
  std::string trace_file = "trace.csv";
  std::string summary_file = "summary.json";

  bool operator==(const RunConfig&) const = default;
};

inline const std::vector<std::string> kSchemes = {"proximal", "inertial", "explicit", "descent"};
inline const std::vector<std::string> kBifunctionKinds = {"affine_vi", "quadratic", "zero"};

RunConfig parse_config_text(const std::string& text, const std::string& source = "<config>");
RunConfig parse_config(const std::filesystem::path& path);

/// Inverse of parse_config_text; doubles are written with 17 significant digits.
std::string emit_config(const RunConfig& rc);

Problem build_problem(const RunConfig& rc);
SolverConfig build_solver_config(const RunConfig& rc, const Problem& problem);

}  // namespace urep::cli
