#include "urep/run.hpp"

#include "urep/gap_descent.hpp"
#include "urep/oracle.hpp"
#include "urep/schemes.hpp"

#include "json.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <future>
#include <ostream>
#include <sstream>

namespace urep::cli {

namespace {

std::string cell(double x) {
  char buf[64];
  // Fold -0 into 0.
  std::snprintf(buf, sizeof buf, "%.17g", x == 0.0 ? 0.0 : x);
  return buf;
}

std::vector<double> to_vector(const Point& p) {
  return {p.data(), p.data() + p.size()};
}

Trace run_scheme(const RunConfig& rc, const Problem& problem, const SolverConfig& cfg,
                 const Point& u0) {
  if (rc.scheme == "proximal") return proximal_solve(problem, cfg, u0);
  if (rc.scheme == "inertial") return inertial_proximal_solve(problem, cfg, u0);
  if (rc.scheme == "explicit") return explicit_solve(problem, cfg, u0);
  return descent_solve(GapModel(problem, cfg.alpha), cfg, u0);
}

int exit_for(Status s) {
  switch (s) {
    case Status::Converged:
      return kExitConverged;
    case Status::MaxIterations:
      return kExitMaxIterations;
    case Status::SubproblemFailed:
      return kExitSubproblemFailed;
  }
  return kExitIoError;
}

}  // namespace

std::string trace_csv(const Trace& trace) {
  std::string out = "iter,step_norm,residual,gap,t\n";
  for (const TraceRecord& r : trace.records) {
    out += std::to_string(r.iter) + "," + cell(r.step_norm) + "," + cell(r.residual) + ",";
    if (r.gap) out += cell(*r.gap);
    out += ",";
    if (r.line_search_t) out += cell(*r.line_search_t);
    out += "\n";
  }
  return out;
}

int run(const RunConfig& rc, std::ostream& err) {
  nlohmann::json summary;
  Trace trace;
  int code = kExitConverged;
  try {
    const Problem problem = build_problem(rc);
    const SolverConfig cfg = build_solver_config(rc, problem);
    const Point u0 =
        Eigen::Map<const Point>(rc.start.data(), static_cast<Eigen::Index>(rc.start.size()));
    trace = run_scheme(rc, problem, cfg, u0);
    code = exit_for(trace.status);

    const Point& final_point = trace.final_point();
    const double final_residual = trace.records.back().residual;
    summary["scheme"] = rc.scheme;
    summary["status"] = std::string(to_string(trace.status));
    summary["iterations"] = trace.iterations();
    summary["final_point"] = to_vector(final_point);
    summary["final_residual"] = final_residual;
    summary["lambda"] = cfg.lambda;
    if (!trace.message.empty()) summary["message"] = trace.message;
    try {
      summary["final_gap"] = gap_value(GapModel(problem, cfg.alpha), final_point, cfg);
    } catch (const Error&) {
      summary["final_gap"] = nullptr;
    }

    if (rc.scheme == "proximal" && final_residual <= 1e-6) {
      summary["fejer_passed"] = fejer_check(trace, final_point, problem.kappa()).passed;
    }

    if (rc.oracle) {
      oracle::GridSpec gs;
      gs.resolution = rc.oracle_resolution;
      gs.membership_tol = rc.oracle_membership_tol;
      const oracle::OracleResult res = oracle::grid_solve(problem, gs);
      const double distance = (final_point - res.best_point).norm();
      summary["oracle_point"] = to_vector(res.best_point);
      summary["oracle_distance"] = distance;
      summary["oracle_certified"] = res.certified;
      summary["oracle_spacing"] = res.spacing;

      const bool agree = res.certified && distance <= 2.0 * res.spacing;
      if (code == kExitConverged && !agree) code = kExitOracleDisagreement;
    }
  } catch (const InnerSolveFailed& e) {
    err << "error: " << e.what() << "\n";
    return kExitSubproblemFailed;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitIoError;
  }

  try {
    std::filesystem::create_directories(rc.output_dir);
    const std::filesystem::path dir(rc.output_dir);
    std::ofstream csv(dir / rc.trace_file, std::ios::binary);
    csv << trace_csv(trace);
    std::ofstream json(dir / rc.summary_file, std::ios::binary);
    json << summary.dump(2) << "\n";
    if (!csv || !json) throw std::runtime_error("failed writing outputs under " + rc.output_dir);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitIoError;
  }
  return code;
}

int run_suite(const std::filesystem::path& dir, const std::filesystem::path& out_dir,
              const std::function<void(RunConfig&)>& override_fn, std::ostream& out,
              std::ostream& err) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".cfg")
      files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) {
    err << "error: no .cfg files in " << dir.string() << "\n";
    return kExitIoError;
  }

  struct Outcome {
    int code;
    std::string diagnostics;
  };
  std::vector<std::future<Outcome>> jobs;
  for (const auto& file : files) {
    jobs.push_back(std::async(std::launch::async, [&, file]() -> Outcome {
      std::ostringstream diag;
      try {
        RunConfig rc = parse_config(file);
        if (override_fn) override_fn(rc);
        rc.output_dir = (out_dir / file.stem()).string();
        return {run(rc, diag), diag.str()};
      } catch (const Error& e) {
        diag << "error: " << e.what() << "\n";
        return {kExitIoError, diag.str()};
      }
    }));
  }

  int worst = kExitConverged;
  for (std::size_t i = 0; i < files.size(); ++i) {
    const Outcome o = jobs[i].get();
    out << files[i].filename().string() << ": exit " << o.code << "\n";
    err << o.diagnostics;
    worst = std::max(worst, o.code);
  }
  return worst;
}

}  // namespace urep::cli
