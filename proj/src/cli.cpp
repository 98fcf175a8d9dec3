// Copyright 2026 The vot Authors
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

#include "vot/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "vot/dual.hpp"
#include "vot/metrics.hpp"
#include "vot/problem_io.hpp"
#include "vot/report_io.hpp"
#include "vot/solver.hpp"

namespace vot {

using nlohmann::json;

namespace {

constexpr double kDefaultTolerance = 1e-8;

struct RunConfig {
  std::vector<std::string> inputs;
  std::string out_path;
  std::optional<double> tol;
  std::optional<double> p;
  std::string supports_path;
  std::string mode = "mti";
  uint64_t seed = 1;
  int count = 100;
};

std::string Format12(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

double ResolveTolerance(const RunConfig& cfg) {
  if (cfg.tol) {
    if (!(*cfg.tol > 0.0)) throw InputError(InputError::Kind::kValidation, "--tol must be positive");
    return *cfg.tol;
  }
  if (const char* env = std::getenv("VOT_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0.0) || !std::isfinite(v)) {
      throw InputError(InputError::Kind::kValidation,
                       std::string("VOT_TOL: not a positive number: '") + env + "'");
    }
    return v;
  }
  return kDefaultTolerance;
}

void Emit(const json& j, const RunConfig& cfg, std::ostream& out) {
  if (cfg.out_path.empty()) {
    out << j.dump(2) << "\n";
    return;
  }
  std::ofstream f(cfg.out_path);
  if (!f) throw InputError(InputError::Kind::kParse, "cannot write " + cfg.out_path);
  f << j.dump(2) << "\n";
}

int CmdSolve(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const double tol = ResolveTolerance(cfg);
  LoadOptions load;
  const Problem problem = LoadProblem(cfg.inputs.at(0), load);
  const CostTensor cost = problem.EffectiveCost();
  SolveOptions options;
  options.tolerance = tol;
  const SolveReport report = SolvePrimal(problem.source, problem.target, cost, options);
  Emit(SolveReportToJson(report, cost, tol), cfg, out);
  if (!report.optimal()) {
    err << "infeasible: no plan avoids the +inf cost entries\n";
    return kExitInfeasible;
  }
  err << "value " << Format12(report.primal_value) << ", gap " << Format12(report.gap) << ", "
      << report.pivots << " pivots\n";
  return kExitOk;
}

MetricSpec MetricWithP(const std::string& path, const RunConfig& cfg) {
  MetricSpec spec = LoadMetricFile(path);
  if (cfg.p) spec = MetricSpec(spec.family, *cfg.p);
  return spec;
}

json DistanceReport(double distance, const SolveReport& report, const CostTensor& cost,
                    double p, double tol) {
  json j = SolveReportToJson(report, cost, tol);
  j["p"] = p;
  j["distance"] = RealToJson(distance);
  return j;
}

int CmdDistance(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const double tol = ResolveTolerance(cfg);
  const VectorMeasure a = LoadMeasureFile(cfg.inputs.at(0));
  const VectorMeasure b = LoadMeasureFile(cfg.inputs.at(1));
  const MetricSpec spec = MetricWithP(cfg.inputs.at(2), cfg);
  SolveOptions options;
  options.tolerance = tol;
  const DistanceResult r = WassersteinP(a, b, spec, options);
  out << Format12(r.distance) << "\n";
  if (!cfg.out_path.empty()) Emit(DistanceReport(r.distance, r.report, r.cost, spec.p, tol), cfg, out);
  if (!r.report.optimal()) {
    err << "infeasible\n";
    return kExitInfeasible;
  }
  return kExitOk;
}

int CmdAudit(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const MetricSpec spec = LoadMetricFile(cfg.inputs.at(0));
  std::vector<SupportSet> supports;
  if (!cfg.supports_path.empty()) supports = LoadSupportsFile(cfg.supports_path);
  if (cfg.mode == "mti") {
    const MtiReport r = CheckMti(spec, supports);
    Emit(MtiReportToJson(r), cfg, out);
    constexpr size_t kShown = 10;
    for (size_t n = 0; n < r.violations.size() && n < kShown; ++n) {
      const MtiViolation& v = r.violations[n];
      const std::string ik = std::to_string(v.i + 1) + std::to_string(v.k + 1);
      const std::string ij = std::to_string(v.i + 1) + std::to_string(v.j + 1);
      const std::string jk = std::to_string(v.j + 1) + std::to_string(v.k + 1);
      err << "violation: d_" << ik << "(" << r.points[v.x].label << "," << r.points[v.z].label
          << ") = " << Format12(v.lhs) << " > d_" << ij << "(" << r.points[v.x].label << ","
          << r.points[v.y].label << ") + d_" << jk << "(" << r.points[v.y].label << ","
          << r.points[v.z].label << ") = " << Format12(v.rhs) << "\n";
    }
    if (r.violations.size() > kShown) {
      err << "... " << r.violations.size() - kShown << " more violations\n";
    }
    return r.satisfied() ? kExitOk : kExitAuditFailed;
  }
  const AxiomVerdict v = CheckMetricAxioms(spec, supports);
  Emit(AxiomVerdictToJson(v), cfg, out);
  for (const auto& note : v.notes) err << note << "\n";
  return v.all() ? kExitOk : kExitAuditFailed;
}

int CmdGlue(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const double tol = ResolveTolerance(cfg);
  const CouplingTensor ab = PlanFromJson(ReadJsonFile(cfg.inputs.at(0)));
  const CouplingTensor bc = PlanFromJson(ReadJsonFile(cfg.inputs.at(1)));
  const VectorMeasure nu = LoadMeasureFile(cfg.inputs.at(2));
  Emit(GluedPlanToJson(GluePlans(ab, bc, nu, tol)), cfg, out);
  return kExitOk;
}

int CmdTuple(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const double tol = ResolveTolerance(cfg);
  const std::vector<Point> x = LoadPointTuple(cfg.inputs.at(0));
  const std::vector<Point> y = LoadPointTuple(cfg.inputs.at(1));
  const MetricSpec spec = MetricWithP(cfg.inputs.at(2), cfg);
  SolveOptions options;
  options.tolerance = tol;
  const TupleResult r = TupleDistance(x, y, spec, options);
  out << Format12(r.distance) << "\n";
  if (!cfg.out_path.empty()) {
    json j = {{"p", spec.p}, {"distance", RealToJson(r.distance)},
              {"value", RealToJson(r.report.primal_value)}, {"gap", RealToJson(r.report.gap)},
              {"plan", PlanToJson(r.report.plan)},
              {"potentials", PotentialsToJson(r.report.potentials)}};
    Emit(j, cfg, out);
  }
  return kExitOk;
}

// Random flat instances small enough for the oracle; solver and oracle must
// agree and the reported gap must vanish.
int CmdSelftest(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const double tol = ResolveTolerance(cfg);
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> species_dist(1, 2);
  int failures = 0;
  for (int t = 0; t < cfg.count; ++t) {
    const int n = species_dist(rng);
    const int max_atoms = kOracleMaxSide / n;
    std::uniform_int_distribution<int> atom_dist(1, max_atoms);
    const int m = atom_dist(rng);
    const int k = atom_dist(rng);
    auto random_measure = [&](int atoms) {
      Eigen::MatrixXd w(n, atoms);
      for (Eigen::Index r = 0; r < w.rows(); ++r)
        for (Eigen::Index c = 0; c < w.cols(); ++c) w(r, c) = 0.05 + unit(rng);
      w /= w.sum();
      std::vector<double> xs(atoms);
      for (int a = 0; a < atoms; ++a) xs[a] = a;
      return VectorMeasure(SupportSet::OnLine(xs), std::move(w));
    };
    const VectorMeasure mu = random_measure(m);
    const VectorMeasure nu = random_measure(k);
    std::vector<Eigen::MatrixXd> blocks;
    for (int b = 0; b < n * n; ++b) {
      Eigen::MatrixXd c(m, k);
      for (Eigen::Index r = 0; r < c.rows(); ++r)
        for (Eigen::Index s = 0; s < c.cols(); ++s) c(r, s) = 10.0 * unit(rng);
      blocks.push_back(std::move(c));
    }
    const CostTensor cost(n, std::move(blocks));
    SolveOptions options;
    options.tolerance = tol;
    const SolveReport report = SolvePrimal(mu, nu, cost, options);
    const double oracle = BruteForceOracle(mu, nu, cost);
    const double scale = 1.0 + std::abs(oracle);
    const bool ok = report.optimal() && std::abs(report.primal_value - oracle) <= 1e-9 * scale &&
                    std::abs(report.gap) <= tol * scale;
    if (!ok) {
      ++failures;
      err << "instance " << t << ": solver " << Format12(report.primal_value) << ", oracle "
          << Format12(oracle) << ", gap " << Format12(report.gap) << "\n";
    }
  }
  out << "selftest seed " << cfg.seed << ": " << cfg.count - failures << "/" << cfg.count
      << " passed\n";
  return failures == 0 ? kExitOk : kExitAuditFailed;
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Vector-valued optimal transport: solves, distances and audits"};
  app.require_subcommand(1, 1);
  RunConfig cfg;

  auto add_tol = [&cfg](CLI::App* cmd) {
    cmd->add_option("--tol", cfg.tol, "Feasibility/slackness tolerance (default 1e-8 or VOT_TOL)");
  };
  auto add_out = [&cfg](CLI::App* cmd) {
    cmd->add_option("--out", cfg.out_path, "Write the JSON report here");
  };

  CLI::App* solve = app.add_subcommand("solve", "Solve a problem file");
  solve->add_option("problem", cfg.inputs, "Problem JSON")->required()->expected(1);
  add_out(solve);
  add_tol(solve);

  CLI::App* distance = app.add_subcommand("distance", "W_p between two measure files");
  distance->add_option("files", cfg.inputs, "a.json b.json metric.json")->required()->expected(3);
  distance->add_option("--p", cfg.p, "Exponent p >= 1 (overrides the metric file)");
  add_out(distance);
  add_tol(distance);

  CLI::App* audit = app.add_subcommand("audit", "Check MTI or all metric hypotheses");
  audit->add_option("metric", cfg.inputs, "Metric JSON")->required()->expected(1);
  audit->add_option("--supports", cfg.supports_path, "Points to audit over");
  audit->add_option("--mode", cfg.mode, "mti or metric")
      ->check(CLI::IsMember({"mti", "metric"}));
  add_out(audit);

  CLI::App* glue = app.add_subcommand("glue", "Compose two plans through a middle measure");
  glue->add_option("files", cfg.inputs, "planAB.json planBC.json nu.json")->required()->expected(3);
  add_out(glue);
  add_tol(glue);

  CLI::App* tuple = app.add_subcommand("tuple", "w_p between two point tuples");
  tuple->add_option("files", cfg.inputs, "x.json y.json metric.json")->required()->expected(3);
  tuple->add_option("--p", cfg.p, "Exponent p >= 1 (overrides the metric file)");
  add_out(tuple);
  add_tol(tuple);

  CLI::App* selftest = app.add_subcommand("selftest", "Solver vs oracle on random instances");
  selftest->add_option("--seed", cfg.seed, "RNG seed");
  selftest->add_option("--count", cfg.count, "Number of instances")->check(CLI::PositiveNumber);
  add_tol(selftest);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }

  try {
    if (*solve) return CmdSolve(cfg, out, err);
    if (*distance) return CmdDistance(cfg, out, err);
    if (*audit) return CmdAudit(cfg, out, err);
    if (*glue) return CmdGlue(cfg, out, err);
    if (*tuple) return CmdTuple(cfg, out, err);
    return CmdSelftest(cfg, out, err);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::length_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}

}  // namespace vot
