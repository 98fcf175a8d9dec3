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

#include "vot/solver.hpp"

#include <cmath>
#include <string>

#include "vot/dual.hpp"

namespace vot {

namespace {

void CheckShapes(const VectorMeasure& mu, const VectorMeasure& nu, const CostTensor& cost) {
  if (mu.species() != nu.species() || cost.species() != mu.species()) {
    throw InputError(InputError::Kind::kDimension,
                     "species counts differ: source " + std::to_string(mu.species()) +
                         ", target " + std::to_string(nu.species()) + ", cost " +
                         std::to_string(cost.species()));
  }
  if (cost.rows() != mu.atoms() || cost.cols() != nu.atoms()) {
    throw InputError(InputError::Kind::kDimension,
                     "cost blocks are " + std::to_string(cost.rows()) + "x" +
                         std::to_string(cost.cols()) + " but the supports have " +
                         std::to_string(mu.atoms()) + " and " + std::to_string(nu.atoms()) +
                         " points");
  }
}

void CheckMass(const VectorMeasure& mu, const VectorMeasure& nu, double tolerance) {
  const double a = mu.total_mass();
  const double b = nu.total_mass();
  if (!(std::abs(a - b) <= tolerance)) {
    throw InputError(InputError::Kind::kValidation,
                     "total masses differ: " + std::to_string(a) + " vs " + std::to_string(b));
  }
}

}  // namespace

Eigen::VectorXd FlatProblem::Supplies() const {
  Eigen::VectorXd v(sources.size());
  for (size_t s = 0; s < sources.size(); ++s) v(s) = sources[s].mass;
  return v;
}

Eigen::VectorXd FlatProblem::Demands() const {
  Eigen::VectorXd v(sinks.size());
  for (size_t t = 0; t < sinks.size(); ++t) v(t) = sinks[t].mass;
  return v;
}

FlatProblem Flatten(const VectorMeasure& mu, const VectorMeasure& nu, const CostTensor& cost) {
  CheckShapes(mu, nu, cost);
  FlatProblem flat;
  flat.species = mu.species();
  flat.rows = mu.atoms();
  flat.cols = nu.atoms();
  for (int i = 0; i < mu.species(); ++i) {
    for (int a = 0; a < mu.atoms(); ++a) {
      if (mu.weight(i, a) > 0.0) flat.sources.push_back({i, a, mu.weight(i, a)});
    }
  }
  for (int j = 0; j < nu.species(); ++j) {
    for (int b = 0; b < nu.atoms(); ++b) {
      if (nu.weight(j, b) > 0.0) flat.sinks.push_back({j, b, nu.weight(j, b)});
    }
  }
  flat.cost.resize(static_cast<Eigen::Index>(flat.sources.size()),
                   static_cast<Eigen::Index>(flat.sinks.size()));
  for (size_t s = 0; s < flat.sources.size(); ++s) {
    for (size_t t = 0; t < flat.sinks.size(); ++t) {
      const auto& src = flat.sources[s];
      const auto& snk = flat.sinks[t];
      flat.cost(s, t) = cost(src.species, snk.species, src.atom, snk.atom);
    }
  }
  return flat;
}

CouplingTensor Unflatten(const FlatProblem& flat, const Eigen::MatrixXd& flows) {
  std::vector<PlanEntry> entries;
  for (Eigen::Index s = 0; s < flows.rows(); ++s) {
    for (Eigen::Index t = 0; t < flows.cols(); ++t) {
      if (flows(s, t) <= 0.0) continue;
      const auto& src = flat.sources[s];
      const auto& snk = flat.sinks[t];
      entries.push_back({src.species, snk.species, src.atom, snk.atom, flows(s, t)});
    }
  }
  return CouplingTensor(flat.species, flat.rows, flat.cols, std::move(entries));
}

CouplingTensor ProductPlan(const VectorMeasure& mu, const VectorMeasure& nu,
                           double mass_tolerance) {
  if (mu.species() != nu.species()) {
    throw InputError(InputError::Kind::kDimension, "species counts differ");
  }
  CheckMass(mu, nu, mass_tolerance);
  const double total = mu.total_mass();
  std::vector<PlanEntry> entries;
  if (total > 0.0) {
    for (int i = 0; i < mu.species(); ++i) {
      for (int a = 0; a < mu.atoms(); ++a) {
        if (mu.weight(i, a) == 0.0) continue;
        for (int j = 0; j < nu.species(); ++j) {
          for (int b = 0; b < nu.atoms(); ++b) {
            if (nu.weight(j, b) == 0.0) continue;
            entries.push_back({i, j, a, b, mu.weight(i, a) * nu.weight(j, b) / total});
          }
        }
      }
    }
  }
  return CouplingTensor(mu.species(), mu.atoms(), nu.atoms(), std::move(entries));
}

SolveReport SolvePrimal(const VectorMeasure& mu, const VectorMeasure& nu,
                        const CostTensor& cost, const SolveOptions& options) {
  CheckShapes(mu, nu, cost);
  CheckMass(mu, nu, options.mass_tolerance);
  const int n = mu.species();
  const FlatProblem flat = Flatten(mu, nu, cost);

  SolveReport report{.plan = CouplingTensor(n, mu.atoms(), nu.atoms()),
                     .potentials = PotentialPair::Zero(n, mu.atoms(), nu.atoms())};
  Eigen::MatrixXd phi = Eigen::MatrixXd::Constant(n, mu.atoms(), std::nan(""));
  Eigen::MatrixXd psi = Eigen::MatrixXd::Constant(n, nu.atoms(), std::nan(""));

  if (!flat.sources.empty() && !flat.sinks.empty()) {
    const TransportSolution sol =
        SolveTransport(flat.Supplies(), flat.Demands(), flat.cost, options.simplex);
    report.pivots = sol.pivots;
    if (sol.status == TransportSolution::Status::kInfeasible) {
      report.status = SolveReport::Status::kInfeasible;
    }
    Eigen::MatrixXd flows = Eigen::MatrixXd::Zero(flat.cost.rows(), flat.cost.cols());
    for (const auto& arc : sol.basis) flows(arc.source, arc.sink) = arc.flow;
    report.plan = Unflatten(flat, flows);
    for (size_t s = 0; s < flat.sources.size(); ++s) {
      phi(flat.sources[s].species, flat.sources[s].atom) = sol.u(s);
    }
    for (size_t t = 0; t < flat.sinks.size(); ++t) {
      psi(flat.sinks[t].species, flat.sinks[t].atom) = sol.v(t);
    }
  }

  // Dropped source atoms first, against the kept targets only; then dropped
  // targets against every source potential.
  for (int i = 0; i < n; ++i) {
    for (int a = 0; a < mu.atoms(); ++a) {
      if (!std::isnan(phi(i, a))) continue;
      double best = kInf;
      for (int j = 0; j < n; ++j) {
        for (int b = 0; b < nu.atoms(); ++b) {
          if (std::isnan(psi(j, b)) || std::isinf(cost(i, j, a, b))) continue;
          best = std::min(best, cost(i, j, a, b) - psi(j, b));
        }
      }
      phi(i, a) = std::isfinite(best) ? best : 0.0;
    }
  }
  Eigen::MatrixXd kept_psi = psi;
  for (int j = 0; j < n; ++j) {
    for (int b = 0; b < nu.atoms(); ++b) {
      if (!std::isnan(kept_psi(j, b))) continue;
      double best = kInf;
      for (int i = 0; i < n; ++i) {
        for (int a = 0; a < mu.atoms(); ++a) {
          if (std::isinf(cost(i, j, a, b))) continue;
          best = std::min(best, cost(i, j, a, b) - phi(i, a));
        }
      }
      psi(j, b) = std::isfinite(best) ? best : 0.0;
    }
  }
  report.potentials = {std::move(phi), std::move(psi)};
  NormalizePotentials(report.potentials);

  const PlanVerdict pv = CheckPlan(report.plan, mu, nu, options.tolerance);
  report.max_marginal_error = std::max(pv.max_source_error, pv.max_target_error);
  report.max_dual_violation =
      std::max(0.0, CheckDualFeasible(report.potentials, cost, options.tolerance).worst.amount);
  report.dual_value = DualValue(report.potentials, mu, nu);
  if (report.optimal()) {
    report.primal_value = report.plan.Cost(cost);
    report.gap = report.primal_value - report.dual_value;
  } else {
    report.primal_value = kInf;
    report.gap = kInf;
  }
  return report;
}

}  // namespace vot
