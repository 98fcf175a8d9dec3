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

#ifndef VOT_SOLVER_HPP_
#define VOT_SOLVER_HPP_

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "vot/coupling.hpp"
#include "vot/measures.hpp"
#include "vot/network_simplex.hpp"

namespace vot {

// One node of the flattened transportation problem.
struct FlatNode {
  int species;
  int atom;
  double mass;
};

// The vector problem as a scalar transportation LP over (species, atom)
// pairs. Zero-mass pairs are dropped; species/atom fields map back.
struct FlatProblem {
  std::vector<FlatNode> sources;
  std::vector<FlatNode> sinks;
  Eigen::MatrixXd cost;  // sources x sinks, +inf allowed
  int species = 0;
  int rows = 0;
  int cols = 0;

  Eigen::VectorXd Supplies() const;
  Eigen::VectorXd Demands() const;
};

FlatProblem Flatten(const VectorMeasure& mu, const VectorMeasure& nu,
                    const CostTensor& cost);

// Maps a flat flow matrix (sources x sinks) back onto a coupling tensor.
CouplingTensor Unflatten(const FlatProblem& flat, const Eigen::MatrixXd& flows);

// gamma_ij = mu_i (x) nu_j / total mass.
CouplingTensor ProductPlan(const VectorMeasure& mu, const VectorMeasure& nu,
                           double mass_tolerance = kMassTolerance);

struct SolveOptions {
  SimplexOptions simplex;
  double mass_tolerance = kMassTolerance;
  // Absolute part of the reported feasibility and slackness checks.
  double tolerance = 1e-8;
};

struct SolveReport {
  enum class Status { kOptimal, kInfeasible };

  Status status = Status::kOptimal;
  double primal_value = 0.0;
  double dual_value = 0.0;
  // primal_value - dual_value.
  double gap = 0.0;
  CouplingTensor plan;
  PotentialPair potentials;
  int64_t pivots = 0;
  double max_marginal_error = 0.0;
  // Largest phi_i(a) + psi_j(b) - c_ij(a, b) over all entries.
  double max_dual_violation = 0.0;

  bool optimal() const { return status == Status::kOptimal; }
};

// Minimizes K(gamma) over Pi(mu, nu). Requires matching total masses; the
// plan, the potentials and the gap all refer to the unperturbed data.
SolveReport SolvePrimal(const VectorMeasure& mu, const VectorMeasure& nu,
                        const CostTensor& cost, const SolveOptions& options = {});

// Exact optimal value by enumerating every spanning-tree basis of the flat
// transportation polytope. Flat sizes are limited to kOracleMaxSide per side.
inline constexpr int kOracleMaxSide = 6;
double BruteForceOracle(const VectorMeasure& mu, const VectorMeasure& nu,
                        const CostTensor& cost);
double BruteForceOracle(const FlatProblem& flat);

namespace detail {
// Number of spanning trees of K_{m,k} visited by the oracle's enumeration
// when feasibility pruning is disabled. Exposed for testing.
int64_t CountEnumeratedBases(int m, int k);
}  // namespace detail

}  // namespace vot

#endif  // VOT_SOLVER_HPP_
