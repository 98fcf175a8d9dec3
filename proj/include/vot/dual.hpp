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

#ifndef VOT_DUAL_HPP_
#define VOT_DUAL_HPP_

#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "vot/coupling.hpp"
#include "vot/measures.hpp"

namespace vot {

// D(phi, psi) = sum_i <phi_i, mu_i> + sum_j <psi_j, nu_j>. Atoms with zero
// weight do not contribute, whatever their potential.
double DualValue(const PotentialPair& pp, const VectorMeasure& mu, const VectorMeasure& nu);

struct DualViolation {
  int i = -1;
  int j = -1;
  int a = -1;
  int b = -1;
  // phi_i(a) + psi_j(b) - c_ij(a, b); positive means the constraint fails.
  double amount = -kInf;
};

struct DualFeasibility {
  bool ok = true;
  DualViolation worst;
};

// Membership in Delta(c) up to `tolerance`; reports the largest excess.
DualFeasibility CheckDualFeasible(const PotentialPair& pp, const CostTensor& cost,
                                  double tolerance = 1e-8);

struct TransformResult {
  Eigen::VectorXd values;
  // True where every cost entry was +inf; the value there is +inf.
  std::vector<bool> unbounded;
  // Lexicographically smallest (species, atom) attaining the min; filled
  // only when requested, (-1, -1) where unbounded.
  std::vector<std::pair<int, int>> argmin;
};

// Vector c-transform: g(y) = min_i min_x [c_i(x, y) - f_i(x)], with f the
// rows of `f` (n x M) and costs[i] an M x N matrix. +inf costs are skipped.
TransformResult CTransform(const Eigen::MatrixXd& f, std::span<const Eigen::MatrixXd> costs,
                           bool track_argmin = false);

// Vector c-bar-transform: h(x) = min_j min_y [c_j(x, y) - g_j(y)], with g
// the rows of `g` (n x N) and costs[j] an M x N matrix.
TransformResult CBarTransform(const Eigen::MatrixXd& g, std::span<const Eigen::MatrixXd> costs,
                              bool track_argmin = false);

// psi_j <- phi^{(c_1j, ..., c_nj)} for the given target species j.
TransformResult TargetTransform(const Eigen::MatrixXd& phi, const CostTensor& cost, int j,
                                bool track_argmin = false);
// phi_i <- psi^{bar (c_i1, ..., c_in)} for the given source species i.
TransformResult SourceTransform(const Eigen::MatrixXd& psi, const CostTensor& cost, int i,
                                bool track_argmin = false);

// One improvement sweep: every psi_j is replaced by the c-transform of phi,
// then every phi_i by the c-bar-transform of the new psi. For a feasible
// input the output is feasible and its dual value is no smaller.
PotentialPair ImprovePotentials(const PotentialPair& pp, const CostTensor& cost);

struct SweepOptions {
  double stall_threshold = 1e-12;
  int max_sweeps = 1000;
};

struct SweepResult {
  PotentialPair potentials;
  // Dual value before the first sweep and after each sweep.
  std::vector<double> values;
  int sweeps = 0;
  bool stalled = false;
};

// Repeats ImprovePotentials until the value gain drops below the stall
// threshold or the sweep cap is hit. No convergence to the dual optimum is
// implied.
SweepResult IterateSweeps(const PotentialPair& start, const CostTensor& cost,
                          const VectorMeasure& mu, const VectorMeasure& nu,
                          const SweepOptions& options = {});

struct SlacknessViolation {
  int i;
  int j;
  int a;
  int b;
  double mass;
  // c_ij(a, b) - phi_i(a) - psi_j(b).
  double slack;
};

struct OptimalityVerdict {
  std::vector<SlacknessViolation> violations;
  bool ok() const { return violations.empty(); }
};

// Complementary slackness: every plan entry with mass above
// `mass_threshold` must have |phi_i(a) + psi_j(b) - c_ij(a, b)| <= tolerance.
// Together with primal and dual feasibility this certifies optimality of
// both the plan and the potentials.
OptimalityVerdict CheckOptimality(const CouplingTensor& plan, const PotentialPair& pp,
                                  const CostTensor& cost, double mass_threshold = 1e-10,
                                  double tolerance = 1e-8);

// phi <- phi - m, psi <- psi + m with m the smallest finite phi entry, so
// that every reported phi is nonnegative. Preserves feasibility and, for
// equal masses, the dual value.
void NormalizePotentials(PotentialPair& pp);

}  // namespace vot

#endif  // VOT_DUAL_HPP_
