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

#ifndef VOT_METRICS_HPP_
#define VOT_METRICS_HPP_

#include <string>
#include <vector>

#include "vot/coupling.hpp"
#include "vot/measures.hpp"
#include "vot/solver.hpp"

namespace vot {

struct DistanceResult {
  double distance = 0.0;
  SolveReport report;
  // d_ij^p evaluated on the two supports.
  CostTensor cost;
};

// W_p(mu, nu) = (min over Pi(mu, nu) of sum_ij <gamma_ij, d_ij^p>)^(1/p).
// Measures may carry any common total mass.
DistanceResult WassersteinP(const VectorMeasure& mu, const VectorMeasure& nu,
                            const MetricSpec& spec, const SolveOptions& options = {});

// (sum mass * d_ij(a, b)^p)^(1/p) for a plan whose cost tensor `powered`
// already holds d^p.
double RootCost(const CouplingTensor& plan, const CostTensor& powered, double p);

struct MtiViolation {
  int i;
  int j;
  int k;
  int x;
  int y;
  int z;
  // d_ik(x, z) and d_ij(x, y) + d_jk(y, z).
  double lhs;
  double rhs;
};

struct MtiReport {
  // The points that were audited, indexed by the violations.
  SupportSet points;
  std::vector<MtiViolation> violations;
  bool satisfied() const { return violations.empty(); }
};

// Exhaustive check of d_ik(x, z) <= d_ij(x, y) + d_jk(y, z) over every
// species triple and every point triple of the union of `supports`. For an
// explicit family an empty `supports` means its ground points.
MtiReport CheckMti(const MetricSpec& spec, const std::vector<SupportSet>& supports,
                   double tolerance = 1e-12);

struct AxiomVerdict {
  bool symmetric = true;              // d_ij(x, y) = d_ij(y, x)
  bool mti = true;                    // mixed triangle inequalities
  bool zero_diagonal = true;          // d_ii(x, x) = 0
  bool off_diagonal_positive = true;  // d_ij(x, y) != 0 for i != j
  std::vector<std::string> notes;
  MtiReport mti_report;

  bool all() const { return symmetric && mti && zero_diagonal && off_diagonal_positive; }
};

AxiomVerdict CheckMetricAxioms(const MetricSpec& spec, const std::vector<SupportSet>& supports,
                               double tolerance = 1e-12);

struct ThreePointEntry {
  int i;
  int j;
  int k;
  int a;  // source atom
  int b;  // middle atom
  int c;  // target atom
  double mass;
};

struct GluedPlan {
  CouplingTensor composed;
  std::vector<ThreePointEntry> three_point_mass;
};

// Glues gamma in Pi(mu, nu) and gamma~ in Pi(nu, lambda) through nu, one
// species triple (i, j, k) at a time, conditionally independent given the
// middle atom:
//   Pi_ijk(x, y, z) = gamma*_ijk(x, y) gamma~*_ijk(y, z) / m_ijk(y)
// where gamma*_ijk carries density f^{k,->}_j(y) against gamma_ij,
// gamma~*_ijk carries density f^{i,<-}_j(y) against gamma~_jk and m_ijk(y)
// is their shared middle marginal (0/0 = 0). The composed plan is
// gamma_ik = sum_j of the (x, z) projection.
GluedPlan GluePlans(const CouplingTensor& plan_ab, const CouplingTensor& plan_bc,
                    const VectorMeasure& nu, double tolerance = 1e-8);

struct TupleResult {
  double distance = 0.0;
  SolveReport report;
};

// w_p between two n-tuples of points: W_p of the uniform Dirac measures
// (1/n) [delta_{x_1}, ..., delta_{x_n}] and likewise for y.
TupleResult TupleDistance(const std::vector<Point>& x, const std::vector<Point>& y,
                          const MetricSpec& spec, const SolveOptions& options = {});

struct Triple {
  VectorMeasure mu;
  VectorMeasure nu;
  VectorMeasure lambda;
};

// Three unit Dirac masses, delta_x in species i, delta_y in species j and
// delta_z in species k, on the support {x, y, z}. For an MTI violation
// their W_p values reproduce it: W_p(mu, lambda) = d_ik(x, z) while the
// two legs cost d_ij(x, y) and d_jk(y, z).
Triple MtiCounterexample(const MetricSpec& spec, const MtiReport& report,
                         const MtiViolation& violation);

}  // namespace vot

#endif  // VOT_METRICS_HPP_
