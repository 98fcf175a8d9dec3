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

#ifndef VOT_NETWORK_SIMPLEX_HPP_
#define VOT_NETWORK_SIMPLEX_HPP_

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace vot {

struct SimplexOptions {
  // Supply perturbation, as a fraction of total mass.
  double perturbation = 1e-12;
  // Entering threshold on reduced costs, relative to 1 + max |c|.
  double reduced_cost_tolerance = 1e-12;
  // Flow on a forbidden arc above this fraction of total mass means the
  // instance is infeasible.
  double feasibility_tolerance = 1e-9;
  // 0 picks a limit from the problem size.
  int64_t max_pivots = 0;
};

struct BasicArc {
  int source;
  int sink;
  double flow;
};

struct TransportSolution {
  enum class Status { kOptimal, kInfeasible };

  Status status = Status::kOptimal;
  // Spanning-tree basis with unperturbed flows.
  std::vector<BasicArc> basis;
  // Dual potentials with u[0] = 0 and u_s + v_t = c_st on every finite
  // basic arc.
  Eigen::VectorXd u;
  Eigen::VectorXd v;
  int64_t pivots = 0;
  double cost = 0.0;
};

// Primal network simplex for the balanced transportation problem
//   min sum c_st x_st  s.t.  sum_t x_st = supply_s, sum_s x_st = demand_t,
// x >= 0. Costs may be +inf (forbidden arcs). Starts from the northwest
// corner basis of the perturbed supplies, prices with Bland's rule and
// breaks leaving-arc ties by lowest arc index (arc id = s * k + t).
TransportSolution SolveTransport(const Eigen::VectorXd& supply,
                                 const Eigen::VectorXd& demand,
                                 const Eigen::MatrixXd& cost,
                                 const SimplexOptions& options = {});

}  // namespace vot

#endif  // VOT_NETWORK_SIMPLEX_HPP_
