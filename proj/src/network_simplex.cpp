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

#include "vot/network_simplex.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vot {

namespace {

// Cost with a symbolic big-M part: big counts forbidden (+inf) arcs, small
// carries the finite cost. Ordered lexicographically.
struct LexCost {
  double big = 0.0;
  double small = 0.0;

  LexCost operator+(const LexCost& o) const { return {big + o.big, small + o.small}; }
  LexCost operator-(const LexCost& o) const { return {big - o.big, small - o.small}; }
};

class TransportTree {
 public:
  TransportTree(const Eigen::VectorXd& supply, const Eigen::VectorXd& demand,
                const Eigen::MatrixXd& cost, const SimplexOptions& options)
      : m_(static_cast<int>(supply.size())),
        k_(static_cast<int>(demand.size())),
        nodes_(m_ + k_),
        supply_(supply),
        demand_(demand),
        options_(options) {
    arc_cost_.resize(static_cast<size_t>(m_) * k_);
    double cmax = 0.0;
    for (int s = 0; s < m_; ++s) {
      for (int t = 0; t < k_; ++t) {
        const double c = cost(s, t);
        if (std::isinf(c)) {
          arc_cost_[Arc(s, t)] = {1.0, 0.0};
        } else {
          arc_cost_[Arc(s, t)] = {0.0, c};
          cmax = std::max(cmax, std::abs(c));
        }
      }
    }
    total_ = supply_.sum();
    rc_tol_ = options_.reduced_cost_tolerance * (1.0 + cmax);
    tie_tol_ = 1e-14 * std::max(total_, 1e-300);

    // Orden's perturbation: every supply + eps, the last demand + m * eps.
    const double eps = options_.perturbation * total_;
    perturbed_supply_ = supply_.array() + eps;
    perturbed_demand_ = demand_;
    perturbed_demand_(k_ - 1) += eps * m_;

    in_basis_.assign(arc_cost_.size(), false);
    adj_.assign(nodes_, {});
    parent_arc_.assign(nodes_, -1);
    parent_.assign(nodes_, -1);
    depth_.assign(nodes_, 0);
    pot_.assign(nodes_, {});
    flow_.assign(arc_cost_.size(), 0.0);
    NorthwestCorner();
  }

  int64_t Run() {
    int64_t limit = options_.max_pivots;
    if (limit <= 0) limit = 100000 + 100LL * nodes_ * nodes_;
    int64_t pivots = 0;
    Refresh(perturbed_supply_, perturbed_demand_);
    for (;;) {
      const int entering = PriceBland();
      if (entering < 0) break;
      if (++pivots > limit) throw std::runtime_error("network simplex exceeded its pivot limit");
      Pivot(entering);
      Refresh(perturbed_supply_, perturbed_demand_);
    }
    return pivots;
  }

  TransportSolution Finish(int64_t pivots) {
    TransportSolution sol;
    sol.pivots = pivots;
    Refresh(supply_, demand_);
    const double feas_tol = options_.feasibility_tolerance * std::max(total_, 1.0);
    bool infeasible = false;
    for (int a : basis_) {
      double f = flow_[a];
      if (f < 0.0) f = 0.0;
      if (arc_cost_[a].big > 0.5 && f > feas_tol) infeasible = true;
      sol.basis.push_back({a / k_, a % k_, f});
      if (f > 0.0 && arc_cost_[a].big < 0.5) sol.cost += f * arc_cost_[a].small;
    }
    std::sort(sol.basis.begin(), sol.basis.end(), [](const BasicArc& x, const BasicArc& y) {
      return x.source != y.source ? x.source < y.source : x.sink < y.sink;
    });
    sol.status = infeasible ? TransportSolution::Status::kInfeasible
                            : TransportSolution::Status::kOptimal;
    if (infeasible) sol.cost = std::numeric_limits<double>::infinity();

    // Scalarize: pick M so every finite arc keeps a nonnegative reduced cost.
    double multiplier = 0.0;
    bool has_big = false;
    for (int x = 0; x < nodes_; ++x) has_big |= pot_[x].big != 0.0;
    if (has_big) {
      for (int s = 0; s < m_; ++s) {
        for (int t = 0; t < k_; ++t) {
          const int a = Arc(s, t);
          if (arc_cost_[a].big > 0.5) continue;
          const LexCost rc = Reduced(a);
          if (rc.big > 0.5) multiplier = std::max(multiplier, -rc.small / rc.big);
        }
      }
      multiplier += 1.0;
    }
    sol.u.resize(m_);
    sol.v.resize(k_);
    for (int s = 0; s < m_; ++s) sol.u(s) = pot_[s].small + multiplier * pot_[s].big;
    for (int t = 0; t < k_; ++t) sol.v(t) = pot_[m_ + t].small + multiplier * pot_[m_ + t].big;
    return sol;
  }

 private:
  int Arc(int s, int t) const { return s * k_ + t; }
  int SinkNode(int t) const { return m_ + t; }
  bool IsSource(int node) const { return node < m_; }

  void AddBasic(int a) {
    basis_.push_back(a);
    in_basis_[a] = true;
    adj_[a / k_].push_back(a);
    adj_[SinkNode(a % k_)].push_back(a);
  }

  void RemoveBasic(int a) {
    basis_.erase(std::find(basis_.begin(), basis_.end(), a));
    in_basis_[a] = false;
    auto drop = [a](std::vector<int>& v) { v.erase(std::find(v.begin(), v.end(), a)); };
    drop(adj_[a / k_]);
    drop(adj_[SinkNode(a % k_)]);
  }

  void NorthwestCorner() {
    Eigen::VectorXd ra = perturbed_supply_;
    Eigen::VectorXd rb = perturbed_demand_;
    int s = 0;
    int t = 0;
    for (;;) {
      AddBasic(Arc(s, t));
      const double x = std::min(ra(s), rb(t));
      ra(s) -= x;
      rb(t) -= x;
      if (s == m_ - 1 && t == k_ - 1) break;
      if (s == m_ - 1) {
        ++t;
      } else if (t == k_ - 1) {
        ++s;
      } else if (ra(s) <= rb(t)) {
        ++s;
      } else {
        ++t;
      }
    }
  }

  // Rebuilds the rooted tree, the potentials and the basic flows for the
  // given marginals.
  void Refresh(const Eigen::VectorXd& supply, const Eigen::VectorXd& demand) {
    order_.clear();
    std::fill(parent_arc_.begin(), parent_arc_.end(), -1);
    std::fill(parent_.begin(), parent_.end(), -1);
    order_.push_back(0);
    depth_[0] = 0;
    pot_[0] = {};
    std::vector<bool> seen(nodes_, false);
    seen[0] = true;
    for (size_t head = 0; head < order_.size(); ++head) {
      const int x = order_[head];
      for (int a : adj_[x]) {
        const int y = IsSource(x) ? SinkNode(a % k_) : a / k_;
        if (seen[y]) continue;
        seen[y] = true;
        parent_[y] = x;
        parent_arc_[y] = a;
        depth_[y] = depth_[x] + 1;
        // u_s + v_t = c_st along basic arcs.
        pot_[y] = arc_cost_[a] - pot_[x];
        order_.push_back(y);
      }
    }
    if (static_cast<int>(order_.size()) != nodes_) {
      throw std::logic_error("network simplex basis is not a spanning tree");
    }
    std::vector<double> net(nodes_);
    for (int s = 0; s < m_; ++s) net[s] = supply(s);
    for (int t = 0; t < k_; ++t) net[SinkNode(t)] = -demand(t);
    for (size_t idx = order_.size(); idx-- > 1;) {
      const int y = order_[idx];
      const int a = parent_arc_[y];
      flow_[a] = IsSource(y) ? net[y] : -net[y];
      net[parent_[y]] += net[y];
    }
  }

  LexCost Reduced(int a) const {
    return arc_cost_[a] - pot_[a / k_] - pot_[SinkNode(a % k_)];
  }

  int PriceBland() const {
    for (int a = 0; a < static_cast<int>(arc_cost_.size()); ++a) {
      if (in_basis_[a]) continue;
      const LexCost rc = Reduced(a);
      if (rc.big < -0.5 || (std::abs(rc.big) < 0.5 && rc.small < -rc_tol_)) return a;
    }
    return -1;
  }

  void Pivot(int entering) {
    // Walk both ends of the entering arc up to their common ancestor. Going
    // around the cycle s -> t -> ... -> s, a tree arc loses flow when it is
    // traversed from its sink end to its source end.
    int x = SinkNode(entering % k_);
    int y = entering / k_;
    int leaving = -1;
    double best = 0.0;
    auto consider = [&](int a) {
      const double f = flow_[a];
      if (leaving < 0 || f < best - tie_tol_ ||
          (std::abs(f - best) <= tie_tol_ && a < leaving)) {
        leaving = a;
        best = f;
      }
    };
    while (x != y) {
      if (depth_[x] >= depth_[y]) {
        // Cycle traverses x -> parent(x): decreasing when x is a sink.
        if (!IsSource(x)) consider(parent_arc_[x]);
        x = parent_[x];
      } else {
        // Cycle traverses parent(y) -> y: decreasing when y is a source.
        if (IsSource(y)) consider(parent_arc_[y]);
        y = parent_[y];
      }
    }
    if (leaving < 0) throw std::logic_error("network simplex found no leaving arc");
    RemoveBasic(leaving);
    AddBasic(entering);
  }

  int m_;
  int k_;
  int nodes_;
  Eigen::VectorXd supply_;
  Eigen::VectorXd demand_;
  Eigen::VectorXd perturbed_supply_;
  Eigen::VectorXd perturbed_demand_;
  SimplexOptions options_;
  double total_ = 0.0;
  double rc_tol_ = 0.0;
  double tie_tol_ = 0.0;

  std::vector<LexCost> arc_cost_;
  std::vector<bool> in_basis_;
  std::vector<int> basis_;
  std::vector<std::vector<int>> adj_;
  std::vector<int> order_;
  std::vector<int> parent_;
  std::vector<int> parent_arc_;
  std::vector<int> depth_;
  std::vector<LexCost> pot_;
  std::vector<double> flow_;
};

}  // namespace

TransportSolution SolveTransport(const Eigen::VectorXd& supply,
                                 const Eigen::VectorXd& demand,
                                 const Eigen::MatrixXd& cost,
                                 const SimplexOptions& options) {
  if (supply.size() == 0 || demand.size() == 0) {
    throw std::invalid_argument("transportation problem needs a source and a sink");
  }
  if (cost.rows() != supply.size() || cost.cols() != demand.size()) {
    throw std::invalid_argument("cost matrix shape does not match the marginals");
  }
  TransportTree tree(supply, demand, cost, options);
  const int64_t pivots = tree.Run();
  return tree.Finish(pivots);
}

}  // namespace vot
