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

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

#include "vot/solver.hpp"

namespace vot {

namespace {

// Enumerates spanning trees of the complete bipartite graph on m sources and
// k sinks in Pruefer order: at every step the smallest-index leaf of the
// remaining tree is peeled off and attached to a node on the other side.
// Node n-1 is never peeled. A node w that was smaller than a peeled leaf must
// itself receive a later attachment before it is peeled (tracked in
// `pending_`), which makes every tree appear exactly once.
//
// A peeled leaf carries its whole residual mass on its single basic arc, so
// the basic solution is built incrementally and infeasible bases are cut as
// soon as a residual turns negative.
class BasisEnumerator {
 public:
  BasisEnumerator(int m, int k, const Eigen::VectorXd* supply,
                  const Eigen::VectorXd* demand, const Eigen::MatrixXd* cost)
      : m_(m), n_(m + k), cost_(cost), prune_(supply != nullptr) {
    residual_.assign(n_, 0.0);
    if (prune_) {
      for (int s = 0; s < m; ++s) residual_[s] = (*supply)(s);
      for (int t = 0; t < k; ++t) residual_[m + t] = (*demand)(t);
      tol_ = 1e-12 * std::max(1.0, supply->sum());
    }
  }

  void Run() {
    const uint32_t all = n_ >= 32 ? ~0u : ((1u << n_) - 1u);
    Recurse(all, 0u, n_, 0.0);
  }

  double best() const { return best_; }
  int64_t count() const { return count_; }

 private:
  bool IsSource(int x) const { return x < m_; }

  double ArcCost(int x, int y) const {
    return IsSource(x) ? (*cost_)(x, y - m_) : (*cost_)(y, x - m_);
  }

  void Recurse(uint32_t alive, uint32_t pending, int remaining, double acc) {
    if (remaining == 1) {
      if (prune_ && residual_[n_ - 1] > tol_) return;
      ++count_;
      if (acc < best_) best_ = acc;
      return;
    }
    for (int v = 0; v < n_ - 1; ++v) {
      const uint32_t vbit = 1u << v;
      if (!(alive & vbit) || (pending & vbit)) continue;
      // Every alive node below v must stay a non-leaf for now.
      const uint32_t below = alive & (vbit - 1u);
      const double flow = residual_[v];
      for (int u = 0; u < n_; ++u) {
        const uint32_t ubit = 1u << u;
        if (!(alive & ubit) || u == v || IsSource(u) == IsSource(v)) continue;
        double step = 0.0;
        double saved = residual_[u];
        if (prune_) {
          if (saved - flow < -tol_) continue;
          const double c = ArcCost(v, u);
          if (flow > tol_) {
            if (std::isinf(c)) continue;
            step = flow * c;
          }
          residual_[u] = std::max(0.0, saved - flow);
        }
        Recurse(alive & ~vbit, (pending | below) & ~ubit, remaining - 1, acc + step);
        residual_[u] = saved;
      }
    }
  }

  int m_;
  int n_;
  const Eigen::MatrixXd* cost_;
  bool prune_;
  double tol_ = 0.0;
  std::vector<double> residual_;
  double best_ = std::numeric_limits<double>::infinity();
  int64_t count_ = 0;
};

}  // namespace

double BruteForceOracle(const FlatProblem& flat) {
  const int m = static_cast<int>(flat.sources.size());
  const int k = static_cast<int>(flat.sinks.size());
  if (m > kOracleMaxSide || k > kOracleMaxSide) {
    throw std::length_error("brute-force oracle is limited to " +
                            std::to_string(kOracleMaxSide) + "x" +
                            std::to_string(kOracleMaxSide) + " flat problems, got " +
                            std::to_string(m) + "x" + std::to_string(k));
  }
  if (m == 0 || k == 0) return 0.0;
  const Eigen::VectorXd supply = flat.Supplies();
  const Eigen::VectorXd demand = flat.Demands();
  BasisEnumerator e(m, k, &supply, &demand, &flat.cost);
  e.Run();
  return e.best();
}

double BruteForceOracle(const VectorMeasure& mu, const VectorMeasure& nu,
                        const CostTensor& cost) {
  return BruteForceOracle(Flatten(mu, nu, cost));
}

namespace detail {

int64_t CountEnumeratedBases(int m, int k) {
  BasisEnumerator e(m, k, nullptr, nullptr, nullptr);
  e.Run();
  return e.count();
}

}  // namespace detail

}  // namespace vot
