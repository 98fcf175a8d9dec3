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
#include <functional>
#include <numeric>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "test_util.hpp"
#include "vot/solver.hpp"

namespace vot {
namespace {

using ::vot::testing::Rng;

int64_t Power(int64_t base, int exp) {
  int64_t r = 1;
  for (int k = 0; k < exp; ++k) r *= base;
  return r;
}

// Every spanning tree of K_{m,k} must be visited exactly once; there are
// m^(k-1) k^(m-1) of them.
TEST(BasisEnumeration, VisitsEverySpanningTreeOnce) {
  for (int m = 1; m <= 5; ++m) {
    for (int k = 1; k <= 5; ++k) {
      EXPECT_EQ(detail::CountEnumeratedBases(m, k), Power(m, k - 1) * Power(k, m - 1))
          << m << "x" << k;
    }
  }
}

// Slow second oracle: try every (m+k-1)-subset of arcs, keep spanning trees,
// solve the tree by leaf elimination and keep nonnegative solutions.
double SubsetOracle(const FlatProblem& flat) {
  const int m = static_cast<int>(flat.sources.size());
  const int k = static_cast<int>(flat.sinks.size());
  const int arcs = m * k;
  const int need = m + k - 1;
  double best = INFINITY;
  std::vector<int> pick;
  std::function<void(int)> rec = [&](int next) {
    if (static_cast<int>(pick.size()) == need) {
      std::vector<int> parent(m + k);
      std::iota(parent.begin(), parent.end(), 0);
      std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
      for (int e : pick) {
        const int a = find(e / k);
        const int b = find(m + e % k);
        if (a == b) return;
        parent[a] = b;
      }
      std::vector<double> residual(m + k);
      for (int s = 0; s < m; ++s) residual[s] = flat.sources[s].mass;
      for (int t = 0; t < k; ++t) residual[m + t] = flat.sinks[t].mass;
      std::vector<bool> used(need, false);
      std::vector<int> degree(m + k, 0);
      for (int e : pick) {
        ++degree[e / k];
        ++degree[m + e % k];
      }
      double cost = 0.0;
      for (int round = 0; round < need; ++round) {
        int leaf_arc = -1;
        int leaf = -1;
        for (int q = 0; q < need && leaf_arc < 0; ++q) {
          if (used[q]) continue;
          const int s = pick[q] / k;
          const int t = m + pick[q] % k;
          if (degree[s] == 1) leaf = s;
          else if (degree[t] == 1) leaf = t;
          if (leaf >= 0) leaf_arc = q;
        }
        const int s = pick[leaf_arc] / k;
        const int t = m + pick[leaf_arc] % k;
        const double flow = residual[leaf];
        if (flow < -1e-12) return;
        if (flow > 0.0) {
          const double c = flat.cost(s, t - m);
          if (std::isinf(c)) return;
          cost += flow * c;
        }
        residual[s] -= flow;
        residual[t] -= flow;
        --degree[s];
        --degree[t];
        used[leaf_arc] = true;
      }
      best = std::min(best, cost);
      return;
    }
    for (int e = next; e < arcs; ++e) {
      if (arcs - e < need - static_cast<int>(pick.size())) break;
      pick.push_back(e);
      rec(e + 1);
      pick.pop_back();
    }
  };
  rec(0);
  return best;
}

TEST(BruteForceOracle, SingleArcIsCostTimesMass) {
  const SupportSet s = SupportSet::OnLine({0.0});
  const VectorMeasure mu(s, Eigen::MatrixXd::Constant(1, 1, 1.0));
  CostTensor c(1, 1, 1);
  c.Set(0, 0, 0, 0, 3.5);
  EXPECT_DOUBLE_EQ(BruteForceOracle(mu, mu, c), 3.5);
  EXPECT_DOUBLE_EQ(BruteForceOracle(mu.Scaled(2.0), mu.Scaled(2.0), c), 7.0);
}

TEST(BruteForceOracle, UniformCostFiveIsFive) {
  Rng rng(8);
  for (int t = 0; t < 20; ++t) {
    const int n = testing::UniformInt(rng, 1, 2);
    const SupportSet s = testing::RandomSupport(rng, testing::UniformInt(rng, 1, 3));
    const SupportSet u = testing::RandomSupport(rng, testing::UniformInt(rng, 1, 3));
    const CostTensor c(n, s.size(), u.size(), 5.0);
    EXPECT_NEAR(BruteForceOracle(testing::RandomMeasure(rng, s, n), testing::RandomMeasure(rng, u, n), c),
                5.0, 1e-12);
  }
}

TEST(BruteForceOracle, EpsilonLineValues) {
  const SupportSet s = SupportSet::OnLine({0, 1, 2});
  const MetricSpec spec(DistanceFamily::DiscreteEpsilon(2, 0.1), 1.0);
  const CostTensor c = spec.family.Tensor(s, s);
  Eigen::MatrixXd mu = Eigen::MatrixXd::Zero(2, 3), nu = mu, lambda = mu;
  mu(0, 0) = 1.0;
  nu(1, 1) = 1.0;
  lambda(0, 2) = 1.0;
  EXPECT_NEAR(BruteForceOracle(VectorMeasure(s, mu), VectorMeasure(s, lambda), c), 2.0, 1e-12);
  EXPECT_NEAR(BruteForceOracle(VectorMeasure(s, mu), VectorMeasure(s, nu), c), 0.1, 1e-12);
  EXPECT_NEAR(BruteForceOracle(VectorMeasure(s, nu), VectorMeasure(s, lambda), c), 0.1, 1e-12);
}

// On a 2x2 flat instance the polytope is the segment t11 in [max(0, p1-q2),
// min(p1, q1)] and the optimum sits at an endpoint.
TEST(BruteForceOracle, TwoByTwoClosedForm) {
  Rng rng(13);
  for (int t = 0; t < 100; ++t) {
    const double p1 = testing::Uniform(rng, 0.05, 0.95);
    const double q1 = testing::Uniform(rng, 0.05, 0.95);
    Eigen::MatrixXd c(2, 2);
    for (int r = 0; r < 4; ++r) c(r / 2, r % 2) = testing::Uniform(rng, 0, 10);
    auto cost = [&](double t11) {
      return t11 * c(0, 0) + (p1 - t11) * c(0, 1) + (q1 - t11) * c(1, 0) +
             (1 - p1 - q1 + t11) * c(1, 1);
    };
    const double expect = std::min(cost(std::max(0.0, p1 + q1 - 1.0)), cost(std::min(p1, q1)));
    FlatProblem flat;
    flat.sources = {{0, 0, p1}, {0, 1, 1 - p1}};
    flat.sinks = {{0, 0, q1}, {0, 1, 1 - q1}};
    flat.cost = c;
    flat.species = 1;
    flat.rows = flat.cols = 2;
    EXPECT_NEAR(BruteForceOracle(flat), expect, 1e-12);
  }
}

TEST(BruteForceOracle, AgreesWithSubsetEnumeration) {
  Rng rng(17);
  for (int t = 0; t < 150; ++t) {
    FlatProblem flat;
    const int m = testing::UniformInt(rng, 1, 4);
    const int k = testing::UniformInt(rng, 1, 4);
    const Eigen::MatrixXd a = testing::RandomWeights(rng, 1, m);
    const Eigen::MatrixXd b = testing::RandomWeights(rng, 1, k);
    for (int s = 0; s < m; ++s) flat.sources.push_back({0, s, a(0, s)});
    for (int u = 0; u < k; ++u) flat.sinks.push_back({0, u, b(0, u)});
    flat.cost = testing::RandomCost(rng, 1, m, k).block(0, 0);
    if (t % 5 == 0) flat.cost(0, 0) = kInf;
    flat.species = 1;
    flat.rows = m;
    flat.cols = k;
    const double slow = SubsetOracle(flat);
    const double fast = BruteForceOracle(flat);
    if (std::isinf(slow)) {
      EXPECT_TRUE(std::isinf(fast));
    } else {
      EXPECT_NEAR(fast, slow, 1e-12 * (1 + std::abs(slow))) << m << "x" << k;
    }
  }
}

TEST(BruteForceOracle, RejectsOversizedProblems) {
  const SupportSet s = SupportSet::OnLine({0, 1, 2, 3, 4, 5, 6});
  Eigen::MatrixXd w = Eigen::MatrixXd::Constant(1, 7, 1.0 / 7);
  const VectorMeasure mu(s, w);
  EXPECT_THROW(BruteForceOracle(mu, mu, CostTensor(1, 7, 7, 1.0)), std::length_error);
}

}  // namespace
}  // namespace vot
