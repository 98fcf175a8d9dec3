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
#include <vector>

#include <gtest/gtest.h>

#include "test_util.hpp"
#include "vot/dual.hpp"
#include "vot/solver.hpp"

namespace vot {
namespace {

using ::vot::testing::Rng;

Eigen::MatrixXd RandomMatrix(Rng& rng, int rows, int cols, double lo, double hi) {
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = testing::Uniform(rng, lo, hi);
  return m;
}

// Scalar c-transform written out directly: g(y) = min_x c(x, y) - f(x).
Eigen::VectorXd ScalarTransform(const Eigen::VectorXd& f, const Eigen::MatrixXd& c) {
  Eigen::VectorXd g(c.cols());
  for (Eigen::Index y = 0; y < c.cols(); ++y) g(y) = (c.col(y) - f).minCoeff();
  return g;
}

TEST(DualValue, ZeroPotentials) {
  Rng rng(1);
  const SupportSet s = testing::RandomSupport(rng, 3);
  const VectorMeasure mu = testing::RandomMeasure(rng, s, 2);
  EXPECT_EQ(DualValue(PotentialPair::Zero(2, 3, 3), mu, mu), 0.0);
}

TEST(DualValue, ConstantCostPotential) {
  Rng rng(2);
  const SupportSet s = testing::RandomSupport(rng, 4);
  const VectorMeasure mu = testing::RandomMeasure(rng, s, 3);
  const VectorMeasure nu = testing::RandomMeasure(rng, s, 3);
  PotentialPair pp = PotentialPair::Zero(3, 4, 4);
  pp.phi.setConstant(2.5);
  EXPECT_NEAR(DualValue(pp, mu, nu), 2.5, 1e-12);
  EXPECT_TRUE(CheckDualFeasible(pp, CostTensor(3, 4, 4, 2.5)).ok);
}

TEST(DualValue, ZeroWeightAtomsDoNotCount) {
  const SupportSet s = SupportSet::OnLine({0, 1});
  Eigen::MatrixXd w(1, 2);
  w << 1.0, 0.0;
  PotentialPair pp = PotentialPair::Zero(1, 2, 2);
  pp.phi(0, 1) = kInf;
  EXPECT_EQ(DualValue(pp, VectorMeasure(s, w), VectorMeasure(s, w)), 0.0);
}

TEST(DualValue, OptimalPairOnEpsilonLine) {
  const SupportSet s = SupportSet::OnLine({0, 1, 2});
  const CostTensor c = DistanceFamily::DiscreteEpsilon(2, 0.1).Tensor(s, s);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2, 3), b = a;
  a(0, 0) = 1.0;
  b(0, 2) = 1.0;
  const VectorMeasure mu(s, a), lambda(s, b);
  const SolveReport r = SolvePrimal(mu, lambda, c);
  EXPECT_NEAR(DualValue(r.potentials, mu, lambda), 2.0, 1e-12);
  EXPECT_NEAR(BruteForceOracle(mu, lambda, c), 2.0, 1e-12);
}

TEST(CheckDualFeasible, ZeroPotentialsOnNonnegativeCosts) {
  Rng rng(3);
  const CostTensor c = testing::RandomCost(rng, 2, 3, 4);
  EXPECT_TRUE(CheckDualFeasible(PotentialPair::Zero(2, 3, 4), c).ok);
}

TEST(CheckDualFeasible, ReportsConstructedBreach) {
  CostTensor c(2, 1, 1, 2.0);
  PotentialPair pp = PotentialPair::Zero(2, 1, 1);
  pp.phi(0, 0) = c(0, 0, 0, 0) + 1.0;
  const DualFeasibility f = CheckDualFeasible(pp, c);
  EXPECT_FALSE(f.ok);
  EXPECT_EQ(f.worst.i, 0);
  EXPECT_EQ(f.worst.j, 0);
  EXPECT_EQ(f.worst.a, 0);
  EXPECT_EQ(f.worst.b, 0);
  EXPECT_DOUBLE_EQ(f.worst.amount, 1.0);
}

TEST(CheckDualFeasible, SolverPotentialsAreFeasible) {
  Rng rng(4);
  for (int t = 0; t < 50; ++t) {
    const int n = testing::UniformInt(rng, 1, 3);
    const SupportSet s = testing::RandomSupport(rng, testing::UniformInt(rng, 1, 6));
    const SupportSet u = testing::RandomSupport(rng, testing::UniformInt(rng, 1, 6));
    const CostTensor c = testing::RandomCost(rng, n, s.size(), u.size());
    const SolveReport r =
        SolvePrimal(testing::RandomMeasure(rng, s, n), testing::RandomMeasure(rng, u, n), c);
    EXPECT_TRUE(CheckDualFeasible(r.potentials, c).ok);
  }
}

TEST(CTransform, ZeroPotentialOnLine) {
  const SupportSet s = SupportSet::OnLine({0, 1});
  const std::vector<Eigen::MatrixXd> costs = {testing::LineDistance(s, s)};
  const TransformResult g = CTransform(Eigen::MatrixXd::Zero(1, 2), costs);
  EXPECT_EQ(g.values(0), 0.0);
  EXPECT_EQ(g.values(1), 0.0);
}

TEST(CTransform, DoubleMinOverSpecies) {
  Eigen::MatrixXd f(2, 1);
  f << 2.0, 5.0;
  const std::vector<Eigen::MatrixXd> costs = {Eigen::MatrixXd::Constant(1, 1, 3.0),
                                              Eigen::MatrixXd::Constant(1, 1, 4.0)};
  const TransformResult g = CTransform(f, costs, /*track_argmin=*/true);
  EXPECT_DOUBLE_EQ(g.values(0), -1.0);
  EXPECT_EQ(g.argmin[0], std::make_pair(1, 0));
}

TEST(CTransform, AllInfiniteColumnIsFlagged) {
  Eigen::MatrixXd c(2, 2);
  c << 1.0, kInf, 2.0, kInf;
  const std::vector<Eigen::MatrixXd> costs = {c};
  const TransformResult g = CTransform(Eigen::MatrixXd::Zero(1, 2), costs, true);
  EXPECT_FALSE(g.unbounded[0]);
  EXPECT_TRUE(g.unbounded[1]);
  EXPECT_EQ(g.values(1), kInf);
  EXPECT_EQ(g.argmin[1], std::make_pair(-1, -1));
}

TEST(CTransform, ArgminPrefersSmallestSpeciesThenAtom) {
  const std::vector<Eigen::MatrixXd> costs = {Eigen::MatrixXd::Constant(2, 1, 1.0),
                                              Eigen::MatrixXd::Constant(2, 1, 1.0)};
  const TransformResult g = CTransform(Eigen::MatrixXd::Zero(2, 2), costs, true);
  EXPECT_EQ(g.argmin[0], std::make_pair(0, 0));
}

TEST(CBarTransform, MirrorsTransposedCTransform) {
  Rng rng(5);
  for (int t = 0; t < 50; ++t) {
    const int n = testing::UniformInt(rng, 1, 3);
    std::vector<Eigen::MatrixXd> costs, transposed;
    for (int i = 0; i < n; ++i) {
      costs.push_back(RandomMatrix(rng, 3, 4, 0, 5));
      transposed.push_back(costs.back().transpose());
    }
    const Eigen::MatrixXd g = RandomMatrix(rng, n, 4, -2, 2);
    EXPECT_EQ(CBarTransform(g, costs).values, CTransform(g, transposed).values);
  }
}

// For the pair (c, c + kappa) the vector transform is the scalar transform
// of the pointwise max f_1 v (f_2 - kappa).
TEST(CTransform, KappaPairEqualsTransformOfPointwiseMax) {
  Rng rng(6);
  for (int t = 0; t < 200; ++t) {
    const int m = testing::UniformInt(rng, 1, 6);
    const int k = testing::UniformInt(rng, 1, 6);
    const double kappa = testing::Uniform(rng, 0.0, 3.0);
    const Eigen::MatrixXd c = RandomMatrix(rng, m, k, 0, 5);
    const Eigen::MatrixXd f = RandomMatrix(rng, 2, m, -3, 3);
    const std::vector<Eigen::MatrixXd> first = {c, (c.array() + kappa).matrix()};
    const std::vector<Eigen::MatrixXd> second = {(c.array() + kappa).matrix(), c};
    const Eigen::VectorXd h1 = f.row(0).transpose().cwiseMax((f.row(1).array() - kappa).matrix().transpose());
    const Eigen::VectorXd h2 = (f.row(0).array() - kappa).matrix().transpose().cwiseMax(f.row(1).transpose());
    const Eigen::VectorXd g1 = CTransform(f, first).values;
    const Eigen::VectorXd g2 = CTransform(f, second).values;
    EXPECT_LE((g1 - ScalarTransform(h1, c)).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LE((g2 - ScalarTransform(h2, c)).cwiseAbs().maxCoeff(), 1e-12);
  }
}

// The pointwise min in place of the max overshoots: one atom, c = 0,
// kappa = 1, f = (0, 0) gives 0 for the vector transform but 1 for
// [f_1 ^ (f_2 - kappa)]^c.
TEST(CTransform, KappaPairIsNotTransformOfPointwiseMin) {
  Eigen::MatrixXd f = Eigen::MatrixXd::Zero(2, 1);
  const std::vector<Eigen::MatrixXd> costs = {Eigen::MatrixXd::Zero(1, 1),
                                              Eigen::MatrixXd::Constant(1, 1, 1.0)};
  EXPECT_DOUBLE_EQ(CTransform(f, costs).values(0), 0.0);
  Eigen::VectorXd min_form(1);
  min_form << std::min(0.0, 0.0 - 1.0);
  EXPECT_DOUBLE_EQ(ScalarTransform(min_form, Eigen::MatrixXd::Zero(1, 1))(0), 1.0);
}

TEST(CTransform, IsFeasibleAndMaximal) {
  Rng rng(7);
  for (int t = 0; t < 200; ++t) {
    const int n = testing::UniformInt(rng, 1, 3);
    const int m = testing::UniformInt(rng, 1, 5);
    const int k = testing::UniformInt(rng, 1, 5);
    std::vector<Eigen::MatrixXd> costs;
    for (int i = 0; i < n; ++i) costs.push_back(RandomMatrix(rng, m, k, 0, 5));
    const Eigen::MatrixXd f = RandomMatrix(rng, n, m, -2, 2);
    const Eigen::VectorXd g = CTransform(f, costs).values;
    for (int i = 0; i < n; ++i)
      for (int x = 0; x < m; ++x)
        for (int y = 0; y < k; ++y) EXPECT_LE(f(i, x) + g(y), costs[i](x, y) + 1e-12);
    // Random candidates: every feasible one lies below g.
    for (int trial = 0; trial < 20; ++trial) {
      Eigen::VectorXd h = g;
      for (int y = 0; y < k; ++y) h(y) += testing::Uniform(rng, -1.0, 0.3);
      bool feasible = true;
      for (int i = 0; i < n && feasible; ++i)
        for (int x = 0; x < m && feasible; ++x)
          for (int y = 0; y < k && feasible; ++y) feasible = f(i, x) + h(y) <= costs[i](x, y);
      if (feasible) EXPECT_LE((h - g).maxCoeff(), 1e-12);
    }
    // Raising g anywhere breaks feasibility.
    for (int y = 0; y < k; ++y) {
      bool breaks = false;
      for (int i = 0; i < n; ++i)
        for (int x = 0; x < m; ++x) breaks |= f(i, x) + g(y) + 1e-9 > costs[i](x, y);
      EXPECT_TRUE(breaks);
    }
  }
}

TEST(ImprovePotentials, FirstSweepFromZero) {
  Rng rng(8);
  const int n = 2;
  const CostTensor c = testing::RandomCost(rng, n, 3, 4);
  const PotentialPair out = ImprovePotentials(PotentialPair::Zero(n, 3, 4), c);
  for (int j = 0; j < n; ++j) {
    for (int b = 0; b < 4; ++b) {
      double expect = kInf;
      for (int i = 0; i < n; ++i)
        for (int a = 0; a < 3; ++a) expect = std::min(expect, c(i, j, a, b));
      EXPECT_DOUBLE_EQ(out.psi(j, b), expect);
    }
  }
}

TEST(ImprovePotentials, FeasibleAndNonDecreasing) {
  Rng rng(9);
  for (int t = 0; t < 200; ++t) {
    const int n = testing::UniformInt(rng, 1, 3);
    const SupportSet s = testing::RandomSupport(rng, testing::UniformInt(rng, 1, 5));
    const SupportSet u = testing::RandomSupport(rng, testing::UniformInt(rng, 1, 5));
    const VectorMeasure mu = testing::RandomMeasure(rng, s, n, 0.2);
    const VectorMeasure nu = testing::RandomMeasure(rng, u, n, 0.2);
    const CostTensor c = testing::RandomCost(rng, n, s.size(), u.size());
    // A random feasible start: random phi, psi pushed down to feasibility.
    PotentialPair pp{RandomMatrix(rng, n, s.size(), -1, 1), Eigen::MatrixXd()};
    pp.psi.resize(n, u.size());
    for (int j = 0; j < n; ++j) pp.psi.row(j) = TargetTransform(pp.phi, c, j).values.transpose();
    pp.psi.array() -= testing::Uniform(rng, 0, 1);
    ASSERT_TRUE(CheckDualFeasible(pp, c, 1e-12).ok);
    const PotentialPair next = ImprovePotentials(pp, c);
    EXPECT_TRUE(CheckDualFeasible(next, c, 1e-12).ok);
    EXPECT_GE(DualValue(next, mu, nu), DualValue(pp, mu, nu) - 1e-12);
  }
}

TEST(ImprovePotentials, OptimalPairKeepsItsValue) {
  Rng rng(10);
  for (int t = 0; t < 50; ++t) {
    const int n = testing::UniformInt(rng, 1, 3);
    const SupportSet s = testing::RandomSupport(rng, testing::UniformInt(rng, 1, 5));
    const SupportSet u = testing::RandomSupport(rng, testing::UniformInt(rng, 1, 5));
    const VectorMeasure mu = testing::RandomMeasure(rng, s, n, 0.2);
    const VectorMeasure nu = testing::RandomMeasure(rng, u, n, 0.2);
    const CostTensor c = testing::RandomCost(rng, n, s.size(), u.size());
    const SolveReport r = SolvePrimal(mu, nu, c);
    const PotentialPair next = ImprovePotentials(r.potentials, c);
    EXPECT_NEAR(DualValue(next, mu, nu), DualValue(r.potentials, mu, nu), 1e-10);
  }
}

TEST(IterateSweeps, MonotoneAndBelowPrimal) {
  Rng rng(11);
  for (int t = 0; t < 100; ++t) {
    const int n = testing::UniformInt(rng, 1, 3);
    const SupportSet s = testing::RandomSupport(rng, testing::UniformInt(rng, 1, 5));
    const SupportSet u = testing::RandomSupport(rng, testing::UniformInt(rng, 1, 5));
    const VectorMeasure mu = testing::RandomMeasure(rng, s, n, 0.2);
    const VectorMeasure nu = testing::RandomMeasure(rng, u, n, 0.2);
    const CostTensor c = testing::RandomCost(rng, n, s.size(), u.size());
    const SweepResult sw = IterateSweeps(PotentialPair::Zero(n, s.size(), u.size()), c, mu, nu);
    const double primal = SolvePrimal(mu, nu, c).primal_value;
    for (size_t k = 1; k < sw.values.size(); ++k) EXPECT_GE(sw.values[k], sw.values[k - 1] - 1e-12);
    for (double v : sw.values) EXPECT_LE(v, primal + 1e-9);
    EXPECT_TRUE(CheckDualFeasible(sw.potentials, c, 1e-9).ok);
    EXPECT_TRUE(sw.stalled || sw.sweeps == SweepOptions{}.max_sweeps);
  }
}

TEST(WeakDuality, FeasiblePairsStayBelowFeasiblePlans) {
  Rng rng(12);
  for (int t = 0; t < 300; ++t) {
    const int n = testing::UniformInt(rng, 1, 3);
    const SupportSet s = testing::RandomSupport(rng, testing::UniformInt(rng, 1, 5));
    const SupportSet u = testing::RandomSupport(rng, testing::UniformInt(rng, 1, 5));
    const VectorMeasure mu = testing::RandomMeasure(rng, s, n, 0.2);
    const VectorMeasure nu = testing::RandomMeasure(rng, u, n, 0.2);
    const CostTensor c = testing::RandomCost(rng, n, s.size(), u.size(), -3, 7);
    PotentialPair pp{RandomMatrix(rng, n, s.size(), -4, 4), Eigen::MatrixXd(n, u.size())};
    for (int j = 0; j < n; ++j) pp.psi.row(j) = TargetTransform(pp.phi, c, j).values.transpose();
    EXPECT_LE(DualValue(pp, mu, nu), ProductPlan(mu, nu).Cost(c) + 1e-12);
    EXPECT_LE(DualValue(pp, mu, nu), SolvePrimal(mu, nu, c).primal_value + 1e-9);
  }
}

// Cost family (d, d + kappa) on one metric support: after a sweep every
// potential is 1-Lipschitz and the two species differ by at most kappa.
TEST(ImprovePotentials, KappaFamilyCharacterization) {
  Rng rng(13);
  for (int t = 0; t < 100; ++t) {
    const int m = testing::UniformInt(rng, 1, 7);
    const SupportSet s = testing::RandomSupport(rng, m, testing::UniformInt(rng, 1, 3));
    const double kappa = testing::Uniform(rng, 0.0, 2.0);
    const CostTensor c = DistanceFamily::LpNormPlusKappa(2, kappa).Tensor(s, s);
    const Eigen::MatrixXd d = c.block(0, 0);
    PotentialPair pp{RandomMatrix(rng, 2, m, -5, 5), RandomMatrix(rng, 2, m, -50, -40)};
    const PotentialPair out = ImprovePotentials(pp, c);
    for (const Eigen::MatrixXd* pot : {&out.psi, &out.phi}) {
      for (int k = 0; k < 2; ++k)
        for (int x = 0; x < m; ++x)
          for (int y = 0; y < m; ++y)
            EXPECT_LE(std::abs((*pot)(k, x) - (*pot)(k, y)), d(x, y) + 1e-10);
      EXPECT_LE((pot->row(0) - pot->row(1)).cwiseAbs().maxCoeff(), kappa + 1e-10);
    }
  }
}

TEST(CheckOptimality, SolverOutputsOnEpsilonLine) {
  const SupportSet s = SupportSet::OnLine({0, 1, 2});
  const CostTensor c = DistanceFamily::DiscreteEpsilon(2, 0.1).Tensor(s, s);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2, 3), b = a, l = a;
  a(0, 0) = 1.0;
  b(1, 1) = 1.0;
  l(0, 2) = 1.0;
  for (const auto& [x, y] : {std::pair{a, b}, std::pair{a, l}, std::pair{b, l}}) {
    const SolveReport r = SolvePrimal(VectorMeasure(s, x), VectorMeasure(s, y), c);
    EXPECT_TRUE(CheckOptimality(r.plan, r.potentials, c).ok());
  }
}

TEST(CheckOptimality, ZeroPotentialsFailOnPositiveOptimum) {
  Rng rng(14);
  for (int t = 0; t < 50; ++t) {
    const int n = testing::UniformInt(rng, 1, 3);
    const SupportSet s = testing::RandomSupport(rng, testing::UniformInt(rng, 1, 5));
    const SupportSet u = testing::RandomSupport(rng, testing::UniformInt(rng, 1, 5));
    const CostTensor c = testing::RandomCost(rng, n, s.size(), u.size(), 0.5, 5);
    const SolveReport r =
        SolvePrimal(testing::RandomMeasure(rng, s, n), testing::RandomMeasure(rng, u, n), c);
    ASSERT_GT(r.primal_value, 0.0);
    const OptimalityVerdict v = CheckOptimality(r.plan, PotentialPair::Zero(n, s.size(), u.size()), c);
    EXPECT_FALSE(v.ok());
  }
}

TEST(CheckOptimality, SingleAtomTightPair) {
  const CostTensor c(1, 1, 1, 4.0);
  const CouplingTensor plan(1, 1, 1, {{0, 0, 0, 0, 1.0}});
  PotentialPair pp = PotentialPair::Zero(1, 1, 1);
  pp.phi(0, 0) = 1.5;
  pp.psi(0, 0) = 2.5;
  EXPECT_TRUE(CheckOptimality(plan, pp, c).ok());
  pp.psi(0, 0) = 2.0;
  const OptimalityVerdict v = CheckOptimality(plan, pp, c);
  ASSERT_EQ(v.violations.size(), 1u);
  EXPECT_DOUBLE_EQ(v.violations[0].slack, 0.5);
}

TEST(NormalizePotentials, ShiftKeepsValueAndFeasibility) {
  Rng rng(15);
  for (int t = 0; t < 50; ++t) {
    const int n = testing::UniformInt(rng, 1, 3);
    const SupportSet s = testing::RandomSupport(rng, 4);
    const VectorMeasure mu = testing::RandomMeasure(rng, s, n);
    const VectorMeasure nu = testing::RandomMeasure(rng, s, n);
    PotentialPair pp{RandomMatrix(rng, n, 4, -3, 3), RandomMatrix(rng, n, 4, -3, 3)};
    const double before = DualValue(pp, mu, nu);
    NormalizePotentials(pp);
    EXPECT_NEAR(DualValue(pp, mu, nu), before, 1e-12);
    EXPECT_NEAR(pp.phi.minCoeff(), 0.0, 1e-15);
  }
}

}  // namespace
}  // namespace vot
