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

#include "vot/dual.hpp"

#include <cmath>

namespace vot {

double DualValue(const PotentialPair& pp, const VectorMeasure& mu, const VectorMeasure& nu) {
  double s = 0.0;
  for (int i = 0; i < mu.species(); ++i) {
    for (int a = 0; a < mu.atoms(); ++a) {
      if (mu.weight(i, a) != 0.0) s += pp.phi(i, a) * mu.weight(i, a);
    }
  }
  for (int j = 0; j < nu.species(); ++j) {
    for (int b = 0; b < nu.atoms(); ++b) {
      if (nu.weight(j, b) != 0.0) s += pp.psi(j, b) * nu.weight(j, b);
    }
  }
  return s;
}

DualFeasibility CheckDualFeasible(const PotentialPair& pp, const CostTensor& cost,
                                  double tolerance) {
  DualFeasibility out;
  const int n = cost.species();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const auto& c = cost.block(i, j);
      for (int a = 0; a < cost.rows(); ++a) {
        for (int b = 0; b < cost.cols(); ++b) {
          if (std::isinf(c(a, b))) continue;
          const double excess = pp.phi(i, a) + pp.psi(j, b) - c(a, b);
          if (excess > out.worst.amount) out.worst = {i, j, a, b, excess};
        }
      }
    }
  }
  out.ok = !(out.worst.amount > tolerance);
  return out;
}

namespace {

// min over (species s, index r) of cost(s, r, other) - f(s, r); `along_rows`
// selects whether f is indexed by the cost's rows (c-transform) or columns
// (c-bar-transform).
TransformResult Transform(const Eigen::MatrixXd& f, std::span<const Eigen::MatrixXd> costs,
                          bool along_rows, bool track) {
  const int n = static_cast<int>(costs.size());
  if (n == 0 || f.rows() != n) {
    throw InputError(InputError::Kind::kDimension, "potential and cost species counts differ");
  }
  const Eigen::Index inner = along_rows ? costs[0].rows() : costs[0].cols();
  const Eigen::Index outer = along_rows ? costs[0].cols() : costs[0].rows();
  if (f.cols() != inner) {
    throw InputError(InputError::Kind::kDimension, "potential length does not match the costs");
  }
  TransformResult out;
  out.values = Eigen::VectorXd::Constant(outer, kInf);
  out.unbounded.assign(outer, true);
  if (track) out.argmin.assign(outer, {-1, -1});
  for (Eigen::Index y = 0; y < outer; ++y) {
    double best = kInf;
    for (int s = 0; s < n; ++s) {
      for (Eigen::Index x = 0; x < inner; ++x) {
        const double c = along_rows ? costs[s](x, y) : costs[s](y, x);
        if (std::isinf(c)) continue;
        const double v = c - f(s, x);
        // Strict comparison keeps the first (smallest) (species, atom).
        if (out.unbounded[y] || v < best) {
          best = v;
          out.unbounded[y] = false;
          if (track) out.argmin[y] = {s, static_cast<int>(x)};
        }
      }
    }
    out.values(y) = best;
  }
  return out;
}

std::vector<Eigen::MatrixXd> Column(const CostTensor& cost, int j) {
  std::vector<Eigen::MatrixXd> out;
  for (int i = 0; i < cost.species(); ++i) out.push_back(cost.block(i, j));
  return out;
}

std::vector<Eigen::MatrixXd> Row(const CostTensor& cost, int i) {
  std::vector<Eigen::MatrixXd> out;
  for (int j = 0; j < cost.species(); ++j) out.push_back(cost.block(i, j));
  return out;
}

}  // namespace

TransformResult CTransform(const Eigen::MatrixXd& f, std::span<const Eigen::MatrixXd> costs,
                           bool track_argmin) {
  return Transform(f, costs, /*along_rows=*/true, track_argmin);
}

TransformResult CBarTransform(const Eigen::MatrixXd& g, std::span<const Eigen::MatrixXd> costs,
                              bool track_argmin) {
  return Transform(g, costs, /*along_rows=*/false, track_argmin);
}

TransformResult TargetTransform(const Eigen::MatrixXd& phi, const CostTensor& cost, int j,
                                bool track_argmin) {
  const auto col = Column(cost, j);
  return CTransform(phi, col, track_argmin);
}

TransformResult SourceTransform(const Eigen::MatrixXd& psi, const CostTensor& cost, int i,
                                bool track_argmin) {
  const auto row = Row(cost, i);
  return CBarTransform(psi, row, track_argmin);
}

PotentialPair ImprovePotentials(const PotentialPair& pp, const CostTensor& cost) {
  const int n = cost.species();
  PotentialPair out = pp;
  for (int j = 0; j < n; ++j) {
    out.psi.row(j) = TargetTransform(pp.phi, cost, j).values.transpose();
  }
  for (int i = 0; i < n; ++i) {
    out.phi.row(i) = SourceTransform(out.psi, cost, i).values.transpose();
  }
  return out;
}

SweepResult IterateSweeps(const PotentialPair& start, const CostTensor& cost,
                          const VectorMeasure& mu, const VectorMeasure& nu,
                          const SweepOptions& options) {
  SweepResult r;
  r.potentials = start;
  r.values.push_back(DualValue(start, mu, nu));
  while (r.sweeps < options.max_sweeps) {
    r.potentials = ImprovePotentials(r.potentials, cost);
    ++r.sweeps;
    r.values.push_back(DualValue(r.potentials, mu, nu));
    const double gain = r.values.back() - r.values[r.values.size() - 2];
    if (gain < options.stall_threshold) {
      r.stalled = true;
      break;
    }
  }
  return r;
}

OptimalityVerdict CheckOptimality(const CouplingTensor& plan, const PotentialPair& pp,
                                  const CostTensor& cost, double mass_threshold,
                                  double tolerance) {
  OptimalityVerdict v;
  for (const auto& e : plan.entries()) {
    if (!(e.mass > mass_threshold)) continue;
    const double slack = cost(e.i, e.j, e.a, e.b) - pp.phi(e.i, e.a) - pp.psi(e.j, e.b);
    if (!(std::abs(slack) <= tolerance)) {
      v.violations.push_back({e.i, e.j, e.a, e.b, e.mass, slack});
    }
  }
  return v;
}

void NormalizePotentials(PotentialPair& pp) {
  double m = kInf;
  for (Eigen::Index k = 0; k < pp.phi.size(); ++k) {
    const double v = pp.phi.data()[k];
    if (std::isfinite(v)) m = std::min(m, v);
  }
  if (!std::isfinite(m)) return;
  pp.phi.array() -= m;
  pp.psi.array() += m;
}

}  // namespace vot
