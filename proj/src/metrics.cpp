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

#include "vot/metrics.hpp"

#include <cmath>
#include <map>
#include <tuple>

namespace vot {

DistanceResult WassersteinP(const VectorMeasure& mu, const VectorMeasure& nu,
                            const MetricSpec& spec, const SolveOptions& options) {
  const MeasureVerdict verdict = ValidatePair(mu, nu, options.mass_tolerance);
  if (!verdict.ok()) throw InputError(InputError::Kind::kValidation, verdict.Summary());
  if (spec.family.species() != mu.species()) {
    throw InputError(InputError::Kind::kDimension,
                     "metric has " + std::to_string(spec.family.species()) +
                         " species, measures have " + std::to_string(mu.species()));
  }
  CostTensor cost = spec.family.Tensor(mu.support(), nu.support()).Pow(spec.p);
  SolveReport report = SolvePrimal(mu, nu, cost, options);
  const double value = report.primal_value;
  const double distance = report.optimal() ? std::pow(std::max(0.0, value), 1.0 / spec.p) : kInf;
  return {distance, std::move(report), std::move(cost)};
}

double RootCost(const CouplingTensor& plan, const CostTensor& powered, double p) {
  return std::pow(std::max(0.0, plan.Cost(powered)), 1.0 / p);
}

namespace {

SupportSet AuditPoints(const MetricSpec& spec, const std::vector<SupportSet>& supports) {
  if (supports.empty()) {
    if (spec.family.ground()) return *spec.family.ground();
    throw InputError(InputError::Kind::kDimension,
                     "generator metrics need explicit supports to audit");
  }
  return UnionOf(supports);
}

}  // namespace

MtiReport CheckMti(const MetricSpec& spec, const std::vector<SupportSet>& supports,
                   double tolerance) {
  MtiReport report{AuditPoints(spec, supports), {}};
  const SupportSet& pts = report.points;
  const CostTensor d = spec.family.Tensor(pts, pts);
  const int n = d.species();
  const int s = pts.size();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        const auto& dik = d.block(i, k);
        const auto& dij = d.block(i, j);
        const auto& djk = d.block(j, k);
        for (int x = 0; x < s; ++x) {
          for (int y = 0; y < s; ++y) {
            for (int z = 0; z < s; ++z) {
              const double lhs = dik(x, z);
              const double rhs = dij(x, y) + djk(y, z);
              if (lhs > rhs + tolerance * (1.0 + std::abs(rhs))) {
                report.violations.push_back({i, j, k, x, y, z, lhs, rhs});
              }
            }
          }
        }
      }
    }
  }
  return report;
}

AxiomVerdict CheckMetricAxioms(const MetricSpec& spec, const std::vector<SupportSet>& supports,
                               double tolerance) {
  AxiomVerdict v;
  v.mti_report = CheckMti(spec, supports, tolerance);
  v.mti = v.mti_report.satisfied();
  if (!v.mti) {
    v.notes.push_back("mixed triangle inequalities fail (" +
                      std::to_string(v.mti_report.violations.size()) + " violations)");
  }
  const SupportSet& pts = v.mti_report.points;
  const CostTensor d = spec.family.Tensor(pts, pts);
  const int n = d.species();
  const int s = pts.size();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const auto& blk = d.block(i, j);
      for (int x = 0; x < s; ++x) {
        for (int y = 0; y < s; ++y) {
          if (v.symmetric && std::abs(blk(x, y) - blk(y, x)) >
                                 tolerance * (1.0 + std::abs(blk(x, y)))) {
            v.symmetric = false;
            v.notes.push_back("d_" + std::to_string(i + 1) + std::to_string(j + 1) +
                              " is not symmetric at ('" + pts[x].label + "','" +
                              pts[y].label + "')");
          }
          if (i == j && x == y && v.zero_diagonal && blk(x, x) != 0.0) {
            v.zero_diagonal = false;
            v.notes.push_back("d_" + std::to_string(i + 1) + std::to_string(i + 1) + "('" +
                              pts[x].label + "','" + pts[x].label + "') != 0");
          }
          if (i != j && v.off_diagonal_positive && !(blk(x, y) > 0.0)) {
            v.off_diagonal_positive = false;
            v.notes.push_back("d_" + std::to_string(i + 1) + std::to_string(j + 1) +
                              " vanishes at ('" + pts[x].label + "','" + pts[y].label +
                              "'): W_p is only a pseudodistance");
          }
        }
      }
    }
  }
  return v;
}

GluedPlan GluePlans(const CouplingTensor& plan_ab, const CouplingTensor& plan_bc,
                    const VectorMeasure& nu, double tolerance) {
  const int n = nu.species();
  const int mid = nu.atoms();
  if (plan_ab.species() != n || plan_bc.species() != n || plan_ab.cols() != mid ||
      plan_bc.rows() != mid) {
    throw InputError(InputError::Kind::kDimension,
                     "plans and middle measure have incompatible shapes");
  }
  const Eigen::MatrixXd into = plan_ab.TargetMarginals();
  const Eigen::MatrixXd out_of = plan_bc.SourceMarginals();
  const double err_in = (into - nu.weights()).cwiseAbs().maxCoeff();
  const double err_out = (out_of - nu.weights()).cwiseAbs().maxCoeff();
  if (!(err_in <= tolerance) || !(err_out <= tolerance)) {
    throw InputError(InputError::Kind::kValidation,
                     "middle-marginal mismatch: " + std::to_string(std::max(err_in, err_out)));
  }

  // left(i, j, y) = nu^{i,<-}_j(y), right(k, j, y) = nu^{k,->}_j(y).
  auto idx = [n, mid](int s, int j, int y) { return (s * n + j) * mid + y; };
  std::vector<double> left(static_cast<size_t>(n) * n * mid, 0.0);
  std::vector<double> right(left.size(), 0.0);
  for (const auto& e : plan_ab.entries()) left[idx(e.i, e.j, e.b)] += e.mass;
  for (const auto& e : plan_bc.entries()) right[idx(e.j, e.i, e.a)] += e.mass;

  // Second-leg entries grouped by middle (species, atom).
  std::map<std::pair<int, int>, std::vector<const PlanEntry*>> by_middle;
  for (const auto& e : plan_bc.entries()) by_middle[{e.i, e.a}].push_back(&e);

  GluedPlan glued{CouplingTensor(n, plan_ab.rows(), plan_bc.cols()), {}};
  std::map<std::tuple<int, int, int, int>, double> composed;
  for (const auto& e1 : plan_ab.entries()) {
    const int i = e1.i;
    const int j = e1.j;
    const int y = e1.b;
    const double mass_y = nu.weight(j, y);
    if (!(mass_y > 0.0)) continue;
    auto it = by_middle.find({j, y});
    if (it == by_middle.end()) continue;
    const double f_left = left[idx(i, j, y)] / mass_y;
    for (const PlanEntry* e2 : it->second) {
      const int k = e2->j;
      const double f_right = right[idx(k, j, y)] / mass_y;
      const double g_star = e1.mass * f_right;
      const double g_tilde = e2->mass * f_left;
      const double middle = left[idx(i, j, y)] * f_right;
      if (!(middle > 0.0)) continue;
      const double mass = g_star * g_tilde / middle;
      if (!(mass > 0.0)) continue;
      glued.three_point_mass.push_back({i, j, k, e1.a, y, e2->b, mass});
      composed[{i, k, e1.a, e2->b}] += mass;
    }
  }
  std::vector<PlanEntry> entries;
  entries.reserve(composed.size());
  for (const auto& [key, mass] : composed) {
    const auto [i, k, a, c] = key;
    entries.push_back({i, k, a, c, mass});
  }
  glued.composed = CouplingTensor(n, plan_ab.rows(), plan_bc.cols(), std::move(entries));
  return glued;
}

namespace {

// Support of distinct points (by label) and each tuple entry's atom index.
std::pair<SupportSet, std::vector<int>> TupleSupport(const std::vector<Point>& pts) {
  std::vector<Point> distinct;
  std::vector<int> atom;
  std::map<std::string, int> seen;
  for (const auto& pt : pts) {
    auto [it, fresh] = seen.emplace(pt.label, static_cast<int>(distinct.size()));
    if (fresh) {
      distinct.push_back(pt);
    } else if (distinct[it->second].coords != pt.coords) {
      throw InputError(InputError::Kind::kValidation,
                       "label '" + pt.label + "' has conflicting coordinates");
    }
    atom.push_back(it->second);
  }
  return {SupportSet(std::move(distinct)), std::move(atom)};
}

VectorMeasure UniformDiracs(const std::vector<Point>& pts) {
  auto [support, atom] = TupleSupport(pts);
  const int n = static_cast<int>(pts.size());
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, support.size());
  for (int i = 0; i < n; ++i) w(i, atom[i]) = 1.0 / n;
  return VectorMeasure(std::move(support), std::move(w));
}

}  // namespace

TupleResult TupleDistance(const std::vector<Point>& x, const std::vector<Point>& y,
                          const MetricSpec& spec, const SolveOptions& options) {
  const auto n = static_cast<size_t>(spec.family.species());
  if (x.size() != n || y.size() != n) {
    throw InputError(InputError::Kind::kDimension,
                     "tuples need one point per species (" + std::to_string(n) + ")");
  }
  DistanceResult r = WassersteinP(UniformDiracs(x), UniformDiracs(y), spec, options);
  return {r.distance, std::move(r.report)};
}

Triple MtiCounterexample(const MetricSpec& spec, const MtiReport& report,
                         const MtiViolation& violation) {
  const int n = spec.family.species();
  const std::vector<Point> trio = {report.points[violation.x], report.points[violation.y],
                                   report.points[violation.z]};
  auto [support, atom] = TupleSupport(trio);
  auto dirac = [&, &support = support, &atom = atom](int species, int which) {
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, support.size());
    w(species, atom[which]) = 1.0;
    return VectorMeasure(support, std::move(w));
  };
  return {dirac(violation.i, 0), dirac(violation.j, 1), dirac(violation.k, 2)};
}

}  // namespace vot
