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

#include "vot/measures.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace vot {

namespace {

std::string FormatReal(double v) {
  std::ostringstream out;
  out.precision(12);
  out << v;
  return out.str();
}

}  // namespace

SupportSet::SupportSet(std::vector<Point> points) : points_(std::move(points)) {
  if (points_.empty()) {
    throw InputError(InputError::Kind::kValidation, "support set is empty");
  }
  dim_ = static_cast<int>(points_.front().coords.size());
  for (int a = 0; a < size(); ++a) {
    const Point& pt = points_[a];
    if (static_cast<int>(pt.coords.size()) != dim_) {
      throw InputError(InputError::Kind::kDimension,
                       "point '" + pt.label + "' has " +
                           std::to_string(pt.coords.size()) +
                           " coordinates, expected " + std::to_string(dim_));
    }
    for (double c : pt.coords) {
      if (!std::isfinite(c)) {
        throw InputError(InputError::Kind::kValidation,
                         "point '" + pt.label + "' has a non-finite coordinate");
      }
    }
    if (!index_.emplace(pt.label, a).second) {
      throw InputError(InputError::Kind::kValidation,
                       "duplicate point label '" + pt.label + "'");
    }
  }
}

SupportSet SupportSet::OnLine(const std::vector<double>& xs) {
  std::vector<Point> pts;
  pts.reserve(xs.size());
  for (size_t a = 0; a < xs.size(); ++a) {
    pts.push_back({std::to_string(a), {xs[a]}});
  }
  return SupportSet(std::move(pts));
}

std::optional<int> SupportSet::IndexOf(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool SupportSet::SameAs(const SupportSet& other) const {
  if (size() != other.size()) return false;
  for (int a = 0; a < size(); ++a) {
    if (points_[a].label != other.points_[a].label ||
        points_[a].coords != other.points_[a].coords) {
      return false;
    }
  }
  return true;
}

bool SamePoint(const Point& x, const Point& y) {
  if (!x.coords.empty() && !y.coords.empty()) return x.coords == y.coords;
  return x.label == y.label;
}

VectorMeasure::VectorMeasure(SupportSet support, Eigen::MatrixXd weights)
    : support_(std::move(support)), weights_(std::move(weights)) {
  if (weights_.rows() < 1) {
    throw InputError(InputError::Kind::kDimension,
                     "a measure needs at least one species");
  }
  if (weights_.cols() != support_.size()) {
    throw InputError(InputError::Kind::kDimension,
                     "weights have " + std::to_string(weights_.cols()) +
                         " atoms but the support has " +
                         std::to_string(support_.size()) + " points");
  }
}

VectorMeasure VectorMeasure::Scaled(double factor) const {
  return VectorMeasure(support_, weights_ * factor);
}

std::string MeasureVerdict::Summary() const {
  if (ok()) return "OK";
  std::string out;
  for (const auto& v : violations) {
    if (!out.empty()) out += "; ";
    out += v.message;
  }
  return out;
}

MeasureVerdict ValidateMeasure(const VectorMeasure& m,
                               const MeasureCheckOptions& options) {
  MeasureVerdict verdict;
  for (int i = 0; i < m.species(); ++i) {
    for (int a = 0; a < m.atoms(); ++a) {
      const double w = m.weight(i, a);
      if (!std::isfinite(w)) {
        verdict.violations.push_back(
            {MeasureViolation::Kind::kNonFinite, i, a, w,
             "non-finite weight at species " + std::to_string(i + 1) +
                 ", atom " + std::to_string(a + 1)});
      } else if (w < 0.0) {
        verdict.violations.push_back(
            {MeasureViolation::Kind::kNegativeWeight, i, a, w,
             "negative weight at species " + std::to_string(i + 1) +
                 ", atom " + std::to_string(a + 1)});
      }
    }
  }
  if (options.require_unit_mass) {
    const double total = m.total_mass();
    if (!(std::abs(total - 1.0) <= options.mass_tolerance)) {
      verdict.violations.push_back(
          {MeasureViolation::Kind::kTotalMass, -1, -1, total,
           "total mass " + FormatReal(total) + " != 1"});
    }
  }
  return verdict;
}

MeasureVerdict ValidatePair(const VectorMeasure& mu, const VectorMeasure& nu,
                            double mass_tolerance) {
  MeasureCheckOptions relaxed;
  relaxed.require_unit_mass = false;
  MeasureVerdict verdict = ValidateMeasure(mu, relaxed);
  MeasureVerdict other = ValidateMeasure(nu, relaxed);
  verdict.violations.insert(verdict.violations.end(), other.violations.begin(),
                            other.violations.end());
  if (mu.species() != nu.species()) {
    verdict.violations.push_back(
        {MeasureViolation::Kind::kTotalMass, -1, -1, 0.0,
         "species counts differ: " + std::to_string(mu.species()) + " vs " +
             std::to_string(nu.species())});
  }
  const double a = mu.total_mass();
  const double b = nu.total_mass();
  if (!(std::abs(a - b) <= mass_tolerance)) {
    verdict.violations.push_back(
        {MeasureViolation::Kind::kTotalMass, -1, -1, a - b,
         "total masses differ: " + FormatReal(a) + " vs " + FormatReal(b)});
  }
  return verdict;
}

CostTensor::CostTensor(int species, int rows, int cols, double fill)
    : n_(species), rows_(rows), cols_(cols) {
  if (species < 1 || rows < 1 || cols < 1) {
    throw InputError(InputError::Kind::kDimension, "cost tensor has an empty dimension");
  }
  CheckEntry(fill);
  blocks_.assign(static_cast<size_t>(n_) * n_,
                 Eigen::MatrixXd::Constant(rows, cols, fill));
}

CostTensor::CostTensor(int species, std::vector<Eigen::MatrixXd> blocks)
    : n_(species), blocks_(std::move(blocks)) {
  if (species < 1 || blocks_.size() != static_cast<size_t>(n_) * n_) {
    throw InputError(InputError::Kind::kDimension,
                     "expected " + std::to_string(n_ * n_) + " cost blocks, got " +
                         std::to_string(blocks_.size()));
  }
  rows_ = static_cast<int>(blocks_[0].rows());
  cols_ = static_cast<int>(blocks_[0].cols());
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      const auto& blk = blocks_[i * n_ + j];
      if (blk.rows() != rows_ || blk.cols() != cols_) {
        throw InputError(InputError::Kind::kDimension,
                         "cost block (" + std::to_string(i) + "," + std::to_string(j) +
                             ") is " + std::to_string(blk.rows()) + "x" +
                             std::to_string(blk.cols()) + ", expected " +
                             std::to_string(rows_) + "x" + std::to_string(cols_));
      }
      for (Eigen::Index k = 0; k < blk.size(); ++k) CheckEntry(blk.data()[k]);
    }
  }
}

void CostTensor::CheckEntry(double v) const {
  if (std::isnan(v)) {
    throw InputError(InputError::Kind::kValidation, "cost entry is NaN");
  }
  if (v == -kInf) {
    throw InputError(InputError::Kind::kValidation, "cost entry is -infinity");
  }
}

void CostTensor::Set(int i, int j, const Eigen::MatrixXd& block) {
  if (block.rows() != rows_ || block.cols() != cols_) {
    throw InputError(InputError::Kind::kDimension,
                     "cost block (" + std::to_string(i) + "," + std::to_string(j) +
                         ") has the wrong shape");
  }
  for (Eigen::Index k = 0; k < block.size(); ++k) CheckEntry(block.data()[k]);
  blocks_[i * n_ + j] = block;
}

void CostTensor::Set(int i, int j, int a, int b, double value) {
  CheckEntry(value);
  blocks_[i * n_ + j](a, b) = value;
}

void CostTensor::MarkMetricFamily(const SupportSet& source, const SupportSet& target) {
  if (source.size() != rows_ || target.size() != cols_) {
    throw InputError(InputError::Kind::kDimension,
                     "supports do not match the cost tensor shape");
  }
  for (const auto& blk : blocks_) {
    for (Eigen::Index k = 0; k < blk.size(); ++k) {
      const double v = blk.data()[k];
      if (!std::isfinite(v) || v < 0.0) {
        throw InputError(InputError::Kind::kValidation,
                         "metric family entries must be finite and nonnegative");
      }
    }
  }
  for (int i = 0; i < n_; ++i) {
    for (int a = 0; a < rows_; ++a) {
      for (int b = 0; b < cols_; ++b) {
        if (SamePoint(source[a], target[b]) && block(i, i)(a, b) != 0.0) {
          throw InputError(InputError::Kind::kValidation,
                           "metric family needs d_ii(x,x) = 0 (species " +
                               std::to_string(i + 1) + ", point '" + source[a].label +
                               "')");
        }
      }
    }
  }
  metric_family_ = true;
}

bool CostTensor::AllFinite() const {
  for (const auto& blk : blocks_) {
    if (!blk.allFinite()) return false;
  }
  return true;
}

double CostTensor::MaxAbsFinite() const {
  double m = 0.0;
  for (const auto& blk : blocks_) {
    for (Eigen::Index k = 0; k < blk.size(); ++k) {
      const double v = blk.data()[k];
      if (std::isfinite(v)) m = std::max(m, std::abs(v));
    }
  }
  return m;
}

CostTensor CostTensor::Pow(double p) const {
  if (p == 1.0) return *this;
  std::vector<Eigen::MatrixXd> out;
  out.reserve(blocks_.size());
  for (const auto& blk : blocks_) {
    Eigen::MatrixXd powered(blk.rows(), blk.cols());
    for (Eigen::Index k = 0; k < blk.size(); ++k) {
      const double v = blk.data()[k];
      if (v < 0.0) {
        throw InputError(InputError::Kind::kValidation,
                         "cannot raise a negative cost to the power p");
      }
      powered.data()[k] = std::isinf(v) ? kInf : std::pow(v, p);
    }
    out.push_back(std::move(powered));
  }
  CostTensor result(n_, std::move(out));
  result.symmetric_ = symmetric_;
  result.metric_family_ = metric_family_;
  return result;
}

bool DetectSymmetric(const CostTensor& cost, const SupportSet& source,
                     const SupportSet& target) {
  if (!source.SameAs(target)) return false;
  const int n = cost.species();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const auto& cij = cost.block(i, j);
      if (cij != cij.transpose()) return false;
      if (cij != cost.block(j, i)) return false;
    }
  }
  return true;
}

CostTensor BuildKappaCost(const Eigen::MatrixXd& base, double kappa, int n,
                          bool same_support) {
  if (std::isnan(kappa)) {
    throw InputError(InputError::Kind::kValidation, "kappa is NaN");
  }
  if (base.hasNaN()) {
    throw InputError(InputError::Kind::kValidation, "base cost has a NaN entry");
  }
  std::vector<Eigen::MatrixXd> blocks;
  blocks.reserve(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) {
        blocks.push_back(base);
      } else {
        blocks.push_back((base.array() + kappa).matrix());
      }
    }
  }
  CostTensor cost(n, std::move(blocks));
  cost.set_symmetric(same_support && base.rows() == base.cols() &&
                     base == base.transpose());
  return cost;
}

double LpDistance(const Point& x, const Point& y, double q) {
  if (x.coords.size() != y.coords.size() || x.coords.empty()) {
    throw InputError(InputError::Kind::kDimension,
                     "points '" + x.label + "' and '" + y.label +
                         "' lack comparable coordinates");
  }
  if (std::isinf(q)) {
    double m = 0.0;
    for (size_t k = 0; k < x.coords.size(); ++k) {
      m = std::max(m, std::abs(x.coords[k] - y.coords[k]));
    }
    return m;
  }
  if (x.coords.size() == 1) return std::abs(x.coords[0] - y.coords[0]);
  double s = 0.0;
  for (size_t k = 0; k < x.coords.size(); ++k) {
    s += std::pow(std::abs(x.coords[k] - y.coords[k]), q);
  }
  return std::pow(s, 1.0 / q);
}

DistanceFamily DistanceFamily::LpNormPlusKappa(int n, double kappa, double q) {
  if (!(q >= 1.0)) {
    throw InputError(InputError::Kind::kValidation, "norm exponent q must be >= 1");
  }
  DistanceFamily f;
  f.kind_ = Kind::kLpNormPlusKappa;
  f.n_ = n;
  f.kappa_ = kappa;
  f.q_ = q;
  return f;
}

DistanceFamily DistanceFamily::DiscreteEpsilon(int n, double epsilon, double q) {
  if (!(q >= 1.0)) {
    throw InputError(InputError::Kind::kValidation, "norm exponent q must be >= 1");
  }
  DistanceFamily f;
  f.kind_ = Kind::kDiscreteEpsilon;
  f.n_ = n;
  f.epsilon_ = epsilon;
  f.q_ = q;
  return f;
}

DistanceFamily DistanceFamily::Explicit(SupportSet ground, CostTensor blocks) {
  if (blocks.rows() != ground.size() || blocks.cols() != ground.size()) {
    throw InputError(InputError::Kind::kDimension,
                     "explicit distance blocks must be G x G over the ground points");
  }
  DistanceFamily f;
  f.kind_ = Kind::kExplicit;
  f.n_ = blocks.species();
  f.ground_ = std::move(ground);
  f.blocks_ = std::move(blocks);
  return f;
}

double DistanceFamily::operator()(int i, int j, const Point& x, const Point& y) const {
  switch (kind_) {
    case Kind::kLpNormPlusKappa: {
      const double d = LpDistance(x, y, q_);
      return i == j ? d : d + kappa_;
    }
    case Kind::kDiscreteEpsilon: {
      if (i == j) return LpDistance(x, y, q_);
      return SamePoint(x, y) ? 0.0 : epsilon_;
    }
    case Kind::kExplicit: {
      const auto a = ground_->IndexOf(x.label);
      const auto b = ground_->IndexOf(y.label);
      if (!a || !b) {
        throw InputError(InputError::Kind::kDimension,
                         "point '" + (a ? y.label : x.label) +
                             "' is not among the metric's ground points");
      }
      return (*blocks_)(i, j, *a, *b);
    }
  }
  return kInf;
}

CostTensor DistanceFamily::Tensor(const SupportSet& source,
                                  const SupportSet& target) const {
  CostTensor cost(n_, source.size(), target.size());
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      Eigen::MatrixXd blk(source.size(), target.size());
      for (int a = 0; a < source.size(); ++a) {
        for (int b = 0; b < target.size(); ++b) {
          blk(a, b) = (*this)(i, j, source[a], target[b]);
        }
      }
      cost.Set(i, j, blk);
    }
  }
  cost.set_symmetric(DetectSymmetric(cost, source, target));
  return cost;
}

MetricSpec::MetricSpec(DistanceFamily f, double exponent)
    : family(std::move(f)), p(exponent) {
  if (!(p >= 1.0) || std::isinf(p)) {
    throw InputError(InputError::Kind::kValidation,
                     "exponent p must be a finite real >= 1");
  }
}

SupportSet UnionOf(const std::vector<SupportSet>& supports) {
  std::vector<Point> pts;
  std::unordered_map<std::string, size_t> seen;
  for (const auto& s : supports) {
    for (const auto& pt : s.points()) {
      auto it = seen.find(pt.label);
      if (it == seen.end()) {
        seen.emplace(pt.label, pts.size());
        pts.push_back(pt);
      } else if (pts[it->second].coords != pt.coords) {
        throw InputError(InputError::Kind::kValidation,
                         "label '" + pt.label + "' has conflicting coordinates");
      }
    }
  }
  return SupportSet(std::move(pts));
}

}  // namespace vot
