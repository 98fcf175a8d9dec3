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

#ifndef VOT_MEASURES_HPP_
#define VOT_MEASURES_HPP_

#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

namespace vot {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Default absolute tolerance on total mass.
inline constexpr double kMassTolerance = 1e-9;

// Raised for malformed input: bad shapes, bad values, unparseable files.
class InputError : public std::runtime_error {
 public:
  enum class Kind { kParse, kDimension, kValidation };
  InputError(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct Point {
  std::string label;
  // Empty when the point carries no coordinates.
  std::vector<double> coords;
};

// A finite support: uniquely labelled points, all with the same coordinate
// dimension (or none).
class SupportSet {
 public:
  SupportSet() = default;
  explicit SupportSet(std::vector<Point> points);

  // Points labelled "0", "1", ... with one coordinate each.
  static SupportSet OnLine(const std::vector<double>& xs);

  int size() const { return static_cast<int>(points_.size()); }
  const Point& operator[](int a) const { return points_[a]; }
  const std::vector<Point>& points() const { return points_; }
  bool has_coords() const { return dim_ > 0; }
  int dim() const { return dim_; }

  std::optional<int> IndexOf(const std::string& label) const;
  // Same labels in the same order, with equal coordinates.
  bool SameAs(const SupportSet& other) const;

 private:
  std::vector<Point> points_;
  std::unordered_map<std::string, int> index_;
  int dim_ = 0;
};

// Points compare equal by coordinates when both have them, else by label.
bool SamePoint(const Point& x, const Point& y);

// n species over one support; weights is n x M. Construction only checks
// shapes; use ValidateMeasure for the mass invariants.
class VectorMeasure {
 public:
  VectorMeasure(SupportSet support, Eigen::MatrixXd weights);

  int species() const { return static_cast<int>(weights_.rows()); }
  int atoms() const { return static_cast<int>(weights_.cols()); }
  const SupportSet& support() const { return support_; }
  const Eigen::MatrixXd& weights() const { return weights_; }
  double weight(int i, int a) const { return weights_(i, a); }
  double total_mass() const { return weights_.sum(); }
  // Sum over species, one entry per atom.
  Eigen::VectorXd Collapsed() const { return weights_.colwise().sum(); }

  VectorMeasure Scaled(double factor) const;

 private:
  SupportSet support_;
  Eigen::MatrixXd weights_;
};

struct MeasureViolation {
  enum class Kind { kNegativeWeight, kTotalMass, kNonFinite };
  Kind kind;
  int species = -1;
  int atom = -1;
  double value = 0.0;
  std::string message;
};

struct MeasureVerdict {
  std::vector<MeasureViolation> violations;
  bool ok() const { return violations.empty(); }
  std::string Summary() const;
};

struct MeasureCheckOptions {
  // When false, only nonnegativity is checked.
  bool require_unit_mass = true;
  double mass_tolerance = kMassTolerance;
};

MeasureVerdict ValidateMeasure(const VectorMeasure& m,
                               const MeasureCheckOptions& options = {});

// Relaxed check used for distances between unnormalized histograms: both
// measures nonnegative, equal species counts, and equal total mass.
MeasureVerdict ValidatePair(const VectorMeasure& mu, const VectorMeasure& nu,
                            double mass_tolerance = kMassTolerance);

// n x n grid of M x N cost blocks. Entries are finite or +infinity.
class CostTensor {
 public:
  CostTensor(int species, int rows, int cols, double fill = 0.0);
  // blocks are row-major: blocks[i * n + j] is c_ij.
  CostTensor(int species, std::vector<Eigen::MatrixXd> blocks);

  int species() const { return n_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

  const Eigen::MatrixXd& block(int i, int j) const { return blocks_[i * n_ + j]; }
  double operator()(int i, int j, int a, int b) const {
    return blocks_[i * n_ + j](a, b);
  }
  void Set(int i, int j, const Eigen::MatrixXd& block);
  void Set(int i, int j, int a, int b, double value);

  bool symmetric() const { return symmetric_; }
  bool metric_family() const { return metric_family_; }
  void set_symmetric(bool value) { symmetric_ = value; }
  // Checks the metric-family invariants against the given supports before
  // setting the flag; throws InputError if they fail.
  void MarkMetricFamily(const SupportSet& source, const SupportSet& target);

  bool AllFinite() const;
  double MaxAbsFinite() const;
  // Entrywise power; +inf stays +inf. Requires nonnegative entries.
  [[nodiscard]] CostTensor Pow(double p) const;

 private:
  void CheckEntry(double v) const;

  int n_;
  int rows_;
  int cols_;
  std::vector<Eigen::MatrixXd> blocks_;
  bool symmetric_ = false;
  bool metric_family_ = false;
};

// Every block symmetric, c_ij == c_ji, and the supports coincide.
bool DetectSymmetric(const CostTensor& cost, const SupportSet& source,
                     const SupportSet& target);

// c_ii = base, c_ij = base + kappa for i != j.
CostTensor BuildKappaCost(const Eigen::MatrixXd& base, double kappa, int n,
                          bool same_support = false);

// q-norm of the coordinate difference.
double LpDistance(const Point& x, const Point& y, double q);

// The n x n family of pointwise distances d_ij used by W_p and the audits.
class DistanceFamily {
 public:
  enum class Kind { kExplicit, kLpNormPlusKappa, kDiscreteEpsilon };

  // d_ii = ||x - y||_q, d_ij = d_ii + kappa.
  static DistanceFamily LpNormPlusKappa(int n, double kappa, double q = 2.0);
  // d_ii = ||x - y||_q, d_ij = eps * [x != y].
  static DistanceFamily DiscreteEpsilon(int n, double epsilon, double q = 2.0);
  // Blocks indexed over a ground set; lookups go through point labels.
  static DistanceFamily Explicit(SupportSet ground, CostTensor blocks);

  Kind kind() const { return kind_; }
  int species() const { return n_; }
  double kappa() const { return kappa_; }
  double epsilon() const { return epsilon_; }
  double q() const { return q_; }
  const std::optional<SupportSet>& ground() const { return ground_; }
  const std::optional<CostTensor>& explicit_blocks() const { return blocks_; }

  double operator()(int i, int j, const Point& x, const Point& y) const;
  CostTensor Tensor(const SupportSet& source, const SupportSet& target) const;

 private:
  Kind kind_ = Kind::kLpNormPlusKappa;
  int n_ = 1;
  double kappa_ = 0.0;
  double epsilon_ = 0.0;
  double q_ = 2.0;
  std::optional<SupportSet> ground_;
  std::optional<CostTensor> blocks_;
};

struct MetricSpec {
  DistanceFamily family;
  double p = 1.0;

  MetricSpec(DistanceFamily f, double exponent);
};

// Union of supports, deduplicated by label, in first-seen order.
SupportSet UnionOf(const std::vector<SupportSet>& supports);

}  // namespace vot

#endif  // VOT_MEASURES_HPP_
