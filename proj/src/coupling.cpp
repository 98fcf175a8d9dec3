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

#include "vot/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

namespace vot {

CouplingTensor::CouplingTensor(int species, int rows, int cols)
    : n_(species), rows_(rows), cols_(cols) {}

CouplingTensor::CouplingTensor(int species, int rows, int cols,
                               std::vector<PlanEntry> entries)
    : n_(species), rows_(rows), cols_(cols), entries_(std::move(entries)) {
  for (const auto& e : entries_) {
    if (e.i < 0 || e.i >= n_ || e.j < 0 || e.j >= n_ || e.a < 0 || e.a >= rows_ ||
        e.b < 0 || e.b >= cols_) {
      throw InputError(InputError::Kind::kDimension, "plan entry index out of range");
    }
  }
  Normalize();
}

void CouplingTensor::Add(const PlanEntry& e) {
  if (e.i < 0 || e.i >= n_ || e.j < 0 || e.j >= n_ || e.a < 0 || e.a >= rows_ ||
      e.b < 0 || e.b >= cols_) {
    throw InputError(InputError::Kind::kDimension, "plan entry index out of range");
  }
  entries_.push_back(e);
  Normalize();
}

void CouplingTensor::Normalize() {
  auto key = [](const PlanEntry& e) { return std::tie(e.i, e.j, e.a, e.b); };
  std::sort(entries_.begin(), entries_.end(),
            [&](const PlanEntry& x, const PlanEntry& y) { return key(x) < key(y); });
  std::vector<PlanEntry> merged;
  merged.reserve(entries_.size());
  for (const auto& e : entries_) {
    if (!merged.empty() && key(merged.back()) == key(e)) {
      merged.back().mass += e.mass;
    } else {
      merged.push_back(e);
    }
  }
  entries_ = std::move(merged);
}

Eigen::MatrixXd CouplingTensor::SourceMarginals() const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n_, rows_);
  for (const auto& e : entries_) m(e.i, e.a) += e.mass;
  return m;
}

Eigen::MatrixXd CouplingTensor::TargetMarginals() const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n_, cols_);
  for (const auto& e : entries_) m(e.j, e.b) += e.mass;
  return m;
}

double CouplingTensor::Mass() const {
  double s = 0.0;
  for (const auto& e : entries_) s += e.mass;
  return s;
}

double CouplingTensor::Cost(const CostTensor& cost) const {
  double s = 0.0;
  for (const auto& e : entries_) {
    if (e.mass == 0.0) continue;
    s += e.mass * cost(e.i, e.j, e.a, e.b);
  }
  return s;
}

PlanVerdict CheckPlan(const CouplingTensor& plan, const VectorMeasure& mu,
                      const VectorMeasure& nu, double tolerance) {
  PlanVerdict v;
  if (plan.species() != mu.species() || plan.species() != nu.species() ||
      plan.rows() != mu.atoms() || plan.cols() != nu.atoms()) {
    v.problems.push_back("plan dimensions do not match the measures");
    return v;
  }
  for (const auto& e : plan.entries()) {
    v.min_mass = std::min(v.min_mass, e.mass);
    if (e.mass < -tolerance || !std::isfinite(e.mass)) {
      v.problems.push_back("negative or non-finite mass at (" + std::to_string(e.i) + "," +
                           std::to_string(e.j) + "," + std::to_string(e.a) + "," +
                           std::to_string(e.b) + ")");
    }
  }
  v.max_source_error = (plan.SourceMarginals() - mu.weights()).cwiseAbs().maxCoeff();
  v.max_target_error = (plan.TargetMarginals() - nu.weights()).cwiseAbs().maxCoeff();
  if (!(v.max_source_error <= tolerance)) {
    v.problems.push_back("source marginals off by " + std::to_string(v.max_source_error));
  }
  if (!(v.max_target_error <= tolerance)) {
    v.problems.push_back("target marginals off by " + std::to_string(v.max_target_error));
  }
  return v;
}

}  // namespace vot
