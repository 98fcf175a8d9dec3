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

#ifndef VOT_COUPLING_HPP_
#define VOT_COUPLING_HPP_

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "vot/measures.hpp"

namespace vot {

// One atom of a vector transference plan: mass moved from species i at
// source atom a into species j at target atom b.
struct PlanEntry {
  int i;
  int j;
  int a;
  int b;
  double mass;

  bool operator==(const PlanEntry&) const = default;
};

// Sparse n x n family of M x N nonnegative matrices. Entries are kept sorted
// by (i, j, a, b) with duplicates merged.
class CouplingTensor {
 public:
  CouplingTensor(int species, int rows, int cols);
  CouplingTensor(int species, int rows, int cols, std::vector<PlanEntry> entries);

  int species() const { return n_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const std::vector<PlanEntry>& entries() const { return entries_; }

  void Add(const PlanEntry& e);

  // n x M, entry (i, a) = sum_j sum_b gamma_ij(a, b).
  Eigen::MatrixXd SourceMarginals() const;
  // n x N, entry (j, b) = sum_i sum_a gamma_ij(a, b).
  Eigen::MatrixXd TargetMarginals() const;
  double Mass() const;

  // Sum of mass * c_ij(a, b). Zero-mass entries on +inf costs contribute 0.
  double Cost(const CostTensor& cost) const;

  bool operator==(const CouplingTensor&) const = default;

 private:
  void Normalize();

  int n_;
  int rows_;
  int cols_;
  std::vector<PlanEntry> entries_;
};

struct PlanVerdict {
  double max_source_error = 0.0;
  double max_target_error = 0.0;
  double min_mass = 0.0;
  std::vector<std::string> problems;
  bool ok() const { return problems.empty(); }
};

// Checks nonnegativity and both species-marginal constraints.
PlanVerdict CheckPlan(const CouplingTensor& plan, const VectorMeasure& mu,
                      const VectorMeasure& nu, double tolerance = 1e-8);

// Source potentials phi (n x M) and target potentials psi (n x N).
struct PotentialPair {
  Eigen::MatrixXd phi;
  Eigen::MatrixXd psi;

  static PotentialPair Zero(int species, int rows, int cols) {
    return {Eigen::MatrixXd::Zero(species, rows), Eigen::MatrixXd::Zero(species, cols)};
  }
};

}  // namespace vot

#endif  // VOT_COUPLING_HPP_
