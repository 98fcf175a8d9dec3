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

#ifndef VOT_PROBLEM_IO_HPP_
#define VOT_PROBLEM_IO_HPP_

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "vot/measures.hpp"

namespace vot {

// A transport instance as read from a problem file.
struct Problem {
  VectorMeasure source;
  VectorMeasure target;
  // Raw costs, before the exponent p is applied.
  CostTensor cost;
  // Set when the file used a generator kind rather than explicit blocks.
  std::optional<DistanceFamily> family;
  double p = 1.0;

  // The cost the solver sees: cost^p.
  CostTensor EffectiveCost() const { return cost.Pow(p); }
};

struct LoadOptions {
  double mass_tolerance = kMassTolerance;
  // Problem files hold elements of P^n by default; when false, only equal
  // total masses are required.
  bool require_unit_mass = true;
};

Problem ParseProblem(const std::string& text, const LoadOptions& options = {});
Problem LoadProblem(const std::string& path, const LoadOptions& options = {});
Problem LoadProblem(std::istream& in, const LoadOptions& options = {});

// Costs are always written as explicit blocks.
nlohmann::json ProblemToJson(const Problem& problem);
std::string SaveProblem(const Problem& problem);

// Measure file: {"species", "points", "weights", "normalize"?}. Only
// nonnegativity is enforced here; callers pair-check masses.
VectorMeasure LoadMeasureFile(const std::string& path);
VectorMeasure ParseMeasure(const nlohmann::json& j, int species,
                           const std::string& where);
nlohmann::json MeasureToJson(const VectorMeasure& m);

// Metric file: {"species", "cost", "p"?, "points"?}; "points" is required
// for explicit blocks and names the ground set.
MetricSpec LoadMetricFile(const std::string& path);
MetricSpec ParseMetric(const nlohmann::json& j);

// {"points": [...]} or {"supports": [{"points": [...]}, ...]}.
std::vector<SupportSet> LoadSupportsFile(const std::string& path);
// {"points": [...]}, one point per species.
std::vector<Point> LoadPointTuple(const std::string& path);

SupportSet ParseSupport(const nlohmann::json& points, const std::string& where);
nlohmann::json SupportToJson(const SupportSet& s);

// Reads a whole file and parses it, mapping failures to InputError(kParse).
nlohmann::json ReadJsonFile(const std::string& path);
nlohmann::json ParseJsonText(const std::string& text, const std::string& source);

// Real-valued JSON entry; the string "inf" denotes +infinity.
double ParseReal(const nlohmann::json& v, const std::string& where,
                 bool allow_inf = false);
nlohmann::json RealToJson(double v);

}  // namespace vot

#endif  // VOT_PROBLEM_IO_HPP_
