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

#include "vot/problem_io.hpp"

#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>

namespace vot {

using nlohmann::json;

namespace {

[[noreturn]] void Fail(InputError::Kind kind, const std::string& where,
                       const std::string& what) {
  throw InputError(kind, where + ": " + what);
}

const json& Require(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.is_object()) Fail(InputError::Kind::kParse, where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) Fail(InputError::Kind::kParse, where, "missing field \"" + key + "\"");
  return *it;
}

int ParseCount(const json& v, const std::string& where) {
  if (!v.is_number_integer() || v.get<long long>() < 1) {
    Fail(InputError::Kind::kParse, where, "expected a positive integer");
  }
  return static_cast<int>(v.get<long long>());
}

Eigen::MatrixXd ParseMatrix(const json& v, const std::string& where, bool allow_inf) {
  if (!v.is_array() || v.empty()) Fail(InputError::Kind::kParse, where, "expected a nonempty array of rows");
  const auto rows = static_cast<Eigen::Index>(v.size());
  if (!v[0].is_array() || v[0].empty()) {
    Fail(InputError::Kind::kParse, where + "[0]", "expected a nonempty array");
  }
  const auto cols = static_cast<Eigen::Index>(v[0].size());
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const std::string row_where = where + "[" + std::to_string(r) + "]";
    if (!v[r].is_array()) Fail(InputError::Kind::kParse, row_where, "expected an array");
    if (static_cast<Eigen::Index>(v[r].size()) != cols) {
      Fail(InputError::Kind::kDimension, row_where,
           "row has " + std::to_string(v[r].size()) + " entries, expected " +
               std::to_string(cols));
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      m(r, c) = ParseReal(v[r][c], row_where + "[" + std::to_string(c) + "]", allow_inf);
    }
  }
  return m;
}

double OptionalReal(const json& obj, const std::string& key, double fallback,
                    const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  return ParseReal(*it, where + "." + key);
}

// Evaluates a "cost" object over the given supports. Explicit blocks must be
// rows x cols; generator kinds also return the family.
CostTensor ParseCost(const json& cost, int n, const SupportSet& source,
                     const SupportSet& target, std::optional<DistanceFamily>* family,
                     const std::string& where) {
  const json& kind_v = Require(cost, "kind", where);
  if (!kind_v.is_string()) Fail(InputError::Kind::kParse, where + ".kind", "expected a string");
  const std::string kind = kind_v.get<std::string>();
  if (kind == "explicit") {
    const json& blocks = Require(cost, "blocks", where);
    const std::string bw = where + ".blocks";
    if (!blocks.is_array() || static_cast<int>(blocks.size()) != n) {
      Fail(InputError::Kind::kDimension, bw, "expected " + std::to_string(n) + " block rows");
    }
    std::vector<Eigen::MatrixXd> mats;
    for (int i = 0; i < n; ++i) {
      if (!blocks[i].is_array() || static_cast<int>(blocks[i].size()) != n) {
        Fail(InputError::Kind::kDimension, bw + "[" + std::to_string(i) + "]",
             "expected " + std::to_string(n) + " blocks");
      }
      for (int j = 0; j < n; ++j) {
        const std::string w = bw + "[" + std::to_string(i) + "][" + std::to_string(j) + "]";
        Eigen::MatrixXd m = ParseMatrix(blocks[i][j], w, /*allow_inf=*/true);
        if (m.rows() != source.size() || m.cols() != target.size()) {
          Fail(InputError::Kind::kDimension, w,
               "cost block (" + std::to_string(i) + "," + std::to_string(j) + ") is " +
                   std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                   ", expected " + std::to_string(source.size()) + "x" +
                   std::to_string(target.size()));
        }
        mats.push_back(std::move(m));
      }
    }
    try {
      CostTensor tensor(n, std::move(mats));
      tensor.set_symmetric(DetectSymmetric(tensor, source, target));
      return tensor;
    } catch (const InputError& e) {
      Fail(e.kind(), where, e.what());
    }
  }
  std::optional<DistanceFamily> fam;
  const double q = OptionalReal(cost, "q", 2.0, where);
  if (kind == "lp_norm_plus_kappa") {
    const double kappa = ParseReal(Require(cost, "kappa", where), where + ".kappa");
    fam = DistanceFamily::LpNormPlusKappa(n, kappa, q);
  } else if (kind == "discrete_epsilon") {
    const double eps = ParseReal(Require(cost, "epsilon", where), where + ".epsilon");
    fam = DistanceFamily::DiscreteEpsilon(n, eps, q);
  } else {
    Fail(InputError::Kind::kParse, where + ".kind", "unknown cost kind \"" + kind + "\"");
  }
  if (!source.has_coords() || !target.has_coords()) {
    Fail(InputError::Kind::kDimension, where,
         "cost kind \"" + kind + "\" needs coordinates on every point");
  }
  if (source.dim() != target.dim()) {
    Fail(InputError::Kind::kDimension, where, "source and target coordinates differ in dimension");
  }
  CostTensor tensor = fam->Tensor(source, target);
  if (family) *family = fam;
  return tensor;
}

}  // namespace

double ParseReal(const json& v, const std::string& where, bool allow_inf) {
  if (v.is_number()) {
    const double d = v.get<double>();
    if (!std::isfinite(d)) Fail(InputError::Kind::kParse, where, "non-finite number");
    return d;
  }
  if (allow_inf && v.is_string() && v.get<std::string>() == "inf") return kInf;
  Fail(InputError::Kind::kParse, where,
       allow_inf ? "expected a number or \"inf\"" : "expected a number");
}

json RealToJson(double v) {
  if (v == kInf) return "inf";
  return v;
}

json ParseJsonText(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(InputError::Kind::kParse, source + ": " + e.what());
  }
}

json ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(InputError::Kind::kParse, path + ": cannot open file");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return ParseJsonText(text, path);
}

SupportSet ParseSupport(const json& points, const std::string& where) {
  if (!points.is_array() || points.empty()) {
    Fail(InputError::Kind::kParse, where, "expected a nonempty array of points");
  }
  std::vector<Point> pts;
  for (size_t a = 0; a < points.size(); ++a) {
    const std::string w = where + "[" + std::to_string(a) + "]";
    const json& label = Require(points[a], "label", w);
    if (!label.is_string()) Fail(InputError::Kind::kParse, w + ".label", "expected a string");
    Point pt{label.get<std::string>(), {}};
    if (auto it = points[a].find("coords"); it != points[a].end()) {
      if (!it->is_array()) Fail(InputError::Kind::kParse, w + ".coords", "expected an array");
      for (size_t k = 0; k < it->size(); ++k) {
        pt.coords.push_back(ParseReal((*it)[k], w + ".coords[" + std::to_string(k) + "]"));
      }
    }
    pts.push_back(std::move(pt));
  }
  try {
    return SupportSet(std::move(pts));
  } catch (const InputError& e) {
    Fail(e.kind(), where, e.what());
  }
}

json SupportToJson(const SupportSet& s) {
  json pts = json::array();
  for (const auto& pt : s.points()) {
    json p = {{"label", pt.label}};
    if (!pt.coords.empty()) p["coords"] = pt.coords;
    pts.push_back(std::move(p));
  }
  return pts;
}

VectorMeasure ParseMeasure(const json& j, int species, const std::string& where) {
  SupportSet support = ParseSupport(Require(j, "points", where), where + ".points");
  Eigen::MatrixXd w = ParseMatrix(Require(j, "weights", where), where + ".weights", false);
  if (w.rows() != species) {
    Fail(InputError::Kind::kDimension, where + ".weights",
         "has " + std::to_string(w.rows()) + " species rows, expected " +
             std::to_string(species));
  }
  if (w.cols() != support.size()) {
    Fail(InputError::Kind::kDimension, where + ".weights",
         "has " + std::to_string(w.cols()) + " atoms, support has " +
             std::to_string(support.size()));
  }
  return VectorMeasure(std::move(support), std::move(w));
}

json MeasureToJson(const VectorMeasure& m) {
  json weights = json::array();
  for (int i = 0; i < m.species(); ++i) {
    json row = json::array();
    for (int a = 0; a < m.atoms(); ++a) row.push_back(m.weight(i, a));
    weights.push_back(std::move(row));
  }
  return {{"points", SupportToJson(m.support())}, {"weights", std::move(weights)}};
}

namespace {

VectorMeasure NormalizeIfAsked(VectorMeasure m, bool normalize, const std::string& where) {
  if (!normalize) return m;
  const double total = m.total_mass();
  if (!(total > 0.0)) {
    Fail(InputError::Kind::kValidation, where, "cannot normalize a measure with zero mass");
  }
  return m.Scaled(1.0 / total);
}

bool OptionalBool(const json& obj, const std::string& key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) return false;
  if (!it->is_boolean()) Fail(InputError::Kind::kParse, where + "." + key, "expected a boolean");
  return it->get<bool>();
}

void ForwardVerdict(const MeasureVerdict& v, const std::string& where) {
  if (!v.ok()) Fail(InputError::Kind::kValidation, where, v.Summary());
}

Problem ProblemFromJson(const json& j, const LoadOptions& options) {
  const std::string where = "problem";
  const int n = ParseCount(Require(j, "species", where), where + ".species");
  const bool normalize = OptionalBool(j, "normalize", where);
  VectorMeasure source = NormalizeIfAsked(
      ParseMeasure(Require(j, "source", where), n, "source"), normalize, "source");
  VectorMeasure target = NormalizeIfAsked(
      ParseMeasure(Require(j, "target", where), n, "target"), normalize, "target");
  std::optional<DistanceFamily> family;
  CostTensor cost = ParseCost(Require(j, "cost", where), n, source.support(),
                              target.support(), &family, "cost");
  double p = 1.0;
  if (auto it = j.find("p"); it != j.end()) {
    p = ParseReal(*it, where + ".p");
    if (!(p >= 1.0)) Fail(InputError::Kind::kValidation, where + ".p", "p must be >= 1");
  }
  if (options.require_unit_mass) {
    MeasureCheckOptions check;
    check.mass_tolerance = options.mass_tolerance;
    ForwardVerdict(ValidateMeasure(source, check), "source");
    ForwardVerdict(ValidateMeasure(target, check), "target");
  } else {
    ForwardVerdict(ValidatePair(source, target, options.mass_tolerance), where);
  }
  if (p != 1.0) static_cast<void>(cost.Pow(p));  // rejects negative entries early
  return Problem{std::move(source), std::move(target), std::move(cost), std::move(family), p};
}

}  // namespace

Problem ParseProblem(const std::string& text, const LoadOptions& options) {
  return ProblemFromJson(ParseJsonText(text, "problem"), options);
}

Problem LoadProblem(const std::string& path, const LoadOptions& options) {
  return ProblemFromJson(ReadJsonFile(path), options);
}

Problem LoadProblem(std::istream& in, const LoadOptions& options) {
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return ParseProblem(text, options);
}

json ProblemToJson(const Problem& problem) {
  const int n = problem.cost.species();
  json blocks = json::array();
  for (int i = 0; i < n; ++i) {
    json row = json::array();
    for (int j = 0; j < n; ++j) {
      const auto& blk = problem.cost.block(i, j);
      json m = json::array();
      for (Eigen::Index a = 0; a < blk.rows(); ++a) {
        json r = json::array();
        for (Eigen::Index b = 0; b < blk.cols(); ++b) r.push_back(RealToJson(blk(a, b)));
        m.push_back(std::move(r));
      }
      row.push_back(std::move(m));
    }
    blocks.push_back(std::move(row));
  }
  return {{"species", n},
          {"source", MeasureToJson(problem.source)},
          {"target", MeasureToJson(problem.target)},
          {"cost", {{"kind", "explicit"}, {"blocks", std::move(blocks)}}},
          {"p", problem.p}};
}

std::string SaveProblem(const Problem& problem) {
  return ProblemToJson(problem).dump(2);
}

VectorMeasure LoadMeasureFile(const std::string& path) {
  const json j = ReadJsonFile(path);
  const int n = ParseCount(Require(j, "species", path), path + ".species");
  VectorMeasure m = NormalizeIfAsked(ParseMeasure(j, n, path), OptionalBool(j, "normalize", path), path);
  MeasureCheckOptions relaxed;
  relaxed.require_unit_mass = false;
  ForwardVerdict(ValidateMeasure(m, relaxed), path);
  return m;
}

MetricSpec ParseMetric(const json& j) {
  const std::string where = "metric";
  const int n = ParseCount(Require(j, "species", where), where + ".species");
  double p = 1.0;
  if (auto it = j.find("p"); it != j.end()) p = ParseReal(*it, where + ".p");
  const json& cost = Require(j, "cost", where);
  const json& kind = Require(cost, "kind", "cost");
  if (kind.is_string() && kind.get<std::string>() == "explicit") {
    SupportSet ground = ParseSupport(Require(j, "points", where), where + ".points");
    CostTensor blocks = ParseCost(cost, n, ground, ground, nullptr, "cost");
    return MetricSpec(DistanceFamily::Explicit(std::move(ground), std::move(blocks)), p);
  }
  const double q = OptionalReal(cost, "q", 2.0, "cost");
  const std::string k = kind.is_string() ? kind.get<std::string>() : "";
  if (k == "lp_norm_plus_kappa") {
    return MetricSpec(DistanceFamily::LpNormPlusKappa(
                          n, ParseReal(Require(cost, "kappa", "cost"), "cost.kappa"), q),
                      p);
  }
  if (k == "discrete_epsilon") {
    return MetricSpec(DistanceFamily::DiscreteEpsilon(
                          n, ParseReal(Require(cost, "epsilon", "cost"), "cost.epsilon"), q),
                      p);
  }
  Fail(InputError::Kind::kParse, "cost.kind", "unknown cost kind");
}

MetricSpec LoadMetricFile(const std::string& path) {
  return ParseMetric(ReadJsonFile(path));
}

std::vector<SupportSet> LoadSupportsFile(const std::string& path) {
  const json j = ReadJsonFile(path);
  std::vector<SupportSet> out;
  if (auto it = j.find("supports"); it != j.end()) {
    if (!it->is_array()) Fail(InputError::Kind::kParse, path + ".supports", "expected an array");
    for (size_t s = 0; s < it->size(); ++s) {
      const std::string w = path + ".supports[" + std::to_string(s) + "]";
      out.push_back(ParseSupport(Require((*it)[s], "points", w), w + ".points"));
    }
  } else {
    out.push_back(ParseSupport(Require(j, "points", path), path + ".points"));
  }
  return out;
}

std::vector<Point> LoadPointTuple(const std::string& path) {
  const json j = ReadJsonFile(path);
  return ParseSupport(Require(j, "points", path), path + ".points").points();
}

}  // namespace vot
