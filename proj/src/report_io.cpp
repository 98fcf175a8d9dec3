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

#include "vot/report_io.hpp"

#include <string>

#include "vot/problem_io.hpp"

namespace vot {

using nlohmann::json;

namespace {

json MatrixToJson(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(RealToJson(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json DimsToJson(int species, int rows, int cols) {
  return {{"species", species}, {"rows", rows}, {"cols", cols}};
}

int ReadIndex(const json& v, int limit, const std::string& where) {
  if (!v.is_number_integer() || v.get<long long>() < 0 || v.get<long long>() >= limit) {
    throw InputError(InputError::Kind::kValidation,
                     where + ": expected an index in [0, " + std::to_string(limit) + ")");
  }
  return static_cast<int>(v.get<long long>());
}

}  // namespace

json PlanToJson(const CouplingTensor& plan) {
  json out = json::array();
  for (const auto& e : plan.entries()) out.push_back({e.i, e.j, e.a, e.b, e.mass});
  return out;
}

json PotentialsToJson(const PotentialPair& pp) {
  return {{"phi", MatrixToJson(pp.phi)}, {"psi", MatrixToJson(pp.psi)}};
}

json SlacknessToJson(const OptimalityVerdict& v) {
  json out = {{"ok", v.ok()}, {"violations", json::array()}};
  for (const auto& s : v.violations) {
    out["violations"].push_back(
        {{"i", s.i}, {"j", s.j}, {"a", s.a}, {"b", s.b}, {"mass", s.mass},
         {"slack", RealToJson(s.slack)}});
  }
  return out;
}

json SolveReportToJson(const SolveReport& report, const CostTensor& cost, double tolerance) {
  const DualFeasibility feas = CheckDualFeasible(report.potentials, cost, tolerance);
  json out;
  out["status"] = report.optimal() ? "optimal" : "infeasible";
  out["value"] = RealToJson(report.primal_value);
  out["dual_value"] = RealToJson(report.dual_value);
  out["gap"] = RealToJson(report.gap);
  out["pivots"] = report.pivots;
  out["dims"] = DimsToJson(report.plan.species(), report.plan.rows(), report.plan.cols());
  out["plan"] = PlanToJson(report.plan);
  out["potentials"] = PotentialsToJson(report.potentials);
  out["slackness"] = SlacknessToJson(CheckOptimality(report.plan, report.potentials, cost,
                                                     1e-10, tolerance));
  json worst = nullptr;
  if (feas.worst.i >= 0) {
    worst = {{"i", feas.worst.i}, {"j", feas.worst.j}, {"a", feas.worst.a},
             {"b", feas.worst.b}, {"excess", feas.worst.amount}};
  }
  out["dual_feasibility"] = {{"ok", feas.ok}, {"worst", worst}};
  out["max_marginal_error"] = report.max_marginal_error;
  return out;
}

CouplingTensor PlanFromJson(const json& j) {
  if (!j.is_object() || !j.contains("dims") || !j.contains("plan")) {
    throw InputError(InputError::Kind::kParse, "plan file: expected \"dims\" and \"plan\"");
  }
  const json& dims = j["dims"];
  auto dim = [&dims](const char* key) {
    if (!dims.contains(key) || !dims[key].is_number_integer() || dims[key].get<long long>() < 1) {
      throw InputError(InputError::Kind::kParse,
                       std::string("dims.") + key + ": expected a positive integer");
    }
    return static_cast<int>(dims[key].get<long long>());
  };
  const int n = dim("species");
  const int rows = dim("rows");
  const int cols = dim("cols");
  if (!j["plan"].is_array()) {
    throw InputError(InputError::Kind::kParse, "plan: expected an array");
  }
  std::vector<PlanEntry> entries;
  for (size_t k = 0; k < j["plan"].size(); ++k) {
    const json& e = j["plan"][k];
    const std::string where = "plan[" + std::to_string(k) + "]";
    if (!e.is_array() || e.size() != 5) {
      throw InputError(InputError::Kind::kParse, where + ": expected [i, j, a, b, mass]");
    }
    const double mass = ParseReal(e[4], where + "[4]");
    if (mass < 0.0) throw InputError(InputError::Kind::kValidation, where + ": negative mass");
    entries.push_back({ReadIndex(e[0], n, where + "[0]"), ReadIndex(e[1], n, where + "[1]"),
                       ReadIndex(e[2], rows, where + "[2]"), ReadIndex(e[3], cols, where + "[3]"),
                       mass});
  }
  return CouplingTensor(n, rows, cols, std::move(entries));
}

json MtiReportToJson(const MtiReport& r) {
  json out = {{"satisfied", r.satisfied()},
              {"points", SupportToJson(r.points)},
              {"violations", json::array()}};
  for (const auto& v : r.violations) {
    out["violations"].push_back({{"species", {v.i, v.j, v.k}},
                                 {"points", {r.points[v.x].label, r.points[v.y].label,
                                             r.points[v.z].label}},
                                 {"lhs", v.lhs},
                                 {"rhs", v.rhs}});
  }
  return out;
}

json AxiomVerdictToJson(const AxiomVerdict& v) {
  return {{"ok", v.all()},
          {"symmetric", v.symmetric},
          {"mti", v.mti},
          {"zero_diagonal", v.zero_diagonal},
          {"off_diagonal_positive", v.off_diagonal_positive},
          {"notes", v.notes},
          {"mti_report", MtiReportToJson(v.mti_report)}};
}

json GluedPlanToJson(const GluedPlan& g) {
  json three = json::array();
  for (const auto& e : g.three_point_mass) three.push_back({e.i, e.j, e.k, e.a, e.b, e.c, e.mass});
  return {{"dims", DimsToJson(g.composed.species(), g.composed.rows(), g.composed.cols())},
          {"plan", PlanToJson(g.composed)},
          {"three_point_mass", std::move(three)}};
}

}  // namespace vot
