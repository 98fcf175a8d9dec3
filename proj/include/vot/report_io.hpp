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

#ifndef VOT_REPORT_IO_HPP_
#define VOT_REPORT_IO_HPP_

#include "json.hpp"
#include "vot/coupling.hpp"
#include "vot/dual.hpp"
#include "vot/metrics.hpp"
#include "vot/solver.hpp"

namespace vot {

// Indices in every report are 0-based; +infinity is written as "inf".
nlohmann::json PlanToJson(const CouplingTensor& plan);
nlohmann::json PotentialsToJson(const PotentialPair& pp);
nlohmann::json SlacknessToJson(const OptimalityVerdict& v);

// {status, value, dual_value, gap, pivots, dims, plan, potentials,
//  slackness, dual_feasibility, max_marginal_error}.
nlohmann::json SolveReportToJson(const SolveReport& report, const CostTensor& cost,
                                 double tolerance = 1e-8);

// Reads the plan back from a solve report or from {"dims", "plan"}.
CouplingTensor PlanFromJson(const nlohmann::json& j);

nlohmann::json MtiReportToJson(const MtiReport& r);
nlohmann::json AxiomVerdictToJson(const AxiomVerdict& v);
nlohmann::json GluedPlanToJson(const GluedPlan& g);

}  // namespace vot

#endif  // VOT_REPORT_IO_HPP_
