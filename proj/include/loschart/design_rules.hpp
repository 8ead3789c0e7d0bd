// SPDX-License-Identifier: Apache-2.0
//
// loschart: line-of-sight channel charting for multicarrier multiantenna systems
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "loschart/channel_model.hpp"

namespace loschart {

/// Area to chart, in polar coordinates around the base station.
struct AreaSpec
{
    double r_center = 0.0;       // m
    double radial_size = 0.0;    // m, radial extent of the area
    double angular_center = 0.0; // rad
    double angular_span = kTwoPi; // rad, up to 2 pi

    double r_inner() const { return r_center - 0.5 * radial_size; }
    double r_outer() const { return r_center + 0.5 * radial_size; }
    void validate() const;

    /// Sampling region covering the area.
    RegionSpec region() const;
};

/// One checked clause, annotated with the rule it enforces.
struct Clause
{
    std::string name;
    std::string rule;
    bool ok = true;
    bool hard = true; // soft clauses are advisory and never make a design infeasible
    std::string detail;
};

struct ConditionReport
{
    std::vector<Clause> clauses;

    bool ok() const;
    std::vector<std::string> violated() const;
};

/// c (1/delta_f - 1/B): widest radial extent free of periodic radial aliasing.
double max_radial_size(const SystemConfig &config);

/// Radial extent bound, angular-interval bound around the area centre, and the
/// ULA-axis crossing rule.
ConditionReport necessary_condition_ula(const SystemConfig &config, const AreaSpec &area);

/// Radial extent bound only; any angular span up to 2 pi is allowed.
ConditionReport necessary_condition_uca(const SystemConfig &config, const AreaSpec &area);

ConditionReport necessary_condition(const SystemConfig &config, const AreaSpec &area);

struct SufficientThreshold
{
    double similarity = 0.0; // keep pairs with s >= similarity
    double distance = 0.0;   // equivalently d <= sqrt(2 - 2 similarity)
};

SufficientThreshold sufficient_threshold(const SystemConfig &config);

struct NeighborhoodAxes
{
    double radial = 0.0;        // L'_f, m
    double angular_width = 0.0; // L', rad
    double angular_arc = 0.0;   // L' r_ref, m
};

NeighborhoodAxes neighborhood_axes(const SystemConfig &config, double r_ref, double theta0 = 0.0);

/// Radial over angular axis of the identifiable neighbourhood at r_ref. For a UCA this
/// is (k_f / 4) c / (B r_ref pi asin(lambda k_a / (4 pi R))) with k_f = 4.238, k_a = 1.692.
double roundness_gamma(const SystemConfig &config, double r_ref, double theta0 = 0.0);

/// Bandwidth giving round neighbourhoods at r0 for the configured UCA.
double optimal_bandwidth(const SystemConfig &config, double r0);

/// UCA radius giving round neighbourhoods at r0 for bandwidth B.
double optimal_radius(const SystemConfig &config, double r0, double bandwidth);

/// 4 k_min / (pi L'_f^2), UEs per square metre.
double min_user_density(const SystemConfig &config, int k_min);

struct IdentifiabilityReport
{
    ConditionReport necessary;
    SufficientThreshold sufficient;
    AreaSpec identifiable_area; // maximal area around the requested centre
    NeighborhoodAxes axes;      // at the area centre
    double roundness_gamma = 0.0;
    double min_density = 0.0;
    int k_min = 1;
};

IdentifiabilityReport identifiability_report(const SystemConfig &config, const AreaSpec &area, int k_min = 1);

/// Fixed quantities for design(); anything left empty is solved for.
struct DesignConstraints
{
    std::optional<double> fc;
    std::optional<int> na;
    std::optional<double> bandwidth;
    std::optional<double> uca_radius;
    int k_min = 1;
};

struct DesignResult
{
    bool feasible = false;
    std::vector<Clause> clauses;
    std::optional<SystemConfig> config;
    std::optional<IdentifiabilityReport> report;
    double delta_f_guideline = 0.0; // c / radial_size
    double delta_f_max = 0.0;       // exact bound c (1/delta_f - 1/B) >= radial_size

    /// First violated hard clause, empty when feasible.
    std::string first_violation() const;
};

/// Forward design calculator for a UCA system charting the given area. Resolution
/// order: fc and UCA radius, then B from round neighbourhoods at r_center, then the
/// subcarrier spacing from the radial extent, then Ns.
DesignResult design(const AreaSpec &area, const DesignConstraints &constraints);

} // namespace loschart
