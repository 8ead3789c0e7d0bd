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

#include "loschart/design_rules.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "loschart/kernels.hpp"

namespace loschart {

namespace {

constexpr double kRelTol = 1e-9;

std::string fmt(double v)
{
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

const Uca &require_uca(const SystemConfig &config)
{
    const auto *uca = std::get_if<Uca>(&config.array);
    if (!uca)
        throw std::invalid_argument("This rule applies to UCA geometries only.");
    return *uca;
}

Clause radial_clause(const SystemConfig &config, const AreaSpec &area)
{
    const double bound = max_radial_size(config);
    Clause c{"radial extent", "necessary condition: R <= c (1/delta_f - 1/B)", true, true, ""};
    c.ok = area.radial_size <= bound * (1.0 + kRelTol);
    c.detail = "radial size " + fmt(area.radial_size) + " m, bound " + fmt(bound) + " m";
    return c;
}

// Half-width (in sin theta) of the alias-free interval around the area centre.
double ula_alias_free_half_width(const Ula &ula)
{
    return (ula.na - 1.0) / (2.0 * ula.delta_r * ula.na);
}

// Mirror an angle across the ULA axis into the front half-plane.
double to_front(double theta)
{
    return std::cos(theta) < 0.0 ? wrap_angle(kPi - theta) : wrap_angle(theta);
}

} // namespace

void AreaSpec::validate() const
{
    if (!(std::isfinite(r_center) && std::isfinite(radial_size) && radial_size >= 0.0))
        throw std::invalid_argument("Area needs a finite centre and a non-negative radial size.");
    if (!(r_inner() > 0.0))
        throw std::invalid_argument("Area must stay away from the base station (r_center - radial_size/2 > 0).");
    if (!(std::isfinite(angular_center) && angular_span >= 0.0 && angular_span <= kTwoPi * (1.0 + kRelTol)))
        throw std::invalid_argument("Angular span must lie in [0, 2 pi].");
}

RegionSpec AreaSpec::region() const
{
    validate();
    if (angular_span >= kTwoPi * (1.0 - kRelTol))
        return RegionSpec::annulus(r_inner(), r_outer());
    return {r_inner(), r_outer(), angular_center - 0.5 * angular_span, angular_center + 0.5 * angular_span};
}

bool ConditionReport::ok() const
{
    for (const auto &c : clauses)
        if (c.hard && !c.ok)
            return false;
    return true;
}

std::vector<std::string> ConditionReport::violated() const
{
    std::vector<std::string> out;
    for (const auto &c : clauses)
        if (!c.ok)
            out.push_back(c.name + ": " + c.detail);
    return out;
}

double max_radial_size(const SystemConfig &config)
{
    config.validate();
    return kSpeedOfLight * (1.0 / config.delta_f - 1.0 / config.bandwidth());
}

ConditionReport necessary_condition_ula(const SystemConfig &config, const AreaSpec &area)
{
    const auto *ula = std::get_if<Ula>(&config.array);
    if (!ula)
        throw std::invalid_argument("ULA necessary condition needs a ULA geometry.");
    area.validate();

    ConditionReport report;
    report.clauses.push_back(radial_clause(config, area));

    // The array axis is the line theta = pi/2 [pi]; the area may touch it but not cross it
    const double lo = area.angular_center - 0.5 * area.angular_span;
    const double hi = area.angular_center + 0.5 * area.angular_span;
    double axis = 0.5 * kPi + kPi * std::ceil((lo - 0.5 * kPi) / kPi);
    if (axis <= lo)
        axis += kPi;
    Clause axis_clause{"array axis", "necessary condition: area must not cross the ULA axis", axis >= hi, true, ""};
    axis_clause.detail = "angular interval [" + fmt(lo) + ", " + fmt(hi) + "] rad";
    report.clauses.push_back(axis_clause);

    const double h = ula_alias_free_half_width(*ula);
    const double center = to_front(area.angular_center);
    const double s0 = std::sin(center);
    if (h < 1.0)
    {
        Clause c{"angular centre", "necessary condition: centre within [asin(-(1-h)), asin(1-h)]", true, true, ""};
        c.ok = std::abs(s0) <= (1.0 - h) * (1.0 + kRelTol);
        c.detail = "sin(centre) " + fmt(s0) + ", limit " + fmt(1.0 - h);
        report.clauses.push_back(c);
    }

    const double a_lo = std::asin(std::max(-1.0, s0 - h));
    const double a_hi = std::asin(std::min(1.0, s0 + h));
    Clause spread{"angular spread", "necessary condition: spread within [asin(sin t - h), asin(sin t + h)]", true, true,
                  ""};
    const double eps = 1e-12;
    spread.ok = center - 0.5 * area.angular_span >= a_lo - eps && center + 0.5 * area.angular_span <= a_hi + eps;
    spread.detail = "span " + fmt(area.angular_span) + " rad inside [" + fmt(a_lo) + ", " + fmt(a_hi) + "]";
    report.clauses.push_back(spread);
    return report;
}

ConditionReport necessary_condition_uca(const SystemConfig &config, const AreaSpec &area)
{
    require_uca(config);
    area.validate();
    ConditionReport report;
    report.clauses.push_back(radial_clause(config, area));
    report.clauses.push_back({"angular spread", "UCA: whole angular domain allowed", true, true,
                              "span " + fmt(area.angular_span) + " rad"});
    return report;
}

ConditionReport necessary_condition(const SystemConfig &config, const AreaSpec &area)
{
    if (config.is_ula())
        return necessary_condition_ula(config, area);
    if (config.is_uca())
        return necessary_condition_uca(config, area);
    throw std::invalid_argument("No identifiability rule for an arbitrary array geometry.");
}

SufficientThreshold sufficient_threshold(const SystemConfig &config)
{
    const double t = threshold_for(config);
    return {t, distance_from_similarity(t)};
}

NeighborhoodAxes neighborhood_axes(const SystemConfig &config, double r_ref, double theta0)
{
    if (!(std::isfinite(r_ref) && r_ref > 0.0))
        throw std::invalid_argument("Reference range must be positive.");
    const LobeWidths w = main_lobe_widths(config, theta0);
    return {w.radial.thresholded_width, w.angular.thresholded_width, w.angular.thresholded_width * r_ref};
}

double roundness_gamma(const SystemConfig &config, double r_ref, double theta0)
{
    const NeighborhoodAxes axes = neighborhood_axes(config, r_ref, theta0);
    return axes.radial / axes.angular_arc;
}

double optimal_bandwidth(const SystemConfig &config, double r0)
{
    const Uca &uca = require_uca(config);
    if (!(r0 > 0.0))
        throw std::invalid_argument("Area centre must be at positive range.");
    const auto &k = kernel_constants();
    const double arg = config.wavelength() * k.angular_width_factor / (4.0 * kPi * uca.radius);
    if (!(arg <= 1.0))
        throw std::domain_error("UCA radius too small for a thresholded angular lobe.");
    return (kSpeedOfLight / r0) * (0.25 * k.radial_width_factor) / (kPi * std::asin(arg));
}

double optimal_radius(const SystemConfig &config, double r0, double bandwidth)
{
    if (!(r0 > 0.0 && bandwidth > 0.0))
        throw std::invalid_argument("Area centre and bandwidth must be positive.");
    const auto &k = kernel_constants();
    const double x = (kSpeedOfLight / (bandwidth * r0)) * (0.25 * k.radial_width_factor) / kPi;
    if (!(x < 0.5 * kPi))
        throw std::domain_error("No UCA radius gives round neighbourhoods: bandwidth * r0 is too small.");
    return config.wavelength() * k.angular_width_factor / (4.0 * kPi * std::sin(x));
}

double min_user_density(const SystemConfig &config, int k_min)
{
    if (k_min < 0)
        throw std::invalid_argument("k_min cannot be negative.");
    const double l = main_lobe_widths(config).radial.thresholded_width;
    return 4.0 * k_min / (kPi * l * l);
}

IdentifiabilityReport identifiability_report(const SystemConfig &config, const AreaSpec &area, int k_min)
{
    area.validate();
    IdentifiabilityReport rep;
    rep.k_min = k_min;
    rep.necessary = necessary_condition(config, area);
    rep.sufficient = sufficient_threshold(config);

    AreaSpec best = area;
    best.radial_size = std::min(max_radial_size(config), 2.0 * area.r_center * (1.0 - kRelTol));
    if (const auto *ula = std::get_if<Ula>(&config.array))
    {
        const double h = ula_alias_free_half_width(*ula);
        const double front = to_front(area.angular_center);
        // Centre clamped into the admissible band, then the alias-free interval around it
        const double s0 = h < 1.0 ? std::clamp(std::sin(front), -(1.0 - h), 1.0 - h) : std::sin(front);
        const double lo = std::asin(std::max(-1.0, s0 - h));
        const double hi = std::asin(std::min(1.0, s0 + h));
        const double mid = 0.5 * (lo + hi);
        best.angular_center = std::cos(area.angular_center) < 0.0 ? wrap_angle(kPi - mid) : mid;
        best.angular_span = hi - lo;
    }
    else
    {
        best.angular_span = kTwoPi;
    }
    rep.identifiable_area = best;

    rep.axes = neighborhood_axes(config, area.r_center, area.angular_center);
    rep.roundness_gamma = rep.axes.radial / rep.axes.angular_arc;
    rep.min_density = min_user_density(config, k_min);
    return rep;
}

std::string DesignResult::first_violation() const
{
    for (const auto &c : clauses)
        if (c.hard && !c.ok)
            return c.name + ": " + c.detail;
    return {};
}

DesignResult design(const AreaSpec &area, const DesignConstraints &constraints)
{
    DesignResult res;
    auto fail = [&](std::string name, std::string rule, std::string detail) {
        res.clauses.push_back({std::move(name), std::move(rule), false, true, std::move(detail)});
        res.feasible = false;
        return res;
    };

    try
    {
        area.validate();
    }
    catch (const std::invalid_argument &e)
    {
        return fail("area", "area specification", e.what());
    }
    if (area.radial_size <= 0.0)
        return fail("area", "area specification", "radial size must be positive for a design");

    const auto &k = kernel_constants();
    const double r0 = area.r_center;
    const std::optional<double> &bw_fixed = constraints.bandwidth;
    const std::optional<double> &radius_fixed = constraints.uca_radius;

    if ((constraints.fc && !(*constraints.fc > 0.0)) || (bw_fixed && !(*bw_fixed > 0.0)) ||
        (radius_fixed && !(*radius_fixed > 0.0)) || (constraints.na && *constraints.na < 1))
        return fail("constraints", "constraint validation", "fixed quantities must be positive");

    // Carrier: fixed, or solved from B and R through gamma = 1
    double fc = 0.0;
    if (constraints.fc)
        fc = *constraints.fc;
    else if (bw_fixed && radius_fixed)
    {
        const double x = (kSpeedOfLight / (*bw_fixed * r0)) * (0.25 * k.radial_width_factor) / kPi;
        if (!(x < 0.5 * kPi))
            return fail("carrier", "round neighbourhoods (gamma = 1)", "bandwidth * r_center too small");
        const double lambda = 4.0 * kPi * *radius_fixed * std::sin(x) / k.angular_width_factor;
        fc = kSpeedOfLight / lambda;
    }
    else
        return fail("carrier", "constraint resolution", "fix fc, or both the bandwidth and the UCA radius");
    const double lambda = kSpeedOfLight / fc;

    // UCA radius
    SystemConfig probe{fc, 1, 1.0, Uca{1, 0.0}};
    double radius = 0.0;
    if (radius_fixed)
        radius = *radius_fixed;
    else if (bw_fixed)
    {
        try
        {
            radius = optimal_radius(probe, r0, *bw_fixed);
        }
        catch (const std::domain_error &e)
        {
            return fail("UCA radius", "round neighbourhoods (gamma = 1)", e.what());
        }
    }
    else
    {
        // Half-wavelength spacing along the circumference
        const int na = constraints.na.value_or(64);
        radius = na * lambda / (4.0 * kPi);
    }

    // Bandwidth
    double bandwidth = 0.0;
    probe.array = Uca{1, radius};
    if (bw_fixed)
        bandwidth = *bw_fixed;
    else
    {
        try
        {
            bandwidth = optimal_bandwidth(probe, r0);
        }
        catch (const std::domain_error &e)
        {
            return fail("bandwidth", "round neighbourhoods (gamma = 1)", e.what());
        }
    }

    // Antenna count: smallest power of two with at most half-wavelength circumferential spacing
    int na = 0;
    if (constraints.na)
        na = *constraints.na;
    else
    {
        const double needed = std::ceil(4.0 * kPi * radius / lambda - kRelTol);
        na = 1;
        while (na < needed)
            na *= 2;
    }

    // Subcarrier spacing from the radial extent, then Ns
    res.delta_f_guideline = kSpeedOfLight / area.radial_size;
    res.delta_f_max = 1.0 / (area.radial_size / kSpeedOfLight + 1.0 / bandwidth);
    const double ns_real = std::ceil(bandwidth / res.delta_f_max - kRelTol);
    if (!(ns_real <= double(1 << 20)))
        return fail("subcarriers", "necessary condition: R <= c (1/delta_f - 1/B)",
                    "area too wide: more than 2^20 subcarriers needed");
    const int ns = std::max(1, static_cast<int>(ns_real));

    SystemConfig cfg{fc, ns, bandwidth / ns, Uca{na, radius}};
    try
    {
        cfg.validate();
        main_lobe_widths(cfg);
    }
    catch (const std::exception &e)
    {
        return fail("configuration", "configuration validity", e.what());
    }

    res.clauses.push_back({"subcarrier spacing", "necessary condition: delta_f <= c / R", true, true,
                           "delta_f " + fmt(cfg.delta_f) + " Hz, guideline " + fmt(res.delta_f_guideline) +
                               " Hz, exact bound " + fmt(res.delta_f_max) + " Hz"});
    res.clauses.push_back({"array geometry", "UCA: no angular aliasing and constant angular spread", true, true,
                           "UCA with " + std::to_string(na) + " antennas, radius " + fmt(radius) + " m"});

    IdentifiabilityReport rep = identifiability_report(cfg, area, constraints.k_min);
    const double gamma = rep.roundness_gamma;
    res.clauses.push_back({"roundness", "round neighbourhoods: gamma = 1 at r_center", std::abs(gamma - 1.0) <= 1e-6,
                           false, "gamma " + fmt(gamma) + " at " + fmt(r0) + " m"});
    res.clauses.push_back({"threshold", "sufficient condition: keep s >= t", true, true,
                           "similarity " + fmt(rep.sufficient.similarity) + ", distance " +
                               fmt(rep.sufficient.distance)});
    for (const auto &c : rep.necessary.clauses)
        res.clauses.push_back(c);

    res.config = cfg;
    res.report = std::move(rep);
    res.feasible = true;
    for (const auto &c : res.clauses)
        if (c.hard && !c.ok)
            res.feasible = false;
    return res;
}

} // namespace loschart
