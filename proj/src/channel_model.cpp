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

#include "loschart/channel_model.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace loschart {

namespace {

template <class... Ts>
struct overloaded : Ts...
{
    using Ts::operator()...;
};

// 53-bit uniform in [0, 1). std::uniform_real_distribution is implementation-defined,
// so datasets would differ between standard libraries without this.
double uniform01(std::mt19937_64 &gen)
{
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

} // namespace

int SystemConfig::na() const
{
    return std::visit(overloaded{[](const Ula &a) { return a.na; },
                                 [](const Uca &a) { return a.na; },
                                 [](const ArbitraryArray &a) { return static_cast<int>(a.positions.rows()); }},
                      array);
}

Eigen::VectorXd SystemConfig::subcarriers() const
{
    Eigen::VectorXd f(ns);
    for (int s = 0; s < ns; ++s)
        f(s) = fc + subcarrier_offset(s);
    return f;
}

void SystemConfig::validate() const
{
    if (!(std::isfinite(fc) && fc > 0.0))
        throw std::invalid_argument("Carrier frequency must be positive.");
    if (ns < 1)
        throw std::invalid_argument("Subcarrier count must be at least 1.");
    if (!(std::isfinite(delta_f) && delta_f > 0.0))
        throw std::invalid_argument("Subcarrier spacing must be positive.");
    if (na() < 1)
        throw std::invalid_argument("Antenna count must be at least 1.");

    if (const auto *ula = std::get_if<Ula>(&array))
    {
        if (!(std::isfinite(ula->delta_r) && ula->delta_r > 0.0))
            throw std::invalid_argument("ULA spacing must be positive.");
    }
    else if (const auto *uca = std::get_if<Uca>(&array))
    {
        if (!(std::isfinite(uca->radius) && uca->radius >= 0.0))
            throw std::invalid_argument("UCA radius cannot be negative.");
        if (uca->na > 1 && uca->radius == 0.0)
            throw std::invalid_argument("UCA with more than one antenna needs a positive radius.");
    }
    else
    {
        const auto &p = std::get<ArbitraryArray>(array).positions;
        if (!p.allFinite())
            throw std::invalid_argument("Antenna positions must be finite.");
        const double scale = std::max(1.0, p.cwiseAbs().maxCoeff());
        if (p.colwise().mean().norm() > 1e-12 * scale)
            throw std::invalid_argument("Antenna positions must be relative to their barycenter.");
    }
}

Points2 antenna_positions(const SystemConfig &config)
{
    return std::visit(
        overloaded{[&](const Ula &a) {
                       // The barycenter convention is not applied to the ULA: p_n = (0, (n-1) delta_r lambda).
                       Points2 p(a.na, 2);
                       const double step = a.delta_r * config.wavelength();
                       for (int n = 0; n < a.na; ++n)
                           p.row(n) << 0.0, n * step;
                       return p;
                   },
                   [](const Uca &a) {
                       Points2 p(a.na, 2);
                       for (int n = 0; n < a.na; ++n)
                       {
                           const double phi = kTwoPi * n / a.na;
                           p.row(n) << a.radius * std::cos(phi), a.radius * std::sin(phi);
                       }
                       return p;
                   },
                   [](const ArbitraryArray &a) { return a.positions; }},
        config.array);
}

ComplexVector steering_vector(const SystemConfig &config, double theta)
{
    config.validate();
    const Points2 p = antenna_positions(config);
    const Eigen::Vector2d u(std::cos(theta), std::sin(theta));
    const double k = kTwoPi / config.wavelength();
    const double norm = 1.0 / std::sqrt(static_cast<double>(p.rows()));

    ComplexVector a(p.rows());
    for (Eigen::Index n = 0; n < p.rows(); ++n)
        a(n) = std::polar(norm, k * p.row(n).dot(u));
    return a;
}

ComplexVector frequency_signature(const SystemConfig &config, double r)
{
    config.validate();
    if (!(std::isfinite(r) && r > 0.0))
        throw std::invalid_argument("Range must be positive.");

    const double norm = 1.0 / std::sqrt(static_cast<double>(config.ns));
    ComplexVector f(config.ns);
    for (int s = 0; s < config.ns; ++s)
        f(s) = std::polar(norm, -kTwoPi * (r / kSpeedOfLight) * config.subcarrier_offset(s));
    return f;
}

ChannelVector synth_channel(const SystemConfig &config, const PolarPosition &pos)
{
    if (!(std::isfinite(pos.r) && pos.r > 0.0))
        throw std::invalid_argument("UE range must be positive, got " + std::to_string(pos.r));

    const ComplexVector f = frequency_signature(config, pos.r);
    const ComplexVector a = steering_vector(config, pos.theta);
    const Eigen::Index na = a.size(), ns = f.size();

    // Reduce r / lambda to its fractional part before forming the carrier phase
    const double cycles = pos.r / config.wavelength();
    const std::complex<double> scale =
        std::polar(std::sqrt(static_cast<double>(na * ns)) / pos.r, -kTwoPi * (cycles - std::floor(cycles)));

    ChannelVector h;
    h.entries.resize(na * ns);
    for (Eigen::Index s = 0; s < ns; ++s)
        h.entries.segment(s * na, na) = (scale * f(s)) * a;
    h.position = pos;
    return h;
}

std::vector<ChannelVector> synth_channels(const SystemConfig &config, std::span<const PolarPosition> positions)
{
    std::vector<ChannelVector> out;
    out.reserve(positions.size());
    for (const auto &p : positions)
        out.push_back(synth_channel(config, p));
    return out;
}

Points2 to_cartesian(std::span<const PolarPosition> positions)
{
    Points2 xy(static_cast<Eigen::Index>(positions.size()), 2);
    for (std::size_t i = 0; i < positions.size(); ++i)
        xy.row(static_cast<Eigen::Index>(i)) = positions[i].cartesian().transpose();
    return xy;
}

Points2 ground_truth(std::span<const ChannelVector> channels)
{
    Points2 xy(static_cast<Eigen::Index>(channels.size()), 2);
    for (std::size_t i = 0; i < channels.size(); ++i)
    {
        if (!channels[i].position)
            throw std::invalid_argument("Channel " + std::to_string(i) + " carries no ground-truth position.");
        xy.row(static_cast<Eigen::Index>(i)) = channels[i].position->cartesian().transpose();
    }
    return xy;
}

void RegionSpec::validate() const
{
    if (!(std::isfinite(r_min) && std::isfinite(r_max) && r_min >= 0.0 && r_max > r_min))
        throw std::invalid_argument("Region needs 0 <= r_min < r_max.");
    if (!(std::isfinite(theta_min) && std::isfinite(theta_max) && theta_max > theta_min))
        throw std::invalid_argument("Region needs theta_min < theta_max.");
}

std::vector<PolarPosition> sample_ues(const RegionSpec &region, std::size_t count, std::uint64_t seed)
{
    region.validate();
    std::mt19937_64 gen(seed);
    const double r2_min = region.r_min * region.r_min;
    const double r2_span = region.r_max * region.r_max - r2_min;
    const bool full = region.is_full_annulus();
    const double th_span = full ? kTwoPi : region.theta_max - region.theta_min;
    const double th_start = full ? -kPi : region.theta_min;

    std::vector<PolarPosition> out;
    out.reserve(count);
    while (out.size() < count)
    {
        const double u = uniform01(gen);
        const double v = uniform01(gen);
        const double r = std::sqrt(r2_min + u * r2_span);
        if (r <= 0.0)
            continue;
        out.push_back({r, wrap_angle(th_start + v * th_span)});
    }
    return out;
}

} // namespace loschart
