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

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "loschart/constants.hpp"

namespace loschart {

template <typename Scalar>
using CVector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;
using ComplexVector = CVector<double>;

/// Row-major list of planar points, one point per row (metres).
using Points2 = Eigen::Matrix<double, Eigen::Dynamic, 2>;

// ---------- Array geometry ----------

/// Uniform linear array along the y axis, spacing in wavelengths.
struct Ula
{
    int na = 1;
    double delta_r = 0.5;
};

/// Uniform circular array centred on the origin.
struct Uca
{
    int na = 1;
    double radius = 0.0; // m
};

/// Free-form planar array; positions are relative to the array barycenter.
struct ArbitraryArray
{
    Points2 positions;
};

using ArrayGeometry = std::variant<Ula, Uca, ArbitraryArray>;

// ---------- System configuration ----------

struct SystemConfig
{
    double fc = 3e9;      // carrier frequency (Hz)
    int ns = 1;           // subcarrier count
    double delta_f = 0.0; // subcarrier spacing (Hz)
    ArrayGeometry array = Ula{};

    double bandwidth() const { return ns * delta_f; }
    double wavelength() const { return kSpeedOfLight / fc; }
    int na() const;

    bool is_ula() const { return std::holds_alternative<Ula>(array); }
    bool is_uca() const { return std::holds_alternative<Uca>(array); }

    /// Offset f_s - fc of subcarrier s (0-based); the grid is symmetric about fc.
    double subcarrier_offset(int s) const { return delta_f * (s - 0.5 * (ns - 1)); }

    /// Absolute subcarrier frequencies f_1..f_Ns.
    Eigen::VectorXd subcarriers() const;

    /// Throws std::invalid_argument when any invariant is violated.
    void validate() const;
};

/// Antenna positions p_1..p_Na, one per row (metres).
Points2 antenna_positions(const SystemConfig &config);

// ---------- UE positions and channels ----------

struct PolarPosition
{
    double r = 1.0;     // m
    double theta = 0.0; // rad, (-pi, pi]

    Eigen::Vector2d cartesian() const { return {r * std::cos(theta), r * std::sin(theta)}; }
};

struct ChannelVector
{
    ComplexVector entries; // frequency-major: entry s*Na + n
    std::optional<PolarPosition> position;
};

/// Unit-norm steering vector a(theta), length Na.
ComplexVector steering_vector(const SystemConfig &config, double theta);

/// Unit-norm frequency signature f(r), length Ns.
ComplexVector frequency_signature(const SystemConfig &config, double r);

/// LoS channel (sqrt(Na Ns)/r) e^{-j 2 pi r / lambda} f(r) (x) a(theta), tagged with its position.
ChannelVector synth_channel(const SystemConfig &config, const PolarPosition &pos);

std::vector<ChannelVector> synth_channels(const SystemConfig &config, std::span<const PolarPosition> positions);

/// Cartesian ground truth of tagged channels (n x 2). Throws if any channel is untagged.
Points2 ground_truth(std::span<const ChannelVector> channels);

Points2 to_cartesian(std::span<const PolarPosition> positions);

// ---------- UE sampling ----------

/// Annular sector {r_min <= r <= r_max, theta_min <= theta <= theta_max}.
/// A span of 2 pi or more is the full annulus.
struct RegionSpec
{
    double r_min = 0.0;
    double r_max = 0.0;
    double theta_min = -kPi;
    double theta_max = kPi;

    static RegionSpec annulus(double r_min, double r_max) { return {r_min, r_max, -kPi, kPi}; }
    bool is_full_annulus() const { return theta_max - theta_min >= kTwoPi; }
    void validate() const;
};

/// Positions drawn uniformly by area inside the region. Deterministic for a fixed seed
/// on every platform (the generator and the uniform mapping are both fixed).
std::vector<PolarPosition> sample_ues(const RegionSpec &region, std::size_t count, std::uint64_t seed);

} // namespace loschart
