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

#include <catch_amalgamated.hpp>

#include <cmath>

#include "loschart/channel_model.hpp"
#include "loschart/constants.hpp"

using namespace loschart;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

SystemConfig small_ula()
{
    return SystemConfig{3e9, 4, 1e6, Ula{4, 0.5}};
}

SystemConfig base_uca()
{
    return SystemConfig{3e9, 16, 625e3, Uca{64, 0.42}};
}

} // namespace

TEST_CASE("Antenna positions")
{
    const SystemConfig ula = small_ula();
    const Points2 p = antenna_positions(ula);
    REQUIRE(p.rows() == 4);
    for (int n = 0; n < 4; ++n)
    {
        CHECK(p(n, 0) == 0.0);
        CHECK_THAT(p(n, 1), WithinRel(n * 0.5 * ula.wavelength(), 1e-15));
    }

    const Points2 q = antenna_positions(base_uca());
    CHECK(q.rows() == 64);
    CHECK_THAT(q.rowwise().norm().maxCoeff(), WithinAbs(0.42, 1e-15));
    CHECK_THAT(q.colwise().sum().norm(), WithinAbs(0.0, 1e-14));
}

TEST_CASE("Configuration validation")
{
    CHECK_NOTHROW(small_ula().validate());
    CHECK_THROWS_AS((SystemConfig{0.0, 4, 1e6, Ula{4, 0.5}}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((SystemConfig{3e9, 0, 1e6, Ula{4, 0.5}}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((SystemConfig{3e9, 4, -1.0, Ula{4, 0.5}}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((SystemConfig{3e9, 4, 1e6, Ula{0, 0.5}}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((SystemConfig{3e9, 4, 1e6, Uca{8, 0.0}}.validate()), std::invalid_argument);

    Points2 off(2, 2);
    off << 1.0, 0.0, 2.0, 0.0;
    CHECK_THROWS_AS((SystemConfig{3e9, 4, 1e6, ArbitraryArray{off}}.validate()), std::invalid_argument);
    Points2 centred(2, 2);
    centred << -0.05, 0.0, 0.05, 0.0;
    CHECK_NOTHROW((SystemConfig{3e9, 4, 1e6, ArbitraryArray{centred}}.validate()));
}

TEST_CASE("Subcarrier grid is symmetric about the carrier")
{
    const SystemConfig cfg = base_uca();
    CHECK(cfg.bandwidth() == 10e6);
    CHECK(cfg.subcarrier_offset(0) == -625e3 * 7.5);
    CHECK(cfg.subcarrier_offset(15) == 625e3 * 7.5);
    const Eigen::VectorXd f = cfg.subcarriers();
    CHECK_THAT(f.mean(), WithinRel(3e9, 1e-15));
}

TEST_CASE("Signatures are unit norm")
{
    const SystemConfig cfg = base_uca();
    CHECK_THAT(steering_vector(cfg, 0.3).norm(), WithinAbs(1.0, 1e-14));
    CHECK_THAT(frequency_signature(cfg, 250.0).norm(), WithinAbs(1.0, 1e-14));
    CHECK_THROWS_AS(frequency_signature(cfg, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(synth_channel(cfg, {-1.0, 0.0}), std::invalid_argument);
}

TEST_CASE("Channel structure and spot value")
{
    const SystemConfig cfg = small_ula();
    const PolarPosition pos{100.3, 0.4};
    const ChannelVector h = synth_channel(cfg, pos);
    REQUIRE(h.entries.size() == 16);
    REQUIRE(h.position);
    CHECK_THAT(h.entries.norm(), WithinRel(4.0 / 100.3, 1e-13));

    // Independent high-precision evaluation of entry (s = 2, n = 3).
    CHECK_THAT(h.entries(2 * 4 + 3).real(), WithinAbs(-0.0017152180942154699609, 1e-13));
    CHECK_THAT(h.entries(2 * 4 + 3).imag(), WithinAbs(-0.0098214416523049486459, 1e-13));

    // Frequency-major Kronecker layout.
    const ComplexVector f = frequency_signature(cfg, pos.r);
    const ComplexVector a = steering_vector(cfg, pos.theta);
    for (int s = 0; s < 4; ++s)
        for (int n = 0; n < 4; ++n)
        {
            const std::complex<double> ratio = h.entries(s * 4 + n) / (f(s) * a(n));
            CHECK_THAT(std::abs(ratio), WithinRel(4.0 / 100.3, 1e-12));
        }
}

TEST_CASE("Ground truth requires tagged channels")
{
    const SystemConfig cfg = small_ula();
    std::vector<PolarPosition> pos{{10.0, 0.0}, {20.0, kPi / 2}};
    auto hs = synth_channels(cfg, pos);
    const Points2 xy = ground_truth(hs);
    CHECK_THAT(xy(0, 0), WithinAbs(10.0, 1e-12));
    CHECK_THAT(xy(1, 1), WithinAbs(20.0, 1e-12));
    hs[1].position.reset();
    CHECK_THROWS_AS(ground_truth(hs), std::invalid_argument);
}

TEST_CASE("UE sampling")
{
    const RegionSpec sector{100.0, 200.0, -0.5, 0.5};
    const auto a = sample_ues(sector, 2000, 7);
    const auto b = sample_ues(sector, 2000, 7);
    const auto c = sample_ues(sector, 2000, 8);
    REQUIRE(a.size() == 2000);
    bool differs = false;
    double inner = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
    {
        CHECK(a[i].r == b[i].r);
        CHECK(a[i].theta == b[i].theta);
        differs = differs || a[i].r != c[i].r;
        CHECK(a[i].r >= 100.0);
        CHECK(a[i].r <= 200.0);
        CHECK(a[i].theta >= -0.5);
        CHECK(a[i].theta <= 0.5);
        inner += a[i].r < 150.0 ? 1 : 0;
    }
    CHECK(differs);
    // Area-uniform: the inner half-range holds (150^2 - 100^2) / (200^2 - 100^2) = 5/12 of the UEs.
    CHECK_THAT(inner / 2000.0, WithinAbs(5.0 / 12.0, 0.04));

    const auto full = sample_ues(RegionSpec::annulus(1.0, 2.0), 500, 1);
    for (const auto &p : full)
    {
        CHECK(p.theta > -kPi);
        CHECK(p.theta <= kPi);
    }
    CHECK(sample_ues(sector, 0, 1).empty());
    CHECK_THROWS_AS(sample_ues({5.0, 5.0, 0.0, 1.0}, 1, 1), std::invalid_argument);
}

TEST_CASE("Angle wrapping")
{
    CHECK_THAT(wrap_angle(3 * kPi / 2), WithinAbs(-kPi / 2, 1e-15));
    CHECK_THAT(wrap_angle(-kPi), WithinAbs(kPi, 1e-15));
    CHECK_THAT(wrap_angle(0.25), WithinAbs(0.25, 0.0));
}
