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

#include "loschart/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace loschart {

double pi_similarity(const ChannelVector &h1, const ChannelVector &h2)
{
    return pi_similarity(h1.entries, h2.entries);
}

double pi_distance(const ChannelVector &h1, const ChannelVector &h2)
{
    return distance_from_similarity(pi_similarity(h1, h2));
}

Eigen::MatrixXd similarity_matrix(std::span<const ChannelVector> channels)
{
    const Index n = static_cast<Index>(channels.size());
    if (n == 0)
        return Eigen::MatrixXd(0, 0);
    const Index m = channels.front().entries.size();

    Eigen::MatrixXcd h(m, n);
    for (Index i = 0; i < n; ++i)
    {
        const auto &e = channels[static_cast<std::size_t>(i)].entries;
        if (e.size() != m)
            throw std::invalid_argument("Channel vectors have different lengths.");
        const double norm = e.norm();
        if (norm == 0.0)
            throw std::invalid_argument("PI similarity is undefined for a zero channel.");
        h.col(i) = e / norm;
    }

    Eigen::MatrixXcd gram = Eigen::MatrixXcd::Zero(n, n);
    gram.selfadjointView<Eigen::Lower>().rankUpdate(h.adjoint());

    Eigen::MatrixXd s(n, n);
    for (Index j = 0; j < n; ++j)
    {
        s(j, j) = 1.0;
        for (Index i = j + 1; i < n; ++i)
        {
            const double v = std::min(std::abs(gram(i, j)), 1.0);
            s(i, j) = v;
            s(j, i) = v;
        }
    }
    return s;
}

double bessel_j0(double x)
{
    return std::cyl_bessel_j(0.0, std::abs(x));
}

double bessel_j1(double x)
{
    const double v = std::cyl_bessel_j(1.0, std::abs(x));
    return x < 0.0 ? -v : v;
}

const KernelConstants &kernel_constants()
{
    static const KernelConstants constants = [] {
        KernelConstants k{};
        k.j0_first_root = bisect(bessel_j0, 2.0, 3.0, 1e-14);
        k.j0_first_extremum = bisect(bessel_j1, 3.0, 4.5, 1e-14);
        k.bessel_sidelobe = std::abs(bessel_j0(k.j0_first_extremum));
        const double t = k.bessel_sidelobe;
        // Dirichlet kernel in the Ns -> infinity limit: 2 sin(x/2) / x
        k.radial_width_factor = bisect([t](double x) { return 2.0 * std::sin(0.5 * x) / x - t; }, 1e-9, kTwoPi, 1e-14);
        k.angular_width_factor = bisect([t](double y) { return bessel_j0(y) - t; }, 0.0, k.j0_first_root, 1e-14);
        return k;
    }();
    return constants;
}

double radial_term(const SystemConfig &config, double r1, double r2)
{
    return std::abs(dirichlet_kernel(config.ns, kTwoPi * config.bandwidth() * (r1 - r2) / kSpeedOfLight));
}

double angular_term_ula(const SystemConfig &config, double th1, double th2)
{
    const auto *ula = std::get_if<Ula>(&config.array);
    if (!ula)
        throw std::invalid_argument("Closed-form ULA angular term needs a ULA geometry.");
    return std::abs(dirichlet_kernel(ula->na, kTwoPi * ula->delta_r * ula->na * (std::sin(th1) - std::sin(th2))));
}

double angular_term_uca(const SystemConfig &config, double th1, double th2)
{
    const auto *uca = std::get_if<Uca>(&config.array);
    if (!uca)
        throw std::invalid_argument("UCA angular term needs a UCA geometry.");
    const double k = kTwoPi * uca->radius / config.wavelength();
    const double dc = std::cos(th1) - std::cos(th2);
    const double ds = std::sin(th1) - std::sin(th2);
    std::complex<double> acc = 0.0;
    for (int n = 0; n < uca->na; ++n)
    {
        const double phi = kTwoPi * n / uca->na;
        acc += std::polar(1.0, -k * (std::cos(phi) * dc + std::sin(phi) * ds));
    }
    return std::min(std::abs(acc) / uca->na, 1.0);
}

double angular_term(const SystemConfig &config, double th1, double th2)
{
    return pi_similarity(steering_vector(config, th1), steering_vector(config, th2));
}

double angular_term_uca_approx(const SystemConfig &config, double th1, double th2)
{
    const auto *uca = std::get_if<Uca>(&config.array);
    if (!uca)
        throw std::invalid_argument("Bessel angular approximation needs a UCA geometry.");
    const double arg = 4.0 * kPi / config.wavelength() * uca->radius * std::abs(std::sin(0.5 * (th1 - th2)));
    return std::abs(bessel_j0(arg));
}

double pi_similarity_uca_approx(const SystemConfig &config, const PolarPosition &p1, const PolarPosition &p2)
{
    return radial_term(config, p1.r, p2.r) * angular_term_uca_approx(config, p1.theta, p2.theta);
}

double threshold_for(const SystemConfig &config)
{
    config.validate();
    const double t_radial = std::abs(dirichlet_kernel(config.ns, 3.0 * kPi));
    if (const auto *ula = std::get_if<Ula>(&config.array))
        return std::max(t_radial, std::abs(dirichlet_kernel(ula->na, 3.0 * kPi)));
    if (config.is_uca())
    {
        const double t_angular = kernel_constants().bessel_sidelobe;
        return config.ns > 2 ? t_angular : std::max(t_radial, t_angular);
    }
    throw std::invalid_argument("No threshold rule for an arbitrary array geometry.");
}

namespace {

// x in (0, 2 pi] with |D_N(x)| = t on the decreasing half of the main lobe.
double dirichlet_inverse(int n, double t)
{
    return bisect([n, t](double x) { return std::abs(dirichlet_kernel(n, x)) - t; }, 0.0, kTwoPi, 1e-13);
}

} // namespace

LobeWidths main_lobe_widths(const SystemConfig &config, double theta0)
{
    config.validate();
    const double t = threshold_for(config);
    const double c_over_b = kSpeedOfLight / config.bandwidth();

    LobeWidths w;
    w.radial.kernel = KernelKind::dirichlet;
    w.radial.order = config.ns;
    w.radial.period = kSpeedOfLight / config.delta_f;
    w.radial.main_lobe_width = 2.0 * c_over_b;
    w.radial.threshold = t;
    w.angular.threshold = t;

    if (const auto *ula = std::get_if<Ula>(&config.array))
    {
        w.radial.thresholded_width =
            config.ns == 1 ? std::numeric_limits<double>::infinity() : dirichlet_inverse(config.ns, t) * c_over_b / kPi;

        w.angular.kernel = KernelKind::dirichlet;
        w.angular.order = ula->na;
        w.angular.period = 1.0 / ula->delta_r; // in sin(theta)

        const double s0 = std::sin(theta0);
        auto width = [&](double half) {
            const double hi = std::min(1.0, s0 + half), lo = std::max(-1.0, s0 - half);
            return std::asin(hi) - std::asin(lo);
        };
        if (ula->na == 1)
        {
            w.angular.main_lobe_width = kPi;
            w.angular.thresholded_width = kPi;
            return w;
        }
        const double half_null = 1.0 / (ula->na * ula->delta_r);
        const double half_cut = dirichlet_inverse(ula->na, t) / (kTwoPi * ula->delta_r * ula->na);
        w.angular.main_lobe_width = width(half_null);
        w.angular.thresholded_width = width(half_cut);
        w.angular_split = std::abs(s0) + half_null > 1.0;
        return w;
    }

    const auto *uca = std::get_if<Uca>(&config.array);
    if (!uca)
        throw std::invalid_argument("Lobe widths need a ULA or UCA geometry.");

    const auto &k = kernel_constants();
    const double scale = config.wavelength() / (4.0 * kPi * uca->radius);
    w.radial.thresholded_width = k.radial_width_factor * c_over_b / kPi;
    w.angular.kernel = KernelKind::bessel_j0;
    w.angular.order = uca->na;
    w.angular.main_lobe_width = 4.0 * std::asin(std::min(scale * k.j0_first_root, 1.0));
    if (scale * k.angular_width_factor > 1.0)
        throw std::domain_error("UCA radius too small: the thresholded angular lobe covers every direction "
                                "(lambda * 1.692 / (4 pi R) > 1).");
    w.angular.thresholded_width = 4.0 * std::asin(scale * k.angular_width_factor);
    return w;
}

ThresholdedDistances threshold_similarities(const Eigen::MatrixXd &similarity, double threshold)
{
    const Index n = similarity.rows();
    DistanceMatrix::Mask present = (similarity.array() >= threshold);
    present.matrix().diagonal().setConstant(true);
    Eigen::MatrixXd d = similarity.unaryExpr([](double s) { return distance_from_similarity(s); });
    d.diagonal().setZero();

    ThresholdedDistances out;
    out.distances = DistanceMatrix(std::move(d), std::move(present), DistanceKind::pi_thresholded);
    out.graph = NeighborGraph::from_distances(out.distances);
    out.threshold = threshold;
    if (n >= 2 && out.graph.edge_count() == 0)
        out.warnings.push_back("every node is isolated after thresholding at " + std::to_string(threshold) +
                               "; increase the UE density");
    return out;
}

ThresholdedDistances thresholded_distance_matrix(std::span<const ChannelVector> channels, const SystemConfig &config)
{
    if (channels.size() < 2)
        throw std::invalid_argument("Thresholded distances need at least two channels.");
    return threshold_similarities(similarity_matrix(channels), threshold_for(config));
}

} // namespace loschart
