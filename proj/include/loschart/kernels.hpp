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

#include <cmath>
#include <complex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "loschart/channel_model.hpp"
#include "loschart/constants.hpp"
#include "loschart/graph.hpp"

namespace loschart {

// ---------- PI similarity and distance ----------

/// |h1^H h2| / (||h1|| ||h2||), in [0, 1].
template <typename Derived1, typename Derived2>
typename Derived1::RealScalar pi_similarity(const Eigen::MatrixBase<Derived1> &h1, const Eigen::MatrixBase<Derived2> &h2)
{
    using Real = typename Derived1::RealScalar;
    if (h1.size() != h2.size())
        throw std::invalid_argument("Channel vectors have different lengths.");
    const Real n1 = h1.norm(), n2 = h2.norm();
    if (n1 == Real(0) || n2 == Real(0))
        throw std::invalid_argument("PI similarity is undefined for a zero channel.");
    const Real s = std::abs(h1.dot(h2)) / (n1 * n2); // dot() conjugates the left operand
    return std::min(s, Real(1));
}

double pi_similarity(const ChannelVector &h1, const ChannelVector &h2);

/// sqrt(2 - 2 s), clamped at zero against rounding.
template <typename T>
T distance_from_similarity(T s)
{
    return std::sqrt(std::max(T(0), T(2) - T(2) * s));
}

double pi_distance(const ChannelVector &h1, const ChannelVector &h2);

/// Dense n x n PI similarity matrix (unit diagonal) from a single Gram product.
Eigen::MatrixXd similarity_matrix(std::span<const ChannelVector> channels);

// ---------- Closed-form kernels ----------

/// Dirichlet kernel D_N(x) = sin(x/2) / (N sin(x/(2N))). The argument is first reduced
/// modulo 2 pi N so that the removable singularities evaluate to their +-1 limit exactly.
template <typename T>
T dirichlet_kernel(int n, T x)
{
    if (n < 1)
        throw std::invalid_argument("Dirichlet kernel order must be at least 1.");
    if (n == 1)
        return T(1);
    const T period = T(2) * T(kPi) * T(n);
    const T m = std::round(x / period);
    const T y = x - m * period; // |y| <= pi N
    // D_N(y + 2 pi N m) = (-1)^{(N-1) m} D_N(y)
    const bool flip = (n % 2 == 0) && std::fmod(std::abs(m), T(2)) == T(1);
    const T sign = flip ? T(-1) : T(1);
    if (y == T(0))
        return sign;
    const T den = std::sin(y / (T(2) * T(n)));
    if (std::abs(den) < T(1e-9))
        return sign;
    return sign * std::sin(y / T(2)) / (T(n) * den);
}

/// Bessel function of the first kind, order 0 and 1.
double bessel_j0(double x);
double bessel_j1(double x);

/// Constants of the thresholded design, recomputed by root finding on first use.
struct KernelConstants
{
    double j0_first_root;        // first zero of J0 (2.4048)
    double j0_first_extremum;    // first zero of J0' = -J1 (3.8317)
    double bessel_sidelobe;      // |J0(j0_first_extremum)| (0.403)
    double radial_width_factor;  // x with 2 sin(x/2)/x = bessel_sidelobe (4.238)
    double angular_width_factor; // y in (0, j0_first_root) with J0(y) = bessel_sidelobe (1.692)
};

const KernelConstants &kernel_constants();

/// Radial factor |f(r1)^H f(r2)| = |D_Ns(2 pi B (r1 - r2) / c)|.
double radial_term(const SystemConfig &config, double r1, double r2);

/// ULA angular factor |D_Na(2 pi delta_r Na (sin th1 - sin th2))|.
double angular_term_ula(const SystemConfig &config, double th1, double th2);

/// Exact UCA angular factor |a(th1)^H a(th2)| as a discrete sum over elements.
double angular_term_uca(const SystemConfig &config, double th1, double th2);

/// Angular factor for any geometry through the steering-vector inner product.
double angular_term(const SystemConfig &config, double th1, double th2);

/// Continuous-aperture UCA approximation |J0((4 pi / lambda) R |sin((th1 - th2)/2)|)|.
double angular_term_uca_approx(const SystemConfig &config, double th1, double th2);

/// f_bar(r1, r2) * a_tilde(th1, th2).
double pi_similarity_uca_approx(const SystemConfig &config, const PolarPosition &p1, const PolarPosition &p2);

// ---------- Thresholds and lobe widths ----------

/// Similarity threshold that keeps only the main lobes:
/// ULA max(|D_Ns(3 pi)|, |D_Na(3 pi)|); UCA 0.403 for Ns > 2, else max(|D_Ns(3 pi)|, 0.403).
double threshold_for(const SystemConfig &config);

enum class KernelKind
{
    dirichlet,
    bessel_j0
};

struct KernelProfile
{
    KernelKind kernel = KernelKind::dirichlet;
    int order = 0;                 // N for Dirichlet kernels
    std::optional<double> period;  // m (radial) or rad; none for the UCA
    double main_lobe_width = 0.0;  // before thresholding
    double thresholded_width = 0.0;
    double threshold = 0.0;
};

struct LobeWidths
{
    KernelProfile radial;  // metres
    KernelProfile angular; // radians
    bool angular_split = false; // ULA main lobe wraps across +-pi/2 at theta0
};

/// Pre- and post-threshold main-lobe widths. ULA widths come from bisection on the
/// Dirichlet kernel (angular width at theta0); UCA widths use the closed forms.
LobeWidths main_lobe_widths(const SystemConfig &config, double theta0 = 0.0);

/// Root of a continuous function bracketed in [lo, hi], to an absolute tolerance on the argument.
template <typename F>
double bisect(F &&f, double lo, double hi, double tol = 1e-12)
{
    double flo = f(lo);
    if (flo == 0.0)
        return lo;
    const double fhi = f(hi);
    if (fhi == 0.0)
        return hi;
    if ((flo < 0.0) == (fhi < 0.0))
        throw std::domain_error("Root is not bracketed.");
    while (hi - lo > tol)
    {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0)
            return mid;
        if ((fm < 0.0) == (flo < 0.0))
        {
            lo = mid;
            flo = fm;
        }
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

// ---------- Thresholded distances ----------

struct ThresholdedDistances
{
    DistanceMatrix distances; // kind pi_thresholded, cut pairs absent
    NeighborGraph graph;
    double threshold = 0.0;
    std::vector<std::string> warnings;
};

/// Keeps pair (i, j) iff s*(h_i, h_j) >= threshold; the edge weight is d*(h_i, h_j).
ThresholdedDistances thresholded_distance_matrix(std::span<const ChannelVector> channels, const SystemConfig &config);

/// Same filter applied to a precomputed similarity matrix.
ThresholdedDistances threshold_similarities(const Eigen::MatrixXd &similarity, double threshold);

} // namespace loschart
