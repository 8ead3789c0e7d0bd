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

// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "loschart/channel_model.hpp"
#include "loschart/charting.hpp"
#include "loschart/constants.hpp"
#include "loschart/design_rules.hpp"
#include "loschart/experiments.hpp"
#include "loschart/io.hpp"
#include "loschart/kernels.hpp"
#include "loschart/metrics.hpp"

using namespace loschart;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome
{
    bool pass = false;
    std::string detail;
};

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string num(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

SystemConfig base_config()
{
    return scenario_base().config;
}

// Max |f(r1)^H f(r2)| - |D_Ns(2 pi B (r1 - r2) / c)| over a grid of range offsets that
// contains the nulls at multiples of c/B and the period c/delta_f.
Outcome radial_closed_form()
{
    const SystemConfig cfg = base_config();
    const double null = kSpeedOfLight / cfg.bandwidth();
    const double period = kSpeedOfLight / cfg.delta_f;
    const ComplexVector f0 = frequency_signature(cfg, 2000.0);
    double gap = 0.0, null_peak = 0.0;
    for (int k = -5000; k < 5000; ++k)
    {
        const double dr = null * k / 100.0;
        const ComplexVector f1 = frequency_signature(cfg, 2000.0 + period + dr);
        const double direct = std::abs(f0.dot(f1));
        const double closed = std::abs(dirichlet_kernel(cfg.ns, kTwoPi * cfg.bandwidth() * dr / kSpeedOfLight));
        gap = std::max(gap, std::abs(direct - closed));
        if (k != 0 && k % 100 == 0 && (k / 100) % cfg.ns != 0)
            null_peak = std::max(null_peak, direct);
    }
    const double at_period = std::abs(f0.dot(frequency_signature(cfg, 2000.0 + period)));
    const bool pass = gap <= 1e-12 && null_peak <= 1e-12 && std::abs(at_period - 1.0) <= 1e-12;
    return {pass, "max gap " + num(gap) + ", worst null " + num(null_peak) + ", |f^H f| one period apart " +
                      num(at_period)};
}

Outcome angular_closed_form()
{
    const SystemConfig cfg{3e9, 16, 625e3, Ula{16, 0.5}};
    const auto &ula = std::get<Ula>(cfg.array);
    double gap = 0.0, sym = 0.0;
    for (int i = 0; i < 100; ++i)
        for (int j = 0; j < 100; ++j)
        {
            const double a = -kPi + kTwoPi * i / 100.0, b = -kPi + kTwoPi * (j + 0.5) / 100.0;
            const double direct = std::abs(steering_vector(cfg, a).dot(steering_vector(cfg, b)));
            const double closed = std::abs(
                dirichlet_kernel(ula.na, kTwoPi * ula.delta_r * ula.na * (std::sin(a) - std::sin(b))));
            gap = std::max(gap, std::abs(direct - closed));
            const double mirrored = std::abs(steering_vector(cfg, kPi - a).dot(steering_vector(cfg, b)));
            sym = std::max(sym, std::abs(mirrored - direct));
        }
    return {gap <= 1e-12 && sym <= 1e-12, "max gap " + num(gap) + ", pi - theta asymmetry " + num(sym)};
}

Outcome factorisation()
{
    const auto t0 = Clock::now();
    const ScenarioSpec base = scenario_base();
    const auto pos = sample_ues(base.area.region(), 2000, 99);
    double gap = 0.0;
    for (std::size_t i = 0; i < 2000; i += 2)
    {
        const double s = pi_similarity(synth_channel(base.config, pos[i]), synth_channel(base.config, pos[i + 1]));
        const double f = radial_term(base.config, pos[i].r, pos[i + 1].r);
        const double a = angular_term_uca(base.config, pos[i].theta, pos[i + 1].theta);
        gap = std::max(gap, std::abs(s - f * a));
    }
    const double t = seconds_since(t0);
    return {gap <= 1e-9 && t < 5.0, "1000 pairs, max gap " + num(gap) + ", " + num(t) + " s"};
}

Outcome bessel_gap()
{
    constexpr double kFrozenGap = 1.0745102489112673e-3;
    const SystemConfig cfg = base_config();
    double gap = 0.0;
    for (int i = 0; i < 512; ++i)
        for (int j = 0; j < 512; ++j)
        {
            const double a = -kPi + kTwoPi * i / 512.0, b = -kPi + kTwoPi * j / 512.0;
            gap = std::max(gap, std::abs(angular_term_uca(cfg, a, b) - angular_term_uca_approx(cfg, a, b)));
        }
    const bool pass = std::abs(gap - kFrozenGap) <= 0.1 * kFrozenGap;
    return {pass, "512^2 grid, max gap " + num(gap) + " (frozen " + num(kFrozenGap) + ")"};
}

Outcome constants()
{
    const auto &k = kernel_constants();
    const double j0_root = std::abs(bessel_j0(2.4048));
    const double sidelobe = std::abs(std::abs(bessel_j0(3.8317)) - 0.403);
    const double kf = std::abs(k.radial_width_factor - 4.238);
    const double ka = std::abs(k.angular_width_factor - 1.692);
    const double dist = std::abs(std::sqrt(2.0 - 2.0 * 0.403) - 1.093);
    const bool pass = j0_root <= 1e-4 && sidelobe <= 1e-3 && kf <= 1e-3 && ka <= 1e-3 && dist <= 5e-4;
    return {pass, "|J0(2.4048)| " + num(j0_root) + ", ||J0(3.8317)| - 0.403| " + num(sidelobe) + ", k_f " +
                      num(k.radial_width_factor) + ", k_a " + num(k.angular_width_factor) + ", distance " +
                      num(std::sqrt(2.0 - 2.0 * 0.403))};
}

Outcome weak_identifiability()
{
    const auto t0 = Clock::now();
    const ScenarioSpec base = scenario_base();
    const SystemConfig &cfg = base.config;
    const double t = threshold_for(cfg);
    const LobeWidths w = main_lobe_widths(cfg);
    const auto centres = sample_ues(base.area.region(), 10000, 2024);
    std::mt19937_64 gen(77);
    std::uniform_real_distribution<double> u(-0.5, 0.5);

    int violations = 0;
    long draws = 0;
    for (const auto &x : centres)
    {
        const ChannelVector hx = synth_channel(cfg, x);
        PolarPosition yz[2];
        double d[2];
        for (int m = 0; m < 2;)
        {
            const PolarPosition p{x.r + w.radial.thresholded_width * u(gen),
                                  wrap_angle(x.theta + w.angular.thresholded_width * u(gen))};
            ++draws;
            const double s = pi_similarity(hx, synth_channel(cfg, p));
            if (s < t)
                continue;
            yz[m] = p;
            d[m] = distance_from_similarity(s);
            ++m;
        }
        const double dry = std::abs(yz[0].r - x.r), drz = std::abs(yz[1].r - x.r);
        const double dty = std::abs(wrap_angle(yz[0].theta - x.theta)), dtz = std::abs(wrap_angle(yz[1].theta - x.theta));
        if (d[0] > d[1] && !(dry > drz || dty > dtz))
            ++violations;
        if (d[1] > d[0] && !(drz > dry || dtz > dty))
            ++violations;
    }
    const double secs = seconds_since(t0);
    return {violations == 0 && secs < 30.0, "10000 triples (" + std::to_string(draws) + " draws), " +
                                                std::to_string(violations) + " violations, " + num(secs) + " s"};
}

bool reproduce(const std::string &set, const fs::path &dir, std::string &summary)
{
    std::ostringstream out, err;
    const int code = loschart::cli::run({"reproduce", set, "--out-dir", dir.string(), "--seed", "1"}, out, err);
    summary = code == 0 ? out.str() : err.str();
    return code == 0;
}

struct Row
{
    double tw = 0, ct = 0, ks = 0;
};

Row metrics_of(const fs::path &dir, const std::string &name)
{
    const KeyValues kv = parse_kv(load_text(dir / (name + "_manifest.txt")));
    return {parse_double(kv_get(kv, "metrics.tw")), parse_double(kv_get(kv, "metrics.ct")),
            parse_double(kv_get(kv, "metrics.ks"))};
}

std::string row_text(const std::string &name, const Row &r)
{
    return name + " TW " + num(r.tw) + " CT " + num(r.ct) + " KS " + num(r.ks);
}

Outcome base_and_variants(const fs::path &dir)
{
    const auto t0 = Clock::now();
    std::string summary;
    if (!reproduce("base-variants", dir, summary))
        return {false, "reproduce failed: " + summary};
    const double secs = seconds_since(t0);
    const Row b = metrics_of(dir, "base");
    const Row v1 = metrics_of(dir, "variant1_no_threshold");
    const Row v2 = metrics_of(dir, "variant2_double_delta_f");
    const Row v3 = metrics_of(dir, "variant3_reduced_bandwidth");
    const bool pass = b.tw > v1.tw && b.ks < v1.ks && b.tw > v2.tw && b.ks < v2.ks && v3.ks > b.ks &&
                      std::abs(v3.tw - b.tw) < 0.05 && std::abs(v3.ct - b.ct) < 0.05 && secs < 600.0;
    return {pass, row_text("base", b) + "; " + row_text("v1", v1) + "; " + row_text("v2", v2) + "; " +
                      row_text("v3", v3) + "; " + num(secs) + " s"};
}

Outcome ula_vs_uca(const fs::path &dir)
{
    std::string summary;
    if (!reproduce("ula-vs-uca", dir, summary))
        return {false, "reproduce failed: " + summary};
    const Row ula_full = metrics_of(dir, "ula_full"), uca_full = metrics_of(dir, "uca_full");
    const Row ula_sector = metrics_of(dir, "ula_sector"), uca_sector = metrics_of(dir, "uca_sector");
    const bool pass = uca_full.tw - ula_full.tw >= 0.1 && uca_sector.ks <= ula_sector.ks;
    return {pass, "full: " + row_text("ULA", ula_full) + ", " + row_text("UCA", uca_full) + "; sector: " +
                      row_text("ULA", ula_sector) + ", " + row_text("UCA", uca_sector)};
}

Eigen::MatrixXd pairwise(const Eigen::MatrixXd &x)
{
    const Eigen::Index n = x.rows();
    Eigen::MatrixXd d(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            d(i, j) = (x.row(i) - x.row(j)).norm();
    return d;
}

Eigen::MatrixXd uniform_points(Eigen::Index n, int dim, std::uint64_t seed)
{
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> u(-50.0, 50.0);
    Eigen::MatrixXd x(n, dim);
    for (Eigen::Index i = 0; i < n; ++i)
        for (int c = 0; c < dim; ++c)
            x(i, c) = u(gen);
    return x;
}

Outcome mds_exactness()
{
    double worst = 0.0;
    for (Eigen::Index n : {Eigen::Index(50), Eigen::Index(300), Eigen::Index(1200)})
    {
        const Eigen::MatrixXd d = pairwise(uniform_points(n, 2, static_cast<std::uint64_t>(n)));
        const MdsResult m = classical_mds(d, 2);
        worst = std::max(worst, (pairwise(m.chart.points) - d).cwiseAbs().maxCoeff());
    }
    return {worst <= 1e-9, "max distance error " + num(worst) + " over n = 50, 300, 1200"};
}

Outcome metrics_sanity()
{
    const Eigen::MatrixXd x = uniform_points(500, 2, 5);
    Eigen::Matrix2d rot;
    rot << std::cos(1.2), std::sin(1.2), -std::sin(1.2), std::cos(1.2);
    const Eigen::MatrixXd y = ((x * rot * 0.02).rowwise() + Eigen::RowVector2d(3.0, -9.0)).eval();
    const MetricsReport same = evaluate_chart(x, y);

    double tw = 0.0, ct = 0.0;
    for (std::uint64_t seed = 0; seed < 20; ++seed)
    {
        std::mt19937_64 gen(seed);
        std::vector<Eigen::Index> perm(500);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), gen);
        Eigen::MatrixXd p(500, 2);
        for (Eigen::Index i = 0; i < 500; ++i)
            p.row(i) = x.row(perm[static_cast<std::size_t>(i)]);
        const MetricsReport r = evaluate_chart(x, p);
        tw += r.tw / 20.0;
        ct += r.ct / 20.0;
    }
    const bool pass = same.tw == 1.0 && same.ct == 1.0 && same.ks <= 1e-12 && tw >= 0.4 && tw <= 0.6 && ct >= 0.4 &&
                      ct <= 0.6;
    return {pass, "similarity transform TW " + num(same.tw) + " CT " + num(same.ct) + " KS " + num(same.ks) +
                      "; permutation mean TW " + num(tw) + " CT " + num(ct)};
}

Outcome determinism(const fs::path &first, const fs::path &second)
{
    std::string summary;
    if (!reproduce("base-variants", second, summary))
        return {false, "reproduce failed: " + summary};
    int compared = 0, differing = 0;
    for (const auto &entry : fs::directory_iterator(first))
    {
        const std::string name = entry.path().filename().string();
        const bool relevant = name.ends_with("_manifest.txt") || name.ends_with("_chart.txt");
        if (!relevant)
            continue;
        ++compared;
        if (!fs::exists(second / name) || load_text(entry.path()) != load_text(second / name))
            ++differing;
    }
    return {compared == 8 && differing == 0,
            std::to_string(compared) + " manifests and charts compared, " + std::to_string(differing) + " differ"};
}

} // namespace

int main()
{
    const fs::path work = fs::temp_directory_path() / "loschart_acceptance";
    fs::remove_all(work);
    fs::create_directories(work);

    struct Criterion
    {
        int id;
        std::string name;
        std::function<Outcome()> check;
    };
    const std::vector<Criterion> criteria{
        {1, "factorisation identity", factorisation},
        {2, "radial closed form", radial_closed_form},
        {3, "ULA angular closed form", angular_closed_form},
        {4, "Bessel approximation gap", bessel_gap},
        {5, "kernel constants", constants},
        {6, "weak identifiability", weak_identifiability},
        {7, "base scenario and variants", [&] { return base_and_variants(work / "run1"); }},
        {8, "ULA against UCA", [&] { return ula_vs_uca(work / "ula_uca"); }},
        {9, "MDS exactness", mds_exactness},
        {10, "metrics sanity", metrics_sanity},
        {11, "determinism", [&] { return determinism(work / "run1", work / "run2"); }},
    };

    int failures = 0;
    for (const auto &c : criteria)
    {
        Outcome o;
        try
        {
            o = c.check();
        }
        catch (const std::exception &e)
        {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += o.pass ? 0 : 1;
        std::printf("criterion %2d %s: %s (%s)\n", c.id, o.pass ? "PASS" : "FAIL", c.name.c_str(), o.detail.c_str());
        std::fflush(stdout);
    }
    fs::remove_all(work);
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
