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

#include "loschart/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "loschart/plot.hpp"
#include "loschart/version.hpp"

namespace loschart {

namespace {

std::string flag(bool b) { return b ? "1" : "0"; }

std::string distance_name(PipelineDistance d) { return d == PipelineDistance::pi ? "pi" : "euclidean_gt"; }

PipelineDistance distance_from_name(const std::string &s)
{
    if (s == "pi")
        return PipelineDistance::pi;
    if (s == "euclidean_gt")
        return PipelineDistance::euclidean_gt;
    throw std::invalid_argument("Unknown distance kind '" + s + "'.");
}

SystemConfig base_uca_config()
{
    SystemConfig cfg;
    cfg.fc = 3e9;
    cfg.ns = 16;
    cfg.delta_f = 10e6 / 16;
    cfg.array = Uca{64, 0.42};
    return cfg;
}

template <typename E>
[[noreturn]] void rethrow_with(const std::string &name, const E &e)
{
    throw E(name + ": " + e.what());
}

} // namespace

KeyValues scenario_to_kv(const ScenarioSpec &spec)
{
    KeyValues kv{{"scenario.name", spec.name},
                 {"scenario.n_ue", std::to_string(spec.n_ue)},
                 {"scenario.seed", std::to_string(spec.seed)},
                 {"scenario.no_threshold", flag(spec.variants.no_threshold)},
                 {"scenario.double_delta_f", flag(spec.variants.double_delta_f)},
                 {"scenario.reduced_bandwidth", flag(spec.variants.reduced_bandwidth)},
                 {"scenario.bandwidth_factor", format_double(spec.bandwidth_factor)},
                 {"scenario.distance", distance_name(spec.distance)},
                 {"area.r_center", format_double(spec.area.r_center)},
                 {"area.radial_size", format_double(spec.area.radial_size)},
                 {"area.angular_center", format_double(spec.area.angular_center)},
                 {"area.angular_span", format_double(spec.area.angular_span)}};
    const KeyValues cfg = config_to_kv(spec.config, "config.");
    kv.insert(kv.end(), cfg.begin(), cfg.end());
    return kv;
}

ScenarioSpec scenario_from_kv(const KeyValues &kv)
{
    ScenarioSpec spec;
    spec.name = kv_get(kv, "scenario.name");
    const long long n = parse_int(kv_get(kv, "scenario.n_ue"));
    if (n < 0)
        throw std::invalid_argument("UE count must be non-negative.");
    spec.n_ue = static_cast<std::size_t>(n);
    spec.seed = static_cast<std::uint64_t>(std::stoull(kv_get(kv, "scenario.seed")));
    spec.variants.no_threshold = kv_get(kv, "scenario.no_threshold") == "1";
    spec.variants.double_delta_f = kv_get(kv, "scenario.double_delta_f") == "1";
    spec.variants.reduced_bandwidth = kv_get(kv, "scenario.reduced_bandwidth") == "1";
    spec.bandwidth_factor = parse_double(kv_get(kv, "scenario.bandwidth_factor"));
    spec.distance = distance_from_name(kv_get(kv, "scenario.distance"));
    spec.area.r_center = parse_double(kv_get(kv, "area.r_center"));
    spec.area.radial_size = parse_double(kv_get(kv, "area.radial_size"));
    spec.area.angular_center = parse_double(kv_get(kv, "area.angular_center"));
    spec.area.angular_span = parse_double(kv_get(kv, "area.angular_span"));
    spec.area.validate();
    spec.config = config_from_kv(kv, "config.");
    return spec;
}

ScenarioSpec scenario_base(std::uint64_t seed, std::size_t n_ue)
{
    ScenarioSpec spec;
    spec.name = "base";
    spec.config = base_uca_config();
    spec.n_ue = n_ue;
    spec.seed = seed;
    // gamma scales as 1/r, so its value at 1 m is the round-neighbourhood range.
    spec.area.r_center = roundness_gamma(spec.config, 1.0);
    spec.area.radial_size = kBaseAreaWidth;
    spec.area.angular_center = 0.0;
    spec.area.angular_span = kPi;
    return spec;
}

std::vector<ScenarioSpec> scenario_variants(const ScenarioSpec &base, double bandwidth_factor)
{
    if (!(bandwidth_factor > 1.0))
        throw std::invalid_argument("Bandwidth reduction factor must exceed 1.");
    if (base.config.ns % 2 != 0)
        throw std::invalid_argument("Doubling the subcarrier spacing at fixed bandwidth needs an even Ns.");

    ScenarioSpec v1 = base;
    v1.name = "variant1_no_threshold";
    v1.variants.no_threshold = true;

    ScenarioSpec v2 = base;
    v2.name = "variant2_double_delta_f";
    v2.variants.double_delta_f = true;
    v2.config.delta_f = 2.0 * base.config.delta_f;
    v2.config.ns = base.config.ns / 2;

    ScenarioSpec v3 = base;
    v3.name = "variant3_reduced_bandwidth";
    v3.variants.reduced_bandwidth = true;
    v3.bandwidth_factor = bandwidth_factor;
    v3.config.delta_f = base.config.delta_f / bandwidth_factor;

    return {v1, v2, v3};
}

std::vector<ScenarioSpec> scenario_ula_vs_uca(std::uint64_t seed, std::size_t n_ue)
{
    const ScenarioSpec base = scenario_base(seed, n_ue);
    SystemConfig ula = base.config;
    ula.array = Ula{16, 0.5};

    AreaSpec full = base.area;
    full.angular_span = kTwoPi;
    AreaSpec sector = base.area;
    // Widest interval around broadside whose sines stay within 2 (Na - 1) / Na.
    sector.angular_span = 2.0 * std::asin(15.0 / 16.0);

    auto make = [&](const std::string &name, const SystemConfig &cfg, const AreaSpec &area) {
        ScenarioSpec s = base;
        s.name = name;
        s.config = cfg;
        s.area = area;
        return s;
    };
    return {make("ula_full", ula, full), make("uca_full", base.config, full), make("ula_sector", ula, sector),
            make("uca_sector", base.config, sector)};
}

KeyValues RunManifest::to_kv() const
{
    KeyValues kv{{"format", "loschart-manifest"}, {"version", "1"}, {"tool.version", std::string(kVersion)}};
    const KeyValues s = scenario_to_kv(scenario);
    kv.insert(kv.end(), s.begin(), s.end());
    auto add = [&](const std::string &k, const std::string &v) { kv.emplace_back(k, v); };
    add("resolved.bandwidth", format_double(scenario.config.bandwidth()));
    add("resolved.wavelength", format_double(scenario.config.wavelength()));
    add("resolved.similarity_threshold", format_double(threshold.similarity));
    add("resolved.distance_threshold", format_double(threshold.distance));
    add("resolved.radial_lobe", format_double(lobes.radial.main_lobe_width));
    add("resolved.radial_lobe_thresholded", format_double(lobes.radial.thresholded_width));
    add("resolved.angular_lobe", format_double(lobes.angular.main_lobe_width));
    add("resolved.angular_lobe_thresholded", format_double(lobes.angular.thresholded_width));
    add("resolved.axis_radial", format_double(axes.radial));
    add("resolved.axis_angular_width", format_double(axes.angular_width));
    add("resolved.axis_angular_arc", format_double(axes.angular_arc));
    add("resolved.gamma", format_double(gamma));
    add("resolved.max_radial_size", format_double(max_radial_size(scenario.config)));
    add("identifiability.necessary", flag(area_identifiable));
    for (std::size_t i = 0; i < violated.size(); ++i)
        add("identifiability.violated." + std::to_string(i), violated[i]);
    add("graph.knn_k", std::to_string(knn_k));
    add("graph.edge_count", std::to_string(edge_count));
    add("graph.mean_degree", format_double(mean_degree));
    add("graph.excluded", std::to_string(n_excluded));
    add("metrics.k", std::to_string(metrics.k_neighbors));
    add("metrics.n_scored", std::to_string(metrics.n_scored));
    add("metrics.tw", format_double(metrics.tw));
    add("metrics.ct", format_double(metrics.ct));
    add("metrics.ks", format_double(metrics.ks));
    for (std::size_t i = 0; i < outputs.size(); ++i)
        add("output." + std::to_string(i), outputs[i]);
    for (std::size_t i = 0; i < warnings.size(); ++i)
        add("warning." + std::to_string(i), warnings[i]);
    return kv;
}

RunManifest run(const ScenarioSpec &scenario, const RunOptions &options)
{
    try
    {
        scenario.config.validate();
        scenario.area.validate();

        RunManifest m;
        m.scenario = scenario;
        m.threshold = sufficient_threshold(scenario.config);
        m.lobes = main_lobe_widths(scenario.config, scenario.area.angular_center);
        m.axes = neighborhood_axes(scenario.config, scenario.area.r_center, scenario.area.angular_center);
        m.gamma = roundness_gamma(scenario.config, scenario.area.r_center, scenario.area.angular_center);
        const ConditionReport nec = necessary_condition(scenario.config, scenario.area);
        m.area_identifiable = nec.ok();
        m.violated = nec.violated();

        const std::vector<PolarPosition> positions = sample_ues(scenario.area.region(), scenario.n_ue, scenario.seed);
        const std::vector<ChannelVector> channels = synth_channels(scenario.config, positions);

        PipelineOptions popt;
        popt.thresholded = !scenario.variants.no_threshold;
        popt.distance = scenario.distance;
        PipelineResult pr = run_pipeline(channels, scenario.config, popt);
        m.knn_k = pr.knn_k;
        m.edge_count = pr.edge_count;
        m.mean_degree = pr.mean_degree;
        m.n_excluded = pr.excluded.size();
        m.warnings = pr.warnings;

        const Points2 all_truth = to_cartesian(positions);
        Eigen::MatrixXd truth(static_cast<Eigen::Index>(pr.chart.indices.size()), 2);
        Points2 truth_rows(truth.rows(), 2);
        for (std::size_t i = 0; i < pr.chart.indices.size(); ++i)
        {
            truth.row(static_cast<Eigen::Index>(i)) = all_truth.row(pr.chart.indices[i]);
            truth_rows.row(static_cast<Eigen::Index>(i)) = all_truth.row(pr.chart.indices[i]);
        }
        if (truth.rows() >= 3)
            m.metrics = evaluate_chart(truth, pr.chart.points);

        if (!options.out_dir.empty())
        {
            std::filesystem::create_directories(options.out_dir);
            const Chart aligned = truth.rows() >= 2 ? procrustes_align(pr.chart, truth) : pr.chart;
            const std::string chart_name = scenario.name + "_chart.txt";
            save_chart(options.out_dir / chart_name, aligned);
            m.outputs.push_back(chart_name);
            if (options.plots)
            {
                const std::string svg_name = scenario.name + "_chart.svg";
                save_text(options.out_dir / svg_name,
                          scatter_svg(aligned, truth_rows, ColorMap::azimuth, scenario.name));
                m.outputs.push_back(svg_name);
            }
            const std::string manifest_name = scenario.name + "_manifest.txt";
            m.outputs.push_back(manifest_name);
            save_text(options.out_dir / manifest_name, write_kv(m.to_kv()));
        }
        return m;
    }
    catch (const SparseGraphError &e)
    {
        throw SparseGraphError(e.largest_component(), e.total());
    }
    catch (const std::invalid_argument &e)
    {
        rethrow_with(scenario.name, e);
    }
    catch (const std::domain_error &e)
    {
        rethrow_with(scenario.name, e);
    }
    catch (const std::runtime_error &e)
    {
        rethrow_with(scenario.name, e);
    }
}

std::string summary_table(const std::vector<RunManifest> &runs)
{
    std::string out = "# scenario tw ct ks k n_scored identifiable\n";
    for (const auto &m : runs)
    {
        char buf[256];
        std::snprintf(buf, sizeof(buf), "%s %.6f %.6f %.6f %d %lld %d\n", m.scenario.name.c_str(), m.metrics.tw,
                      m.metrics.ct, m.metrics.ks, m.metrics.k_neighbors, static_cast<long long>(m.metrics.n_scored),
                      m.area_identifiable ? 1 : 0);
        out += buf;
    }
    return out;
}

std::vector<RunManifest> run_all(const std::vector<ScenarioSpec> &scenarios, const RunOptions &options)
{
    std::vector<RunManifest> runs;
    runs.reserve(scenarios.size());
    for (const auto &s : scenarios)
        runs.push_back(run(s, options));
    if (!options.out_dir.empty())
        save_text(options.out_dir / "summary.txt", summary_table(runs));
    return runs;
}

} // namespace loschart
