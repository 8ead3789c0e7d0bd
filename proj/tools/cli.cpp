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

#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <optional>
#include <ostream>

#include "loschart/channel_model.hpp"
#include "loschart/charting.hpp"
#include "loschart/constants.hpp"
#include "loschart/design_rules.hpp"
#include "loschart/experiments.hpp"
#include "loschart/io.hpp"
#include "loschart/kernels.hpp"
#include "loschart/metrics.hpp"
#include "loschart/plot.hpp"
#include "loschart/version.hpp"

namespace loschart::cli {

namespace fs = std::filesystem;

namespace {

std::string fixed(double v, int prec)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", prec, v);
    return buf;
}

std::string sci(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

KeyValues manifest_head(const std::string &command)
{
    return {{"format", "loschart-manifest"},
            {"version", "1"},
            {"tool.version", std::string(kVersion)},
            {"command", command}};
}

void append(KeyValues &kv, const KeyValues &more)
{
    kv.insert(kv.end(), more.begin(), more.end());
}

fs::path sidecar(const fs::path &out)
{
    return fs::path(out.string() + ".manifest.txt");
}

std::string describe_array(const SystemConfig &cfg)
{
    if (const auto *u = std::get_if<Uca>(&cfg.array))
        return "UCA, " + std::to_string(u->na) + " antennas, radius " + sci(u->radius) + " m";
    if (const auto *u = std::get_if<Ula>(&cfg.array))
        return "ULA, " + std::to_string(u->na) + " antennas, spacing " + sci(u->delta_r) + " wavelengths";
    return "arbitrary, " + std::to_string(cfg.na()) + " antennas";
}

KeyValues area_kv(const AreaSpec &area)
{
    return {{"area.r_center", format_double(area.r_center)},
            {"area.radial_size", format_double(area.radial_size)},
            {"area.angular_center", format_double(area.angular_center)},
            {"area.angular_span", format_double(area.angular_span)}};
}

// ---------- design ----------

struct DesignArgs
{
    AreaSpec area{0.0, 0.0, 0.0, kPi};
    std::optional<double> fc, bandwidth, radius;
    std::optional<int> na, ns;
    int k_min = 1;
    std::string config_in, config_out, manifest;
};

int cmd_design(const DesignArgs &a, std::ostream &out, std::ostream &err)
{
    std::optional<SystemConfig> cfg;
    std::vector<Clause> clauses;
    bool feasible = false;
    std::optional<IdentifiabilityReport> report;
    DesignResult dr;
    bool designed = false;

    if (!a.config_in.empty() || a.ns)
    {
        if (!a.config_in.empty())
            cfg = load_config(a.config_in);
        else
        {
            if (!a.fc || !a.na || !a.radius || !a.bandwidth)
                throw std::invalid_argument("--ns needs --fc, --na, --radius and --bandwidth.");
            cfg = SystemConfig{*a.fc, *a.ns, *a.bandwidth / *a.ns, Uca{*a.na, *a.radius}};
            cfg->validate();
        }
        a.area.validate();
        report = identifiability_report(*cfg, a.area, a.k_min);
        clauses = report->necessary.clauses;
        feasible = report->necessary.ok();
    }
    else
    {
        dr = design(a.area, DesignConstraints{a.fc, a.na, a.bandwidth, a.radius, a.k_min});
        designed = true;
        clauses = dr.clauses;
        feasible = dr.feasible;
        cfg = dr.config;
        report = dr.report;
    }

    KeyValues kv = manifest_head("design");
    append(kv, area_kv(a.area));
    kv.emplace_back("feasible", feasible ? "1" : "0");

    out << "Identifiable area design\n";
    out << "  area:          r_center " << fixed(a.area.r_center, 2) << " m, radial size "
        << fixed(a.area.radial_size, 2) << " m, span " << fixed(a.area.angular_span, 4) << " rad\n";
    if (cfg)
    {
        out << "  array:         " << describe_array(*cfg) << "\n";
        out << "  carrier:       " << sci(cfg->fc) << " Hz\n";
        out << "  bandwidth:     " << sci(cfg->bandwidth()) << " Hz over " << cfg->ns << " subcarriers (spacing "
            << sci(cfg->delta_f) << " Hz)\n";
        out << "  radial bound:  " << fixed(max_radial_size(*cfg), 2) << " m\n";
        append(kv, config_to_kv(*cfg, "config."));
        kv.emplace_back("resolved.max_radial_size", format_double(max_radial_size(*cfg)));
    }
    if (designed)
    {
        out << "  spacing bound: " << sci(dr.delta_f_max) << " Hz (guideline c/R = " << sci(dr.delta_f_guideline)
            << " Hz)\n";
        kv.emplace_back("resolved.delta_f_max", format_double(dr.delta_f_max));
        kv.emplace_back("resolved.delta_f_guideline", format_double(dr.delta_f_guideline));
    }
    if (report)
    {
        const auto &r = *report;
        out << "  threshold:     similarity " << fixed(r.sufficient.similarity, 3) << ", distance "
            << fixed(r.sufficient.distance, 3) << "\n";
        out << "  neighbourhood: radial " << fixed(r.axes.radial, 2) << " m, angular " << fixed(r.axes.angular_width, 4)
            << " rad (" << fixed(r.axes.angular_arc, 2) << " m arc), gamma " << fixed(r.roundness_gamma, 4) << "\n";
        out << "  min density:   " << sci(r.min_density) << " UEs/m^2 for k_min = " << r.k_min << "\n";
        out << "  max area:      r in [" << fixed(r.identifiable_area.r_inner(), 2) << ", "
            << fixed(r.identifiable_area.r_outer(), 2) << "] m, span " << fixed(r.identifiable_area.angular_span, 4)
            << " rad\n";
        kv.emplace_back("threshold.similarity", format_double(r.sufficient.similarity));
        kv.emplace_back("threshold.distance", format_double(r.sufficient.distance));
        kv.emplace_back("neighbourhood.radial", format_double(r.axes.radial));
        kv.emplace_back("neighbourhood.angular_width", format_double(r.axes.angular_width));
        kv.emplace_back("neighbourhood.angular_arc", format_double(r.axes.angular_arc));
        kv.emplace_back("neighbourhood.gamma", format_double(r.roundness_gamma));
        kv.emplace_back("min_density", format_double(r.min_density));
        kv.emplace_back("k_min", std::to_string(r.k_min));
    }
    out << "  clauses:\n";
    for (std::size_t i = 0; i < clauses.size(); ++i)
    {
        const Clause &c = clauses[i];
        out << "    [" << (c.ok ? "ok" : (c.hard ? "VIOLATED" : "advisory")) << "] " << c.name << ": " << c.rule;
        if (!c.detail.empty())
            out << " (" << c.detail << ")";
        out << "\n";
        kv.emplace_back("clause." + std::to_string(i) + "." + (c.ok ? "ok" : "violated"), c.name);
    }

    if (feasible && cfg && !a.config_out.empty())
    {
        save_config(a.config_out, *cfg);
        kv.emplace_back("output.config", a.config_out);
    }
    out << "\n# structured\n" << write_kv(kv);
    if (!a.manifest.empty())
        save_text(a.manifest, write_kv(kv));

    if (!feasible)
    {
        std::string first;
        for (const auto &c : clauses)
            if (c.hard && !c.ok)
            {
                first = c.name + ": " + c.rule + (c.detail.empty() ? "" : " (" + c.detail + ")");
                break;
            }
        err << "infeasible: " << first << "\n";
        return kInvalid;
    }
    return kSuccess;
}

// ---------- synth ----------

struct SynthArgs
{
    std::string config, out;
    long long n = 0;
    std::uint64_t seed = 1;
    RegionSpec region{0.0, 0.0, -kPi, kPi};
    bool no_positions = false;
};

int cmd_synth(const SynthArgs &a, std::ostream &out)
{
    if (a.n < 0)
        throw std::invalid_argument("--n must be non-negative.");
    a.region.validate();
    Dataset ds;
    ds.config = load_config(a.config);
    const auto positions = sample_ues(a.region, static_cast<std::size_t>(a.n), a.seed);
    ds.channels = synth_channels(ds.config, positions);
    ds.has_positions = !a.no_positions;
    save_dataset(a.out, ds);

    KeyValues kv = manifest_head("synth");
    kv.emplace_back("input.config", a.config);
    kv.emplace_back("n", std::to_string(a.n));
    kv.emplace_back("seed", std::to_string(a.seed));
    kv.emplace_back("region.r_min", format_double(a.region.r_min));
    kv.emplace_back("region.r_max", format_double(a.region.r_max));
    kv.emplace_back("region.theta_min", format_double(a.region.theta_min));
    kv.emplace_back("region.theta_max", format_double(a.region.theta_max));
    kv.emplace_back("has_positions", ds.has_positions ? "1" : "0");
    append(kv, config_to_kv(ds.config, "config."));
    kv.emplace_back("output.dataset", a.out);
    save_text(sidecar(a.out), write_kv(kv));
    out << "wrote " << a.n << " channels to " << a.out << "\n";
    return kSuccess;
}

// ---------- chart ----------

struct ChartArgs
{
    std::string dataset, out_dir, distance = "pi";
    bool no_threshold = false;
    int dim = 2;
};

int cmd_chart(const ChartArgs &a, std::ostream &out)
{
    const Dataset ds = load_dataset(a.dataset);
    PipelineOptions opt;
    opt.thresholded = !a.no_threshold;
    opt.dim = a.dim;
    if (a.distance == "pi")
        opt.distance = PipelineDistance::pi;
    else if (a.distance == "euclidean_gt")
    {
        if (!ds.has_positions)
            throw std::invalid_argument("euclidean_gt distances need a dataset with ground-truth positions.");
        opt.distance = PipelineDistance::euclidean_gt;
    }
    else
        throw std::invalid_argument("Unknown distance kind '" + a.distance + "'.");

    const PipelineResult pr = run_pipeline(ds.channels, ds.config, opt);
    const fs::path dir(a.out_dir);
    fs::create_directories(dir);
    save_chart(dir / "chart.txt", pr.chart);

    KeyValues kv = manifest_head("chart");
    kv.emplace_back("input.dataset", a.dataset);
    kv.emplace_back("n", std::to_string(ds.channels.size()));
    append(kv, config_to_kv(ds.config, "config."));
    kv.emplace_back("options.thresholded", opt.thresholded ? "1" : "0");
    kv.emplace_back("options.distance", a.distance);
    kv.emplace_back("options.dim", std::to_string(a.dim));
    kv.emplace_back("resolved.similarity_threshold", format_double(pr.threshold));
    kv.emplace_back("resolved.neighbor_radius", format_double(pr.neighbor_radius));
    kv.emplace_back("graph.knn_k", std::to_string(pr.knn_k));
    kv.emplace_back("graph.edge_count", std::to_string(pr.edge_count));
    kv.emplace_back("graph.mean_degree", format_double(pr.mean_degree));
    kv.emplace_back("graph.excluded", std::to_string(pr.excluded.size()));
    for (std::size_t i = 0; i < pr.leading_eigenvalues.size(); ++i)
        kv.emplace_back("mds.eigenvalue." + std::to_string(i), format_double(pr.leading_eigenvalues[i]));
    for (std::size_t i = 0; i < pr.warnings.size(); ++i)
        kv.emplace_back("warning." + std::to_string(i), pr.warnings[i]);
    kv.emplace_back("output.chart", "chart.txt");
    save_text(dir / "manifest.txt", write_kv(kv));

    out << "charted " << pr.chart.points.rows() << " of " << ds.channels.size() << " UEs (" << pr.edge_count
        << " edges";
    if (pr.knn_k > 0)
        out << ", k = " << pr.knn_k;
    out << ") into " << (dir / "chart.txt").string() << "\n";
    for (const auto &w : pr.warnings)
        out << "warning: " << w << "\n";
    return kSuccess;
}

// ---------- eval ----------

struct EvalArgs
{
    std::string chart, dataset, out;
    std::optional<int> k;
};

int cmd_eval(const EvalArgs &a, std::ostream &out)
{
    const Chart chart = load_chart(a.chart);
    const Dataset ds = load_dataset(a.dataset);
    if (!ds.has_positions)
        throw std::invalid_argument("Evaluation needs a dataset with ground-truth positions.");
    const Points2 all = ground_truth(ds.channels);
    Eigen::MatrixXd truth(static_cast<Eigen::Index>(chart.indices.size()), 2);
    for (std::size_t i = 0; i < chart.indices.size(); ++i)
    {
        const Index idx = chart.indices[i];
        if (idx < 0 || idx >= all.rows())
            throw std::invalid_argument("Chart index " + std::to_string(idx) + " is outside the dataset.");
        truth.row(static_cast<Eigen::Index>(i)) = all.row(idx);
    }
    const MetricsReport m = evaluate_chart(truth, chart.points, a.k);

    KeyValues kv{{"tw", format_double(m.tw)},
                 {"ct", format_double(m.ct)},
                 {"ks", format_double(m.ks)},
                 {"k", std::to_string(m.k_neighbors)},
                 {"n_scored", std::to_string(m.n_scored)}};
    out << write_kv(kv);
    if (!a.out.empty())
    {
        KeyValues man = manifest_head("eval");
        man.emplace_back("input.chart", a.chart);
        man.emplace_back("input.dataset", a.dataset);
        append(man, kv);
        save_text(a.out, write_kv(man));
    }
    return kSuccess;
}

// ---------- plot ----------

struct PlotArgs
{
    std::string kind, out, title, chart, dataset, config, color = "azimuth";
    std::vector<std::string> terms{"radial"};
    double ref_r = 0.0, ref_theta = 0.0, extent = 0.0, span = 0.0;
    int cells = 64, samples = 801;
};

ColorMap color_from_string(const std::string &s)
{
    if (s == "azimuth")
        return ColorMap::azimuth;
    if (s == "radius")
        return ColorMap::radius;
    if (s == "none")
        return ColorMap::none;
    throw std::invalid_argument("Unknown colour map '" + s + "'.");
}

ProfileTerm term_from_string(const std::string &s)
{
    if (s == "radial")
        return ProfileTerm::radial;
    if (s == "angular")
        return ProfileTerm::angular;
    if (s == "angular_approx")
        return ProfileTerm::angular_approx;
    throw std::invalid_argument("Unknown profile term '" + s + "'.");
}

int cmd_plot(const PlotArgs &a, std::ostream &out)
{
    const PlotKind kind = plot_kind_from_string(a.kind);
    KeyValues kv = manifest_head("plot");
    kv.emplace_back("kind", a.kind);
    kv.emplace_back("title", a.title);
    std::string svg;

    auto need = [](const std::string &v, const char *flag) {
        if (v.empty())
            throw std::invalid_argument(std::string("This plot kind needs ") + flag + ".");
    };

    if (kind == PlotKind::scatter_chart)
    {
        need(a.chart, "--chart");
        const Chart chart = load_chart(a.chart);
        const ColorMap color = color_from_string(a.color);
        Points2 truth(0, 2);
        if (color != ColorMap::none)
        {
            need(a.dataset, "--dataset");
            const Dataset ds = load_dataset(a.dataset);
            const Points2 all = ground_truth(ds.channels);
            truth.resize(static_cast<Eigen::Index>(chart.indices.size()), 2);
            for (std::size_t i = 0; i < chart.indices.size(); ++i)
            {
                if (chart.indices[i] < 0 || chart.indices[i] >= all.rows())
                    throw std::invalid_argument("Chart index outside the dataset.");
                truth.row(static_cast<Eigen::Index>(i)) = all.row(chart.indices[i]);
            }
        }
        svg = scatter_svg(chart, truth, color, a.title);
        kv.emplace_back("input.chart", a.chart);
        kv.emplace_back("input.dataset", a.dataset);
        kv.emplace_back("color", a.color);
    }
    else
    {
        need(a.config, "--config");
        if (!(a.ref_r > 0.0))
            throw std::invalid_argument("--ref-r must be positive.");
        const SystemConfig cfg = load_config(a.config);
        const PolarPosition ref{a.ref_r, a.ref_theta};
        kv.emplace_back("input.config", a.config);
        kv.emplace_back("ref.r", format_double(ref.r));
        kv.emplace_back("ref.theta", format_double(ref.theta));
        if (kind == PlotKind::similarity_heatmap)
        {
            const double extent = a.extent > 0.0 ? a.extent : 1.5 * a.ref_r;
            svg = heatmap_svg(similarity_heatmap(cfg, ref, extent, a.cells), a.title);
            kv.emplace_back("extent", format_double(extent));
            kv.emplace_back("cells", std::to_string(a.cells));
        }
        else
        {
            std::vector<Profile> profiles;
            for (const auto &t : a.terms)
            {
                const ProfileTerm term = term_from_string(t);
                double span = a.span;
                if (!(span > 0.0))
                    span = term == ProfileTerm::radial ? 4.0 * kSpeedOfLight / cfg.bandwidth() : kPi / 4.0;
                profiles.push_back(kernel_profile(cfg, term, ref, span, a.samples));
                kv.emplace_back("term." + std::to_string(profiles.size() - 1), t);
                kv.emplace_back("span." + std::to_string(profiles.size() - 1), format_double(span));
            }
            svg = profile_svg(profiles, a.title);
            kv.emplace_back("samples", std::to_string(a.samples));
        }
    }
    save_text(a.out, svg);
    kv.emplace_back("output.plot", a.out);
    save_text(sidecar(a.out), write_kv(kv));
    out << "wrote " << a.out << "\n";
    return kSuccess;
}

// ---------- reproduce ----------

struct ReproduceArgs
{
    std::string scenario, out_dir;
    std::uint64_t seed = 1;
    std::size_t n = kBaseUeCount;
    double bandwidth_factor = 2.0;
    bool no_plots = false;
};

int cmd_reproduce(const ReproduceArgs &a, std::ostream &out)
{
    std::vector<ScenarioSpec> scenarios;
    if (a.scenario == "base-variants" || a.scenario == "5a" || a.scenario == "\xc2\xa7" "5a")
    {
        const ScenarioSpec base = scenario_base(a.seed, a.n);
        scenarios.push_back(base);
        for (auto &v : scenario_variants(base, a.bandwidth_factor))
            scenarios.push_back(std::move(v));
    }
    else if (a.scenario == "ula-vs-uca" || a.scenario == "5b" || a.scenario == "\xc2\xa7" "5b")
        scenarios = scenario_ula_vs_uca(a.seed, a.n);
    else
        throw std::invalid_argument("Unknown scenario set '" + a.scenario + "'.");

    RunOptions opt;
    opt.out_dir = a.out_dir;
    opt.plots = !a.no_plots;
    const auto runs = run_all(scenarios, opt);
    out << summary_table(runs);
    return kSuccess;
}

} // namespace

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Line-of-sight channel charting toolkit", "loschart"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);
    std::function<int()> action;

    DesignArgs da;
    auto *design_cmd = app.add_subcommand("design", "Size a UCA system for an area and report its identifiability");
    design_cmd->add_option("--r-center", da.area.r_center, "Radial centre of the area (m)")->required();
    design_cmd->add_option("--radial-size", da.area.radial_size, "Radial extent of the area (m)")->required();
    design_cmd->add_option("--angular-center", da.area.angular_center, "Angular centre (rad)")->capture_default_str();
    design_cmd->add_option("--angular-span", da.area.angular_span, "Angular span (rad)")->capture_default_str();
    design_cmd->add_option("--fc", da.fc, "Carrier frequency (Hz)");
    design_cmd->add_option("--na", da.na, "Antenna count");
    design_cmd->add_option("--bandwidth", da.bandwidth, "Bandwidth (Hz)");
    design_cmd->add_option("--radius", da.radius, "UCA radius (m)");
    design_cmd->add_option("--ns", da.ns, "Subcarrier count; with fc, na, radius and bandwidth checks that system");
    design_cmd->add_option("--config", da.config_in, "Check an existing configuration instead of designing one");
    design_cmd->add_option("--k-min", da.k_min, "Minimum neighbours per neighbourhood")->capture_default_str();
    design_cmd->add_option("--config-out", da.config_out, "Write the designed configuration here");
    design_cmd->add_option("--manifest", da.manifest, "Write the structured report here");
    design_cmd->callback([&] { action = [&] { return cmd_design(da, out, err); }; });

    SynthArgs sa;
    auto *synth_cmd = app.add_subcommand("synth", "Synthesise a LoS channel dataset");
    synth_cmd->add_option("--config", sa.config, "System configuration file")->required();
    synth_cmd->add_option("--n", sa.n, "Number of UEs")->required();
    synth_cmd->add_option("--seed", sa.seed, "Random seed")->capture_default_str();
    synth_cmd->add_option("--r-min", sa.region.r_min, "Inner radius (m)")->required();
    synth_cmd->add_option("--r-max", sa.region.r_max, "Outer radius (m)")->required();
    synth_cmd->add_option("--theta-min", sa.region.theta_min, "First azimuth (rad)")->capture_default_str();
    synth_cmd->add_option("--theta-max", sa.region.theta_max, "Last azimuth (rad)")->capture_default_str();
    synth_cmd->add_flag("--no-positions", sa.no_positions, "Omit ground-truth positions");
    synth_cmd->add_option("--out", sa.out, "Dataset file")->required();
    synth_cmd->callback([&] { action = [&] { return cmd_synth(sa, out); }; });

    ChartArgs ca;
    auto *chart_cmd = app.add_subcommand("chart", "Learn a channel chart from a dataset");
    chart_cmd->add_option("--dataset", ca.dataset, "Dataset file")->required();
    chart_cmd->add_option("--out-dir", ca.out_dir, "Output directory")->required();
    chart_cmd->add_flag("--no-threshold", ca.no_threshold, "Raw PI distances with a kNN graph");
    chart_cmd->add_option("--distance", ca.distance, "pi or euclidean_gt")->capture_default_str();
    chart_cmd->add_option("--dim", ca.dim, "Chart dimension")->capture_default_str();
    chart_cmd->callback([&] { action = [&] { return cmd_chart(ca, out); }; });

    EvalArgs ea;
    auto *eval_cmd = app.add_subcommand("eval", "Score a chart against ground truth");
    eval_cmd->add_option("--chart", ea.chart, "Chart file")->required();
    eval_cmd->add_option("--dataset", ea.dataset, "Dataset with ground truth")->required();
    eval_cmd->add_option("--k", ea.k, "Neighbourhood size for TW and CT");
    eval_cmd->add_option("--out", ea.out, "Also write the metrics with their inputs here");
    eval_cmd->callback([&] { action = [&] { return cmd_eval(ea, out); }; });

    PlotArgs pa;
    auto *plot_cmd = app.add_subcommand("plot", "Write an SVG figure");
    plot_cmd->add_option("--kind", pa.kind, "scatter_chart, similarity_heatmap or kernel_profile")->required();
    plot_cmd->add_option("--out", pa.out, "SVG file")->required();
    plot_cmd->add_option("--title", pa.title, "Figure title");
    plot_cmd->add_option("--chart", pa.chart, "Chart file (scatter)");
    plot_cmd->add_option("--dataset", pa.dataset, "Dataset with ground truth (scatter colours)");
    plot_cmd->add_option("--color", pa.color, "azimuth, radius or none")->capture_default_str();
    plot_cmd->add_option("--config", pa.config, "System configuration (heatmap, profile)");
    plot_cmd->add_option("--ref-r", pa.ref_r, "Reference range (m)");
    plot_cmd->add_option("--ref-theta", pa.ref_theta, "Reference azimuth (rad)");
    plot_cmd->add_option("--extent", pa.extent, "Heatmap half-width (m)");
    plot_cmd->add_option("--cells", pa.cells, "Heatmap cells per side")->capture_default_str();
    plot_cmd->add_option("--term", pa.terms, "radial, angular or angular_approx (repeatable)");
    plot_cmd->add_option("--span", pa.span, "Profile half-width (m or rad)");
    plot_cmd->add_option("--samples", pa.samples, "Profile samples")->capture_default_str();
    plot_cmd->callback([&] { action = [&] { return cmd_plot(pa, out); }; });

    ReproduceArgs ra;
    auto *repro_cmd = app.add_subcommand("reproduce", "Run a scripted experiment set end to end");
    repro_cmd->add_option("scenario", ra.scenario, "base-variants (alias 5a) or ula-vs-uca (alias 5b)")->required();
    repro_cmd->add_option("--out-dir", ra.out_dir, "Output directory")->required();
    repro_cmd->add_option("--seed", ra.seed, "Random seed")->capture_default_str();
    repro_cmd->add_option("--n", ra.n, "UEs per run")->capture_default_str();
    repro_cmd->add_option("--bandwidth-factor", ra.bandwidth_factor, "Bandwidth reduction of the third variant")
        ->capture_default_str();
    repro_cmd->add_flag("--no-plots", ra.no_plots, "Skip the SVG scatter plots");
    repro_cmd->callback([&] { action = [&] { return cmd_reproduce(ra, out); }; });

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::Success &e)
    {
        return app.exit(e, out, err) == 0 ? kSuccess : kInvalid;
    }
    catch (const CLI::ParseError &e)
    {
        app.exit(e, out, err);
        return kInvalid;
    }

    try
    {
        return action ? action() : kInvalid;
    }
    catch (const SparseGraphError &e)
    {
        err << "error: " << e.what() << "\n";
        return kInvalid;
    }
    catch (const std::invalid_argument &e)
    {
        err << "error: " << e.what() << "\n";
        return kInvalid;
    }
    catch (const std::domain_error &e)
    {
        err << "error: " << e.what() << "\n";
        return kInvalid;
    }
    catch (const std::exception &e)
    {
        err << "internal error: " << e.what() << "\n";
        return kInternalError;
    }
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    std::vector<const char *> argv{"loschart"};
    for (const auto &a : args)
        argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

} // namespace loschart::cli
