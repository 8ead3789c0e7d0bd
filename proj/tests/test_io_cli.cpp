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
#include <filesystem>
#include <random>
#include <sstream>

#include "cli.hpp"
#include "loschart/io.hpp"
#include "loschart/kernels.hpp"
#include "loschart/plot.hpp"

using namespace loschart;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;
namespace fs = std::filesystem;

namespace {

struct TempDir
{
    fs::path path;
    explicit TempDir(const std::string &name) : path(fs::temp_directory_path() / name)
    {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string operator/(const std::string &f) const { return (path / f).string(); }
};

struct Run
{
    int code;
    std::string out, err;
};

Run run_cli(const std::vector<std::string> &args)
{
    std::ostringstream out, err;
    const int code = loschart::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

SystemConfig base_uca()
{
    return SystemConfig{3e9, 16, 625e3, Uca{64, 0.42}};
}

std::string dataset_bytes(const Dataset &ds)
{
    std::ostringstream os(std::ios::binary);
    write_dataset(os, ds);
    return os.str();
}

} // namespace

TEST_CASE("Shortest round-trip number formatting")
{
    std::mt19937_64 gen(1);
    std::uniform_real_distribution<double> u(-1e6, 1e6);
    for (int i = 0; i < 1000; ++i)
    {
        const double v = u(gen) * std::pow(10.0, (i % 40) - 20);
        CHECK(parse_double(format_double(v)) == v);
    }
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(3e9) == "3e+09");
    CHECK_THROWS_AS(parse_double("1.5x"), std::invalid_argument);
    CHECK_THROWS_AS(parse_int("2.5"), std::invalid_argument);
}

TEST_CASE("Key-value text")
{
    const KeyValues kv = parse_kv("# comment\n\n a = 1 \nb=two words\n");
    REQUIRE(kv.size() == 2);
    CHECK(kv_get(kv, "a") == "1");
    CHECK(kv_get(kv, "b") == "two words");
    CHECK_FALSE(kv_has(kv, "c"));
    CHECK_THROWS_AS(kv_get(kv, "c"), std::invalid_argument);
    CHECK_THROWS_AS(parse_kv("novalue\n"), std::invalid_argument);
    CHECK(parse_kv(write_kv(kv)) == kv);
}

TEST_CASE("Config round trip")
{
    Points2 p(3, 2);
    p << -0.1, 0.0, 0.05, 0.02, 0.05, -0.02;
    for (const SystemConfig &cfg : {base_uca(), SystemConfig{2.4e9, 8, 1e6, Ula{16, 0.5}},
                                    SystemConfig{3.5e9, 4, 2e6, ArbitraryArray{p}}})
    {
        const std::string text = write_config(cfg);
        const SystemConfig back = read_config(text);
        CHECK(write_config(back) == text);
        CHECK(back.na() == cfg.na());
        CHECK(back.delta_f == cfg.delta_f);
    }
    CHECK_THROWS_AS(read_config("format = loschart-config\nversion = 2\n"), std::invalid_argument);
    CHECK_THROWS_AS(read_config("format = other\nversion = 1\n"), std::invalid_argument);
    CHECK_THROWS_AS(read_config("format = loschart-config\nversion = 1\nfc = 3e9\n"), std::invalid_argument);
}

TEST_CASE("Dataset round trip")
{
    Dataset ds;
    ds.config = base_uca();
    ds.channels = synth_channels(ds.config, sample_ues({100.0, 200.0, -1.0, 1.0}, 7, 3));
    const std::string bytes = dataset_bytes(ds);
    CHECK(bytes.size() > 7u * (2 + 2 * 64 * 16) * 8);

    std::istringstream is(bytes);
    const Dataset back = read_dataset(is);
    REQUIRE(back.channels.size() == 7);
    CHECK(back.has_positions);
    CHECK(back.channels[4].entries == ds.channels[4].entries);
    CHECK(back.channels[4].position->r == ds.channels[4].position->r);
    CHECK(dataset_bytes(back) == bytes);

    Dataset empty;
    empty.config = base_uca();
    std::istringstream es(dataset_bytes(empty));
    CHECK(read_dataset(es).channels.empty());

    Dataset bare = ds;
    bare.has_positions = false;
    std::istringstream bs(dataset_bytes(bare));
    const Dataset bare_back = read_dataset(bs);
    CHECK_FALSE(bare_back.channels[0].position);
    CHECK(bare_back.channels[6].entries == ds.channels[6].entries);

    std::istringstream truncated(bytes.substr(0, bytes.size() - 3));
    CHECK_THROWS_AS(read_dataset(truncated), std::invalid_argument);
    std::istringstream trailing(bytes + "x");
    CHECK_THROWS_AS(read_dataset(trailing), std::invalid_argument);
    std::istringstream junk("hello\n");
    CHECK_THROWS_AS(read_dataset(junk), std::invalid_argument);
}

TEST_CASE("Chart file round trip")
{
    Chart c;
    c.points.resize(3, 2);
    c.points << 0.1, -2.5, 1e-17, 3.0, 7.25, 1.0 / 3.0;
    c.indices = {4, 0, 9};
    c.source = DistanceKind::pi_thresholded;
    c.aligned = true;
    std::stringstream ss;
    write_chart(ss, c);
    const Chart back = read_chart(ss);
    CHECK(back.points == c.points);
    CHECK(back.indices == c.indices);
    CHECK(back.source == DistanceKind::pi_thresholded);
    CHECK(back.aligned);
}

TEST_CASE("Kernel profile and heatmap series")
{
    const SystemConfig cfg = base_uca();
    const double null = kSpeedOfLight / cfg.bandwidth();
    // Samples at integer multiples of c/B land on the radial nulls.
    const Profile p = kernel_profile(cfg, ProfileTerm::radial, {300.0, 0.0}, 4 * null, 801);
    for (int m = -4; m <= 4; ++m)
    {
        if (m == 0)
            continue;
        CHECK_THAT(p.values(400 + 100 * m), WithinAbs(0.0, 1e-9));
    }
    CHECK_THAT(p.values(400), WithinAbs(1.0, 1e-12));

    const Profile a = kernel_profile(cfg, ProfileTerm::angular_approx, {300.0, 0.3}, 0.5, 101);
    CHECK(a.values.maxCoeff() == a.values(50));
    CHECK_THROWS_AS(kernel_profile(SystemConfig{3e9, 16, 625e3, Ula{16, 0.5}}, ProfileTerm::angular_approx,
                                   {300.0, 0.0}, 0.5, 11),
                    std::invalid_argument);

    const Heatmap h = similarity_heatmap(cfg, {40.0, 0.0}, 60.0, 31);
    Eigen::Index r = 0, c = 0;
    const Eigen::MatrixXd filled = h.values.unaryExpr([](double v) { return std::isnan(v) ? -1.0 : v; });
    filled.maxCoeff(&r, &c);
    CHECK_THAT(h.x(c), WithinAbs(40.0, 1e-12));
    CHECK_THAT(h.y(r), WithinAbs(0.0, 1e-12));
    CHECK_THAT(filled(r, c), WithinAbs(1.0, 1e-12));

    const std::string svg = heatmap_svg(h, "s");
    CHECK(svg == heatmap_svg(h, "s"));
    CHECK_THAT(svg, ContainsSubstring("<svg"));
    CHECK(hue_color(0.0) == "#ff0000");
    CHECK(plot_kind_from_string("kernel_profile") == PlotKind::kernel_profile);
}

TEST_CASE("CLI design")
{
    TempDir tmp("loschart_cli_design");
    const Run ok = run_cli({"design", "--r-center", "315.594", "--radial-size", "422", "--fc", "3e9", "--na", "64",
                        "--radius", "0.42", "--bandwidth", "1e7", "--config-out", tmp / "base.cfg"});
    CHECK(ok.code == 0);
    CHECK_THAT(ok.out, ContainsSubstring("distance 1.093"));
    CHECK_THAT(ok.out, ContainsSubstring("feasible = 1"));
    const SystemConfig cfg = load_config(tmp / "base.cfg");
    CHECK(cfg.ns == 16);
    CHECK(cfg.delta_f == 625e3);

    const Run wide = run_cli({"design", "--r-center", "315.594", "--radial-size", "500", "--fc", "3e9", "--na", "64",
                          "--radius", "0.42", "--bandwidth", "1e7", "--ns", "16"});
    CHECK(wide.code == 2);
    CHECK_THAT(wide.err, ContainsSubstring("radial extent"));

    const Run check = run_cli({"design", "--r-center", "315.594", "--radial-size", "400", "--config", tmp / "base.cfg"});
    CHECK(check.code == 0);

    CHECK(run_cli({"design", "--r-center", "315"}).code == 2);
    CHECK(run_cli({"nonsense"}).code == 2);
    CHECK(run_cli({"--help"}).code == 0);
}

TEST_CASE("CLI synth, chart, eval and plot")
{
    TempDir tmp("loschart_cli_pipeline");
    save_config(tmp / "base.cfg", base_uca());
    const std::vector<std::string> synth{"synth", "--config", tmp / "base.cfg", "--n", "120", "--seed", "4",
                                         "--r-min", "290", "--r-max", "340", "--theta-min", "-0.1",
                                         "--theta-max", "0.1", "--out"};
    auto with = [](std::vector<std::string> v, const std::string &last) {
        v.push_back(last);
        return v;
    };
    REQUIRE(run_cli(with(synth, tmp / "a.lcd")).code == 0);
    REQUIRE(run_cli(with(synth, tmp / "b.lcd")).code == 0);
    CHECK(load_text(tmp / "a.lcd") == load_text(tmp / "b.lcd"));
    CHECK(fs::exists(tmp / "a.lcd.manifest.txt"));

    const Dataset ds = load_dataset(tmp / "a.lcd");
    REQUIRE(ds.channels.size() == 120);
    CHECK(write_config(ds.config) == write_config(base_uca()));
    const ChannelVector oracle = synth_channel(ds.config, *ds.channels[17].position);
    CHECK((oracle.entries - ds.channels[17].entries).norm() == 0.0);

    CHECK(run_cli({"synth", "--config", tmp / "base.cfg", "--n", "0", "--r-min", "1", "--r-max", "2", "--out",
               tmp / "empty.lcd"})
              .code == 0);
    CHECK(load_dataset(tmp / "empty.lcd").channels.empty());

    // Thresholded and raw charts; the edge count matches the dense similarity oracle.
    REQUIRE(run_cli({"chart", "--dataset", tmp / "a.lcd", "--out-dir", tmp / "thr"}).code == 0);
    REQUIRE(run_cli({"chart", "--dataset", tmp / "a.lcd", "--out-dir", tmp / "raw", "--no-threshold"}).code == 0);
    const KeyValues thr = parse_kv(load_text(tmp / "thr/manifest.txt"));
    const KeyValues raw = parse_kv(load_text(tmp / "raw/manifest.txt"));
    const auto dense = thresholded_distance_matrix(ds.channels, ds.config);
    CHECK(kv_get(thr, "graph.edge_count") == std::to_string(dense.graph.edge_count()));
    CHECK(kv_get(raw, "graph.edge_count") != kv_get(thr, "graph.edge_count"));
    CHECK(kv_get(raw, "graph.knn_k") == std::to_string(std::lround(dense.graph.mean_degree())));
    CHECK(kv_has(thr, "graph.knn_k"));

    const Run ev = run_cli({"eval", "--chart", tmp / "thr/chart.txt", "--dataset", tmp / "a.lcd", "--k", "5"});
    REQUIRE(ev.code == 0);
    const KeyValues m = parse_kv(ev.out);
    CHECK(parse_double(kv_get(m, "tw")) > 0.8);
    CHECK(kv_get(m, "k") == "5");
    CHECK(run_cli({"eval", "--chart", tmp / "thr/chart.txt", "--dataset", tmp / "a.lcd", "--k", "100"}).code == 2);

    // A chart equal to ground truth scores perfectly.
    Chart truth;
    truth.points = ground_truth(ds.channels);
    for (Index i = 0; i < 120; ++i)
        truth.indices.push_back(i);
    save_chart(tmp / "truth.txt", truth);
    const KeyValues perfect = parse_kv(run_cli({"eval", "--chart", tmp / "truth.txt", "--dataset", tmp / "a.lcd"}).out);
    CHECK(parse_double(kv_get(perfect, "tw")) == 1.0);
    CHECK(parse_double(kv_get(perfect, "ks")) <= 1e-12);

    // Ground-truth distances need ground truth.
    REQUIRE(run_cli({"synth", "--config", tmp / "base.cfg", "--n", "30", "--r-min", "290", "--r-max", "340",
                 "--theta-min", "-0.1", "--theta-max", "0.1", "--no-positions", "--out", tmp / "bare.lcd"})
                .code == 0);
    CHECK(run_cli({"chart", "--dataset", tmp / "bare.lcd", "--out-dir", tmp / "gt", "--distance", "euclidean_gt"}).code ==
          2);

    const std::vector<std::string> plot{"plot", "--kind", "scatter_chart", "--chart", tmp / "thr/chart.txt",
                                        "--dataset", tmp / "a.lcd", "--out"};
    REQUIRE(run_cli(with(plot, tmp / "p1.svg")).code == 0);
    REQUIRE(run_cli(with(plot, tmp / "p2.svg")).code == 0);
    CHECK(load_text(tmp / "p1.svg") == load_text(tmp / "p2.svg"));
    CHECK(run_cli({"plot", "--kind", "kernel_profile", "--config", tmp / "base.cfg", "--ref-r", "300", "--term", "radial",
               "--term", "angular", "--out", tmp / "k.svg"})
              .code == 0);
    CHECK(run_cli({"plot", "--kind", "similarity_heatmap", "--config", tmp / "base.cfg", "--ref-r", "40", "--cells", "16",
               "--out", tmp / "h.svg"})
              .code == 0);
    CHECK(run_cli({"plot", "--kind", "kernel_profile", "--out", tmp / "x.svg"}).code == 2);
    CHECK(run_cli({"plot", "--kind", "bogus", "--out", tmp / "x.svg"}).code == 2);
}

TEST_CASE("CLI duplicate UEs chart to coincident points")
{
    TempDir tmp("loschart_cli_dup");
    Dataset ds;
    ds.config = base_uca();
    auto pos = sample_ues({290.0, 340.0, -0.1, 0.1}, 60, 8);
    pos.push_back(pos[0]);
    ds.channels = synth_channels(ds.config, pos);
    save_dataset(tmp / "dup.lcd", ds);
    REQUIRE(run_cli({"chart", "--dataset", tmp / "dup.lcd", "--out-dir", tmp / "c"}).code == 0);
    const Chart c = load_chart(tmp / "c/chart.txt");
    Eigen::Index a = -1, b = -1;
    for (std::size_t i = 0; i < c.indices.size(); ++i)
    {
        if (c.indices[i] == 0)
            a = static_cast<Eigen::Index>(i);
        if (c.indices[i] == 60)
            b = static_cast<Eigen::Index>(i);
    }
    REQUIRE(a >= 0);
    REQUIRE(b >= 0);
    CHECK((c.points.row(a) - c.points.row(b)).norm() < 1e-9);
}

TEST_CASE("CLI reproduce argument handling")
{
    TempDir tmp("loschart_cli_repro");
    CHECK(run_cli({"reproduce", "unknown", "--out-dir", tmp / "x"}).code == 2);
    // Far below the minimum user density the neighbour graph falls apart.
    const Run sparse = run_cli({"reproduce", "5a", "--out-dir", tmp / "r", "--n", "300", "--no-plots"});
    CHECK(sparse.code == 2);
    CHECK_THAT(sparse.err, ContainsSubstring("fragmented"));
}
