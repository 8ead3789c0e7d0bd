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

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "loschart/channel_model.hpp"
#include "loschart/charting.hpp"
#include "loschart/design_rules.hpp"
#include "loschart/io.hpp"
#include "loschart/kernels.hpp"
#include "loschart/metrics.hpp"

namespace loschart {

inline constexpr std::size_t kBaseUeCount = 2838;
inline constexpr double kBaseAreaWidth = 422.0; // m

struct VariantFlags
{
    bool no_threshold = false;      // raw PI distances with a kNN graph
    bool double_delta_f = false;    // subcarrier spacing doubled, bandwidth kept
    bool reduced_bandwidth = false; // bandwidth divided by bandwidth_factor, Ns kept
};

struct ScenarioSpec
{
    std::string name;
    SystemConfig config;
    AreaSpec area;
    std::size_t n_ue = kBaseUeCount;
    std::uint64_t seed = 1;
    VariantFlags variants;
    double bandwidth_factor = 2.0;
    PipelineDistance distance = PipelineDistance::pi;
};

KeyValues scenario_to_kv(const ScenarioSpec &spec);
ScenarioSpec scenario_from_kv(const KeyValues &kv);

/// 64-antenna UCA, R = 0.42 m, fc = 3 GHz, B = 10 MHz over 16 subcarriers; UEs in front
/// of the array, radial centre where neighbourhoods are round.
ScenarioSpec scenario_base(std::uint64_t seed = 1, std::size_t n_ue = kBaseUeCount);

/// No threshold; doubled subcarrier spacing; bandwidth reduced by bandwidth_factor.
std::vector<ScenarioSpec> scenario_variants(const ScenarioSpec &base, double bandwidth_factor = 2.0);

/// 16-antenna half-wavelength ULA and the base UCA, each over the full annulus and over
/// the sector the ULA can identify. Order: ula_full, uca_full, ula_sector, uca_sector.
std::vector<ScenarioSpec> scenario_ula_vs_uca(std::uint64_t seed = 1, std::size_t n_ue = kBaseUeCount);

struct RunManifest
{
    ScenarioSpec scenario;
    SufficientThreshold threshold;
    LobeWidths lobes;
    NeighborhoodAxes axes;
    double gamma = 0.0;
    bool area_identifiable = false;
    std::vector<std::string> violated;
    int knn_k = 0;
    std::size_t edge_count = 0;
    double mean_degree = 0.0;
    std::size_t n_excluded = 0;
    MetricsReport metrics;
    std::vector<std::string> outputs; // file names relative to the output directory
    std::vector<std::string> warnings;

    KeyValues to_kv() const;
};

struct RunOptions
{
    std::filesystem::path out_dir; // empty: nothing is written
    bool plots = true;
};

/// Sample UEs, synthesise channels, chart, score against ground truth and write the
/// chart, its scatter plot and the manifest. Deterministic for a fixed scenario.
RunManifest run(const ScenarioSpec &scenario, const RunOptions &options = {});

/// Runs every scenario and writes summary.txt with one metrics row per run.
std::vector<RunManifest> run_all(const std::vector<ScenarioSpec> &scenarios, const RunOptions &options);

std::string summary_table(const std::vector<RunManifest> &runs);

} // namespace loschart
