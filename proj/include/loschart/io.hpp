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

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "loschart/channel_model.hpp"
#include "loschart/charting.hpp"

namespace loschart {

/// Ordered key/value pairs, serialised one "key = value" per line.
using KeyValues = std::vector<std::pair<std::string, std::string>>;

/// Shortest decimal form that parses back to the same double.
std::string format_double(double v);
double parse_double(std::string_view s);
long long parse_int(std::string_view s);

std::string write_kv(const KeyValues &kv);

/// Parses "key = value" lines; blank lines and lines starting with '#' are skipped.
KeyValues parse_kv(std::string_view text);

/// First value stored under key; throws std::invalid_argument when missing.
const std::string &kv_get(const KeyValues &kv, std::string_view key);
bool kv_has(const KeyValues &kv, std::string_view key);

// ---------- Config files ----------

inline constexpr int kConfigVersion = 1;

KeyValues config_to_kv(const SystemConfig &config, std::string_view prefix = "");
SystemConfig config_from_kv(const KeyValues &kv, std::string_view prefix = "");

std::string write_config(const SystemConfig &config);
SystemConfig read_config(std::string_view text);
void save_config(const std::filesystem::path &path, const SystemConfig &config);
SystemConfig load_config(const std::filesystem::path &path);

// ---------- Datasets ----------

inline constexpr int kDatasetVersion = 1;

/// Text header terminated by "end_header\n", then a little-endian float64 body: per
/// UE an optional (r, theta) pair followed by na*ns (re, im) pairs, frequency-major.
struct Dataset
{
    SystemConfig config;
    std::vector<ChannelVector> channels;
    bool has_positions = true;
};

void write_dataset(std::ostream &os, const Dataset &ds);
Dataset read_dataset(std::istream &is);
void save_dataset(const std::filesystem::path &path, const Dataset &ds);
Dataset load_dataset(const std::filesystem::path &path);

// ---------- Charts ----------

void write_chart(std::ostream &os, const Chart &chart);
Chart read_chart(std::istream &is);
void save_chart(const std::filesystem::path &path, const Chart &chart);
Chart load_chart(const std::filesystem::path &path);

void save_text(const std::filesystem::path &path, std::string_view text);
std::string load_text(const std::filesystem::path &path);

} // namespace loschart
