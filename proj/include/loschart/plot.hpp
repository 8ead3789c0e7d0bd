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

#include <filesystem>
#include <string>
#include <vector>

#include "loschart/channel_model.hpp"
#include "loschart/charting.hpp"

namespace loschart {

enum class PlotKind
{
    scatter_chart,
    similarity_heatmap,
    kernel_profile
};

enum class ColorMap
{
    azimuth, // hue follows ground-truth azimuth
    radius,  // hue follows ground-truth range
    none
};

struct PlotSpec
{
    PlotKind kind = PlotKind::scatter_chart;
    ColorMap color = ColorMap::azimuth;
    std::filesystem::path output;
    std::string title;
};

std::string to_string(PlotKind kind);
PlotKind plot_kind_from_string(const std::string &s);

/// "#rrggbb" for hue in [0, 1), full saturation and value.
std::string hue_color(double hue);

/// Chart scatter. truth (n x 2, Cartesian) drives the colour map and may be empty when
/// color is none.
std::string scatter_svg(const Chart &chart, const Points2 &truth, ColorMap color, const std::string &title = {});

/// Similarity to a reference UE sampled on an x/y grid around the base station.
struct Heatmap
{
    Eigen::VectorXd x;      // column coordinates (m)
    Eigen::VectorXd y;      // row coordinates (m)
    Eigen::MatrixXd values; // rows follow y, columns follow x
    PolarPosition reference;
};

/// Grid cells closer than min_range to the array are left as NaN.
Heatmap similarity_heatmap(const SystemConfig &config, const PolarPosition &reference, double half_extent, int cells,
                           double min_range = 1.0);
std::string heatmap_svg(const Heatmap &map, const std::string &title = {});

enum class ProfileTerm
{
    radial,        // f-bar against range
    angular,       // a-bar against azimuth, exact
    angular_approx // Bessel approximation (UCA only)
};

struct Profile
{
    ProfileTerm term = ProfileTerm::radial;
    Eigen::VectorXd abscissa; // range offset (m) or azimuth offset (rad)
    Eigen::VectorXd values;
};

/// Samples a kernel on [-span, span] around the reference (offset abscissa).
Profile kernel_profile(const SystemConfig &config, ProfileTerm term, const PolarPosition &reference, double span,
                       int samples);
std::string profile_svg(const std::vector<Profile> &profiles, const std::string &title = {});

} // namespace loschart
