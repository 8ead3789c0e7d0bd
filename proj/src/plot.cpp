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

#include "loschart/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "loschart/constants.hpp"
#include "loschart/kernels.hpp"

namespace loschart {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 480.0;
constexpr double kMargin = 48.0;

std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string escape(const std::string &s)
{
    std::string out;
    for (char c : s)
    {
        switch (c)
        {
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '&': out += "&amp;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

struct Frame
{
    double x0, x1, y0, y1;

    double px(double x) const { return kMargin + (x - x0) / (x1 - x0) * (kWidth - 2 * kMargin); }
    double py(double y) const { return kHeight - kMargin - (y - y0) / (y1 - y0) * (kHeight - 2 * kMargin); }
};

Frame make_frame(double x0, double x1, double y0, double y1)
{
    if (!(x1 > x0))
    {
        x0 -= 0.5;
        x1 += 0.5;
    }
    if (!(y1 > y0))
    {
        y0 -= 0.5;
        y1 += 0.5;
    }
    return {x0, x1, y0, y1};
}

std::string open_svg(const std::string &title)
{
    std::string s = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" + num(kHeight) +
         "\" viewBox=\"0 0 " + num(kWidth) + " " + num(kHeight) + "\">\n";
    s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!title.empty())
        s += "<text x=\"" + num(kWidth / 2) + "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
             "font-size=\"14\">" + escape(title) + "</text>\n";
    return s;
}

std::string axes(const Frame &f)
{
    std::string s = "<rect x=\"" + num(kMargin) + "\" y=\"" + num(kMargin) + "\" width=\"" +
                    num(kWidth - 2 * kMargin) + "\" height=\"" + num(kHeight - 2 * kMargin) +
                    "\" fill=\"none\" stroke=\"black\"/>\n";
    auto label = [](double x, double y, const char *anchor, double v) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.3g", v);
        return "<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" text-anchor=\"" + anchor +
               "\" font-family=\"sans-serif\" font-size=\"10\">" + buf + "</text>\n";
    };
    s += label(kMargin, kHeight - kMargin + 14, "start", f.x0);
    s += label(kWidth - kMargin, kHeight - kMargin + 14, "end", f.x1);
    s += label(kMargin - 4, kHeight - kMargin, "end", f.y0);
    s += label(kMargin - 4, kMargin + 8, "end", f.y1);
    return s;
}

std::string viridis_like(double t)
{
    // Dark blue to yellow ramp for the heatmap.
    t = std::clamp(t, 0.0, 1.0);
    const int r = static_cast<int>(std::lround(255 * std::clamp(1.8 * t - 0.6, 0.0, 1.0)));
    const int g = static_cast<int>(std::lround(255 * std::clamp(0.1 + 0.85 * t, 0.0, 1.0)));
    const int b = static_cast<int>(std::lround(255 * std::clamp(0.55 - 0.5 * t, 0.0, 1.0)));
    char buf[8];
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", r, g, b);
    return buf;
}

} // namespace

std::string to_string(PlotKind kind)
{
    switch (kind)
    {
    case PlotKind::scatter_chart: return "scatter_chart";
    case PlotKind::similarity_heatmap: return "similarity_heatmap";
    case PlotKind::kernel_profile: return "kernel_profile";
    }
    return "unknown";
}

PlotKind plot_kind_from_string(const std::string &s)
{
    for (PlotKind k : {PlotKind::scatter_chart, PlotKind::similarity_heatmap, PlotKind::kernel_profile})
        if (to_string(k) == s)
            return k;
    throw std::invalid_argument("Unknown plot kind '" + s + "'.");
}

std::string hue_color(double hue)
{
    hue = hue - std::floor(hue);
    const double h6 = hue * 6.0;
    const int sector = static_cast<int>(h6) % 6;
    const double f = h6 - std::floor(h6);
    double r = 0, g = 0, b = 0;
    switch (sector)
    {
    case 0: r = 1; g = f; break;
    case 1: r = 1 - f; g = 1; break;
    case 2: g = 1; b = f; break;
    case 3: g = 1 - f; b = 1; break;
    case 4: r = f; b = 1; break;
    default: r = 1; b = 1 - f; break;
    }
    char buf[8];
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", static_cast<int>(std::lround(255 * r)),
                  static_cast<int>(std::lround(255 * g)), static_cast<int>(std::lround(255 * b)));
    return buf;
}

std::string scatter_svg(const Chart &chart, const Points2 &truth, ColorMap color, const std::string &title)
{
    const Eigen::Index n = chart.points.rows();
    if (chart.points.cols() < 2 && n > 0)
        throw std::invalid_argument("Scatter plot needs a chart of dimension 2 or more.");
    if (color != ColorMap::none && truth.rows() != n)
        throw std::invalid_argument("Colour map needs one ground-truth point per chart row.");

    double x0 = 0, x1 = 0, y0 = 0, y1 = 0;
    if (n > 0)
    {
        x0 = chart.points.col(0).minCoeff();
        x1 = chart.points.col(0).maxCoeff();
        y0 = chart.points.col(1).minCoeff();
        y1 = chart.points.col(1).maxCoeff();
    }
    const Frame f = make_frame(x0, x1, y0, y1);

    double r_lo = 0, r_hi = 1;
    if (color == ColorMap::radius && n > 0)
    {
        const Eigen::VectorXd r = truth.rowwise().norm();
        r_lo = r.minCoeff();
        r_hi = std::max(r.maxCoeff(), r_lo + 1e-12);
    }

    std::string s = open_svg(title) + axes(f);
    for (Eigen::Index i = 0; i < n; ++i)
    {
        std::string fill = "#333333";
        if (color == ColorMap::azimuth)
            fill = hue_color((std::atan2(truth(i, 1), truth(i, 0)) + kPi) / kTwoPi);
        else if (color == ColorMap::radius)
            fill = hue_color(0.8 * (truth.row(i).norm() - r_lo) / (r_hi - r_lo));
        s += "<circle cx=\"" + num(f.px(chart.points(i, 0))) + "\" cy=\"" + num(f.py(chart.points(i, 1))) +
             "\" r=\"2\" fill=\"" + fill + "\"/>\n";
    }
    s += "</svg>\n";
    return s;
}

Heatmap similarity_heatmap(const SystemConfig &config, const PolarPosition &reference, double half_extent, int cells,
                           double min_range)
{
    if (cells < 2 || !(half_extent > 0.0))
        throw std::invalid_argument("Heatmap needs at least 2 cells per side and a positive extent.");
    config.validate();
    Heatmap map;
    map.reference = reference;
    map.x = Eigen::VectorXd::LinSpaced(cells, -half_extent, half_extent);
    map.y = map.x;
    map.values.setConstant(cells, cells, std::numeric_limits<double>::quiet_NaN());
    const ChannelVector href = synth_channel(config, reference);
    for (int iy = 0; iy < cells; ++iy)
        for (int ix = 0; ix < cells; ++ix)
        {
            const double x = map.x(ix), y = map.y(iy);
            const double r = std::hypot(x, y);
            if (r < min_range)
                continue;
            const ChannelVector h = synth_channel(config, {r, std::atan2(y, x)});
            map.values(iy, ix) = pi_similarity(href, h);
        }
    return map;
}

std::string heatmap_svg(const Heatmap &map, const std::string &title)
{
    const Eigen::Index nx = map.x.size(), ny = map.y.size();
    if (nx < 2 || ny < 2 || map.values.rows() != ny || map.values.cols() != nx)
        throw std::invalid_argument("Malformed heatmap.");
    const double dx = map.x(1) - map.x(0), dy = map.y(1) - map.y(0);
    const Frame f = make_frame(map.x(0) - dx / 2, map.x(nx - 1) + dx / 2, map.y(0) - dy / 2, map.y(ny - 1) + dy / 2);

    std::string s = open_svg(title);
    const double w = f.px(map.x(0) + dx / 2) - f.px(map.x(0) - dx / 2);
    const double h = f.py(map.y(0) - dy / 2) - f.py(map.y(0) + dy / 2);
    for (Eigen::Index iy = 0; iy < ny; ++iy)
        for (Eigen::Index ix = 0; ix < nx; ++ix)
        {
            const double v = map.values(iy, ix);
            const std::string fill = std::isnan(v) ? "#cccccc" : viridis_like(v);
            s += "<rect x=\"" + num(f.px(map.x(ix) - dx / 2)) + "\" y=\"" + num(f.py(map.y(iy) + dy / 2)) +
                 "\" width=\"" + num(w) + "\" height=\"" + num(h) + "\" fill=\"" + fill + "\"/>\n";
        }
    const Eigen::Vector2d ref = map.reference.cartesian();
    s += "<circle cx=\"" + num(f.px(ref.x())) + "\" cy=\"" + num(f.py(ref.y())) +
         "\" r=\"4\" fill=\"none\" stroke=\"red\"/>\n";
    s += axes(f) + "</svg>\n";
    return s;
}

Profile kernel_profile(const SystemConfig &config, ProfileTerm term, const PolarPosition &reference, double span,
                       int samples)
{
    if (samples < 2 || !(span > 0.0))
        throw std::invalid_argument("Profile needs at least 2 samples and a positive span.");
    config.validate();
    if (term == ProfileTerm::angular_approx && !config.is_uca())
        throw std::invalid_argument("The Bessel approximation applies to circular arrays only.");
    Profile p;
    p.term = term;
    p.abscissa = Eigen::VectorXd::LinSpaced(samples, -span, span);
    p.values.resize(samples);
    for (int i = 0; i < samples; ++i)
    {
        const double off = p.abscissa(i);
        switch (term)
        {
        case ProfileTerm::radial:
            p.values(i) = radial_term(config, reference.r, reference.r + off);
            break;
        case ProfileTerm::angular:
            p.values(i) = angular_term(config, reference.theta, reference.theta + off);
            break;
        case ProfileTerm::angular_approx:
            p.values(i) = angular_term_uca_approx(config, reference.theta, reference.theta + off);
            break;
        }
    }
    return p;
}

std::string profile_svg(const std::vector<Profile> &profiles, const std::string &title)
{
    if (profiles.empty())
        throw std::invalid_argument("Nothing to plot.");
    double x0 = profiles.front().abscissa.minCoeff(), x1 = profiles.front().abscissa.maxCoeff();
    for (const auto &p : profiles)
    {
        x0 = std::min(x0, p.abscissa.minCoeff());
        x1 = std::max(x1, p.abscissa.maxCoeff());
    }
    const Frame f = make_frame(x0, x1, 0.0, 1.0);
    static const char *const colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};

    std::string s = open_svg(title) + axes(f);
    for (std::size_t k = 0; k < profiles.size(); ++k)
    {
        const auto &p = profiles[k];
        std::string pts;
        for (Eigen::Index i = 0; i < p.values.size(); ++i)
        {
            if (i)
                pts += ' ';
            pts += num(f.px(p.abscissa(i))) + "," + num(f.py(p.values(i)));
        }
        s += "<polyline fill=\"none\" stroke=\"" + std::string(colors[k % 4]) + "\" points=\"" + pts + "\"/>\n";
    }
    s += "</svg>\n";
    return s;
}

} // namespace loschart
