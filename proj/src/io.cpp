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

#include "loschart/io.hpp"

#include <bit>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace loschart {

namespace {

std::string_view trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string key(std::string_view prefix, std::string_view name)
{
    return std::string(prefix) + std::string(name);
}

void put_f64(std::ostream &os, double v)
{
    std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
    char bytes[8];
    for (int i = 0; i < 8; ++i)
        bytes[i] = static_cast<char>((bits >> (8 * i)) & 0xffu);
    os.write(bytes, 8);
}

double get_f64(std::istream &is)
{
    unsigned char bytes[8];
    if (!is.read(reinterpret_cast<char *>(bytes), 8))
        throw std::invalid_argument("Dataset body is truncated.");
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i)
        bits |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
    return std::bit_cast<double>(bits);
}

} // namespace

std::string format_double(double v)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

double parse_double(std::string_view s)
{
    s = trim(s);
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw std::invalid_argument("Not a number: '" + std::string(s) + "'");
    return v;
}

long long parse_int(std::string_view s)
{
    s = trim(s);
    long long v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw std::invalid_argument("Not an integer: '" + std::string(s) + "'");
    return v;
}

std::string write_kv(const KeyValues &kv)
{
    std::string out;
    for (const auto &[k, v] : kv)
        out += k + " = " + v + "\n";
    return out;
}

KeyValues parse_kv(std::string_view text)
{
    KeyValues kv;
    std::size_t pos = 0;
    int line_no = 0;
    while (pos <= text.size())
    {
        const auto nl = text.find('\n', pos);
        const std::string_view line = trim(text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos));
        ++line_no;
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        if (line.empty() || line.front() == '#')
            continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw std::invalid_argument("Line " + std::to_string(line_no) + ": expected 'key = value'.");
        kv.emplace_back(std::string(trim(line.substr(0, eq))), std::string(trim(line.substr(eq + 1))));
    }
    return kv;
}

bool kv_has(const KeyValues &kv, std::string_view k)
{
    for (const auto &p : kv)
        if (p.first == k)
            return true;
    return false;
}

const std::string &kv_get(const KeyValues &kv, std::string_view k)
{
    for (const auto &p : kv)
        if (p.first == k)
            return p.second;
    throw std::invalid_argument("Missing key '" + std::string(k) + "'.");
}

KeyValues config_to_kv(const SystemConfig &config, std::string_view prefix)
{
    KeyValues kv;
    kv.emplace_back(key(prefix, "fc"), format_double(config.fc));
    kv.emplace_back(key(prefix, "ns"), std::to_string(config.ns));
    kv.emplace_back(key(prefix, "delta_f"), format_double(config.delta_f));
    if (const auto *ula = std::get_if<Ula>(&config.array))
    {
        kv.emplace_back(key(prefix, "array"), "ula");
        kv.emplace_back(key(prefix, "na"), std::to_string(ula->na));
        kv.emplace_back(key(prefix, "delta_r"), format_double(ula->delta_r));
    }
    else if (const auto *uca = std::get_if<Uca>(&config.array))
    {
        kv.emplace_back(key(prefix, "array"), "uca");
        kv.emplace_back(key(prefix, "na"), std::to_string(uca->na));
        kv.emplace_back(key(prefix, "radius"), format_double(uca->radius));
    }
    else
    {
        const auto &p = std::get<ArbitraryArray>(config.array).positions;
        kv.emplace_back(key(prefix, "array"), "arbitrary");
        kv.emplace_back(key(prefix, "na"), std::to_string(p.rows()));
        std::string pts;
        for (Eigen::Index i = 0; i < p.rows(); ++i)
        {
            if (i)
                pts += ';';
            pts += format_double(p(i, 0)) + ',' + format_double(p(i, 1));
        }
        kv.emplace_back(key(prefix, "positions"), pts);
    }
    return kv;
}

SystemConfig config_from_kv(const KeyValues &kv, std::string_view prefix)
{
    auto get = [&](std::string_view name) -> const std::string & { return kv_get(kv, key(prefix, name)); };
    SystemConfig cfg;
    cfg.fc = parse_double(get("fc"));
    cfg.ns = static_cast<int>(parse_int(get("ns")));
    cfg.delta_f = parse_double(get("delta_f"));
    const std::string &array = get("array");
    const int na = static_cast<int>(parse_int(get("na")));
    if (array == "ula")
        cfg.array = Ula{na, parse_double(get("delta_r"))};
    else if (array == "uca")
        cfg.array = Uca{na, parse_double(get("radius"))};
    else if (array == "arbitrary")
    {
        std::vector<double> xy;
        std::string_view rest = get("positions");
        while (!rest.empty())
        {
            const auto semi = rest.find(';');
            const std::string_view item = rest.substr(0, semi);
            const auto comma = item.find(',');
            if (comma == std::string_view::npos)
                throw std::invalid_argument("Antenna positions must be 'x,y;x,y;...'.");
            xy.push_back(parse_double(item.substr(0, comma)));
            xy.push_back(parse_double(item.substr(comma + 1)));
            rest = semi == std::string_view::npos ? std::string_view{} : rest.substr(semi + 1);
        }
        if (static_cast<int>(xy.size() / 2) != na)
            throw std::invalid_argument("Antenna count does not match the position list.");
        Points2 p(na, 2);
        for (int i = 0; i < na; ++i)
            p.row(i) << xy[2 * i], xy[2 * i + 1];
        cfg.array = ArbitraryArray{p};
    }
    else
        throw std::invalid_argument("Unknown array type '" + array + "'.");
    cfg.validate();
    return cfg;
}

std::string write_config(const SystemConfig &config)
{
    KeyValues kv{{"format", "loschart-config"}, {"version", std::to_string(kConfigVersion)}};
    const KeyValues body = config_to_kv(config);
    kv.insert(kv.end(), body.begin(), body.end());
    return "# loschart system configuration\n" + write_kv(kv);
}

SystemConfig read_config(std::string_view text)
{
    const KeyValues kv = parse_kv(text);
    if (kv_get(kv, "format") != "loschart-config")
        throw std::invalid_argument("Not a loschart config file.");
    if (parse_int(kv_get(kv, "version")) != kConfigVersion)
        throw std::invalid_argument("Unsupported config version.");
    return config_from_kv(kv);
}

void save_text(const std::filesystem::path &path, std::string_view text)
{
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw std::runtime_error("Cannot write " + path.string());
    os.write(text.data(), static_cast<std::streamsize>(text.size()));
}

std::string load_text(const std::filesystem::path &path)
{
    std::ifstream is(path, std::ios::binary);
    if (!is)
        throw std::invalid_argument("Cannot read " + path.string());
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

void save_config(const std::filesystem::path &path, const SystemConfig &config)
{
    save_text(path, write_config(config));
}

SystemConfig load_config(const std::filesystem::path &path)
{
    return read_config(load_text(path));
}

void write_dataset(std::ostream &os, const Dataset &ds)
{
    ds.config.validate();
    const int na = ds.config.na(), ns = ds.config.ns;
    const Eigen::Index m = static_cast<Eigen::Index>(na) * ns;
    for (const auto &h : ds.channels)
    {
        if (h.entries.size() != m)
            throw std::invalid_argument("Channel length does not match na * ns.");
        if (ds.has_positions && !h.position)
            throw std::invalid_argument("Dataset declares positions but a channel has none.");
    }

    KeyValues kv{{"version", std::to_string(kDatasetVersion)},
                 {"n", std::to_string(ds.channels.size())},
                 {"na", std::to_string(na)},
                 {"ns", std::to_string(ns)},
                 {"has_positions", ds.has_positions ? "1" : "0"}};
    const KeyValues cfg = config_to_kv(ds.config, "config.");
    kv.insert(kv.end(), cfg.begin(), cfg.end());
    os << "loschart-dataset\n" << write_kv(kv) << "end_header\n";

    for (const auto &h : ds.channels)
    {
        if (ds.has_positions)
        {
            put_f64(os, h.position->r);
            put_f64(os, h.position->theta);
        }
        for (Eigen::Index i = 0; i < m; ++i)
        {
            put_f64(os, h.entries(i).real());
            put_f64(os, h.entries(i).imag());
        }
    }
    if (!os)
        throw std::runtime_error("Failed to write dataset.");
}

Dataset read_dataset(std::istream &is)
{
    std::string line;
    if (!std::getline(is, line) || line != "loschart-dataset")
        throw std::invalid_argument("Not a loschart dataset.");
    std::string header;
    bool terminated = false;
    while (std::getline(is, line))
    {
        if (line == "end_header")
        {
            terminated = true;
            break;
        }
        header += line + "\n";
    }
    if (!terminated)
        throw std::invalid_argument("Dataset header is not terminated.");

    const KeyValues kv = parse_kv(header);
    if (parse_int(kv_get(kv, "version")) != kDatasetVersion)
        throw std::invalid_argument("Unsupported dataset version.");
    Dataset ds;
    ds.config = config_from_kv(kv, "config.");
    const long long n = parse_int(kv_get(kv, "n"));
    const long long na = parse_int(kv_get(kv, "na"));
    const long long ns = parse_int(kv_get(kv, "ns"));
    ds.has_positions = parse_int(kv_get(kv, "has_positions")) != 0;
    if (n < 0 || na != ds.config.na() || ns != ds.config.ns)
        throw std::invalid_argument("Dataset header disagrees with its configuration.");

    const Eigen::Index m = static_cast<Eigen::Index>(na * ns);
    ds.channels.resize(static_cast<std::size_t>(n));
    for (auto &h : ds.channels)
    {
        if (ds.has_positions)
        {
            const double r = get_f64(is);
            const double theta = get_f64(is);
            h.position = PolarPosition{r, theta};
        }
        h.entries.resize(m);
        for (Eigen::Index i = 0; i < m; ++i)
        {
            const double re = get_f64(is);
            const double im = get_f64(is);
            h.entries(i) = {re, im};
        }
    }
    if (is.peek() != std::char_traits<char>::eof())
        throw std::invalid_argument("Dataset has trailing bytes after the declared records.");
    return ds;
}

void save_dataset(const std::filesystem::path &path, const Dataset &ds)
{
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw std::runtime_error("Cannot write " + path.string());
    write_dataset(os, ds);
}

Dataset load_dataset(const std::filesystem::path &path)
{
    std::ifstream is(path, std::ios::binary);
    if (!is)
        throw std::invalid_argument("Cannot read " + path.string());
    return read_dataset(is);
}

void write_chart(std::ostream &os, const Chart &chart)
{
    os << "# loschart chart v1\n";
    os << "# source = " << to_string(chart.source) << "\n";
    os << "# aligned = " << (chart.aligned ? 1 : 0) << "\n";
    os << "# columns = index";
    for (Eigen::Index c = 0; c < chart.points.cols(); ++c)
        os << " z" << c;
    os << "\n";
    for (Eigen::Index i = 0; i < chart.points.rows(); ++i)
    {
        os << chart.indices[static_cast<std::size_t>(i)];
        for (Eigen::Index c = 0; c < chart.points.cols(); ++c)
            os << ' ' << format_double(chart.points(i, c));
        os << '\n';
    }
}

Chart read_chart(std::istream &is)
{
    Chart chart;
    std::string line;
    std::vector<std::vector<double>> rows;
    Eigen::Index dim = -1;
    while (std::getline(is, line))
    {
        std::string_view sv = trim(line);
        if (sv.empty())
            continue;
        if (sv.front() == '#')
        {
            const auto eq = sv.find('=');
            if (eq == std::string_view::npos)
                continue;
            const std::string_view k = trim(sv.substr(1, eq - 1));
            const std::string_view v = trim(sv.substr(eq + 1));
            if (k == "aligned")
                chart.aligned = v == "1";
            else if (k == "source")
            {
                for (DistanceKind kind : {DistanceKind::pi, DistanceKind::pi_thresholded, DistanceKind::euclidean_gt,
                                          DistanceKind::geodesic})
                    if (to_string(kind) == v)
                        chart.source = kind;
            }
            continue;
        }
        std::istringstream ls{std::string(sv)};
        std::string tok;
        ls >> tok;
        chart.indices.push_back(static_cast<Index>(parse_int(tok)));
        std::vector<double> row;
        while (ls >> tok)
            row.push_back(parse_double(tok));
        if (dim < 0)
            dim = static_cast<Eigen::Index>(row.size());
        else if (static_cast<Eigen::Index>(row.size()) != dim)
            throw std::invalid_argument("Chart rows have inconsistent widths.");
        rows.push_back(std::move(row));
    }
    chart.points.resize(static_cast<Eigen::Index>(rows.size()), std::max<Eigen::Index>(dim, 0));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (Eigen::Index c = 0; c < dim; ++c)
            chart.points(static_cast<Eigen::Index>(i), c) = rows[i][static_cast<std::size_t>(c)];
    return chart;
}

void save_chart(const std::filesystem::path &path, const Chart &chart)
{
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw std::runtime_error("Cannot write " + path.string());
    write_chart(os, chart);
}

Chart load_chart(const std::filesystem::path &path)
{
    std::ifstream is(path, std::ios::binary);
    if (!is)
        throw std::invalid_argument("Cannot read " + path.string());
    return read_chart(is);
}

} // namespace loschart
