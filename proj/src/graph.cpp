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

#include "loschart/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace loschart {

std::string_view to_string(DistanceKind kind)
{
    switch (kind)
    {
    case DistanceKind::pi:
        return "pi";
    case DistanceKind::pi_thresholded:
        return "pi_thresholded";
    case DistanceKind::euclidean_gt:
        return "euclidean_gt";
    case DistanceKind::geodesic:
        return "geodesic";
    }
    return "unknown";
}

DistanceMatrix::DistanceMatrix(Eigen::MatrixXd values, DistanceKind kind)
    : values_(std::move(values)), present_(Mask::Constant(values_.rows(), values_.cols(), true)), kind_(kind)
{
    if (values_.rows() != values_.cols())
        throw std::invalid_argument("Distance matrix must be square.");
}

DistanceMatrix::DistanceMatrix(Eigen::MatrixXd values, Mask present, DistanceKind kind)
    : values_(std::move(values)), present_(std::move(present)), kind_(kind)
{
    if (values_.rows() != values_.cols() || present_.rows() != values_.rows() || present_.cols() != values_.cols())
        throw std::invalid_argument("Distance matrix and mask must be square and of equal size.");
    values_ = present_.select(values_, std::numeric_limits<double>::quiet_NaN());
}

std::optional<double> DistanceMatrix::at(Index i, Index j) const
{
    if (!present_(i, j))
        return std::nullopt;
    return values_(i, j);
}

void DistanceMatrix::validate() const
{
    const Index n = size();
    for (Index i = 0; i < n; ++i)
    {
        if (!present_(i, i) || values_(i, i) != 0.0)
            throw std::invalid_argument("Distance matrix diagonal must be exactly zero.");
        for (Index j = i + 1; j < n; ++j)
        {
            if (present_(i, j) != present_(j, i))
                throw std::invalid_argument("Distance mask is not symmetric.");
            if (!present_(i, j))
                continue;
            const double a = values_(i, j), b = values_(j, i);
            if (!(a >= 0.0) || !(b >= 0.0))
                throw std::invalid_argument("Distances must be non-negative.");
            if (std::abs(a - b) > 1e-12)
                throw std::invalid_argument("Distance matrix is not symmetric.");
            if (kind_ == DistanceKind::pi && a > std::sqrt(2.0) + 1e-12)
                throw std::invalid_argument("PI distances cannot exceed sqrt(2).");
        }
    }
}

NeighborGraph::NeighborGraph(Index n) : adjacency_(static_cast<std::size_t>(n)) {}

bool NeighborGraph::has_edge(Index i, Index j) const
{
    const auto &adj = adjacency_[static_cast<std::size_t>(i)];
    return std::any_of(adj.begin(), adj.end(), [j](const Edge &e) { return e.to == j; });
}

void NeighborGraph::add_edge(Index i, Index j, double weight)
{
    if (i < 0 || j < 0 || i >= size() || j >= size())
        throw std::out_of_range("Edge endpoint out of range.");
    if (i == j)
        throw std::invalid_argument("Self loops are not allowed.");
    if (!(weight >= 0.0) || !std::isfinite(weight))
        throw std::invalid_argument("Edge weights must be finite and non-negative.");
    if (has_edge(i, j))
        return;
    adjacency_[static_cast<std::size_t>(i)].push_back({j, weight});
    adjacency_[static_cast<std::size_t>(j)].push_back({i, weight});
    ++edges_;
}

double NeighborGraph::mean_degree() const
{
    return adjacency_.empty() ? 0.0 : 2.0 * static_cast<double>(edges_) / static_cast<double>(adjacency_.size());
}

Components NeighborGraph::components() const
{
    const Index n = size();
    std::vector<Index> raw(static_cast<std::size_t>(n), -1);
    std::vector<Index> raw_sizes;
    std::vector<Index> stack;
    for (Index s = 0; s < n; ++s)
    {
        if (raw[static_cast<std::size_t>(s)] >= 0)
            continue;
        const Index label = static_cast<Index>(raw_sizes.size());
        raw_sizes.push_back(0);
        stack.push_back(s);
        raw[static_cast<std::size_t>(s)] = label;
        while (!stack.empty())
        {
            const Index v = stack.back();
            stack.pop_back();
            ++raw_sizes.back();
            for (const Edge &e : neighbors(v))
            {
                if (raw[static_cast<std::size_t>(e.to)] < 0)
                {
                    raw[static_cast<std::size_t>(e.to)] = label;
                    stack.push_back(e.to);
                }
            }
        }
    }

    // Relabel by decreasing size; raw labels already follow lowest member index
    std::vector<Index> order(raw_sizes.size());
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Index a, Index b) { return raw_sizes[static_cast<std::size_t>(a)] > raw_sizes[static_cast<std::size_t>(b)]; });
    std::vector<Index> relabel(raw_sizes.size());
    Components c;
    c.sizes.resize(raw_sizes.size());
    for (std::size_t k = 0; k < order.size(); ++k)
    {
        relabel[static_cast<std::size_t>(order[k])] = static_cast<Index>(k);
        c.sizes[k] = raw_sizes[static_cast<std::size_t>(order[k])];
    }
    c.labels.resize(raw.size());
    for (std::size_t v = 0; v < raw.size(); ++v)
        c.labels[v] = relabel[static_cast<std::size_t>(raw[v])];
    return c;
}

NeighborGraph NeighborGraph::from_distances(const DistanceMatrix &d)
{
    NeighborGraph g(d.size());
    for (Index i = 0; i < d.size(); ++i)
        for (Index j = i + 1; j < d.size(); ++j)
            if (d.present(i, j))
                g.add_edge(i, j, d.values()(i, j));
    return g;
}

} // namespace loschart
