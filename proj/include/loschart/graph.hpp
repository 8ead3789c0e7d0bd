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

#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace loschart {

using Index = Eigen::Index;

enum class DistanceKind
{
    pi,
    pi_thresholded,
    euclidean_gt,
    geodesic
};

std::string_view to_string(DistanceKind kind);

/// Symmetric pairwise distances with an explicit presence mask. Absent entries
/// (cut by a threshold or unreachable) read back as std::nullopt from at() and
/// hold NaN in values(), so they poison any arithmetic that ignores the mask.
class DistanceMatrix
{
  public:
    using Mask = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;

    DistanceMatrix() = default;
    DistanceMatrix(Eigen::MatrixXd values, DistanceKind kind);
    DistanceMatrix(Eigen::MatrixXd values, Mask present, DistanceKind kind);

    Index size() const { return values_.rows(); }
    DistanceKind kind() const { return kind_; }
    const Eigen::MatrixXd &values() const { return values_; }
    const Mask &mask() const { return present_; }

    bool present(Index i, Index j) const { return present_(i, j); }
    std::optional<double> at(Index i, Index j) const;
    bool is_complete() const { return present_.all(); }

    /// Throws std::invalid_argument on asymmetry (> 1e-12), nonzero diagonal, negative
    /// entries, or PI entries above sqrt(2).
    void validate() const;

  private:
    Eigen::MatrixXd values_;
    Mask present_;
    DistanceKind kind_ = DistanceKind::pi;
};

struct Edge
{
    Index to;
    double weight;
};

struct Components
{
    std::vector<Index> labels; // per node, 0 is the largest component
    std::vector<Index> sizes;  // indexed by label, non-increasing
};

/// Weighted undirected graph without self loops.
class NeighborGraph
{
  public:
    NeighborGraph() = default;
    explicit NeighborGraph(Index n);

    /// Adds i--j. Repeated pairs keep the first weight.
    void add_edge(Index i, Index j, double weight);

    Index size() const { return static_cast<Index>(adjacency_.size()); }
    std::size_t edge_count() const { return edges_; }
    double mean_degree() const;
    bool has_edge(Index i, Index j) const;
    std::span<const Edge> neighbors(Index i) const { return adjacency_[static_cast<std::size_t>(i)]; }

    /// Connected components, labelled by decreasing size (ties by lowest member index).
    Components components() const;

    /// Edges for every present off-diagonal entry.
    static NeighborGraph from_distances(const DistanceMatrix &d);

  private:
    std::vector<std::vector<Edge>> adjacency_;
    std::size_t edges_ = 0;
};

} // namespace loschart
