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

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "loschart/channel_model.hpp"
#include "loschart/graph.hpp"

namespace loschart {

/// Low-dimensional embedding, one row per charted UE.
struct Chart
{
    Eigen::MatrixXd points;     // n x dim
    std::vector<Index> indices; // source index of each row
    DistanceKind source = DistanceKind::geodesic;
    bool aligned = false;       // set once Procrustes-aligned to ground truth
};

/// Thrown when the neighbour graph is too fragmented to chart.
class SparseGraphError : public std::runtime_error
{
  public:
    SparseGraphError(Index largest, Index total);
    Index largest_component() const { return largest_; }
    Index total() const { return total_; }

  private:
    Index largest_;
    Index total_;
};

struct GeodesicDistances
{
    DistanceMatrix distances;   // over the largest component, kind geodesic
    std::vector<Index> included; // graph node of each row
    std::vector<Index> excluded; // nodes outside the largest component
};

/// All-pairs shortest paths inside the largest connected component (one Dijkstra
/// search per source). Throws SparseGraphError when that component holds less than
/// half of the nodes.
GeodesicDistances geodesic_distances(const NeighborGraph &graph);

/// Symmetric kNN graph: i--j when j is among the k nearest of i or vice versa.
/// Ties are broken by index.
NeighborGraph knn_graph(const Eigen::MatrixXd &distances, int k);

/// i--j when the Euclidean distance between ground-truth points is at most radius.
NeighborGraph radius_graph(const Points2 &points, double radius);

struct MdsResult
{
    Chart chart;
    Eigen::VectorXd eigenvalues; // leading eigenvalues of -J D^2 J / 2, descending
    bool non_euclidean = false;  // a leading eigenvalue was negative beyond tolerance
};

/// Classical multidimensional scaling of a complete distance matrix. Each eigenvector's
/// first non-negligible entry is made positive.
MdsResult classical_mds(const Eigen::MatrixXd &distances, int dim = 2);

/// Leading k eigenpairs of a symmetric matrix, eigenvalues descending. Dense solver for
/// small n, Lanczos with full reorthogonalisation otherwise.
void top_eigenpairs(const Eigen::MatrixXd &a, int k, Eigen::VectorXd &values, Eigen::MatrixXd &vectors);

/// Similarity transform (rotation or reflection, uniform scale, translation) of the
/// chart minimising the squared residual to truth.
Chart procrustes_align(const Chart &chart, const Eigen::MatrixXd &truth);

enum class PipelineDistance
{
    pi,
    euclidean_gt
};

struct PipelineOptions
{
    bool thresholded = true;
    PipelineDistance distance = PipelineDistance::pi;
    int dim = 2;
};

struct PipelineResult
{
    Chart chart;
    std::vector<Index> excluded;
    double threshold = 0.0;         // similarity threshold (thresholded PI only)
    double neighbor_radius = 0.0;   // metres (euclidean_gt only)
    int knn_k = 0;                  // neighbour count (raw PI only)
    std::size_t edge_count = 0;
    double mean_degree = 0.0;
    std::vector<double> leading_eigenvalues;
    std::vector<std::string> warnings;
};

/// distances -> neighbour graph -> geodesics -> classical MDS.
///  - thresholded PI: edges where s* >= threshold_for(config)
///  - raw PI: kNN graph with k the rounded mean degree of the thresholded graph
///  - euclidean_gt: ground-truth distances within L'_f / 2
PipelineResult run_pipeline(std::span<const ChannelVector> channels, const SystemConfig &config,
                            const PipelineOptions &options = {});

} // namespace loschart
