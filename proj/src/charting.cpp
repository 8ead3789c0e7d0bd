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

#include "loschart/charting.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>

#include "loschart/kernels.hpp"

namespace loschart {

SparseGraphError::SparseGraphError(Index largest, Index total)
    : std::runtime_error("Neighbour graph is fragmented: the largest component holds " + std::to_string(largest) +
                         " of " + std::to_string(total) +
                         " nodes. Increase the UE density (see min_user_density) or relax the threshold."),
      largest_(largest), total_(total)
{
}

GeodesicDistances geodesic_distances(const NeighborGraph &graph)
{
    const Index n = graph.size();
    if (n == 0)
        throw std::invalid_argument("Geodesic distances need a non-empty graph.");

    const Components comps = graph.components();
    const Index largest = comps.sizes.front();
    if (2 * largest < n)
        throw SparseGraphError(largest, n);

    GeodesicDistances out;
    std::vector<Index> row_of(static_cast<std::size_t>(n), -1);
    for (Index v = 0; v < n; ++v)
    {
        if (comps.labels[static_cast<std::size_t>(v)] == 0)
        {
            row_of[static_cast<std::size_t>(v)] = static_cast<Index>(out.included.size());
            out.included.push_back(v);
        }
        else
            out.excluded.push_back(v);
    }

    const Index m = static_cast<Index>(out.included.size());
    constexpr double inf = std::numeric_limits<double>::infinity();
    Eigen::MatrixXd d = Eigen::MatrixXd::Constant(m, m, inf);
    std::vector<double> dist(static_cast<std::size_t>(n));
    using Item = std::pair<double, Index>;

    for (Index a = 0; a < m; ++a)
    {
        std::fill(dist.begin(), dist.end(), inf);
        const Index src = out.included[static_cast<std::size_t>(a)];
        std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
        dist[static_cast<std::size_t>(src)] = 0.0;
        heap.push({0.0, src});
        while (!heap.empty())
        {
            const auto [du, u] = heap.top();
            heap.pop();
            if (du > dist[static_cast<std::size_t>(u)])
                continue;
            for (const Edge &e : graph.neighbors(u))
            {
                const double alt = du + e.weight;
                if (alt < dist[static_cast<std::size_t>(e.to)])
                {
                    dist[static_cast<std::size_t>(e.to)] = alt;
                    heap.push({alt, e.to});
                }
            }
        }
        // Upper triangle from the lower-index source keeps the matrix exactly symmetric
        for (Index b = a; b < m; ++b)
        {
            const double v = dist[static_cast<std::size_t>(out.included[static_cast<std::size_t>(b)])];
            d(a, b) = v;
            d(b, a) = v;
        }
    }
    out.distances = DistanceMatrix(std::move(d), DistanceKind::geodesic);
    return out;
}

NeighborGraph knn_graph(const Eigen::MatrixXd &distances, int k)
{
    const Index n = distances.rows();
    if (distances.cols() != n)
        throw std::invalid_argument("Distance matrix must be square.");
    if (k < 1)
        throw std::invalid_argument("kNN graph needs k >= 1.");

    NeighborGraph g(n);
    std::vector<Index> order;
    const Index kk = std::min<Index>(k, n - 1);
    for (Index i = 0; i < n; ++i)
    {
        order.clear();
        for (Index j = 0; j < n; ++j)
            if (j != i)
                order.push_back(j);
        auto less = [&](Index a, Index b) {
            const double da = distances(i, a), db = distances(i, b);
            return da < db || (da == db && a < b);
        };
        std::partial_sort(order.begin(), order.begin() + kk, order.end(), less);
        for (Index r = 0; r < kk; ++r)
            g.add_edge(i, order[static_cast<std::size_t>(r)], distances(i, order[static_cast<std::size_t>(r)]));
    }
    return g;
}

NeighborGraph radius_graph(const Points2 &points, double radius)
{
    const Index n = points.rows();
    NeighborGraph g(n);
    for (Index i = 0; i < n; ++i)
        for (Index j = i + 1; j < n; ++j)
        {
            const double d = (points.row(i) - points.row(j)).norm();
            if (d <= radius)
                g.add_edge(i, j, d);
        }
    return g;
}

namespace {

constexpr Index kDenseSolverLimit = 400;

// splitmix64, for a fixed Lanczos start vector
std::uint64_t splitmix(std::uint64_t &state)
{
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

void dense_top(const Eigen::MatrixXd &a, int k, Eigen::VectorXd &values, Eigen::MatrixXd &vectors)
{
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
    const Index n = a.rows();
    values.resize(k);
    vectors.resize(n, k);
    for (int i = 0; i < k; ++i)
    {
        values(i) = es.eigenvalues()(n - 1 - i);
        vectors.col(i) = es.eigenvectors().col(n - 1 - i);
    }
}

bool lanczos_top(const Eigen::MatrixXd &a, int k, Eigen::VectorXd &values, Eigen::MatrixXd &vectors)
{
    const Index n = a.rows();
    const Index max_steps = std::min<Index>(n, 400);
    Eigen::MatrixXd basis(n, max_steps);
    Eigen::VectorXd alpha(max_steps), beta(max_steps);

    std::uint64_t state = 0x5eed;
    Eigen::VectorXd v(n);
    for (Index i = 0; i < n; ++i)
        v(i) = static_cast<double>(splitmix(state) >> 11) * 0x1.0p-53 - 0.5;
    v.normalize();

    const double scale = std::max(a.cwiseAbs().maxCoeff(), std::numeric_limits<double>::min());
    Eigen::VectorXd w(n);
    for (Index j = 0; j < max_steps; ++j)
    {
        basis.col(j) = v;
        w.noalias() = a * v;
        alpha(j) = v.dot(w);
        // Full reorthogonalisation, applied twice
        for (int pass = 0; pass < 2; ++pass)
            w.noalias() -= basis.leftCols(j + 1) * (basis.leftCols(j + 1).transpose() * w);
        beta(j) = w.norm();

        const Index m = j + 1;
        const bool exhausted = beta(j) <= 1e-14 * scale * std::sqrt(static_cast<double>(n));
        if (m >= k && (m % 5 == 0 || exhausted || m == max_steps))
        {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
            Eigen::VectorXd sub = beta.head(m - 1);
            Eigen::VectorXd diag = alpha.head(m);
            tri.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
            const Eigen::VectorXd &theta = tri.eigenvalues();
            const double norm_est = std::max(theta.cwiseAbs().maxCoeff(), std::numeric_limits<double>::min());
            bool converged = true;
            for (int i = 0; i < k; ++i)
            {
                const double resid = beta(j) * std::abs(tri.eigenvectors()(m - 1, m - 1 - i));
                if (resid > 1e-10 * norm_est)
                    converged = false;
            }
            if (converged || exhausted)
            {
                values.resize(k);
                vectors.resize(n, k);
                for (int i = 0; i < k; ++i)
                {
                    values(i) = theta(m - 1 - i);
                    vectors.col(i) = (basis.leftCols(m) * tri.eigenvectors().col(m - 1 - i)).normalized();
                }
                return true;
            }
        }
        if (exhausted)
            break;
        v = w / beta(j);
    }
    return false;
}

} // namespace

void top_eigenpairs(const Eigen::MatrixXd &a, int k, Eigen::VectorXd &values, Eigen::MatrixXd &vectors)
{
    const Index n = a.rows();
    if (a.cols() != n)
        throw std::invalid_argument("Eigen-decomposition needs a square matrix.");
    if (k < 1 || k > n)
        throw std::invalid_argument("Requested eigenpair count out of range.");
    if (n <= kDenseSolverLimit || !lanczos_top(a, k, values, vectors))
        dense_top(a, k, values, vectors);
}

MdsResult classical_mds(const Eigen::MatrixXd &distances, int dim)
{
    const Index n = distances.rows();
    if (distances.cols() != n)
        throw std::invalid_argument("MDS needs a square distance matrix.");
    if (dim < 1)
        throw std::invalid_argument("Embedding dimension must be at least 1.");
    if (!distances.allFinite())
        throw std::invalid_argument("MDS needs a finite distance matrix.");
    if (!distances.isApprox(distances.transpose(), 1e-12) && n > 0 && distances.norm() > 0.0)
        throw std::invalid_argument("MDS needs a symmetric distance matrix.");

    MdsResult res;
    res.chart.points = Eigen::MatrixXd::Zero(n, dim);
    res.chart.indices.resize(static_cast<std::size_t>(n));
    std::iota(res.chart.indices.begin(), res.chart.indices.end(), Index{0});
    res.eigenvalues = Eigen::VectorXd::Zero(dim);
    if (n < 2)
        return res;

    // Double centring of the squared distances
    const Eigen::MatrixXd sq = distances.array().square().matrix();
    const Eigen::VectorXd row_mean = sq.rowwise().mean();
    const double grand = row_mean.mean();
    Eigen::MatrixXd b = sq;
    b.colwise() -= row_mean;
    b.rowwise() -= row_mean.transpose();
    b.array() += grand;
    b *= -0.5;

    const int k = static_cast<int>(std::min<Index>(dim, n));
    Eigen::VectorXd values;
    Eigen::MatrixXd vectors;
    top_eigenpairs(b, k, values, vectors);

    const double tol = 1e-9 * std::max(values.cwiseAbs().maxCoeff(), 1e-300);
    for (int i = 0; i < k; ++i)
    {
        Eigen::VectorXd col = vectors.col(i);
        const double peak = col.cwiseAbs().maxCoeff();
        for (Index r = 0; r < n; ++r)
        {
            if (std::abs(col(r)) > 1e-6 * peak)
            {
                if (col(r) < 0.0)
                    col = -col;
                break;
            }
        }
        if (values(i) < -tol)
            res.non_euclidean = true;
        res.eigenvalues(i) = values(i);
        res.chart.points.col(i) = col * std::sqrt(std::max(values(i), 0.0));
    }
    return res;
}

Chart procrustes_align(const Chart &chart, const Eigen::MatrixXd &truth)
{
    const Eigen::MatrixXd &x = chart.points;
    if (x.rows() != truth.rows() || x.cols() != truth.cols())
        throw std::invalid_argument("Chart and ground truth must have the same shape.");

    Chart out = chart;
    out.aligned = true;
    if (x.rows() == 0)
        return out;

    const Eigen::RowVectorXd mx = x.colwise().mean();
    const Eigen::RowVectorXd my = truth.colwise().mean();
    const Eigen::MatrixXd xc = x.rowwise() - mx;
    const Eigen::MatrixXd yc = truth.rowwise() - my;
    const double xx = xc.squaredNorm();
    if (xx == 0.0)
    {
        out.points = Eigen::MatrixXd::Zero(x.rows(), x.cols()).rowwise() + my;
        return out;
    }

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(xc.transpose() * yc, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::MatrixXd rot = svd.matrixU() * svd.matrixV().transpose();
    const double s = svd.singularValues().sum() / xx;
    out.points = (s * xc * rot).rowwise() + my;
    return out;
}

PipelineResult run_pipeline(std::span<const ChannelVector> channels, const SystemConfig &config,
                            const PipelineOptions &options)
{
    config.validate();
    PipelineResult res;
    const Index n = static_cast<Index>(channels.size());
    res.chart.source = options.distance == PipelineDistance::euclidean_gt ? DistanceKind::euclidean_gt
                       : options.thresholded                              ? DistanceKind::pi_thresholded
                                                                          : DistanceKind::pi;
    if (n < 2)
    {
        res.chart.points = Eigen::MatrixXd::Zero(n, options.dim);
        res.chart.indices.assign(static_cast<std::size_t>(n), 0);
        return res;
    }

    NeighborGraph graph;
    if (options.distance == PipelineDistance::euclidean_gt)
    {
        res.neighbor_radius = 0.5 * main_lobe_widths(config).radial.thresholded_width;
        graph = radius_graph(ground_truth(channels), res.neighbor_radius);
    }
    else
    {
        const Eigen::MatrixXd sim = similarity_matrix(channels);
        res.threshold = threshold_for(config);
        ThresholdedDistances thr = threshold_similarities(sim, res.threshold);
        res.warnings = thr.warnings;
        if (options.thresholded)
            graph = std::move(thr.graph);
        else
        {
            res.knn_k = std::max(1, static_cast<int>(std::lround(thr.graph.mean_degree())));
            const Eigen::MatrixXd d = sim.unaryExpr([](double s) { return distance_from_similarity(s); });
            graph = knn_graph(d, res.knn_k);
        }
    }
    res.edge_count = graph.edge_count();
    res.mean_degree = graph.mean_degree();

    GeodesicDistances geo = geodesic_distances(graph);
    MdsResult mds = classical_mds(geo.distances.values(), options.dim);

    res.chart.points = std::move(mds.chart.points);
    res.chart.indices = geo.included;
    res.excluded = geo.excluded;
    res.leading_eigenvalues.assign(mds.eigenvalues.data(), mds.eigenvalues.data() + mds.eigenvalues.size());
    if (!res.excluded.empty())
        res.warnings.push_back(std::to_string(res.excluded.size()) +
                               " UEs outside the largest connected component were not charted");
    if (mds.non_euclidean)
        res.warnings.push_back("negative leading eigenvalue: geodesic distances are not Euclidean-embeddable");
    return res;
}

} // namespace loschart
