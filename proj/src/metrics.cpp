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

#include "loschart/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace loschart {

namespace {

using Eigen::Index;

void check_inputs(const Eigen::MatrixXd &truth, const Eigen::MatrixXd &chart)
{
    if (truth.rows() != chart.rows())
        throw std::invalid_argument("Ground truth and chart have different point counts.");
    if (!truth.allFinite() || !chart.allFinite())
        throw std::invalid_argument("Point sets must be finite.");
}

void check_k(Index n, int k)
{
    if (k < 1 || 2 * static_cast<Index>(k) >= n)
        throw std::invalid_argument("Neighbourhood size k=" + std::to_string(k) + " must satisfy 1 <= k < n/2 (n=" +
                                    std::to_string(n) + ").");
}

// Neighbour order of point i by distance, ties broken by index; i itself is excluded.
void neighbour_order(const Eigen::MatrixXd &pts, Index i, std::vector<double> &dist, std::vector<Index> &order)
{
    const Index n = pts.rows();
    for (Index j = 0; j < n; ++j)
        dist[static_cast<std::size_t>(j)] = (pts.row(i) - pts.row(j)).squaredNorm();
    order.clear();
    for (Index j = 0; j < n; ++j)
        if (j != i)
            order.push_back(j);
    std::sort(order.begin(), order.end(), [&](Index a, Index b) {
        const double da = dist[static_cast<std::size_t>(a)], db = dist[static_cast<std::size_t>(b)];
        return da < db || (da == db && a < b);
    });
}

// Sum over i of sum over j in (k-NN in `from`) \ (k-NN in `ref`) of (rank_ref(i, j) - k).
double rank_penalty(const Eigen::MatrixXd &ref, const Eigen::MatrixXd &from, int k)
{
    const Index n = ref.rows();
    std::vector<double> dist(static_cast<std::size_t>(n));
    std::vector<Index> order_ref, order_from;
    std::vector<Index> rank(static_cast<std::size_t>(n));
    double total = 0.0;
    for (Index i = 0; i < n; ++i)
    {
        neighbour_order(ref, i, dist, order_ref);
        for (std::size_t r = 0; r < order_ref.size(); ++r)
            rank[static_cast<std::size_t>(order_ref[r])] = static_cast<Index>(r) + 1;
        neighbour_order(from, i, dist, order_from);
        for (int r = 0; r < k; ++r)
        {
            const Index rr = rank[static_cast<std::size_t>(order_from[static_cast<std::size_t>(r)])];
            if (rr > k)
                total += static_cast<double>(rr - k);
        }
    }
    return total;
}

double rank_score(const Eigen::MatrixXd &ref, const Eigen::MatrixXd &from, int k)
{
    const double n = static_cast<double>(ref.rows());
    const double kk = k;
    return 1.0 - 2.0 / (n * kk * (2.0 * n - 3.0 * kk - 1.0)) * rank_penalty(ref, from, k);
}

} // namespace

double trustworthiness(const Eigen::MatrixXd &truth, const Eigen::MatrixXd &chart, int k)
{
    check_inputs(truth, chart);
    check_k(truth.rows(), k);
    return rank_score(truth, chart, k);
}

double continuity(const Eigen::MatrixXd &truth, const Eigen::MatrixXd &chart, int k)
{
    check_inputs(truth, chart);
    check_k(truth.rows(), k);
    return rank_score(chart, truth, k);
}

double kruskal_stress(const Eigen::MatrixXd &truth, const Eigen::MatrixXd &chart)
{
    check_inputs(truth, chart);
    const Index n = truth.rows();
    auto for_pairs = [&](auto &&fn) {
        for (Index i = 0; i < n; ++i)
            for (Index j = i + 1; j < n; ++j)
                fn((truth.row(i) - truth.row(j)).norm(), (chart.row(i) - chart.row(j)).norm());
    };

    double sdd = 0.0, sdh = 0.0, shh = 0.0;
    for_pairs([&](double d, double h) {
        sdd += d * d;
        sdh += d * h;
        shh += h * h;
    });
    if (sdd == 0.0 || shh == 0.0)
        throw std::invalid_argument("Kruskal stress is undefined when all points coincide.");

    // Residuals summed directly; the closed form sdd - sdh^2/shh cancels catastrophically near zero
    const double beta = sdh / shh;
    double resid = 0.0;
    for_pairs([&](double d, double h) { resid += (beta * h - d) * (beta * h - d); });
    return std::sqrt(resid / sdd);
}

int default_rank_k(Index n)
{
    int k = static_cast<int>(std::lround(0.05 * static_cast<double>(n)));
    k = std::max(k, 1);
    while (k > 1 && 2 * static_cast<Index>(k) >= n)
        --k;
    return k;
}

MetricsReport evaluate_chart(const Eigen::MatrixXd &truth, const Eigen::MatrixXd &chart, std::optional<int> k)
{
    MetricsReport rep;
    rep.k_neighbors = k.value_or(default_rank_k(truth.rows()));
    rep.n_scored = truth.rows();
    rep.tw = trustworthiness(truth, chart, rep.k_neighbors);
    rep.ct = continuity(truth, chart, rep.k_neighbors);
    rep.ks = kruskal_stress(truth, chart);
    return rep;
}

} // namespace loschart
