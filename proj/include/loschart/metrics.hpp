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

namespace loschart {

struct MetricsReport
{
    double tw = 0.0; // trustworthiness
    double ct = 0.0; // continuity
    double ks = 0.0; // Kruskal stress-1 with optimal scaling
    int k_neighbors = 0;
    Eigen::Index n_scored = 0;
};

/// Rank-based trustworthiness: penalises chart neighbours that are not truth neighbours.
/// Requires 1 <= k < n/2. Rank ties are broken by index.
double trustworthiness(const Eigen::MatrixXd &truth, const Eigen::MatrixXd &chart, int k);

/// Counterpart of trustworthiness: penalises truth neighbours missing from the chart.
double continuity(const Eigen::MatrixXd &truth, const Eigen::MatrixXd &chart, int k);

/// min over beta of sqrt(sum (beta dhat - d)^2 / sum d^2), d from truth, dhat from chart.
double kruskal_stress(const Eigen::MatrixXd &truth, const Eigen::MatrixXd &chart);

/// Default neighbourhood size for the rank metrics: 5 % of n, clamped into [1, n/2).
int default_rank_k(Eigen::Index n);

MetricsReport evaluate_chart(const Eigen::MatrixXd &truth, const Eigen::MatrixXd &chart,
                             std::optional<int> k = std::nullopt);

} // namespace loschart
