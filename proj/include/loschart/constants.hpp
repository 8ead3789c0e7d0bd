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

#include <cmath>
#include <numbers>

namespace loschart {

inline constexpr double kSpeedOfLight = 299'792'458.0; // m/s, exact
inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Wraps an angle into (-pi, pi].
inline double wrap_angle(double a)
{
    double w = a - kTwoPi * std::floor(a / kTwoPi); // [0, 2pi)
    if (w > kPi)
        w -= kTwoPi;
    return w;
}

} // namespace loschart
