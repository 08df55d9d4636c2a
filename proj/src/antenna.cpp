// hrs-sim: hierarchical rate splitting simulator for FDD massive MIMO
// Copyright (C) 2026 the hrs-sim authors
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

#include "hrs/antenna.hpp"

#include "hrs/common.hpp"

namespace hrs {

double uca_radius(arma::uword m)
{
    const double phi = 2.0 * M_PI / static_cast<double>(m);
    const double c = 1.0 - std::cos(phi);
    const double s = std::sin(phi);
    return 0.5 / std::sqrt(c * c + s * s);
}

AntennaArray build_uca(arma::uword m)
{
    if (m < 2)
        throw config_error("build_uca: antenna count must be >= 2");

    const double radius = uca_radius(m);
    AntennaArray array;
    array.positions.set_size(m, 2);
    for (arma::uword i = 0; i < m; ++i)
    {
        const double ang = 2.0 * M_PI * static_cast<double>(i) / static_cast<double>(m);
        array.positions(i, 0) = radius * std::cos(ang);
        array.positions(i, 1) = radius * std::sin(ang);
    }
    return array;
}

} // namespace hrs
