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

#include <doctest.h>

#include "hrs/antenna.hpp"
#include "hrs/common.hpp"

using namespace hrs;

namespace {

double min_pair_distance(const AntennaArray &array)
{
    double best = arma::datum::inf;
    for (arma::uword i = 0; i < array.size(); ++i)
        for (arma::uword j = i + 1; j < array.size(); ++j)
        {
            const double dx = array.positions(i, 0) - array.positions(j, 0);
            const double dy = array.positions(i, 1) - array.positions(j, 1);
            best = std::min(best, std::sqrt(dx * dx + dy * dy));
        }
    return best;
}

} // namespace

TEST_CASE("uca radius and spacing for M = 100")
{
    const AntennaArray array = build_uca(100);
    REQUIRE(array.size() == 100);
    const double d = uca_radius(100);
    CHECK(d == doctest::Approx(0.5 / std::sqrt(std::pow(1.0 - std::cos(0.02 * M_PI), 2) +
                                               std::pow(std::sin(0.02 * M_PI), 2)))
                   .epsilon(1e-12));
    // adjacent elements are half a wavelength apart
    CHECK(min_pair_distance(array) == doctest::Approx(0.5).epsilon(1e-9));
    // all elements on the circle of radius D
    for (arma::uword i = 0; i < array.size(); ++i)
        CHECK(std::hypot(array.positions(i, 0), array.positions(i, 1)) ==
              doctest::Approx(d).epsilon(1e-12));
}

TEST_CASE("uca M = 2 gives antipodal points at half a wavelength")
{
    const AntennaArray array = build_uca(2);
    CHECK(uca_radius(2) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(min_pair_distance(array) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("uca M = 4 radius and chord from the closed form")
{
    const AntennaArray array = build_uca(4);
    CHECK(uca_radius(4) == doctest::Approx(0.5 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(min_pair_distance(array) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("uca rejects fewer than two antennas")
{
    CHECK_THROWS_AS(build_uca(1), config_error);
    CHECK_THROWS_AS(build_uca(0), config_error);
}
