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

#pragma once

#include <random>

#include "hrs/scenario.hpp"

namespace hrs::test {

/// The two reference configurations, assembled once per test binary.
inline const Scenario &disjoint_scenario()
{
    static const Scenario s = [] {
        ScenarioConfig c;
        c.name = "disjoint";
        c.spread = M_PI / 8.0;
        return assemble_scenario(c);
    }();
    return s;
}

inline const Scenario &overlap_scenario()
{
    static const Scenario s = [] {
        ScenarioConfig c;
        c.name = "overlap";
        c.spread = M_PI / 3.0;
        return assemble_scenario(c);
    }();
    return s;
}

/// Small random Hermitian PSD matrix with eigenvalues in [lo, hi].
inline arma::cx_mat random_psd(arma::uword n, double lo, double hi, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    arma::cx_mat a(n, n);
    for (arma::uword j = 0; j < n; ++j)
        for (arma::uword i = 0; i < n; ++i)
            a(i, j) = arma::cx_double(normal(rng), normal(rng));
    arma::cx_mat q, r;
    arma::qr(q, r, a);
    std::uniform_real_distribution<double> uni(lo, hi);
    arma::vec lam(n);
    for (arma::uword i = 0; i < n; ++i)
        lam(i) = uni(rng);
    return q * arma::diagmat(lam) * q.t();
}

/// Random complex matrix with i.i.d. CN(0,1) entries.
inline arma::cx_mat random_cx(arma::uword rows, arma::uword cols, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    arma::cx_mat a(rows, cols);
    const double s = 1.0 / std::sqrt(2.0);
    for (arma::uword j = 0; j < cols; ++j)
        for (arma::uword i = 0; i < rows; ++i)
            a(i, j) = arma::cx_double(s * normal(rng), s * normal(rng));
    return a;
}

} // namespace hrs::test
