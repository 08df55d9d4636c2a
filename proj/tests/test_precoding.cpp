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

#include "fixtures.hpp"
#include "hrs/common.hpp"
#include "hrs/precoding.hpp"

using namespace hrs;

TEST_CASE("outer precoders: orthonormal columns and dominant-subspace nulling")
{
    for (const Scenario *s : {&test::disjoint_scenario(), &test::overlap_scenario()})
    {
        for (std::size_t g = 0; g < 4; ++g)
        {
            const arma::cx_mat &b = s->outer[g];
            CHECK(arma::abs(b.t() * b - arma::eye<arma::cx_mat>(15, 15)).max() < 1e-10);
            for (std::size_t l = 0; l < 4; ++l)
            {
                if (l == g)
                    continue;
                CHECK(arma::norm(s->outer[l].t() * s->stats[g].dominant(), "fro") < 1e-8);
            }
        }
    }
}

TEST_CASE("disjoint one-ring subspaces leave no measurable leakage")
{
    const Scenario &s = test::disjoint_scenario();
    double worst = 0.0;
    for (std::size_t g = 0; g < 4; ++g)
        for (std::size_t l = 0; l < 4; ++l)
            if (l != g)
                worst = std::max(worst, arma::norm(s.outer[l].t() * s.stats[g].dominant(), "fro"));
    CHECK(worst < 1e-6);
}

TEST_CASE("overlapping subspaces leak through the reduced cross covariances")
{
    const Scenario &s = test::overlap_scenario();
    // leakage is a real effect here, recorded as a regression anchor
    double smallest_cross = arma::datum::inf;
    for (std::size_t g = 0; g < 4; ++g)
        for (std::size_t l = 0; l < 4; ++l)
            if (l != g)
                smallest_cross = std::min(smallest_cross, arma::norm(s.rbar[g][l], "fro"));
    CHECK(smallest_cross > 1e-3);
}

TEST_CASE("single group: outer precoder spans the dominant eigenvectors")
{
    const AntennaArray array = build_uca(24);
    std::vector<GroupStatistics> stats = {make_group_statistics(array, 0.3, M_PI / 7.0, 0.0, 6)};
    const arma::cx_mat b = build_outer_precoder(stats, 0, 4, 2);
    REQUIRE(b.n_cols == 4);
    // same subspace as the 4 dominant eigenvectors: projector distance ~ 0
    const arma::cx_mat u4 = stats[0].U.cols(0, 3);
    CHECK(arma::norm(b * b.t() - u4 * u4.t(), "fro") < 1e-8);
}

TEST_CASE("outer precoder dimension constraints are named")
{
    const Scenario &s = test::disjoint_scenario();
    // b_g < K_g
    CHECK_THROWS_WITH_AS(build_outer_precoder(s.stats, 0, 2, 3),
                         doctest::Contains("K_g <= b_g"), config_error);
    // b_g > M - sum r^d
    CHECK_THROWS_WITH_AS(build_outer_precoder(s.stats, 0, 41, 3),
                         doctest::Contains("M - sum"), config_error);
    // b_g > r^d_g (needs b within the null-space bound but above r^d)
    CHECK_THROWS_WITH_AS(build_outer_precoder(s.stats, 0, 21, 3),
                         doctest::Contains("r^d_g"), config_error);
}

TEST_CASE("rzf: single user reduces to matched beamforming")
{
    const arma::cx_mat b = arma::eye<arma::cx_mat>(6, 6);
    const arma::cx_mat h = test::random_cx(6, 1, 5);
    const RzfPrecoder rzf = rzf_inner_precoder(h, b, 0.3);
    // direction preserved: |<w, h>| = ||w|| ||h||
    const double cosine = std::abs(arma::cdot(rzf.w.col(0), h.col(0))) /
                          (arma::norm(rzf.w.col(0)) * arma::norm(h.col(0)));
    CHECK(cosine == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("rzf: large regularization converges to per-column matched beamforming")
{
    const arma::cx_mat b = arma::eye<arma::cx_mat>(8, 8);
    const arma::cx_mat h = test::random_cx(8, 3, 6);
    const RzfPrecoder rzf = rzf_inner_precoder(h, b, 1e6);
    for (arma::uword k = 0; k < 3; ++k)
    {
        const double cosine = std::abs(arma::cdot(rzf.w.col(k), h.col(k))) /
                              (arma::norm(rzf.w.col(k)) * arma::norm(h.col(k)));
        CHECK(std::acos(std::min(1.0, cosine)) < 1e-6);
    }
}

TEST_CASE("rzf: a vanished effective channel is a degenerate draw")
{
    const arma::cx_mat b = arma::eye<arma::cx_mat>(4, 4);
    const arma::cx_mat zero(4, 2, arma::fill::zeros);
    CHECK_THROWS_AS(rzf_inner_precoder(zero, b, 0.1), degenerate_channel_error);
    arma::cx_mat dust(4, 2, arma::fill::ones);
    dust *= 1e-8; // squared norm below the degeneracy floor
    CHECK_THROWS_AS(rzf_inner_precoder(dust, b, 0.1), degenerate_channel_error);
}

TEST_CASE("rzf normalization: trace(W^H B^H B W) equals the user count")
{
    const Scenario &s = test::disjoint_scenario();
    const arma::cx_mat &b = s.outer[1];
    const arma::cx_mat h_eff = test::random_cx(15, 3, 7);
    const RzfPrecoder rzf = rzf_inner_precoder(h_eff, b, 0.013);
    const double trace = arma::accu(arma::square(arma::abs(rzf.lifted_w)));
    CHECK(trace == doctest::Approx(3.0).epsilon(1e-10));
    // with orthonormal B this equals trace(W^H W)
    CHECK(arma::accu(arma::square(arma::abs(rzf.w))) == doctest::Approx(3.0).epsilon(1e-10));
}

TEST_CASE("outer common precoder: single user, cancellation, alignment over seeds")
{
    const arma::cx_mat b = arma::eye<arma::cx_mat>(5, 5);
    SUBCASE("one user gives the normalized channel")
    {
        const arma::cx_mat h = test::random_cx(5, 1, 8);
        const arma::cx_vec w = outer_common_precoder({b}, {h});
        CHECK(arma::norm(w - h.col(0) / arma::norm(h.col(0))) < 1e-12);
    }
    SUBCASE("exact cancellation is a degenerate channel")
    {
        arma::cx_mat h = test::random_cx(5, 2, 9);
        h.col(1) = -h.col(0);
        CHECK_THROWS_AS(outer_common_precoder({b}, {h}), degenerate_channel_error);
    }
    SUBCASE("every user keeps a nonzero projection on w_oc across 100 seeds")
    {
        const AntennaArray array = build_uca(16);
        std::vector<GroupStatistics> stats = {
            make_group_statistics(array, -0.8, M_PI / 6.0, 0.2, 4),
            make_group_statistics(array, 0.9, M_PI / 6.0, 0.2, 4)};
        const std::vector<arma::uword> users = {2, 2};
        std::vector<arma::cx_mat> outer;
        for (std::size_t g = 0; g < 2; ++g)
            outer.push_back(build_outer_precoder(stats, g, 3, 2));
        for (std::uint64_t seed = 0; seed < 100; ++seed)
        {
            const ChannelDraw draw = sample_draw(stats, users, draw_seed(100, seed));
            const PrecoderSet set = build_precoders(outer, draw, 0.05);
            CHECK(arma::norm(set.w_oc) == doctest::Approx(1.0).epsilon(1e-10));
            for (std::size_t g = 0; g < 2; ++g)
            {
                const arma::cx_mat lifted = outer[g] * (outer[g].t() * draw.h_hat[g]);
                for (arma::uword k = 0; k < 2; ++k)
                    CHECK(std::abs(arma::cdot(set.w_oc, lifted.col(k))) > 0.0);
            }
        }
    }
}

TEST_CASE("inner common precoder: proportionality, scaling, unit effective norm")
{
    const Scenario &s = test::disjoint_scenario();
    const arma::cx_mat &b = s.outer[0];
    SUBCASE("single user: proportional to the RZF column")
    {
        const arma::cx_mat h_eff = test::random_cx(15, 1, 10);
        const RzfPrecoder rzf = rzf_inner_precoder(h_eff, b, 0.4);
        const InnerCommonPrecoder ic = inner_common_precoder(rzf.w, b);
        const double cosine = std::abs(arma::cdot(ic.w, rzf.w.col(0))) /
                              (arma::norm(ic.w) * arma::norm(rzf.w.col(0)));
        CHECK(cosine == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(arma::norm(b * ic.w) == doctest::Approx(1.0).epsilon(1e-10));
    }
    SUBCASE("orthonormal B: zeta is the inverse mean-precoder norm")
    {
        const arma::cx_mat h_eff = test::random_cx(15, 3, 11);
        const RzfPrecoder rzf = rzf_inner_precoder(h_eff, b, 0.4);
        const InnerCommonPrecoder ic = inner_common_precoder(rzf.w, b);
        const arma::cx_vec mean_dir = arma::mean(rzf.w, 1);
        CHECK(ic.zeta == doctest::Approx(1.0 / arma::norm(mean_dir)).epsilon(1e-10));
        CHECK(arma::norm(b * ic.w) == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("power split bookkeeping is exact and nonnegative")
{
    PowerSplit split;
    split.alpha = 0.37;
    split.beta = 0.81;
    split.total = 1000.0;
    const std::size_t groups = 4;
    const arma::uword kbar = 3;
    const double refund = split.outer_common_power() +
                          groups * split.inner_common_power(groups) +
                          groups * kbar * split.private_power(groups, kbar);
    CHECK(refund == doctest::Approx(split.total).epsilon(1e-12));
    CHECK(split.outer_common_power() >= 0.0);
    CHECK(split.inner_common_power(groups) >= 0.0);
    CHECK(split.private_power(groups, kbar) >= 0.0);
}

TEST_CASE("transmit power budget holds for every draw")
{
    const Scenario &s = test::disjoint_scenario();
    const auto users = s.users();
    const double p = 100.0;
    PowerSplit split;
    split.alpha = 0.25;
    split.beta = 0.6;
    split.total = p;
    for (std::uint64_t d = 0; d < 10; ++d)
    {
        const ChannelDraw draw = sample_draw(s.stats, users, draw_seed(3, d));
        const PrecoderSet set = build_precoders(s.outer, draw, s.regularization(p));
        CHECK(std::abs(transmit_power(set, split, users) - p) < 1e-8);

        // TTP budget: uniform P/K over all streams
        double ttp = 0.0;
        for (std::size_t g = 0; g < 4; ++g)
            ttp += (p / 12.0) * arma::accu(arma::square(arma::abs(set.w[g].lifted_w)));
        CHECK(std::abs(ttp - p) < 1e-8);
    }
}
