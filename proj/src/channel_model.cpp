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

#include "hrs/channel_model.hpp"

#include <cstdio>
#include <random>

#include "hrs/common.hpp"

namespace hrs {

arma::cx_mat one_ring_covariance(const AntennaArray &array, double azimuth, double spread,
                                 int quad_nodes)
{
    if (spread <= 0.0)
        throw config_error("one_ring_covariance: angular spread must be > 0");

    std::vector<double> nodes, weights;
    gauss_legendre(quad_nodes, nodes, weights);

    const arma::uword m = array.size();
    arma::cx_mat r(m, m, arma::fill::zeros);

    // Integrate the upper triangle; the diagonal integrand is identically 1.
    for (int q = 0; q < quad_nodes; ++q)
    {
        const double a = azimuth + spread * nodes[q];
        const double w = 0.5 * weights[q]; // GL weights sum to 2
        const double ca = std::cos(a);
        const double sa = std::sin(a);
        for (arma::uword i = 0; i < m; ++i)
        {
            for (arma::uword j = i + 1; j < m; ++j)
            {
                const double dx = array.positions(i, 0) - array.positions(j, 0);
                const double dy = array.positions(i, 1) - array.positions(j, 1);
                const double phase = -2.0 * M_PI * (ca * dx + sa * dy);
                r(i, j) += w * arma::cx_double(std::cos(phase), std::sin(phase));
            }
        }
    }
    for (arma::uword i = 0; i < m; ++i)
    {
        r(i, i) = 1.0;
        for (arma::uword j = i + 1; j < m; ++j)
            r(j, i) = std::conj(r(i, j));
    }
    return r;
}

arma::cx_mat steering_covariance(const AntennaArray &array, double azimuth)
{
    const arma::uword m = array.size();
    arma::cx_vec v(m);
    const double ca = std::cos(azimuth);
    const double sa = std::sin(azimuth);
    for (arma::uword i = 0; i < m; ++i)
    {
        const double phase = -2.0 * M_PI * (ca * array.positions(i, 0) + sa * array.positions(i, 1));
        v(i) = arma::cx_double(std::cos(phase), std::sin(phase));
    }
    return v * v.t();
}

EigenBasis eigendecompose(const arma::cx_mat &r, double rank_tol)
{
    const double asym = arma::abs(r - r.t()).max();
    if (asym > 1e-8)
        throw invalid_input_error("eigendecompose: input is not Hermitian (asymmetry " +
                                  std::to_string(asym) + ")");

    arma::vec values_asc;
    arma::cx_mat vectors_asc;
    if (!arma::eig_sym(values_asc, vectors_asc, arma::cx_mat(0.5 * (r + r.t()))))
        throw invalid_input_error("eigendecompose: eigensolver failed");

    const arma::uword n = values_asc.n_elem;
    const double lambda_max = values_asc(n - 1);
    const double cutoff = rank_tol * lambda_max;

    arma::uword rank = 0;
    for (arma::uword i = 0; i < n; ++i)
        if (values_asc(i) > cutoff)
            ++rank;
    if (rank == 0)
        throw invalid_input_error("eigendecompose: matrix is numerically zero");

    // Descending order; the solver's ascending output is reversed, which keeps
    // a deterministic order among equal eigenvalues.
    EigenBasis basis;
    basis.rank = rank;
    basis.values.set_size(rank);
    basis.vectors.set_size(r.n_rows, rank);
    for (arma::uword i = 0; i < rank; ++i)
    {
        basis.values(i) = values_asc(n - 1 - i);
        basis.vectors.col(i) = vectors_asc.col(n - 1 - i);
    }
    return basis;
}

GroupStatistics make_group_statistics(const AntennaArray &array, double azimuth, double spread,
                                      double tau2, arma::uword dominant_rank, int quad_nodes,
                                      double rank_tol)
{
    if (tau2 < 0.0 || tau2 > 1.0)
        throw config_error("make_group_statistics: tau^2 must lie in [0, 1]");

    GroupStatistics g;
    g.R = one_ring_covariance(array, azimuth, spread, quad_nodes);
    EigenBasis basis = eigendecompose(g.R, rank_tol);
    g.U = std::move(basis.vectors);
    g.lambda = std::move(basis.values);
    g.rank = basis.rank;
    g.azimuth = azimuth;
    g.spread = spread;
    g.tau2 = tau2;

    if (dominant_rank == 0 || dominant_rank > g.rank)
        throw config_error("make_group_statistics: dominant rank " + std::to_string(dominant_rank) +
                           " must satisfy 1 <= r^d <= rank (rank = " + std::to_string(g.rank) + ")");
    g.dominant_rank = dominant_rank;
    return g;
}

namespace {

// Fills a matrix with i.i.d. CN(0,1) entries, column-major, re before im.
void fill_complex_gaussian(arma::cx_mat &m, std::mt19937_64 &rng)
{
    std::normal_distribution<double> normal(0.0, 1.0);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (arma::uword c = 0; c < m.n_cols; ++c)
    {
        for (arma::uword r = 0; r < m.n_rows; ++r)
        {
            const double re = normal(rng);
            const double im = normal(rng);
            m(r, c) = arma::cx_double(re * inv_sqrt2, im * inv_sqrt2);
        }
    }
}

} // namespace

ChannelDraw sample_draw(const std::vector<GroupStatistics> &stats,
                        const std::vector<arma::uword> &users_per_group, std::uint64_t seed)
{
    if (stats.empty() || stats.size() != users_per_group.size())
        throw config_error("sample_draw: one user count per group is required");
    const arma::uword m = stats.front().R.n_rows;
    for (const auto &g : stats)
        if (g.R.n_rows != m)
            throw config_error("sample_draw: all groups must share the antenna count");

    ChannelDraw draw;
    draw.seed = seed;
    draw.h.reserve(stats.size());
    draw.h_hat.reserve(stats.size());

    std::mt19937_64 rng(seed);
    for (std::size_t g = 0; g < stats.size(); ++g)
    {
        const arma::uword rank = stats[g].rank;
        const arma::uword users = users_per_group[g];
        arma::cx_mat inner(rank, users), error(rank, users);
        fill_complex_gaussian(inner, rng);
        fill_complex_gaussian(error, rng);

        // U_g Lambda_g^{1/2}
        arma::cx_mat shaping = stats[g].U;
        for (arma::uword c = 0; c < rank; ++c)
            shaping.col(c) *= std::sqrt(stats[g].lambda(c));

        const double tau = std::sqrt(stats[g].tau2);
        const double rho = std::sqrt(1.0 - stats[g].tau2);
        draw.h.push_back(shaping * inner);
        if (stats[g].tau2 == 0.0)
            draw.h_hat.push_back(draw.h.back());
        else
            draw.h_hat.push_back(shaping * arma::cx_mat(rho * inner + tau * error));
    }
    return draw;
}

void export_covariance_csv(const arma::cx_mat &r, const std::string &path)
{
    std::FILE *f = std::fopen(path.c_str(), "w");
    if (f == nullptr)
        throw io_error("export_covariance_csv: cannot open " + path);
    for (arma::uword i = 0; i < r.n_rows; ++i)
    {
        for (arma::uword j = 0; j < r.n_cols; ++j)
        {
            if (j > 0)
                std::fputc(',', f);
            std::fprintf(f, "%.17g,%.17g", r(i, j).real(), r(i, j).imag());
        }
        std::fputc('\n', f);
    }
    std::fclose(f);
}

} // namespace hrs
