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

#include <cstdint>
#include <string>
#include <vector>

#include <armadillo>

#include "hrs/antenna.hpp"

namespace hrs {

/// One-ring spatial covariance for a user at the given azimuth with angular
/// spread `spread` (both radians): entry (i,j) is the average over arrival
/// angles a in [azimuth - spread, azimuth + spread] of
/// exp(-j*2*pi*[cos a, sin a].(r_i - r_j)), integrated by Gauss-Legendre
/// quadrature with `quad_nodes` nodes. Result is Hermitian with unit
/// diagonal. Throws config_error for spread <= 0.
arma::cx_mat one_ring_covariance(const AntennaArray &array, double azimuth, double spread,
                                 int quad_nodes = 200);

/// Rank-1 steering limit of the one-ring model for vanishing spread:
/// v(azimuth) v(azimuth)^H with v_i = exp(-j*2*pi*[cos,sin](azimuth).r_i).
/// Reference path for small-spread covariance checks.
arma::cx_mat steering_covariance(const AntennaArray &array, double azimuth);

/// Truncated Hermitian eigendecomposition.
struct EigenBasis
{
    arma::cx_mat vectors; // M x rank, orthonormal columns
    arma::vec values;     // length rank, descending
    arma::uword rank = 0; // eigenvalues above rank_tol * lambda_max
};

/// Eigendecomposition of a Hermitian PSD matrix, truncated to the numerical
/// rank (eigenvalues above rank_tol relative to the largest). Eigenvalues
/// are sorted descending; ties keep the solver's original order. Throws
/// invalid_input_error when the input is not Hermitian (asymmetry beyond
/// 1e-8).
EigenBasis eigendecompose(const arma::cx_mat &r, double rank_tol = 1e-6);

/// Long-term statistics of one user group.
struct GroupStatistics
{
    arma::cx_mat R;              // M x M spatial covariance
    arma::cx_mat U;              // M x rank eigenvectors
    arma::vec lambda;            // rank eigenvalues, descending
    arma::uword rank = 0;        // numerical rank of R
    arma::uword dominant_rank = 0; // r^d <= rank, size of the dominant subspace
    double azimuth = 0.0;        // radians
    double spread = 0.0;         // radians
    double tau2 = 0.0;           // CSIT error fraction in [0, 1]

    /// Dominant eigenvectors (first dominant_rank columns of U).
    arma::cx_mat dominant() const { return U.cols(0, dominant_rank - 1); }
};

/// Builds GroupStatistics from the one-ring model. Validates
/// dominant_rank <= rank and tau2 in [0, 1].
GroupStatistics make_group_statistics(const AntennaArray &array, double azimuth, double spread,
                                      double tau2, arma::uword dominant_rank,
                                      int quad_nodes = 200, double rank_tol = 1e-6);

/// One Monte Carlo channel realization for all groups.
struct ChannelDraw
{
    std::vector<arma::cx_mat> h;     // true channel H_g, M x K_g
    std::vector<arma::cx_mat> h_hat; // transmitter-side estimate, M x K_g
    std::uint64_t seed = 0;          // stream seed this draw was generated from
};

/// Samples the Karhunen-Loeve channels of all groups: H_g = U_g L_g^{1/2} G_g
/// and the estimate built from sqrt(1-tau^2) G_g + tau Z_g with independent
/// Z_g. Deterministic given the seed; groups are filled in order, inner
/// factors G_g before Z_g, column-major, real part before imaginary part.
ChannelDraw sample_draw(const std::vector<GroupStatistics> &stats,
                        const std::vector<arma::uword> &users_per_group, std::uint64_t seed);

/// Writes a complex matrix as CSV, row-major, each cell "re,im".
void export_covariance_csv(const arma::cx_mat &r, const std::string &path);

} // namespace hrs
