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

#include <armadillo>

namespace hrs {

/// Planar antenna array. Positions are 2-D coordinates in wavelength units
/// (the wavelength is normalized to 1 throughout the library).
struct AntennaArray
{
    arma::mat positions; // size M x 2

    arma::uword size() const { return positions.n_rows; }
};

/// Radius of a uniform circular array with adjacent-element spacing of half
/// a wavelength: 0.5 / sqrt((1 - cos(2*pi/M))^2 + sin(2*pi/M)^2).
double uca_radius(arma::uword m);

/// Uniform circular array of m isotropic elements, element i at angle
/// 2*pi*i/m on the circle of radius uca_radius(m). Minimum pairwise
/// distance is half a wavelength. Throws config_error for m < 2.
AntennaArray build_uca(arma::uword m);

} // namespace hrs
