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
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hrs {

/// Invalid scenario / operation configuration (bad dimensions, ranges, keys).
class config_error : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Structurally invalid numeric input (e.g. a non-Hermitian covariance).
class invalid_input_error : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// A channel realization degenerated below numeric usability.
class degenerate_channel_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// An iterative solver did not reach its tolerance.
class convergence_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A large-system expression was evaluated outside its validity region.
class instability_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// File read/write failure.
class io_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// splitmix64 mixer (Steele, Lea, Flood 2014). Used to derive stream seeds.
std::uint64_t splitmix64(std::uint64_t x);

/// Seed of the RNG stream for one Monte Carlo draw. Draws form splittable
/// streams: the result depends only on (base_seed, draw_index), never on
/// execution order or thread count.
std::uint64_t draw_seed(std::uint64_t base_seed, std::uint64_t draw_index);

/// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double> &nodes, std::vector<double> &weights);

/// Runs fn(0..n-1) on up to `threads` worker threads (static block partition).
/// Callers that need determinism must write results indexed by i.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)> &fn);

} // namespace hrs
