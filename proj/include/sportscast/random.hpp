//------------------------------------------------------------------------------
//
//   Copyright 2026 The sportscast Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------

#pragma once

#include "sportscast/audience.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

namespace sportscast {

/// Seeded generators for property suites and the CLI's random axiom runs.
class MatrixSampler
{
public:
  explicit MatrixSampler(std::uint64_t seed, double max_entry = 10.0)
    : rng_(seed)
    , entry_(0.0, max_entry)
  {}

  std::size_t club_count(std::size_t lo, std::size_t hi)
  {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
  }

  double uniform(double lo, double hi)
  {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }

  std::vector<std::vector<double>> grid(std::size_t n)
  {
    std::vector<std::vector<double>> g(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
    {
      for (std::size_t j = 0; j < n; ++j)
      {
        if (i != j)
        {
          g[i][j] = entry_(rng_);
        }
      }
    }
    return g;
  }

  AudienceMatrix matrix(std::size_t n)
  {
    return validate_matrix(grid(n));
  }

  /// Random matrix in which clubs `i` and `j` face every third club with
  /// identical home and away audiences.
  AudienceMatrix matrix_with_twins(std::size_t n, std::size_t i, std::size_t j)
  {
    auto g = grid(n);
    for (std::size_t k = 0; k < n; ++k)
    {
      if (k != i && k != j)
      {
        g[j][k] = g[i][k];
        g[k][j] = g[k][i];
      }
    }
    return validate_matrix(g);
  }

  /// Random matrix in which club `z` has no audience at all.
  AudienceMatrix matrix_with_null_club(std::size_t n, std::size_t z)
  {
    auto g = grid(n);
    for (std::size_t k = 0; k < n; ++k)
    {
      g[z][k] = 0.0;
      g[k][z] = 0.0;
    }
    return validate_matrix(g);
  }

  /// Random matrix in which only the games of club `e` have positive audience.
  AudienceMatrix matrix_with_essential_club(std::size_t n, std::size_t e)
  {
    auto g = grid(n);
    for (std::size_t i = 0; i < n; ++i)
    {
      for (std::size_t j = 0; j < n; ++j)
      {
        if (i != e && j != e)
        {
          g[i][j] = 0.0;
        }
      }
    }
    return validate_matrix(g);
  }

  std::vector<std::size_t> permutation(std::size_t n)
  {
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng_);
    return p;
  }

  std::mt19937_64 &engine() noexcept
  {
    return rng_;
  }

private:
  std::mt19937_64                        rng_;
  std::uniform_real_distribution<double> entry_;
};

}  // namespace sportscast
