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
#include "sportscast/rules.hpp"

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace sportscast {

/// Splits every game audience into generic sport fans, club fans and a
/// game-specific remainder: a_ij = generic + club_i + club_j + joint_ij.
struct FanAssignment
{
  double              generic{0.0};
  std::vector<double> club;   // one entry per club
  std::vector<double> joint;  // n x n row-major; diagonal unused and zero
};

/// Least-squares fan model with club `reference` pinned to zero club fans.
struct FanDecomposition
{
  std::size_t   reference{0};
  FanAssignment fit;
  double        objective{0.0};  // sum of squared residuals
};

/// Residuals a_ij - generic - club_i - club_j for the given parameters.
inline FanAssignment implied_assignment(AudienceMatrix const &a, double generic,
                                        std::vector<double> club)
{
  std::size_t const n = a.size();
  if (club.size() != n)
  {
    throw Error(ErrorCode::DimensionMismatch, "club fan vector size differs from club count");
  }
  FanAssignment out{generic, std::move(club), std::vector<double>(n * n, 0.0)};
  for (std::size_t i = 0; i < n; ++i)
  {
    for (std::size_t j = 0; j < n; ++j)
    {
      if (i != j)
      {
        out.joint[i * n + j] = a(i, j) - generic - out.club[i] - out.club[j];
      }
    }
  }
  return out;
}

/// Sum of squared residuals over all ordered pairs i != j.
inline double fan_objective(AudienceMatrix const &a, double generic, std::span<const double> club)
{
  std::size_t const n = a.size();
  double            sum = 0.0;
  for (std::size_t i = 0; i < n; ++i)
  {
    for (std::size_t j = 0; j < n; ++j)
    {
      if (i != j)
      {
        double const e = a(i, j) - generic - club[i] - club[j];
        sum += e * e;
      }
    }
  }
  return sum;
}

/// Gradient of fan_objective with respect to (generic, club_0..club_{n-1}).
inline std::vector<double> fan_objective_gradient(AudienceMatrix const &a, double generic,
                                                  std::span<const double> club)
{
  std::size_t const   n = a.size();
  std::vector<double> grad(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i)
  {
    for (std::size_t j = 0; j < n; ++j)
    {
      if (i != j)
      {
        double const e = a(i, j) - generic - club[i] - club[j];
        grad[0] -= 2.0 * e;
        grad[1 + i] -= 2.0 * e;
        grad[1 + j] -= 2.0 * e;
      }
    }
  }
  return grad;
}

namespace detail {

/// Solves the symmetric positive definite system m x = rhs in place by
/// Cholesky factorisation. `m` is row-major dim x dim.
inline std::vector<double> cholesky_solve(std::vector<double> m, std::vector<double> rhs,
                                          std::size_t dim)
{
  double scale = 0.0;
  for (std::size_t i = 0; i < dim; ++i)
  {
    scale = std::max(scale, std::abs(m[i * dim + i]));
  }
  double const pivot_floor = 1e-12 * std::max(scale, 1.0);

  for (std::size_t j = 0; j < dim; ++j)
  {
    double d = m[j * dim + j];
    for (std::size_t k = 0; k < j; ++k)
    {
      d -= m[j * dim + k] * m[j * dim + k];
    }
    if (!(d > pivot_floor))
    {
      throw Error(ErrorCode::SingularSystem, "normal equations are rank deficient");
    }
    double const l = std::sqrt(d);
    m[j * dim + j] = l;
    for (std::size_t i = j + 1; i < dim; ++i)
    {
      double s = m[i * dim + j];
      for (std::size_t k = 0; k < j; ++k)
      {
        s -= m[i * dim + k] * m[j * dim + k];
      }
      m[i * dim + j] = s / l;
    }
  }
  // L y = rhs
  for (std::size_t i = 0; i < dim; ++i)
  {
    double s = rhs[i];
    for (std::size_t k = 0; k < i; ++k)
    {
      s -= m[i * dim + k] * rhs[k];
    }
    rhs[i] = s / m[i * dim + i];
  }
  // L^T x = y
  for (std::size_t i = dim; i-- > 0;)
  {
    double s = rhs[i];
    for (std::size_t k = i + 1; k < dim; ++k)
    {
      s -= m[k * dim + i] * rhs[k];
    }
    rhs[i] = s / m[i * dim + i];
  }
  return rhs;
}

}  // namespace detail

/// Least-squares fan decomposition with the reference club's fans fixed at
/// zero. Both legs (i, j) and (j, i) of every pairing are separate residuals.
inline FanDecomposition fit_fan_model(AudienceMatrix const &a, std::size_t reference)
{
  std::size_t const n = a.size();
  if (n < 3)
  {
    throw Error(ErrorCode::TooFewClubs, "fan model needs at least 3 clubs");
  }
  if (reference >= n)
  {
    throw Error(ErrorCode::InvalidArgument, "reference club out of range");
  }

  // Unknown 0 is the generic term; unknown 1 + r is the r-th non-reference club.
  std::size_t const        dim = n;
  std::vector<std::size_t> column(n, 0);
  for (std::size_t i = 0, next = 1; i < n; ++i)
  {
    column[i] = (i == reference) ? 0 : next++;
  }

  std::vector<double>      normal(dim * dim, 0.0);
  std::vector<double>      rhs(dim, 0.0);
  std::vector<std::size_t> active;
  active.reserve(3);
  for (std::size_t i = 0; i < n; ++i)
  {
    for (std::size_t j = 0; j < n; ++j)
    {
      if (i == j)
      {
        continue;
      }
      active.assign({0});
      if (i != reference)
      {
        active.push_back(column[i]);
      }
      if (j != reference)
      {
        active.push_back(column[j]);
      }
      for (auto r : active)
      {
        rhs[r] += a(i, j);
        for (auto c : active)
        {
          normal[r * dim + c] += 1.0;
        }
      }
    }
  }

  auto const solution = detail::cholesky_solve(std::move(normal), std::move(rhs), dim);

  std::vector<double> club(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
  {
    if (i != reference)
    {
      club[i] = solution[column[i]];
    }
  }
  FanDecomposition out;
  out.reference = reference;
  out.fit = implied_assignment(a, solution[0], std::move(club));
  out.objective = fan_objective(a, out.fit.generic, out.fit.club);
  return out;
}

/// Regression rule: per-club share of generic fans, own club fans over all
/// 2(n - 1) games played, and half of each joint residual.
inline Allocation regression_allocation(AudienceMatrix const &a, FanDecomposition const &d)
{
  std::size_t const   n = a.size();
  double const        nd = static_cast<double>(n);
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
  {
    double v = (nd - 1.0) * d.fit.generic;
    if (i != d.reference)
    {
      v += 2.0 * (nd - 1.0) * d.fit.club[i];
    }
    for (std::size_t j = 0; j < n; ++j)
    {
      if (j != i)
      {
        v += (d.fit.joint[i * n + j] + d.fit.joint[j * n + i]) / 2.0;
      }
    }
    out[i] = v;
  }
  double const total = aggregates(a).total();
  return Allocation(std::move(out), total, Unit::Audience);
}

inline Allocation regression_allocation(AudienceMatrix const &a, std::size_t reference)
{
  return regression_allocation(a, fit_fan_model(a, reference));
}

/// Allocates every game by the three fan procedures: the generic part is
/// shared by all n clubs, club fans go to their club, and the joint part is
/// halved between the two participants.
inline Allocation allocate_from_decomposition(AudienceMatrix const &a, FanAssignment const &d)
{
  std::size_t const n = a.size();
  if (d.club.size() != n || d.joint.size() != n * n)
  {
    throw Error(ErrorCode::DimensionMismatch, "decomposition does not match the matrix size");
  }
  for (std::size_t i = 0; i < n; ++i)
  {
    for (std::size_t j = 0; j < n; ++j)
    {
      if (i == j)
      {
        continue;
      }
      double const rebuilt = d.generic + d.club[i] + d.club[j] + d.joint[i * n + j];
      if (std::abs(rebuilt - a(i, j)) > scaled_tolerance(a(i, j)))
      {
        throw Error(ErrorCode::InconsistentDecomposition,
                    "decomposition does not reproduce entry (" + std::to_string(i + 1) + "," +
                        std::to_string(j + 1) + ")");
      }
    }
  }

  double const        nd = static_cast<double>(n);
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
  {
    for (std::size_t j = 0; j < n; ++j)
    {
      if (i == j)
      {
        continue;
      }
      double const generic_share = d.generic / nd;
      for (auto &v : out)
      {
        v += generic_share;
      }
      out[i] += d.club[i] + d.joint[i * n + j] / 2.0;
      out[j] += d.club[j] + d.joint[i * n + j] / 2.0;
    }
  }
  return Allocation(std::move(out), aggregates(a).total(), Unit::Audience);
}

}  // namespace sportscast
