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

#include "sportscast/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace sportscast {

/// Absolute tolerance used for equality of allocation sums, scaled by
/// magnitude as 1e-9 * max(1, |reference|).
inline constexpr double kSumTolerance = 1e-9;

inline double scaled_tolerance(double reference, double base = kSumTolerance) noexcept
{
  return base * std::max(1.0, std::abs(reference));
}

inline bool nearly_equal(double x, double y, double base = kSumTolerance) noexcept
{
  return std::abs(x - y) <= scaled_tolerance(std::max(std::abs(x), std::abs(y)), base);
}

struct ClubId
{
  std::size_t index{};
  std::string label;
};

inline std::vector<std::string> default_labels(std::size_t n)
{
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
  {
    labels.push_back(std::to_string(i + 1));
  }
  return labels;
}

namespace detail {

inline void check_labels(std::vector<std::string> const &labels, std::size_t n)
{
  if (labels.size() != n)
  {
    throw Error(ErrorCode::DimensionMismatch,
                "expected " + std::to_string(n) + " labels, got " + std::to_string(labels.size()));
  }
  std::unordered_set<std::string> seen;
  for (auto const &label : labels)
  {
    if (label.empty())
    {
      throw Error(ErrorCode::InvalidLabel, "club labels must be non-empty");
    }
    if (!seen.insert(label).second)
    {
      throw Error(ErrorCode::InvalidLabel, "duplicate club label '" + label + "'");
    }
  }
}

}  // namespace detail

/// Per-club audience totals alpha_i and the season total ||A||.
///
/// The total is stored as half the sum of the club totals so that
/// sum(alpha) == 2 * total holds bit-for-bit.
class AggregateAudience
{
public:
  AggregateAudience() = default;

  /// Builds aggregates directly from club totals (aggregate CSV input).
  static AggregateAudience from_club_totals(std::vector<double> totals,
                                            std::vector<std::string> labels = {})
  {
    if (labels.empty())
    {
      labels = default_labels(totals.size());
    }
    detail::check_labels(labels, totals.size());
    if (totals.size() < 3)
    {
      throw Error(ErrorCode::TooFewClubs, "at least 3 clubs are required");
    }
    for (std::size_t i = 0; i < totals.size(); ++i)
    {
      if (!(totals[i] >= 0.0) || !std::isfinite(totals[i]))
      {
        throw Error(ErrorCode::NegativeEntry, "audience of club '" + labels[i] + "' is negative");
      }
    }
    AggregateAudience agg;
    agg.club_ = std::move(totals);
    agg.labels_ = std::move(labels);
    double sum = 0.0;
    for (double a : agg.club_)
    {
      sum += a;
    }
    agg.total_ = sum / 2.0;
    return agg;
  }

  std::size_t size() const noexcept
  {
    return club_.size();
  }

  std::span<const double> club() const noexcept
  {
    return club_;
  }

  double club(std::size_t i) const
  {
    return club_.at(i);
  }

  double total() const noexcept
  {
    return total_;
  }

  double mean() const noexcept
  {
    return club_.empty() ? 0.0 : 2.0 * total_ / static_cast<double>(club_.size());
  }

  std::vector<std::string> const &labels() const noexcept
  {
    return labels_;
  }

private:
  std::vector<double>      club_;
  std::vector<std::string> labels_;
  double                   total_{0.0};
};

/// Complete audiences of a double round-robin season. Entry (i, j) is the
/// audience of the game hosted by club i against club j.
class AudienceMatrix
{
public:
  AudienceMatrix() = default;

  std::size_t size() const noexcept
  {
    return n_;
  }

  double operator()(std::size_t i, std::size_t j) const noexcept
  {
    return entries_[i * n_ + j];
  }

  double at(std::size_t i, std::size_t j) const
  {
    if (i >= n_ || j >= n_)
    {
      throw Error(ErrorCode::InvalidArgument, "matrix index out of range");
    }
    return (*this)(i, j);
  }

  /// Row-major entries.
  std::span<const double> entries() const noexcept
  {
    return entries_;
  }

  std::vector<std::string> const &labels() const noexcept
  {
    return labels_;
  }

  ClubId club(std::size_t i) const
  {
    return ClubId{i, labels_.at(i)};
  }

  std::size_t index_of(std::string const &label) const
  {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end())
    {
      throw Error(ErrorCode::InvalidLabel, "unknown club '" + label + "'");
    }
    return static_cast<std::size_t>(it - labels_.begin());
  }

  std::vector<std::vector<double>> to_grid() const
  {
    std::vector<std::vector<double>> grid(n_, std::vector<double>(n_));
    for (std::size_t i = 0; i < n_; ++i)
    {
      for (std::size_t j = 0; j < n_; ++j)
      {
        grid[i][j] = (*this)(i, j);
      }
    }
    return grid;
  }

  friend AudienceMatrix validate_matrix(std::vector<std::vector<double>> const &,
                                        std::vector<std::string>);

private:
  std::size_t              n_{0};
  std::vector<double>      entries_;
  std::vector<std::string> labels_;
};

/// Validates a raw square grid. Labels default to "1".."n".
inline AudienceMatrix validate_matrix(std::vector<std::vector<double>> const &grid,
                                      std::vector<std::string>                labels = {})
{
  std::size_t const n = grid.size();
  for (auto const &row : grid)
  {
    if (row.size() != n)
    {
      throw Error(ErrorCode::NonSquare, "audience grid must be square");
    }
  }
  if (n < 3)
  {
    throw Error(ErrorCode::TooFewClubs, "at least 3 clubs are required, got " + std::to_string(n));
  }
  if (labels.empty())
  {
    labels = default_labels(n);
  }
  detail::check_labels(labels, n);

  AudienceMatrix m;
  m.n_ = n;
  m.labels_ = std::move(labels);
  m.entries_.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i)
  {
    for (std::size_t j = 0; j < n; ++j)
    {
      double const a = grid[i][j];
      if (!std::isfinite(a))
      {
        throw Error(ErrorCode::ParseError, "non-finite audience entry");
      }
      if (i == j && a != 0.0)
      {
        throw Error(ErrorCode::NonZeroDiagonal,
                    "diagonal entry " + std::to_string(i + 1) + " must be zero");
      }
      if (a < 0.0)
      {
        throw Error(ErrorCode::NegativeEntry, "entry (" + std::to_string(i + 1) + "," +
                                                  std::to_string(j + 1) + ") is negative");
      }
      m.entries_.push_back(a);
    }
  }
  return m;
}

inline AggregateAudience aggregates(AudienceMatrix const &a)
{
  std::size_t const   n = a.size();
  std::vector<double> alpha(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
  {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j)
    {
      s += a(i, j) + a(j, i);
    }
    alpha[i] = s;
  }
  return AggregateAudience::from_club_totals(std::move(alpha), a.labels());
}

inline AudienceMatrix operator+(AudienceMatrix const &lhs, AudienceMatrix const &rhs)
{
  if (lhs.size() != rhs.size())
  {
    throw Error(ErrorCode::DimensionMismatch, "matrices differ in size");
  }
  auto grid = lhs.to_grid();
  for (std::size_t i = 0; i < lhs.size(); ++i)
  {
    for (std::size_t j = 0; j < lhs.size(); ++j)
    {
      grid[i][j] += rhs(i, j);
    }
  }
  return validate_matrix(grid, lhs.labels());
}

inline AudienceMatrix scale(AudienceMatrix const &a, double factor)
{
  if (!(factor >= 0.0))
  {
    throw Error(ErrorCode::InvalidArgument, "scale factor must be non-negative");
  }
  auto grid = a.to_grid();
  for (auto &row : grid)
  {
    for (auto &x : row)
    {
      x *= factor;
    }
  }
  return validate_matrix(grid, a.labels());
}

/// Relabels clubs: club i of `a` becomes club perm[i] of the result, so
/// result(perm[i], perm[j]) == a(i, j).
inline AudienceMatrix permute(AudienceMatrix const &a, std::span<const std::size_t> perm)
{
  std::size_t const n = a.size();
  if (perm.size() != n)
  {
    throw Error(ErrorCode::InvalidPermutation, "permutation size differs from club count");
  }
  std::vector<bool> hit(n, false);
  for (auto p : perm)
  {
    if (p >= n || hit[p])
    {
      throw Error(ErrorCode::InvalidPermutation, "not a bijection on club indices");
    }
    hit[p] = true;
  }
  std::vector<std::vector<double>> grid(n, std::vector<double>(n, 0.0));
  std::vector<std::string>         labels(n);
  for (std::size_t i = 0; i < n; ++i)
  {
    labels[perm[i]] = a.labels()[i];
    for (std::size_t j = 0; j < n; ++j)
    {
      grid[perm[i]][perm[j]] = a(i, j);
    }
  }
  return validate_matrix(grid, std::move(labels));
}

enum class Unit
{
  Audience,
  Money,
};

constexpr std::string_view to_string(Unit u) noexcept
{
  return u == Unit::Audience ? "audience" : "money";
}

/// Per-club payoff vector together with the endowment it exhausts.
class Allocation
{
public:
  Allocation() = default;

  Allocation(std::vector<double> values, double endowment, Unit unit)
    : values_(std::move(values))
    , endowment_(endowment)
    , unit_(unit)
  {
    double const sum = std::accumulate(values_.begin(), values_.end(), 0.0);
    if (std::abs(sum - endowment_) > scaled_tolerance(endowment_))
    {
      throw Error(ErrorCode::InvalidArgument,
                  "allocation sums to " + std::to_string(sum) + ", not the endowment " +
                      std::to_string(endowment_));
    }
  }

  /// Allocation whose endowment is its own sum.
  static Allocation exhausting(std::vector<double> values, Unit unit = Unit::Audience)
  {
    double const sum = std::accumulate(values.begin(), values.end(), 0.0);
    return Allocation(std::move(values), sum, unit);
  }

  std::size_t size() const noexcept
  {
    return values_.size();
  }

  double operator[](std::size_t i) const noexcept
  {
    return values_[i];
  }

  std::span<const double> values() const noexcept
  {
    return values_;
  }

  double endowment() const noexcept
  {
    return endowment_;
  }

  Unit unit() const noexcept
  {
    return unit_;
  }

  bool has_negative() const noexcept
  {
    return std::any_of(values_.begin(), values_.end(), [](double v) { return v < 0.0; });
  }

private:
  std::vector<double> values_;
  double              endowment_{0.0};
  Unit                unit_{Unit::Audience};
};

}  // namespace sportscast
