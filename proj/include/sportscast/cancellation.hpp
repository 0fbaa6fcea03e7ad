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

#include <optional>
#include <string_view>
#include <vector>

namespace sportscast {

/// Audience matrix of a season in which some games were cancelled. Missing
/// entries are empty optionals; the diagonal is always present and zero.
class PartialAudienceMatrix
{
public:
  using Cell = std::optional<double>;

  PartialAudienceMatrix() = default;

  /// Diagonal cells may be given as missing or zero; both mean 0.
  static PartialAudienceMatrix from_grid(std::vector<std::vector<Cell>> const &grid,
                                         std::vector<std::string>            labels = {})
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
      throw Error(ErrorCode::TooFewClubs,
                  "at least 3 clubs are required, got " + std::to_string(n));
    }
    if (labels.empty())
    {
      labels = default_labels(n);
    }
    detail::check_labels(labels, n);

    PartialAudienceMatrix m;
    m.n_ = n;
    m.labels_ = std::move(labels);
    m.cells_.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i)
    {
      for (std::size_t j = 0; j < n; ++j)
      {
        Cell c = grid[i][j];
        if (i == j)
        {
          if (c && *c != 0.0)
          {
            throw Error(ErrorCode::NonZeroDiagonal,
                        "diagonal entry " + std::to_string(i + 1) + " must be zero");
          }
          c = 0.0;
        }
        else if (c && (!(*c >= 0.0) || !std::isfinite(*c)))
        {
          throw Error(ErrorCode::NegativeEntry, "entry (" + std::to_string(i + 1) + "," +
                                                    std::to_string(j + 1) + ") is negative");
        }
        m.cells_.push_back(c);
      }
    }
    return m;
  }

  static PartialAudienceMatrix from_complete(AudienceMatrix const &a)
  {
    std::vector<std::vector<Cell>> grid(a.size(), std::vector<Cell>(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
    {
      for (std::size_t j = 0; j < a.size(); ++j)
      {
        grid[i][j] = a(i, j);
      }
    }
    return from_grid(grid, a.labels());
  }

  std::size_t size() const noexcept
  {
    return n_;
  }

  Cell const &operator()(std::size_t i, std::size_t j) const noexcept
  {
    return cells_[i * n_ + j];
  }

  bool missing(std::size_t i, std::size_t j) const noexcept
  {
    return !(*this)(i, j).has_value();
  }

  std::size_t missing_count() const noexcept
  {
    std::size_t count = 0;
    for (auto const &c : cells_)
    {
      count += c ? 0 : 1;
    }
    return count;
  }

  std::vector<std::string> const &labels() const noexcept
  {
    return labels_;
  }

private:
  std::size_t              n_{0};
  std::vector<Cell>        cells_;
  std::vector<std::string> labels_;
};

enum class ExtensionOperator
{
  Zero,
  Leg,
};

constexpr std::string_view to_string(ExtensionOperator op) noexcept
{
  return op == ExtensionOperator::Zero ? "zero" : "leg";
}

/// Cancelled games get zero audience.
inline AudienceMatrix extend_zero(PartialAudienceMatrix const &p)
{
  std::size_t const                n = p.size();
  std::vector<std::vector<double>> grid(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
  {
    for (std::size_t j = 0; j < n; ++j)
    {
      grid[i][j] = p(i, j).value_or(0.0);
    }
  }
  return validate_matrix(grid, p.labels());
}

/// Cancelled games take the audience of the reverse fixture, or zero when
/// both legs were cancelled.
inline AudienceMatrix extend_leg(PartialAudienceMatrix const &p)
{
  std::size_t const                n = p.size();
  std::vector<std::vector<double>> grid(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
  {
    for (std::size_t j = 0; j < n; ++j)
    {
      grid[i][j] = p(i, j) ? *p(i, j) : p(j, i).value_or(0.0);
    }
  }
  return validate_matrix(grid, p.labels());
}

inline AudienceMatrix extend(PartialAudienceMatrix const &p, ExtensionOperator op)
{
  return op == ExtensionOperator::Zero ? extend_zero(p) : extend_leg(p);
}

/// Applies `rule` to the extended matrix and divides `endowment` in
/// proportion to the resulting audience shares. A season whose extended
/// total audience is zero splits the endowment equally.
inline Allocation extended_allocate(PartialAudienceMatrix const &p, double endowment,
                                    ExtensionOperator op, RuleSpec const &rule)
{
  auto const        a = extend(p, op);
  std::size_t const n = a.size();
  auto const        audience = apply_rule(rule, a);
  if (audience.endowment() == 0.0)
  {
    return Allocation(std::vector<double>(n, endowment / static_cast<double>(n)), endowment,
                      Unit::Money);
  }
  std::vector<double> out;
  out.reserve(n);
  for (double v : audience.values())
  {
    out.push_back(endowment * v / audience.endowment());
  }
  return Allocation(std::move(out), endowment, Unit::Money);
}

}  // namespace sportscast
