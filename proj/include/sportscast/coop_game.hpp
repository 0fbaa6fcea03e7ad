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
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

namespace sportscast {

/// Bitmask over club indices; bit i set means club i is in the coalition.
using Coalition = std::uint32_t;

inline constexpr std::size_t kMaxPermutationPlayers = 10;
inline constexpr std::size_t kMaxSubsetPlayers = 22;

inline std::vector<std::size_t> members(Coalition s)
{
  std::vector<std::size_t> out;
  for (std::size_t i = 0; s != 0; ++i, s >>= 1)
  {
    if (s & 1U)
    {
      out.push_back(i);
    }
  }
  return out;
}

/// TU game stored as a dense table indexed by coalition bitmask.
class CoalitionalGame
{
public:
  CoalitionalGame() = default;

  /// `values` must have 2^n entries with values[0] == 0.
  CoalitionalGame(std::size_t players, std::vector<double> values)
    : n_(players)
    , values_(std::move(values))
  {
    if (n_ > kMaxSubsetPlayers)
    {
      throw Error(ErrorCode::TooManyPlayers,
                  "at most " + std::to_string(kMaxSubsetPlayers) + " players are supported");
    }
    if (values_.size() != (std::size_t{1} << n_))
    {
      throw Error(ErrorCode::DimensionMismatch, "game table must have 2^n entries");
    }
    if (values_[0] != 0.0)
    {
      throw Error(ErrorCode::InvalidArgument, "the empty coalition must have value zero");
    }
  }

  /// Builds a game by evaluating `fn(Coalition)` on every non-empty coalition.
  template <typename Fn>
  static CoalitionalGame from_function(std::size_t players, Fn &&fn)
  {
    if (players > kMaxSubsetPlayers)
    {
      throw Error(ErrorCode::TooManyPlayers,
                  "at most " + std::to_string(kMaxSubsetPlayers) + " players are supported");
    }
    std::vector<double> values(std::size_t{1} << players, 0.0);
    for (std::size_t s = 1; s < values.size(); ++s)
    {
      values[s] = fn(static_cast<Coalition>(s));
    }
    return CoalitionalGame(players, std::move(values));
  }

  std::size_t players() const noexcept
  {
    return n_;
  }

  Coalition grand() const noexcept
  {
    return static_cast<Coalition>((std::size_t{1} << n_) - 1);
  }

  double value(Coalition s) const
  {
    return values_.at(s);
  }

  double grand_value() const
  {
    return values_.back();
  }

private:
  std::size_t         n_{0};
  std::vector<double> values_;
};

/// Total audience of the games played among the members of `s`.
inline double characteristic_value(AudienceMatrix const &a, Coalition s)
{
  double sum = 0.0;
  for (auto i : members(s))
  {
    for (auto j : members(s))
    {
      if (i != j)
      {
        sum += a(i, j);
      }
    }
  }
  return sum;
}

/// v_A over all coalitions, built incrementally by adding the highest member.
inline CoalitionalGame audience_game(AudienceMatrix const &a)
{
  std::size_t const n = a.size();
  if (n > kMaxSubsetPlayers)
  {
    throw Error(ErrorCode::TooManyPlayers,
                "at most " + std::to_string(kMaxSubsetPlayers) + " players are supported");
  }
  std::vector<double> values(std::size_t{1} << n, 0.0);
  for (std::size_t s = 1; s < values.size(); ++s)
  {
    std::size_t const top = static_cast<std::size_t>(std::bit_width(s)) - 1;
    std::size_t const rest = s & ~(std::size_t{1} << top);
    double            v = values[rest];
    for (std::size_t j = 0; j < top; ++j)
    {
      if (rest & (std::size_t{1} << j))
      {
        v += a(top, j) + a(j, top);
      }
    }
    values[s] = v;
  }
  return CoalitionalGame(n, std::move(values));
}

enum class ShapleyMethod
{
  Permutation,
  Subset,
};

namespace detail {

inline Allocation shapley_by_permutation(CoalitionalGame const &g)
{
  std::size_t const n = g.players();
  if (n > kMaxPermutationPlayers)
  {
    throw Error(ErrorCode::TooManyPlayers, "permutation Shapley supports at most " +
                                               std::to_string(kMaxPermutationPlayers) +
                                               " players");
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> sum(n, 0.0);
  double              count = 0.0;
  do
  {
    Coalition pre = 0;
    for (auto i : order)
    {
      Coalition const with = pre | (Coalition{1} << i);
      sum[i] += g.value(with) - g.value(pre);
      pre = with;
    }
    count += 1.0;
  } while (std::next_permutation(order.begin(), order.end()));

  for (auto &v : sum)
  {
    v /= count;
  }
  return Allocation(std::move(sum), g.grand_value(), Unit::Audience);
}

inline Allocation shapley_by_subset(CoalitionalGame const &g)
{
  std::size_t const n = g.players();
  // weight[s] = s! (n - s - 1)! / n!
  std::vector<double> weight(n, 0.0);
  for (std::size_t s = 0; s < n; ++s)
  {
    double w = 1.0 / static_cast<double>(n);
    // 1 / (n * C(n - 1, s))
    double binom = 1.0;
    for (std::size_t k = 1; k <= s; ++k)
    {
      binom = binom * static_cast<double>(n - 1 - s + k) / static_cast<double>(k);
    }
    weight[s] = w / binom;
  }
  std::vector<double> out(n, 0.0);
  std::size_t const   full = std::size_t{1} << n;
  for (std::size_t s = 0; s < full; ++s)
  {
    auto const size = static_cast<std::size_t>(std::popcount(s));
    if (size == n)
    {
      continue;
    }
    double const base = g.value(static_cast<Coalition>(s));
    double const w = weight[size];
    for (std::size_t i = 0; i < n; ++i)
    {
      if (!(s & (std::size_t{1} << i)))
      {
        out[i] += w * (g.value(static_cast<Coalition>(s | (std::size_t{1} << i))) - base);
      }
    }
  }
  return Allocation(std::move(out), g.grand_value(), Unit::Audience);
}

}  // namespace detail

inline Allocation shapley(CoalitionalGame const &g, ShapleyMethod method = ShapleyMethod::Subset)
{
  return method == ShapleyMethod::Permutation ? detail::shapley_by_permutation(g)
                                              : detail::shapley_by_subset(g);
}

inline Allocation egalitarian(CoalitionalGame const &g)
{
  double const v = g.grand_value();
  std::size_t  n = g.players();
  return Allocation(std::vector<double>(n, v / static_cast<double>(n)), v, Unit::Audience);
}

/// beta * Shapley + (1 - beta) * egalitarian, beta in [0, 1].
inline Allocation egalitarian_shapley(CoalitionalGame const &g, double beta,
                                      ShapleyMethod method = ShapleyMethod::Subset)
{
  if (!(beta >= 0.0 && beta <= 1.0))
  {
    throw Error(ErrorCode::BetaOutOfRange, "beta must lie in [0, 1]");
  }
  auto const          sh = shapley(g, method);
  auto const          ed = egalitarian(g);
  std::vector<double> out(g.players());
  for (std::size_t i = 0; i < out.size(); ++i)
  {
    out[i] = beta * sh[i] + (1.0 - beta) * ed[i];
  }
  return Allocation(std::move(out), g.grand_value(), Unit::Audience);
}

struct CoreCheck
{
  bool                     in_core{true};
  bool                     efficient{true};
  std::optional<Coalition> violated;  // first blocking coalition in numeric order
  double                   coalition_value{0.0};
  double                   coalition_payoff{0.0};
};

/// Core membership by exhaustive enumeration of all 2^n coalitions.
inline CoreCheck in_core(CoalitionalGame const &g, std::span<const double> x, double tol = 1e-9)
{
  std::size_t const n = g.players();
  if (x.size() != n)
  {
    throw Error(ErrorCode::DimensionMismatch, "allocation size differs from player count");
  }
  CoreCheck result;
  double    total = 0.0;
  for (double v : x)
  {
    total += v;
  }
  if (std::abs(total - g.grand_value()) > tol)
  {
    result.in_core = false;
    result.efficient = false;
    result.violated = g.grand();
    result.coalition_value = g.grand_value();
    result.coalition_payoff = total;
    return result;
  }
  std::size_t const full = std::size_t{1} << n;
  for (std::size_t s = 1; s + 1 < full; ++s)
  {
    double payoff = 0.0;
    for (std::size_t i = 0; i < n; ++i)
    {
      if (s & (std::size_t{1} << i))
      {
        payoff += x[i];
      }
    }
    double const v = g.value(static_cast<Coalition>(s));
    if (payoff < v - tol)
    {
      result.in_core = false;
      result.violated = static_cast<Coalition>(s);
      result.coalition_value = v;
      result.coalition_payoff = payoff;
      return result;
    }
  }
  return result;
}

inline CoreCheck in_core(CoalitionalGame const &g, Allocation const &x, double tol = 1e-9)
{
  return in_core(g, x.values(), tol);
}

}  // namespace sportscast
