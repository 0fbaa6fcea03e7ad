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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <vector>

namespace sportscast {

/// How many clubs gain, lose, or are indifferent when moving up the family.
struct PivotalCount
{
  std::size_t above{0};
  std::size_t below{0};
  std::size_t at{0};
};

struct VotingOutcome
{
  enum class Kind
  {
    UniqueWinner,
    AllWinners,      // every candidate is a majority winner
    SeveralWinners,  // more than one, but not all, candidates are unbeaten
    Cycle,
  };

  Kind kind{Kind::UniqueWinner};

  // Compromise-family voting.
  std::vector<double> winning_lambdas;  // unique winner, or the range endpoints for AllWinners
  PivotalCount        pivotal;

  // Tournaments over a finite rule list. Indices refer to the input list.
  std::vector<std::size_t>              winners;
  std::vector<std::size_t>              cycle;  // r0 beats r1 beats ... beats r0
  std::vector<std::vector<std::size_t>> prefer;  // prefer[r][s]: clubs strictly better under r
};

constexpr std::string_view to_string(VotingOutcome::Kind kind) noexcept
{
  switch (kind)
  {
  case VotingOutcome::Kind::UniqueWinner:
    return "UniqueWinner";
  case VotingOutcome::Kind::AllWinners:
    return "AllWinners";
  case VotingOutcome::Kind::SeveralWinners:
    return "SeveralWinners";
  case VotingOutcome::Kind::Cycle:
    return "Cycle";
  }
  return "Unknown";
}

/// Clubs above, below and at the mean audience. Clubs within 1e-12
/// (relative) of the mean are indifferent between all compromise rules.
inline PivotalCount pivotal_count(AggregateAudience const &agg)
{
  double const mean = agg.mean();
  double const tol = 1e-12 * std::max(std::abs(mean), 1.0);
  PivotalCount count;
  for (double a : agg.club())
  {
    if (a > mean + tol)
    {
      ++count.above;
    }
    else if (a < mean - tol)
    {
      ++count.below;
    }
    else
    {
      ++count.at;
    }
  }
  return count;
}

/// Majority winner within {UC^lambda : lambda in [lo, hi]}. Club i's payoff
/// moves with slope proportional to alpha_i - mean(alpha), so the side of
/// the mean holding a strict majority picks its preferred endpoint.
inline VotingOutcome majority_winner_compromise(AggregateAudience const &agg, double lo, double hi)
{
  if (!(lo <= hi) || !std::isfinite(lo) || !std::isfinite(hi))
  {
    throw Error(ErrorCode::InvalidRange, "lambda range must satisfy lo <= hi");
  }
  if (agg.size() < 3)
  {
    throw Error(ErrorCode::TooFewClubs, "compromise rules need at least 3 clubs");
  }
  VotingOutcome out;
  out.pivotal = pivotal_count(agg);
  std::size_t const n = agg.size();
  if (lo == hi)
  {
    out.kind = VotingOutcome::Kind::UniqueWinner;
    out.winning_lambdas = {lo};
  }
  else if (2 * out.pivotal.below > n)
  {
    out.kind = VotingOutcome::Kind::UniqueWinner;
    out.winning_lambdas = {lo};
  }
  else if (2 * out.pivotal.above > n)
  {
    out.kind = VotingOutcome::Kind::UniqueWinner;
    out.winning_lambdas = {hi};
  }
  else
  {
    out.kind = VotingOutcome::Kind::AllWinners;
    out.winning_lambdas = {lo, hi};
  }
  return out;
}

inline VotingOutcome majority_winner_compromise(AudienceMatrix const &a, double lo, double hi)
{
  return majority_winner_compromise(aggregates(a), lo, hi);
}

namespace detail {

inline std::vector<std::vector<std::size_t>>
preference_counts(std::vector<Allocation> const &allocs)
{
  std::size_t const                     r = allocs.size();
  std::vector<std::vector<std::size_t>> prefer(r, std::vector<std::size_t>(r, 0));
  for (std::size_t p = 0; p < r; ++p)
  {
    for (std::size_t q = 0; q < r; ++q)
    {
      if (p == q)
      {
        continue;
      }
      for (std::size_t i = 0; i < allocs[p].size(); ++i)
      {
        double const x = allocs[p][i];
        double const y = allocs[q][i];
        if (x > y + scaled_tolerance(std::max(std::abs(x), std::abs(y))))
        {
          ++prefer[p][q];
        }
      }
    }
  }
  return prefer;
}

inline VotingOutcome tournament(std::vector<Allocation> const &allocs)
{
  if (allocs.empty())
  {
    throw Error(ErrorCode::InvalidArgument, "a tournament needs at least one rule");
  }
  std::size_t const r = allocs.size();
  std::size_t const n = allocs.front().size();
  VotingOutcome     out;
  out.prefer = preference_counts(allocs);

  auto beats = [&](std::size_t p, std::size_t q) { return 2 * out.prefer[p][q] > n; };

  for (std::size_t q = 0; q < r; ++q)
  {
    bool beaten = false;
    for (std::size_t p = 0; p < r && !beaten; ++p)
    {
      beaten = p != q && beats(p, q);
    }
    if (!beaten)
    {
      out.winners.push_back(q);
    }
  }

  if (out.winners.size() == 1)
  {
    out.kind = VotingOutcome::Kind::UniqueWinner;
  }
  else if (out.winners.size() == r)
  {
    out.kind = VotingOutcome::Kind::AllWinners;
  }
  else if (!out.winners.empty())
  {
    out.kind = VotingOutcome::Kind::SeveralWinners;
  }
  else
  {
    // Every rule is beaten by some rule: walk "beaten by" links until one repeats.
    out.kind = VotingOutcome::Kind::Cycle;
    std::vector<std::size_t> path;
    std::vector<int>         pos(r, -1);
    std::size_t              cur = 0;
    while (pos[cur] < 0)
    {
      pos[cur] = static_cast<int>(path.size());
      path.push_back(cur);
      std::size_t next = 0;
      while (!(next != cur && beats(next, cur)))
      {
        ++next;
      }
      cur = next;
    }
    // path[pos[cur]..] lists rules each beaten by its successor; reverse for beat order.
    std::vector<std::size_t> loop(path.begin() + pos[cur], path.end());
    std::reverse(loop.begin(), loop.end());
    out.cycle = std::move(loop);
  }
  return out;
}

}  // namespace detail

/// Pairwise majority tournament: R beats R' when a strict majority of clubs
/// receive strictly more under R. Winners are the rules beaten by none.
inline VotingOutcome condorcet_tournament(AudienceMatrix const &a, std::vector<RuleSpec> const &rules)
{
  std::vector<Allocation> allocs;
  allocs.reserve(rules.size());
  for (auto const &rule : rules)
  {
    allocs.push_back(apply_rule(rule, a));
  }
  return detail::tournament(allocs);
}

inline VotingOutcome condorcet_tournament(AggregateAudience const &agg,
                                          std::vector<RuleSpec> const &rules)
{
  std::vector<Allocation> allocs;
  allocs.reserve(rules.size());
  for (auto const &rule : rules)
  {
    allocs.push_back(apply_rule(rule, agg));
  }
  return detail::tournament(allocs);
}

struct SingleCrossing
{
  bool                     holds{true};
  std::vector<std::size_t> order;        // clubs sorted by alpha ascending, ties by index
  std::vector<double>      differences;  // UC^l2 - UC^l1 in that order
  std::optional<std::size_t> crossing;   // first position with a positive difference
};

/// Checks that, sorted by audience, UC^l2 - UC^l1 switches sign at most once,
/// from non-positive to non-negative.
inline SingleCrossing single_crossing_check(AggregateAudience const &agg, double l1, double l2)
{
  if (!(l1 < l2))
  {
    throw Error(ErrorCode::InvalidRange, "single-crossing check needs l1 < l2");
  }
  auto const     lo = compromise(agg, l1);
  auto const     hi = compromise(agg, l2);
  SingleCrossing out;
  out.order.resize(agg.size());
  std::iota(out.order.begin(), out.order.end(), 0);
  std::stable_sort(out.order.begin(), out.order.end(),
                   [&](std::size_t i, std::size_t j) { return agg.club(i) < agg.club(j); });

  double const tol = scaled_tolerance(agg.total());
  bool         seen_positive = false;
  for (std::size_t pos = 0; pos < out.order.size(); ++pos)
  {
    auto const   i = out.order[pos];
    double const d = hi[i] - lo[i];
    out.differences.push_back(d);
    if (d > tol)
    {
      if (!seen_positive)
      {
        out.crossing = pos;
      }
      seen_positive = true;
    }
    else if (d < -tol && seen_positive)
    {
      out.holds = false;
    }
  }
  return out;
}

inline SingleCrossing single_crossing_check(AudienceMatrix const &a, double l1, double l2)
{
  return single_crossing_check(aggregates(a), l1, l2);
}

struct LorenzResult
{
  enum class Verdict
  {
    LeftDominates,
    RightDominates,
    Equal,
    Incomparable,
  };

  Verdict                    verdict{Verdict::Equal};
  std::optional<std::size_t> crossing;  // prefix length where the ordering flips
};

constexpr std::string_view to_string(LorenzResult::Verdict v) noexcept
{
  switch (v)
  {
  case LorenzResult::Verdict::LeftDominates:
    return "LeftDominates";
  case LorenzResult::Verdict::RightDominates:
    return "RightDominates";
  case LorenzResult::Verdict::Equal:
    return "Equal";
  case LorenzResult::Verdict::Incomparable:
    return "Incomparable";
  }
  return "Unknown";
}

/// Lorenz comparison of two equal-sum vectors through the n - 1 proper
/// prefix sums of their ascending rearrangements.
inline LorenzResult lorenz_compare(std::span<const double> x, std::span<const double> y)
{
  if (x.size() != y.size())
  {
    throw Error(ErrorCode::DimensionMismatch, "Lorenz comparison needs equal lengths");
  }
  double const sx = std::accumulate(x.begin(), x.end(), 0.0);
  double const sy = std::accumulate(y.begin(), y.end(), 0.0);
  double const scale = std::max({std::abs(sx), std::abs(sy)});
  if (std::abs(sx - sy) > scaled_tolerance(scale))
  {
    throw Error(ErrorCode::UnequalSums, "Lorenz comparison needs equal sums");
  }
  std::vector<double> xs(x.begin(), x.end());
  std::vector<double> ys(y.begin(), y.end());
  std::stable_sort(xs.begin(), xs.end());
  std::stable_sort(ys.begin(), ys.end());

  double const tol = scaled_tolerance(scale);
  double       px = 0.0;
  double       py = 0.0;
  bool         left_strict = false;
  bool         right_strict = false;
  LorenzResult out;
  for (std::size_t k = 0; k + 1 < xs.size(); ++k)
  {
    px += xs[k];
    py += ys[k];
    if (px > py + tol)
    {
      left_strict = true;
    }
    else if (py > px + tol)
    {
      right_strict = true;
    }
    if (left_strict && right_strict)
    {
      out.verdict = LorenzResult::Verdict::Incomparable;
      out.crossing = k + 1;
      return out;
    }
  }
  out.verdict = left_strict    ? LorenzResult::Verdict::LeftDominates
                : right_strict ? LorenzResult::Verdict::RightDominates
                               : LorenzResult::Verdict::Equal;
  return out;
}

inline LorenzResult lorenz_compare(Allocation const &x, Allocation const &y)
{
  return lorenz_compare(x.values(), y.values());
}

}  // namespace sportscast
