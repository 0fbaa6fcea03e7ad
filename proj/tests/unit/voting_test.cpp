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

#include "test_support.hpp"

#include <algorithm>

using namespace sportscast;
using namespace sportscast::testing;

namespace {

using Verdict = LorenzResult::Verdict;

// Prefix-sum oracle over the full ascending rearrangement.
std::vector<double> lorenz_curve(std::vector<double> v)
{
  std::sort(v.begin(), v.end());
  std::vector<double> out;
  double              s = 0.0;
  for (double x : v)
  {
    s += x;
    out.push_back(s);
  }
  return out;
}

}  // namespace

TEST(pivotal_count, intro_matrix)
{
  auto const p = pivotal_count(aggregates(intro_matrix()));
  EXPECT_EQ(p.above, 1u);
  EXPECT_EQ(p.below, 2u);
  EXPECT_EQ(p.at, 0u);
}

TEST(majority_winner_compromise, intro_matrix_picks_lower_end)
{
  auto const out = majority_winner_compromise(intro_matrix(), 0.0, 1.0);
  EXPECT_EQ(out.kind, VotingOutcome::Kind::UniqueWinner);
  EXPECT_EQ(out.winning_lambdas, std::vector<double>{0.0});
}

TEST(majority_winner_compromise, upper_end_when_majority_above_mean)
{
  auto const agg = AggregateAudience::from_club_totals({10, 10, 10, 1});
  auto const out = majority_winner_compromise(agg, 0.2, 0.9);
  EXPECT_EQ(out.kind, VotingOutcome::Kind::UniqueWinner);
  EXPECT_EQ(out.winning_lambdas, std::vector<double>{0.9});
}

TEST(majority_winner_compromise, equal_audiences_make_every_lambda_win)
{
  auto const a = from_grid({{0, 2, 3}, {3, 0, 2}, {2, 3, 0}});
  auto const out = majority_winner_compromise(a, 0.0, 1.0);
  EXPECT_EQ(out.kind, VotingOutcome::Kind::AllWinners);
  EXPECT_EQ(out.pivotal.at, 3u);
}

TEST(majority_winner_compromise, split_electorate)
{
  auto const out = majority_winner_compromise(AggregateAudience::from_club_totals({1, 3, 5, 7}), 0, 1);
  EXPECT_EQ(out.kind, VotingOutcome::Kind::AllWinners);
  EXPECT_EQ(out.winning_lambdas, (std::vector<double>{0.0, 1.0}));
}

TEST(majority_winner_compromise, bad_ranges)
{
  EXPECT_THROW(majority_winner_compromise(intro_matrix(), 1.0, 0.0), Error);
  auto const point = majority_winner_compromise(intro_matrix(), 0.4, 0.4);
  EXPECT_EQ(point.winning_lambdas, std::vector<double>{0.4});
}

// Direct oracle: nobody in a strict majority prefers any grid point to the winner.
TEST(majority_winner_compromise, winner_is_unbeaten_on_a_grid)
{
  MatrixSampler sampler(83);
  for (int t = 0; t < 50; ++t)
  {
    auto const a = sampler.matrix(sampler.club_count(3, 9));
    auto const out = majority_winner_compromise(a, 0.0, 1.0);
    if (out.kind != VotingOutcome::Kind::UniqueWinner)
    {
      continue;
    }
    auto const w = compromise(a, out.winning_lambdas.front());
    for (int g = 0; g <= 20; ++g)
    {
      auto const  x = compromise(a, g / 20.0);
      std::size_t better = 0;
      for (std::size_t i = 0; i < a.size(); ++i)
      {
        better += x[i] > w[i] + 1e-9 ? 1 : 0;
      }
      EXPECT_LE(2 * better, a.size());
    }
  }
}

TEST(condorcet_tournament, uniform_beats_the_rest)
{
  auto const out = condorcet_tournament(
      intro_matrix(), {RuleSpec::uniform(), RuleSpec::equal_split(), RuleSpec::concede_and_divide()});
  EXPECT_EQ(out.kind, VotingOutcome::Kind::UniqueWinner);
  EXPECT_EQ(out.winners, std::vector<std::size_t>{0});
  EXPECT_EQ(out.prefer[0][1], 2u);
  EXPECT_EQ(out.prefer[0][2], 2u);
  EXPECT_EQ(out.prefer[1][2], 2u);
}

TEST(condorcet_tournament, single_and_duplicated_rules)
{
  auto const one = condorcet_tournament(intro_matrix(), {RuleSpec::concede_and_divide()});
  EXPECT_EQ(one.kind, VotingOutcome::Kind::UniqueWinner);
  auto const dup = condorcet_tournament(intro_matrix(), {RuleSpec::equal_split(), RuleSpec::equal_split()});
  EXPECT_EQ(dup.kind, VotingOutcome::Kind::AllWinners);
  EXPECT_THROW(condorcet_tournament(intro_matrix(), {}), Error);
}

TEST(condorcet_tournament, cycle_has_witness)
{
  std::vector<Allocation> allocs{Allocation::exhausting({3, 2, 1}), Allocation::exhausting({1, 3, 2}),
                                 Allocation::exhausting({2, 1, 3})};
  auto const              out = detail::tournament(allocs);
  ASSERT_EQ(out.kind, VotingOutcome::Kind::Cycle);
  ASSERT_GE(out.cycle.size(), 3u);
  for (std::size_t k = 0; k < out.cycle.size(); ++k)
  {
    auto const p = out.cycle[k];
    auto const q = out.cycle[(k + 1) % out.cycle.size()];
    EXPECT_GT(2 * out.prefer[p][q], 3u) << p << " should beat " << q;
  }
}

TEST(single_crossing_check, intro_matrix)
{
  auto const r = single_crossing_check(intro_matrix(), 0.0, 1.0);
  EXPECT_TRUE(r.holds);
  EXPECT_EQ(r.order, (std::vector<std::size_t>{2, 1, 0}));
  ASSERT_EQ(r.differences.size(), 3u);
  EXPECT_NEAR(r.differences[0], -1.52, 1e-12);
  EXPECT_NEAR(r.differences[1], -0.84, 1e-12);
  EXPECT_NEAR(r.differences[2], 2.36, 1e-12);
  EXPECT_EQ(r.crossing, 2u);
}

TEST(single_crossing_check, equal_audiences_and_errors)
{
  auto const r = single_crossing_check(from_grid({{0, 2, 3}, {3, 0, 2}, {2, 3, 0}}), 0.1, 0.8);
  EXPECT_TRUE(r.holds);
  EXPECT_FALSE(r.crossing.has_value());
  EXPECT_THROW(single_crossing_check(intro_matrix(), 0.5, 0.5), Error);
}

TEST(single_crossing_check, random_instances)
{
  MatrixSampler sampler(89);
  for (int t = 0; t < 100; ++t)
  {
    auto const a = sampler.matrix(sampler.club_count(3, 10));
    double     l1 = sampler.uniform(-1, 2);
    double     l2 = sampler.uniform(-1, 2);
    if (l1 == l2)
    {
      continue;
    }
    EXPECT_TRUE(single_crossing_check(a, std::min(l1, l2), std::max(l1, l2)).holds);
  }
}

TEST(lorenz_compare, published_allocations)
{
  auto const a = intro_matrix();
  EXPECT_EQ(lorenz_compare(uniform(a), equal_split(a)).verdict, Verdict::LeftDominates);
  EXPECT_EQ(lorenz_compare(equal_split(a), concede_and_divide(a)).verdict, Verdict::LeftDominates);
  EXPECT_EQ(lorenz_compare(concede_and_divide(a), uniform(a)).verdict, Verdict::RightDominates);
  EXPECT_EQ(lorenz_compare(equal_split(a), equal_split(a)).verdict, Verdict::Equal);
}

TEST(lorenz_compare, incomparable_and_errors)
{
  std::vector<double> x{1, 4, 4, 11};
  std::vector<double> y{2, 2, 6, 10};
  auto const          r = lorenz_compare(x, y);
  EXPECT_EQ(r.verdict, Verdict::Incomparable);
  EXPECT_EQ(r.crossing, 2u);

  std::vector<double> short_y{1, 2};
  std::vector<double> other_sum{1, 4, 4, 12};
  EXPECT_THROW(lorenz_compare(x, short_y), Error);
  EXPECT_THROW(lorenz_compare(x, other_sum), Error);
}

TEST(lorenz_compare, order_independent)
{
  std::vector<double> x{5, 1, 3};
  std::vector<double> y{3, 5, 1};
  EXPECT_EQ(lorenz_compare(x, y).verdict, Verdict::Equal);
}

TEST(lorenz_compare, agrees_with_prefix_sum_oracle)
{
  MatrixSampler sampler(97);
  for (int t = 0; t < 200; ++t)
  {
    std::size_t const   n = sampler.club_count(2, 8);
    std::vector<double> x(n), y(n);
    double              sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < n; ++i)
    {
      x[i] = sampler.uniform(0, 10);
      y[i] = sampler.uniform(0, 10);
      sx += x[i];
      sy += y[i];
    }
    for (auto &v : y)
    {
      v *= sx / sy;
    }
    auto const lx = lorenz_curve(x);
    auto const ly = lorenz_curve(y);
    bool       x_above = false, y_above = false;
    for (std::size_t k = 0; k + 1 < n; ++k)
    {
      x_above = x_above || lx[k] > ly[k] + 1e-7;
      y_above = y_above || ly[k] > lx[k] + 1e-7;
    }
    auto const v = lorenz_compare(x, y).verdict;
    if (x_above && y_above)
    {
      EXPECT_EQ(v, Verdict::Incomparable);
    }
    else if (x_above)
    {
      EXPECT_EQ(v, Verdict::LeftDominates);
    }
    else if (y_above)
    {
      EXPECT_EQ(v, Verdict::RightDominates);
    }
  }
}

TEST(lorenz_compare, compromise_family_is_ordered)
{
  MatrixSampler sampler(101);
  for (int t = 0; t < 50; ++t)
  {
    auto const   a = sampler.matrix(sampler.club_count(3, 9));
    double const l1 = sampler.uniform(0, 1);
    double const l2 = sampler.uniform(0, 1);
    auto const   v = lorenz_compare(compromise(a, std::min(l1, l2)), compromise(a, std::max(l1, l2))).verdict;
    EXPECT_TRUE(v == Verdict::LeftDominates || v == Verdict::Equal);
  }
}
