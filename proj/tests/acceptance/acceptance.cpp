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

// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "sportscast/sportscast.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace sportscast;

namespace {

using Clock = std::chrono::steady_clock;

struct Check
{
  bool               ok{true};
  std::ostringstream why;

  void require(bool cond, std::string const &what)
  {
    if (!cond && ok)
    {
      why << what;
    }
    ok = ok && cond;
  }

  void near(std::span<const double> got, std::vector<double> const &want, double tol,
            std::string const &what)
  {
    bool good = got.size() == want.size();
    for (std::size_t i = 0; good && i < want.size(); ++i)
    {
      good = std::abs(got[i] - want[i]) <= tol;
    }
    if (!good)
    {
      std::ostringstream msg;
      msg << what << " got (";
      for (std::size_t i = 0; i < got.size(); ++i)
      {
        msg << (i ? ", " : "") << got[i];
      }
      msg << ")";
      require(false, msg.str());
    }
  }
};

AudienceMatrix intro_matrix()
{
  return validate_matrix({{0.0, 1.2, 1.03}, {1.2, 0.0, 0.23}, {1.03, 0.23, 0.0}});
}

std::string data(char const *name)
{
  return std::string(SPORTSCAST_DATA_DIR) + "/" + name;
}

int failures = 0;

void run(int id, char const *title, std::function<void(Check &)> const &body, double budget_ms = 0.0)
{
  Check      c;
  auto const start = Clock::now();
  try
  {
    body(c);
  }
  catch (std::exception const &e)
  {
    c.require(false, std::string("exception: ") + e.what());
  }
  double const ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  if (budget_ms > 0.0 && ms > budget_ms)
  {
    std::ostringstream msg;
    msg << "runtime " << ms << " ms exceeds " << budget_ms << " ms";
    c.require(false, msg.str());
  }
  std::printf("%s criterion %d: %s (%.1f ms)%s%s\n", c.ok ? "PASS" : "FAIL", id, title, ms,
              c.ok ? "" : " -- ", c.why.str().c_str());
  failures += c.ok ? 0 : 1;
}

void scenarios(Check &c)
{
  auto const a = intro_matrix();
  c.near(uniform(a).values(), {1.64, 1.64, 1.64}, 0.005, "uniform");
  c.near(equal_split(a).values(), {2.23, 1.43, 1.26}, 0.005, "equal-split");
  c.near(concede_and_divide(a).values(), {4, 0.8, 0.12}, 0.005, "concede-and-divide");
  auto const d = implied_assignment(a, 0.09, {0.8, 0.1, 0.03});
  c.near(allocate_from_decomposition(a, d).values(), {3.7, 0.8, 0.42}, 0.005, "fan decomposition");
}

void table1(Check &c)
{
  auto const f = read_season_file(data("laliga_2016_17.csv"));
  c.require(f.rows.size() == 20, "fixture must have 20 clubs");
  auto const rep = reproduce_table1(f, TableTolerance{});
  std::ostringstream msg;
  msg << rep.cells_out_of_tolerance << " cells out of tolerance (max pct delta " << rep.max_percent_delta
      << ", max money delta " << rep.max_money_delta << ")";
  c.require(rep.cells_out_of_tolerance == 0 && rep.max_percent_delta <= 0.01 && rep.max_money_delta <= 0.2,
            msg.str());
  c.require(std::abs(rep.rows[0].pct_es - 12.22) <= 0.01 && std::abs(rep.rows[0].pct_cd - 20.23) <= 0.01,
            "first row shares");
}

void table2(Check &c)
{
  auto const f = read_season_file(data("laliga_2017_18.csv"));
  c.require(f.rows.size() == 20, "fixture must have 20 clubs");
  auto const         rep = reproduce_table2(f, TableTolerance{});
  std::ostringstream msg;
  msg << rep.verdict_mismatches << " verdict mismatches, " << rep.cd_mismatches
      << " CD mismatches (max delta " << rep.max_cd_delta << ")";
  for (auto const &row : rep.rows)
  {
    if (!row.verdict_matches)
    {
      msg << "; " << row.club << " " << row.verdict_text << " vs " << row.published;
    }
  }
  c.require(rep.verdict_mismatches == 0 && rep.cd_mismatches == 0, msg.str());
}

void regression_theorem(Check &c)
{
  MatrixSampler sampler(20240401);
  double        worst = 0.0;
  for (int t = 0; t < 200; ++t)
  {
    std::size_t const n = sampler.club_count(3, 8);
    auto const        a = sampler.matrix(n);
    auto const        cd = concede_and_divide(a);
    for (std::size_t k = 0; k < n; ++k)
    {
      auto const r = regression_allocation(a, k);
      for (std::size_t i = 0; i < n; ++i)
      {
        worst = std::max(worst, std::abs(r[i] - cd[i]));
      }
    }
  }
  std::ostringstream msg;
  msg << "max deviation " << worst;
  c.require(worst <= 1e-6, msg.str());
}

void game_correspondences(Check &c)
{
  MatrixSampler sampler(20240402);
  double        worst = 0.0;
  for (int t = 0; t < 100; ++t)
  {
    std::size_t const n = sampler.club_count(3, 7);
    auto const        a = sampler.matrix(n);
    auto const        g = audience_game(a);
    auto track = [&](Allocation const &x, Allocation const &y) {
      for (std::size_t i = 0; i < n; ++i)
      {
        worst = std::max(worst, std::abs(x[i] - y[i]));
      }
    };
    track(shapley(g, ShapleyMethod::Permutation), equal_split(a));
    track(egalitarian(g), uniform(a));
    for (double beta : {0.0, 0.25, 0.5, 0.75, 1.0})
    {
      double const lambda = beta * static_cast<double>(n - 2) / (2.0 * static_cast<double>(n - 1));
      track(egalitarian_shapley(g, beta, ShapleyMethod::Permutation), compromise(a, lambda));
    }
  }
  std::ostringstream msg;
  msg << "max deviation " << worst;
  c.require(worst <= 1e-9, msg.str());
}

void core(Check &c)
{
  MatrixSampler sampler(20240402);
  for (int t = 0; t < 100; ++t)
  {
    std::size_t const n = sampler.club_count(3, 7);
    auto const        a = sampler.matrix(n);
    auto const        g = audience_game(a);
    c.require(in_core(g, equal_split(a)).in_core, "equal-split outside the core");

    std::vector<double> all_to_first(n, 0.0);
    all_to_first[0] = aggregates(a).total();
    bool others_play = false;
    for (std::size_t i = 1; i < n; ++i)
    {
      for (std::size_t j = 1; j < n; ++j)
      {
        others_play = others_play || a(i, j) > 0.0;
      }
    }
    auto const r = in_core(g, all_to_first);
    if (others_play)
    {
      c.require(!r.in_core && r.violated.has_value(), "concentrated allocation accepted");
      if (r.violated)
      {
        double pay = 0.0;
        for (auto i : members(*r.violated))
        {
          pay += all_to_first[i];
        }
        c.require(pay < characteristic_value(a, *r.violated) - 1e-9, "witness coalition does not block");
      }
    }
  }
}

void voting(Check &c)
{
  auto const f = read_season_file(data("laliga_2016_17.csv"));
  std::vector<double> alpha;
  for (auto const &r : f.rows)
  {
    alpha.push_back(*r.audience);
  }
  auto const out = majority_winner_compromise(AggregateAudience::from_club_totals(alpha), 0.0, 1.0);
  c.require(out.kind == VotingOutcome::Kind::UniqueWinner && out.winning_lambdas == std::vector<double>{0.0},
            "season majority winner is not lambda = 0");

  MatrixSampler sampler(20240403);
  for (int t = 0; t < 100; ++t)
  {
    auto const a = sampler.matrix(sampler.club_count(3, 10));
    double     l1 = sampler.uniform(0, 1);
    double     l2 = sampler.uniform(0, 1);
    if (l1 > l2)
    {
      std::swap(l1, l2);
    }
    if (l1 == l2)
    {
      l2 = l1 + 0.1;
    }
    c.require(single_crossing_check(a, l1, l2).holds, "single crossing fails");
  }

  auto const tour = condorcet_tournament(
      intro_matrix(), {RuleSpec::uniform(), RuleSpec::equal_split(), RuleSpec::concede_and_divide()});
  c.require(tour.kind == VotingOutcome::Kind::UniqueWinner && tour.winners == std::vector<std::size_t>{0},
            "tournament winner is not the uniform rule");
}

void lorenz(Check &c)
{
  using V = LorenzResult::Verdict;
  MatrixSampler sampler(20240404);
  for (int t = 0; t < 100; ++t)
  {
    auto const          a = sampler.matrix(sampler.club_count(3, 10));
    std::vector<double> grid{0.0, 1.0};
    for (int k = 0; k < 4; ++k)
    {
      grid.push_back(sampler.uniform(0, 1));
    }
    std::sort(grid.begin(), grid.end());
    for (std::size_t p = 0; p < grid.size(); ++p)
    {
      for (std::size_t q = p + 1; q < grid.size(); ++q)
      {
        auto const v = lorenz_compare(compromise(a, grid[p]), compromise(a, grid[q])).verdict;
        c.require(v == V::LeftDominates || v == V::Equal, "compromise family not Lorenz ordered");
      }
    }
    auto const u = uniform(a);
    for (auto const &rule : {RuleSpec::equal_split(), RuleSpec::concede_and_divide(), RuleSpec::compromise(0.6),
                             RuleSpec::split(0.0), RuleSpec::split(0.3), RuleSpec::escd(0.4)})
    {
      auto const v = lorenz_compare(u, apply_rule(rule, a)).verdict;
      c.require(v == V::LeftDominates || v == V::Equal, "uniform does not dominate " + to_string(rule));
    }
  }
}

void cancellation(Check &c)
{
  auto load = [](char const *name) {
    return csv::read_file(data(name), [](std::istream &in) { return csv::read_partial_matrix(in); });
  };
  auto const e1 = load("cancelled_example1.csv");
  auto const e2 = load("cancelled_example2.csv");
  c.near(extended_allocate(e1, 100.0, ExtensionOperator::Zero, RuleSpec::equal_split()).values(),
         {45.5, 12.7, 20.9, 20.9}, 0.05, "example 1 zero extension");
  c.near(extended_allocate(e1, 100.0, ExtensionOperator::Leg, RuleSpec::equal_split()).values(),
         {45.5, 18.2, 18.2, 18.2}, 0.05, "example 1 leg extension");
  c.near(extended_allocate(e2, 100.0, ExtensionOperator::Zero, RuleSpec::equal_split()).values(),
         {50, 15, 18.3, 16.7}, 0.05, "example 2 zero extension");
}

void axioms(Check &c)
{
  auto none_violated = [&](std::vector<AxiomTally> const &tallies, std::vector<std::size_t> const &which,
                           std::string const &rule) {
    for (auto k : which)
    {
      c.require(tallies[k].violated == 0, rule + " violates " + tallies[k].axiom);
      c.require(tallies[k].holds > 0, rule + " never tested on " + tallies[k].axiom);
    }
  };
  for (double lambda : {0.0, 0.25, 0.5, 1.0, 1.5})
  {
    auto const rule = RuleSpec::compromise(lambda);
    none_violated(run_axiom_suite(rule, 100, 20240405), {0, 1}, to_string(rule));
  }
  for (double lambda : {0.0, 0.3, 0.5, 1.0})
  {
    auto const rule = RuleSpec::split(lambda);
    none_violated(run_axiom_suite(rule, 100, 20240405), {0, 2, 5}, to_string(rule));
  }

  auto const witness = validate_matrix({{0, 1, 0}, {1, 0, 0}, {0, 0, 0}});
  auto const cd_null = check_null_team(RuleSpec::concede_and_divide(), witness);
  c.require(cd_null.violated() && cd_null.witness && cd_null.witness->clubs == std::vector<std::size_t>{2},
            "concede-and-divide passes null team on the witness");
  none_violated(run_axiom_suite(RuleSpec::concede_and_divide(), 100, 20240405), {4}, "concede-divide");
  auto const u_max = check_maximum_aspirations(RuleSpec::uniform(), witness);
  c.require(u_max.violated() && u_max.witness && u_max.witness->clubs == std::vector<std::size_t>{2},
            "uniform passes maximum aspirations on the witness");
}

}  // namespace

int main()
{
  run(1, "three-club scenarios", scenarios, 10.0);
  run(2, "first season table reproduction", table1, 1000.0);
  run(3, "second season lambda rationalization", table2);
  run(4, "regression rule equals concede-and-divide", regression_theorem, 10000.0);
  run(5, "game-theoretic correspondences", game_correspondences);
  run(6, "core membership", core);
  run(7, "voting", voting);
  run(8, "Lorenz ordering", lorenz);
  run(9, "cancelled games", cancellation);
  run(10, "axiom suites", axioms);
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
