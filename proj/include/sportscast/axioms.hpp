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
#include "sportscast/random.hpp"
#include "sportscast/rules.hpp"

#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace sportscast {

inline constexpr double kAxiomTolerance = 1e-8;

/// Outcome of checking one axiom on concrete inputs. "Holds" only means no
/// counterexample was found on those inputs.
struct AxiomReport
{
  enum class Verdict
  {
    Holds,
    Violated,
    NotApplicable,
  };

  struct Witness
  {
    std::vector<std::size_t> clubs;
    std::vector<double>      observed;
    std::vector<double>      expected;
    std::string              detail;
  };

  std::string            axiom;
  Verdict                verdict{Verdict::Holds};
  std::optional<Witness> witness;

  bool holds() const noexcept
  {
    return verdict == Verdict::Holds;
  }
  bool violated() const noexcept
  {
    return verdict == Verdict::Violated;
  }
};

constexpr std::string_view to_string(AxiomReport::Verdict v) noexcept
{
  switch (v)
  {
  case AxiomReport::Verdict::Holds:
    return "Holds";
  case AxiomReport::Verdict::Violated:
    return "Violated";
  case AxiomReport::Verdict::NotApplicable:
    return "NotApplicable";
  }
  return "Unknown";
}

namespace detail {

inline bool axiom_close(double x, double y)
{
  return std::abs(x - y) <= kAxiomTolerance * std::max({1.0, std::abs(x), std::abs(y)});
}

// Hypotheses of the axioms are exact equalities; inputs are compared after
// relative rounding at 1e-12.
inline bool same_audience(double x, double y)
{
  return std::abs(x - y) <= 1e-12 * std::max({1.0, std::abs(x), std::abs(y)});
}

inline AxiomReport holds(std::string name)
{
  return {std::move(name), AxiomReport::Verdict::Holds, std::nullopt};
}

inline AxiomReport violated(std::string name, AxiomReport::Witness w)
{
  return {std::move(name), AxiomReport::Verdict::Violated, std::move(w)};
}

}  // namespace detail

/// rule(A + A') == rule(A) + rule(A').
inline AxiomReport check_additivity(RuleSpec const &rule, AudienceMatrix const &a,
                                    AudienceMatrix const &b)
{
  if (a.size() != b.size())
  {
    throw Error(ErrorCode::DimensionMismatch, "additivity needs matrices of equal size");
  }
  auto const joint = apply_rule(rule, a + b);
  auto const ra = apply_rule(rule, a);
  auto const rb = apply_rule(rule, b);
  for (std::size_t i = 0; i < a.size(); ++i)
  {
    double const sum = ra[i] + rb[i];
    if (!detail::axiom_close(joint[i], sum))
    {
      return detail::violated("additivity",
                              {{i}, {joint[i]}, {sum}, "rule(A+A') differs from rule(A)+rule(A')"});
    }
  }
  return detail::holds("additivity");
}

/// True when clubs i and j have identical audiences against every third club.
inline bool are_equals(AudienceMatrix const &a, std::size_t i, std::size_t j)
{
  for (std::size_t k = 0; k < a.size(); ++k)
  {
    if (k == i || k == j)
    {
      continue;
    }
    if (!detail::same_audience(a(i, k), a(j, k)) || !detail::same_audience(a(k, i), a(k, j)))
    {
      return false;
    }
  }
  return true;
}

inline AxiomReport check_equal_treatment(RuleSpec const &rule, AudienceMatrix const &a)
{
  auto const r = apply_rule(rule, a);
  for (std::size_t i = 0; i < a.size(); ++i)
  {
    for (std::size_t j = i + 1; j < a.size(); ++j)
    {
      if (are_equals(a, i, j) && !detail::axiom_close(r[i], r[j]))
      {
        return detail::violated("equal-treatment",
                                {{i, j}, {r[i], r[j]}, {r[i], r[i]}, "equal clubs paid differently"});
      }
    }
  }
  return detail::holds("equal-treatment");
}

inline AxiomReport check_null_team(RuleSpec const &rule, AudienceMatrix const &a)
{
  auto const agg = aggregates(a);
  auto const r = apply_rule(rule, a);
  for (std::size_t i = 0; i < a.size(); ++i)
  {
    if (agg.club(i) == 0.0 && !detail::axiom_close(r[i], 0.0))
    {
      return detail::violated("null-team", {{i}, {r[i]}, {0.0}, "club with null audience paid"});
    }
  }
  return detail::holds("null-team");
}

/// Applicable only when every positive audience involves club `i` and at
/// least one of its games has positive audience.
inline AxiomReport check_essential_team(RuleSpec const &rule, AudienceMatrix const &a,
                                        std::size_t i)
{
  if (i >= a.size())
  {
    throw Error(ErrorCode::InvalidArgument, "club index out of range");
  }
  bool own_positive = false;
  for (std::size_t p = 0; p < a.size(); ++p)
  {
    for (std::size_t q = 0; q < a.size(); ++q)
    {
      if (a(p, q) <= 0.0)
      {
        continue;
      }
      if (p != i && q != i)
      {
        return {"essential-team", AxiomReport::Verdict::NotApplicable, std::nullopt};
      }
      own_positive = true;
    }
  }
  if (!own_positive)
  {
    return {"essential-team", AxiomReport::Verdict::NotApplicable, std::nullopt};
  }
  double const alpha = aggregates(a).club(i);
  auto const   r = apply_rule(rule, a);
  if (!detail::axiom_close(r[i], alpha))
  {
    return detail::violated("essential-team",
                            {{i}, {r[i]}, {alpha}, "essential club not paid its audience"});
  }
  return detail::holds("essential-team");
}

inline AxiomReport check_maximum_aspirations(RuleSpec const &rule, AudienceMatrix const &a)
{
  auto const agg = aggregates(a);
  auto const r = apply_rule(rule, a);
  for (std::size_t i = 0; i < a.size(); ++i)
  {
    if (r[i] > agg.club(i) + kAxiomTolerance * std::max(1.0, std::abs(agg.club(i))))
    {
      return detail::violated("maximum-aspirations",
                              {{i}, {r[i]}, {agg.club(i)}, "club paid more than its audience"});
    }
  }
  return detail::holds("maximum-aspirations");
}

/// rule(pi A)_{pi(i)} == rule(A)_i, with pi relabelling rows and columns.
inline AxiomReport check_anonymity(RuleSpec const &rule, AudienceMatrix const &a,
                                   std::span<const std::size_t> perm)
{
  auto const permuted = permute(a, perm);
  auto const r = apply_rule(rule, a);
  auto const rp = apply_rule(rule, permuted);
  for (std::size_t i = 0; i < a.size(); ++i)
  {
    if (!detail::axiom_close(rp[perm[i]], r[i]))
    {
      return detail::violated("anonymity",
                              {{i, perm[i]}, {rp[perm[i]]}, {r[i]}, "relabelling changed payoff"});
    }
  }
  return detail::holds("anonymity");
}

struct AxiomTally
{
  std::string                        axiom;
  std::size_t                        holds{0};
  std::size_t                        violated{0};
  std::size_t                        not_applicable{0};
  std::optional<AxiomReport::Witness> first_witness;

  void add(AxiomReport const &r)
  {
    switch (r.verdict)
    {
    case AxiomReport::Verdict::Holds:
      ++holds;
      break;
    case AxiomReport::Verdict::Violated:
      if (!first_witness)
      {
        first_witness = r.witness;
      }
      ++violated;
      break;
    case AxiomReport::Verdict::NotApplicable:
      ++not_applicable;
      break;
    }
  }
};

/// Runs every axiom checker on `count` seeded random instances (n in 3..8,
/// entries in [0, 10]). Equal-treatment, null-team and essential-team
/// instances are generated so that their hypotheses are met.
inline std::vector<AxiomTally> run_axiom_suite(RuleSpec const &rule, std::size_t count,
                                               std::uint64_t seed)
{
  MatrixSampler           sampler(seed);
  std::vector<AxiomTally> tallies;
  for (char const *name : {"additivity", "equal-treatment", "null-team", "essential-team",
                           "maximum-aspirations", "anonymity"})
  {
    tallies.push_back(AxiomTally{name, 0, 0, 0, std::nullopt});
  }
  for (std::size_t k = 0; k < count; ++k)
  {
    std::size_t const n = sampler.club_count(3, 8);
    auto const        a = sampler.matrix(n);
    auto const        b = sampler.matrix(n);
    std::size_t const i = sampler.club_count(0, n - 1);
    std::size_t const j = (i + sampler.club_count(1, n - 1)) % n;

    tallies[0].add(check_additivity(rule, a, b));
    tallies[1].add(check_equal_treatment(rule, sampler.matrix_with_twins(n, i, j)));
    tallies[2].add(check_null_team(rule, sampler.matrix_with_null_club(n, i)));
    tallies[3].add(check_essential_team(rule, sampler.matrix_with_essential_club(n, i), i));
    tallies[4].add(check_maximum_aspirations(rule, a));
    auto const perm = sampler.permutation(n);
    tallies[5].add(check_anonymity(rule, a, perm));
  }
  return tallies;
}

/// All checkers on one matrix; `partner` feeds additivity and `perm` feeds
/// anonymity. Essential-team is reported for the first applicable club.
inline std::vector<AxiomReport> check_all_axioms(RuleSpec const &rule, AudienceMatrix const &a,
                                                 AudienceMatrix const              &partner,
                                                 std::span<const std::size_t>      perm)
{
  std::vector<AxiomReport> out;
  out.push_back(check_additivity(rule, a, partner));
  out.push_back(check_equal_treatment(rule, a));
  out.push_back(check_null_team(rule, a));
  AxiomReport essential{"essential-team", AxiomReport::Verdict::NotApplicable, std::nullopt};
  for (std::size_t i = 0; i < a.size(); ++i)
  {
    auto r = check_essential_team(rule, a, i);
    if (r.verdict != AxiomReport::Verdict::NotApplicable)
    {
      essential = std::move(r);
      break;
    }
  }
  out.push_back(std::move(essential));
  out.push_back(check_maximum_aspirations(rule, a));
  out.push_back(check_anonymity(rule, a, perm));
  return out;
}

}  // namespace sportscast
