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
#include <charconv>
#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sportscast {

enum class RuleKind
{
  Uniform,
  EqualSplit,
  ConcedeAndDivide,
  Compromise,
  Split,
  ESCDConvex,
};

constexpr bool is_parametric(RuleKind kind) noexcept
{
  return kind == RuleKind::Compromise || kind == RuleKind::Split || kind == RuleKind::ESCDConvex;
}

constexpr std::string_view to_string(RuleKind kind) noexcept
{
  switch (kind)
  {
  case RuleKind::Uniform:
    return "uniform";
  case RuleKind::EqualSplit:
    return "equal-split";
  case RuleKind::ConcedeAndDivide:
    return "concede-divide";
  case RuleKind::Compromise:
    return "compromise";
  case RuleKind::Split:
    return "split";
  case RuleKind::ESCDConvex:
    return "escd";
  }
  return "unknown";
}

inline std::optional<RuleKind> parse_rule_kind(std::string_view name) noexcept
{
  for (auto kind : {RuleKind::Uniform, RuleKind::EqualSplit, RuleKind::ConcedeAndDivide,
                    RuleKind::Compromise, RuleKind::Split, RuleKind::ESCDConvex})
  {
    if (name == to_string(kind))
    {
      return kind;
    }
  }
  return std::nullopt;
}

/// Identifies a rule. `lambda` is meaningful only for the parametric kinds;
/// it is unrestricted for Compromise and Split, and must lie in [0, 1] for
/// ESCDConvex.
struct RuleSpec
{
  RuleKind kind{RuleKind::Uniform};
  double   lambda{0.0};

  static RuleSpec uniform()
  {
    return {RuleKind::Uniform, 0.0};
  }
  static RuleSpec equal_split()
  {
    return {RuleKind::EqualSplit, 0.0};
  }
  static RuleSpec concede_and_divide()
  {
    return {RuleKind::ConcedeAndDivide, 0.0};
  }
  static RuleSpec compromise(double lambda)
  {
    return {RuleKind::Compromise, lambda};
  }
  static RuleSpec split(double lambda)
  {
    return {RuleKind::Split, lambda};
  }
  static RuleSpec escd(double lambda)
  {
    if (!(lambda >= 0.0 && lambda <= 1.0))
    {
      throw Error(ErrorCode::LambdaOutOfRange, "escd requires lambda in [0, 1]");
    }
    return {RuleKind::ESCDConvex, lambda};
  }

  bool operator==(RuleSpec const &) const = default;
};

/// "uniform", "split:0.3", "escd:0.5", ...
inline std::string to_string(RuleSpec const &rule)
{
  std::string out(to_string(rule.kind));
  if (is_parametric(rule.kind))
  {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), rule.lambda);
    out += ':';
    out.append(buf, res.ptr);
  }
  return out;
}

/// Parses the token form produced by to_string(RuleSpec). A parametric kind
/// without ":<lambda>" takes `default_lambda`.
inline RuleSpec parse_rule(std::string_view token, std::optional<double> default_lambda = {})
{
  auto const        colon = token.find(':');
  std::string_view  name = token.substr(0, colon);
  auto const        kind = parse_rule_kind(name);
  if (!kind)
  {
    throw Error(ErrorCode::InvalidArgument, "unknown rule '" + std::string(name) + "'");
  }
  std::optional<double> lambda = default_lambda;
  if (colon != std::string_view::npos)
  {
    auto   text = token.substr(colon + 1);
    double value = 0.0;
    auto   res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
    {
      throw Error(ErrorCode::ParseError, "bad lambda in rule '" + std::string(token) + "'");
    }
    lambda = value;
  }
  if (!is_parametric(*kind))
  {
    return {*kind, 0.0};
  }
  if (!lambda)
  {
    throw Error(ErrorCode::InvalidArgument,
                "rule '" + std::string(name) + "' requires a lambda parameter");
  }
  if (*kind == RuleKind::ESCDConvex)
  {
    return RuleSpec::escd(*lambda);
  }
  return {*kind, *lambda};
}

// Rules that depend on the matrix only through the club totals.

inline Allocation uniform(AggregateAudience const &agg)
{
  std::size_t const n = agg.size();
  return Allocation(std::vector<double>(n, agg.total() / static_cast<double>(n)), agg.total(),
                    Unit::Audience);
}

inline Allocation equal_split(AggregateAudience const &agg)
{
  std::vector<double> out;
  out.reserve(agg.size());
  for (double a : agg.club())
  {
    out.push_back(a / 2.0);
  }
  return Allocation(std::move(out), agg.total(), Unit::Audience);
}

inline Allocation concede_and_divide(AggregateAudience const &agg)
{
  std::size_t const n = agg.size();
  if (n < 3)
  {
    throw Error(ErrorCode::TooFewClubs, "concede-and-divide needs at least 3 clubs");
  }
  double const        nd = static_cast<double>(n);
  std::vector<double> out;
  out.reserve(n);
  for (double a : agg.club())
  {
    out.push_back(((nd - 1.0) * a - agg.total()) / (nd - 2.0));
  }
  return Allocation(std::move(out), agg.total(), Unit::Audience);
}

/// UC^lambda = (1 - lambda) U + lambda CD, for any real lambda.
inline Allocation compromise(AggregateAudience const &agg, double lambda)
{
  auto const          u = uniform(agg);
  auto const          cd = concede_and_divide(agg);
  std::vector<double> out(agg.size());
  for (std::size_t i = 0; i < out.size(); ++i)
  {
    out[i] = (1.0 - lambda) * u[i] + lambda * cd[i];
  }
  return Allocation(std::move(out), agg.total(), Unit::Audience);
}

/// lambda ES + (1 - lambda) CD, lambda in [0, 1].
inline Allocation es_cd_convex(AggregateAudience const &agg, double lambda)
{
  if (!(lambda >= 0.0 && lambda <= 1.0))
  {
    throw Error(ErrorCode::LambdaOutOfRange, "escd requires lambda in [0, 1]");
  }
  auto const          es = equal_split(agg);
  auto const          cd = concede_and_divide(agg);
  std::vector<double> out(agg.size());
  for (std::size_t i = 0; i < out.size(); ++i)
  {
    out[i] = lambda * es[i] + (1.0 - lambda) * cd[i];
  }
  return Allocation(std::move(out), agg.total(), Unit::Audience);
}

/// Compromise parameter reproducing equal-split: (n - 2) / (2 (n - 1)).
constexpr double equal_split_compromise_lambda(std::size_t n) noexcept
{
  return (static_cast<double>(n) - 2.0) / (2.0 * (static_cast<double>(n) - 1.0));
}

/// Compromise parameter equivalent to es_cd_convex(lambda).
constexpr double escd_to_compromise_lambda(double lambda, std::size_t n) noexcept
{
  return lambda * equal_split_compromise_lambda(n) + (1.0 - lambda);
}

inline Allocation uniform(AudienceMatrix const &a)
{
  return uniform(aggregates(a));
}

inline Allocation equal_split(AudienceMatrix const &a)
{
  return equal_split(aggregates(a));
}

inline Allocation concede_and_divide(AudienceMatrix const &a)
{
  return concede_and_divide(aggregates(a));
}

inline Allocation compromise(AudienceMatrix const &a, double lambda)
{
  return compromise(aggregates(a), lambda);
}

inline Allocation es_cd_convex(AudienceMatrix const &a, double lambda)
{
  return es_cd_convex(aggregates(a), lambda);
}

/// Each game a_ij goes (1 - lambda) to the home club i and lambda to the
/// away club j.
inline Allocation split(AudienceMatrix const &a, double lambda)
{
  std::size_t const   n = a.size();
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
  {
    for (std::size_t j = 0; j < n; ++j)
    {
      out[i] += (1.0 - lambda) * a(i, j) + lambda * a(j, i);
    }
  }
  return Allocation(std::move(out), aggregates(a).total(), Unit::Audience);
}

/// True when the rule can be evaluated from club totals alone.
constexpr bool needs_full_matrix(RuleKind kind) noexcept
{
  return kind == RuleKind::Split;
}

inline Allocation apply_rule(RuleSpec const &rule, AggregateAudience const &agg)
{
  switch (rule.kind)
  {
  case RuleKind::Uniform:
    return uniform(agg);
  case RuleKind::EqualSplit:
    return equal_split(agg);
  case RuleKind::ConcedeAndDivide:
    return concede_and_divide(agg);
  case RuleKind::Compromise:
    return compromise(agg, rule.lambda);
  case RuleKind::ESCDConvex:
    return es_cd_convex(agg, rule.lambda);
  case RuleKind::Split:
    break;
  }
  throw Error(ErrorCode::InvalidArgument,
              "the split rule needs the full audience matrix, not club totals");
}

inline Allocation apply_rule(RuleSpec const &rule, AudienceMatrix const &a)
{
  if (rule.kind == RuleKind::Split)
  {
    return split(a, rule.lambda);
  }
  return apply_rule(rule, aggregates(a));
}

/// Scales an audience allocation to a money endowment, proportionally.
inline Allocation monetize(Allocation const &x, double endowment)
{
  double total = 0.0;
  for (double v : x.values())
  {
    total += v;
  }
  if (total == 0.0)
  {
    throw Error(ErrorCode::ZeroTotalAudience, "cannot monetize an allocation summing to zero");
  }
  std::vector<double> out;
  out.reserve(x.size());
  for (double v : x.values())
  {
    out.push_back(endowment * v / total);
  }
  return Allocation(std::move(out), endowment, Unit::Money);
}

struct Rationalization
{
  enum class Kind
  {
    Within,
    Below,
    Above,
    AnyLambda,
  };

  Kind   kind{Kind::Within};
  double lambda{0.0};  // set when kind == Within
};

inline std::string to_string(Rationalization const &r)
{
  switch (r.kind)
  {
  case Rationalization::Kind::Below:
    return "Below";
  case Rationalization::Kind::Above:
    return "Above";
  case Rationalization::Kind::AnyLambda:
    return "Any";
  case Rationalization::Kind::Within:
    break;
  }
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%.2f", r.lambda);
  return buf;
}

/// Finds lambda with actual = lambda * es + (1 - lambda) * cd, or reports
/// that the actual amount lies below/above both rule outputs.
inline Rationalization rationalize_lambda(double es, double cd, double actual)
{
  if (es == cd)
  {
    if (actual == es)
    {
      return {Rationalization::Kind::AnyLambda, 0.0};
    }
    throw Error(ErrorCode::Degenerate, "es and cd coincide but differ from the actual amount");
  }
  if (actual < std::min(es, cd))
  {
    return {Rationalization::Kind::Below, 0.0};
  }
  if (actual > std::max(es, cd))
  {
    return {Rationalization::Kind::Above, 0.0};
  }
  double const lambda = std::clamp((actual - cd) / (es - cd), 0.0, 1.0);
  return {Rationalization::Kind::Within, lambda};
}

}  // namespace sportscast
