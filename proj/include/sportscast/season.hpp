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

#include "sportscast/csv.hpp"
#include "sportscast/rules.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace sportscast {

struct SeasonRow
{
  std::string           club;
  std::optional<double> audience;  // millions of viewers
  double                actual{0.0};
  std::optional<double> es;
  std::optional<double> cd;
  std::optional<double> pct_actual;
  std::optional<double> pct_es;
  std::optional<double> pct_cd;
  std::optional<std::string> lambda;  // "0.98", "Below", "Above"
};

/// Published per-club figures for one season.
struct SeasonFixture
{
  std::string            season;
  std::vector<SeasonRow> rows;

  double endowment() const
  {
    double e = 0.0;
    for (auto const &r : rows)
    {
      e += r.actual;
    }
    return e;
  }

  bool has(std::optional<double> SeasonRow::*field) const
  {
    return !rows.empty() &&
           std::all_of(rows.begin(), rows.end(), [&](SeasonRow const &r) { return (r.*field).has_value(); });
  }
};

inline SeasonFixture read_season(std::istream &in)
{
  auto const t = csv::read_table(in);
  auto const club = t.require_column("club");
  auto const actual = t.require_column("actual");
  auto const opt = [&](char const *name) { return t.column(name); };
  auto const season = opt("season");
  auto const audience = opt("audience");
  auto const es = opt("es");
  auto const cd = opt("cd");
  auto const pct_actual = opt("pct_actual");
  auto const pct_es = opt("pct_es");
  auto const pct_cd = opt("pct_cd");
  auto const lambda = opt("lambda");

  auto number = [](std::vector<std::string> const &row,
                   std::optional<std::size_t> col) -> std::optional<double> {
    if (!col || row[*col].empty())
    {
      return std::nullopt;
    }
    return csv::parse_number(row[*col]);
  };

  SeasonFixture f;
  for (auto const &row : t.rows)
  {
    if (season && f.season.empty())
    {
      f.season = row[*season];
    }
    SeasonRow r;
    r.club = row[club];
    r.actual = csv::parse_number(row[actual]);
    r.audience = number(row, audience);
    r.es = number(row, es);
    r.cd = number(row, cd);
    r.pct_actual = number(row, pct_actual);
    r.pct_es = number(row, pct_es);
    r.pct_cd = number(row, pct_cd);
    if (lambda && !row[*lambda].empty())
    {
      r.lambda = row[*lambda];
    }
    f.rows.push_back(std::move(r));
  }
  if (f.rows.size() < 3)
  {
    throw Error(ErrorCode::TooFewClubs, "a season needs at least 3 clubs");
  }
  return f;
}

inline SeasonFixture read_season_file(std::string const &path)
{
  return csv::read_file(path, [](std::istream &in) { return read_season(in); });
}

/// Comparison tolerances against published (rounded) figures.
struct TableTolerance
{
  double percent{0.01};
  double money{0.2};
  double lambda{0.01};
  double cd_from_es{0.1};
};

struct Table1Row
{
  std::string club;
  double      audience{0.0};
  double      es{0.0};
  double      cd{0.0};
  double      pct_es{0.0};
  double      pct_cd{0.0};
  double      pct_actual{0.0};
  // computed minus published
  double d_es{0.0};
  double d_cd{0.0};
  double d_pct_es{0.0};
  double d_pct_cd{0.0};
};

struct Table1Report
{
  double                 endowment{0.0};
  double                 total_audience{0.0};  // sum of club audiences
  std::vector<Table1Row> rows;
  double                 max_money_delta{0.0};
  double                 max_percent_delta{0.0};
  std::size_t            cells_out_of_tolerance{0};
};

/// Recomputes the equal-split and concede-and-divide money and percentage
/// columns from club audiences, with the endowment E = sum of actual.
inline Table1Report reproduce_table1(SeasonFixture const &f, TableTolerance const &tol = {})
{
  if (!f.has(&SeasonRow::audience))
  {
    throw Error(ErrorCode::MissingColumn, "audience table reproduction needs an audience column");
  }
  std::vector<double>      alpha;
  std::vector<std::string> labels;
  for (auto const &r : f.rows)
  {
    alpha.push_back(*r.audience);
    labels.push_back(r.club);
  }
  auto const agg = AggregateAudience::from_club_totals(alpha, labels);

  Table1Report rep;
  rep.endowment = f.endowment();
  rep.total_audience = 2.0 * agg.total();
  auto const es = monetize(equal_split(agg), rep.endowment);
  auto const cd = monetize(concede_and_divide(agg), rep.endowment);

  for (std::size_t i = 0; i < f.rows.size(); ++i)
  {
    auto const &src = f.rows[i];
    Table1Row   row;
    row.club = src.club;
    row.audience = alpha[i];
    row.es = es[i];
    row.cd = cd[i];
    row.pct_es = 100.0 * es[i] / rep.endowment;
    row.pct_cd = 100.0 * cd[i] / rep.endowment;
    row.pct_actual = 100.0 * src.actual / rep.endowment;

    auto track = [&](std::optional<double> published, double computed, double &delta,
                     double limit, double &max_delta) {
      if (!published)
      {
        return;
      }
      delta = computed - *published;
      max_delta = std::max(max_delta, std::abs(delta));
      if (std::abs(delta) > limit + 1e-12)
      {
        ++rep.cells_out_of_tolerance;
      }
    };
    track(src.es, row.es, row.d_es, tol.money, rep.max_money_delta);
    track(src.cd, row.cd, row.d_cd, tol.money, rep.max_money_delta);
    track(src.pct_es, row.pct_es, row.d_pct_es, tol.percent, rep.max_percent_delta);
    track(src.pct_cd, row.pct_cd, row.d_pct_cd, tol.percent, rep.max_percent_delta);
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

struct Table2Row
{
  std::string     club;
  double          actual{0.0};
  double          es{0.0};
  double          cd_published{0.0};
  double          cd_recomputed{0.0};
  Rationalization verdict;
  std::string     verdict_text;
  std::string     published;
  bool            verdict_matches{false};
  bool            cd_matches{false};
};

struct Table2Report
{
  double                 endowment{0.0};
  std::vector<Table2Row> rows;
  double                 max_cd_delta{0.0};
  std::size_t            verdict_mismatches{0};
  std::size_t            cd_mismatches{0};
};

namespace detail {

inline bool verdict_matches(Rationalization const &r, std::string const &published, double tol)
{
  switch (r.kind)
  {
  case Rationalization::Kind::Below:
    return published == "Below";
  case Rationalization::Kind::Above:
    return published == "Above";
  case Rationalization::Kind::AnyLambda:
    return published == "Any";
  case Rationalization::Kind::Within:
    break;
  }
  if (published == "Below" || published == "Above" || published == "Any")
  {
    return false;
  }
  double const expected = csv::parse_number(published);
  double const rounded = std::round(r.lambda * 100.0) / 100.0;
  return std::abs(rounded - expected) <= tol + 1e-12;
}

}  // namespace detail

/// Recovers audience shares from the equal-split column, recomputes the
/// concede-and-divide column, and rationalizes each club's actual amount
/// as a convex mix lambda ES + (1 - lambda) CD of the published columns.
inline Table2Report reproduce_table2(SeasonFixture const &f, TableTolerance const &tol = {})
{
  if (!f.has(&SeasonRow::es) || !f.has(&SeasonRow::cd))
  {
    throw Error(ErrorCode::MissingColumn, "rationalization table reproduction needs es and cd columns");
  }
  if (!std::all_of(f.rows.begin(), f.rows.end(), [](SeasonRow const &r) { return r.lambda.has_value(); }))
  {
    throw Error(ErrorCode::MissingColumn, "rationalization table reproduction needs a lambda column");
  }
  std::vector<double>      shares;
  std::vector<std::string> labels;
  for (auto const &r : f.rows)
  {
    shares.push_back(*r.es);
    labels.push_back(r.club);
  }
  Table2Report rep;
  rep.endowment = f.endowment();
  auto const agg = AggregateAudience::from_club_totals(shares, labels);
  auto const cd = monetize(concede_and_divide(agg), rep.endowment);

  for (std::size_t i = 0; i < f.rows.size(); ++i)
  {
    auto const &src = f.rows[i];
    Table2Row   row;
    row.club = src.club;
    row.actual = src.actual;
    row.es = *src.es;
    row.cd_published = *src.cd;
    row.cd_recomputed = cd[i];
    row.verdict = rationalize_lambda(*src.es, *src.cd, src.actual);
    row.verdict_text = to_string(row.verdict);
    row.published = src.lambda.value_or("");

    double const delta = std::abs(row.cd_recomputed - row.cd_published);
    rep.max_cd_delta = std::max(rep.max_cd_delta, delta);
    row.cd_matches = delta <= tol.cd_from_es + 1e-12;
    rep.cd_mismatches += row.cd_matches ? 0 : 1;

    row.verdict_matches = detail::verdict_matches(row.verdict, *src.lambda, tol.lambda);
    rep.verdict_mismatches += row.verdict_matches ? 0 : 1;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace sportscast
