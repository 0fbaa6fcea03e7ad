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

// alloc: command-line front end for the broadcasting allocation library.
//
// Exit codes: 0 success, 1 tolerance failure, 2 input error.

#include "sportscast/sportscast.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

using namespace sportscast;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitTolerance = 1;
constexpr int kExitInput = 2;

enum class Format
{
  Table,
  Csv,
  Json,
};

struct Globals
{
  Format        format{Format::Table};
  bool          strict{false};
  std::uint64_t seed{1};
};

using Cell = std::variant<std::string, double>;

/// One command's result, rendered as an aligned table, CSV or JSON.
struct Output
{
  std::vector<std::string>       header;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::string>       notes;  // extra lines under the table
  json                           doc;
  int                            digits{4};
};

std::size_t display_width(std::string const &s)
{
  std::size_t w = 0;
  for (unsigned char c : s)
  {
    w += (c & 0xC0) != 0x80 ? 1 : 0;
  }
  return w;
}

std::string fixed(double v, int digits)
{
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  std::string text(buf);
  if (text.front() == '-' && text.find_first_not_of("-0.") == std::string::npos)
  {
    text.erase(0, 1);
  }
  return text;
}

void render(Output const &out, Format format, std::ostream &os)
{
  if (format == Format::Json)
  {
    os << out.doc.dump(2) << '\n';
    return;
  }
  auto text = [&](Cell const &c) {
    if (auto const *s = std::get_if<std::string>(&c))
    {
      return *s;
    }
    double const v = std::get<double>(c);
    return format == Format::Csv ? csv::format_number(v) : fixed(v, out.digits);
  };

  if (format == Format::Csv)
  {
    auto line = [&](auto const &cells, auto to_text) {
      for (std::size_t i = 0; i < cells.size(); ++i)
      {
        os << (i ? "," : "") << csv::detail::quote(to_text(cells[i]));
      }
      os << '\n';
    };
    line(out.header, [](std::string const &s) { return s; });
    for (auto const &row : out.rows)
    {
      line(row, text);
    }
    return;
  }

  std::vector<std::size_t> width(out.header.size(), 0);
  std::vector<std::vector<std::string>> cells;
  for (std::size_t c = 0; c < out.header.size(); ++c)
  {
    width[c] = display_width(out.header[c]);
  }
  for (auto const &row : out.rows)
  {
    cells.emplace_back();
    for (std::size_t c = 0; c < row.size(); ++c)
    {
      cells.back().push_back(text(row[c]));
      width[c] = std::max(width[c], display_width(cells.back().back()));
    }
  }
  auto pad = [&](std::string const &s, std::size_t w, bool right) {
    std::string fill(w - display_width(s), ' ');
    return right ? fill + s : s + fill;
  };
  auto emit = [&](std::string line) {
    line.erase(line.find_last_not_of(' ') + 1);
    os << line << '\n';
  };
  std::string line;
  for (std::size_t c = 0; c < out.header.size(); ++c)
  {
    bool const numeric = !out.rows.empty() && std::holds_alternative<double>(out.rows.front()[c]);
    line += (c ? "  " : "") + pad(out.header[c], width[c], numeric);
  }
  emit(line);
  for (std::size_t r = 0; r < cells.size(); ++r)
  {
    line.clear();
    for (std::size_t c = 0; c < cells[r].size(); ++c)
    {
      line += (c ? "  " : "") + pad(cells[r][c], width[c], std::holds_alternative<double>(out.rows[r][c]));
    }
    emit(line);
  }
  for (auto const &note : out.notes)
  {
    os << note << '\n';
  }
}

std::vector<double> vec(Allocation const &x)
{
  return {x.values().begin(), x.values().end()};
}

void warn(std::string const &msg)
{
  std::cerr << "warning: " << msg << '\n';
}

void warn_negative(Allocation const &x, std::vector<std::string> const &labels)
{
  for (std::size_t i = 0; i < x.size(); ++i)
  {
    if (x[i] < 0.0)
    {
      warn("club '" + labels[i] + "' receives a negative amount (" + csv::format_number(x[i]) + ")");
    }
  }
}

// Input loading ------------------------------------------------------------

AudienceMatrix load_matrix(std::string const &path)
{
  return csv::read_file(path, [](std::istream &in) { return csv::read_matrix(in); });
}

AggregateAudience load_aggregates(std::string const &path)
{
  return csv::read_file(path, [](std::istream &in) { return csv::read_aggregates(in); });
}

struct Source
{
  std::optional<AudienceMatrix> matrix;
  AggregateAudience             agg;

  std::vector<std::string> const &labels() const
  {
    return agg.labels();
  }

  Allocation apply(RuleSpec const &rule) const
  {
    return matrix ? apply_rule(rule, *matrix) : apply_rule(rule, agg);
  }
};

Source load_source(std::string const &matrix_path, std::string const &aggregates_path)
{
  if (matrix_path.empty() == aggregates_path.empty())
  {
    throw Error(ErrorCode::InvalidArgument, "give exactly one of --matrix and --aggregates");
  }
  if (!matrix_path.empty())
  {
    auto a = load_matrix(matrix_path);
    auto agg = aggregates(a);
    return {std::move(a), std::move(agg)};
  }
  return {std::nullopt, load_aggregates(aggregates_path)};
}

RuleSpec rule_from(std::string const &token, std::optional<double> lambda)
{
  return parse_rule(token, lambda);
}

json rule_json(RuleSpec const &rule)
{
  json j{{"kind", std::string(to_string(rule.kind))}};
  j["lambda"] = is_parametric(rule.kind) ? json(rule.lambda) : json(nullptr);
  return j;
}

std::string coalition_labels(Coalition s, std::vector<std::string> const &labels)
{
  std::string out = "{";
  bool        first = true;
  for (auto i : members(s))
  {
    out += (first ? "" : ", ") + labels[i];
    first = false;
  }
  return out + "}";
}

void add_allocation_rows(Output &out, std::vector<std::string> const &labels, Allocation const &x)
{
  out.header = {"club", "value"};
  for (std::size_t i = 0; i < x.size(); ++i)
  {
    out.rows.push_back({labels[i], x[i]});
  }
}

// Commands -----------------------------------------------------------------

struct AllocateArgs
{
  std::string           rule;
  std::optional<double> lambda;
  std::string           matrix;
  std::string           aggregates;
  std::optional<double> endowment;
};

int run_allocate(AllocateArgs const &args, Globals const &g, Output &out)
{
  auto const src = load_source(args.matrix, args.aggregates);
  auto const rule = rule_from(args.rule, args.lambda);
  auto       x = src.apply(rule);
  if (args.endowment)
  {
    x = monetize(x, *args.endowment);
  }
  warn_negative(x, src.labels());
  add_allocation_rows(out, src.labels(), x);
  out.doc = {{"clubs", src.labels()},
             {"rule", rule_json(rule)},
             {"unit", std::string(to_string(x.unit()))},
             {"endowment", x.endowment()},
             {"values", vec(x)}};
  (void)g;
  return kExitOk;
}

struct DecomposeArgs
{
  std::string                        matrix;
  std::string                        reference;
  bool                               check_regression{false};
  std::optional<double>              generic;
  std::vector<double>                club_fans;
};

int run_decompose(DecomposeArgs const &args, Globals const &g, Output &out)
{
  auto const        a = load_matrix(args.matrix);
  auto const       &labels = a.labels();
  std::size_t const n = a.size();
  std::size_t const k = args.reference.empty() ? n - 1 : a.index_of(args.reference);
  auto const        d = fit_fan_model(a, k);
  auto const        reg = regression_allocation(a, d);
  auto const        cd = concede_and_divide(a);

  out.header = {"club", "club_fans", "regression", "concede_divide"};
  for (std::size_t i = 0; i < n; ++i)
  {
    out.rows.push_back({labels[i], d.fit.club[i], reg[i], cd[i]});
  }
  out.notes.push_back("reference club: " + labels[k]);
  out.notes.push_back("generic fans: " + fixed(d.fit.generic, out.digits));
  out.notes.push_back("residual sum of squares: " + fixed(d.objective, 6));

  std::vector<std::vector<double>> eps(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
  {
    for (std::size_t j = 0; j < n; ++j)
    {
      eps[i][j] = d.fit.joint[i * n + j];
    }
  }
  out.doc = {{"clubs", labels},
             {"reference", labels[k]},
             {"b0", d.fit.generic},
             {"b", d.fit.club},
             {"epsilon", eps},
             {"objective", d.objective},
             {"regression", vec(reg)}};

  if (args.generic || !args.club_fans.empty())
  {
    if (!args.generic || args.club_fans.size() != n)
    {
      throw Error(ErrorCode::InvalidArgument, "--generic and --club-fans (one per club) go together");
    }
    auto const assigned = implied_assignment(a, *args.generic, args.club_fans);
    auto const proc = allocate_from_decomposition(a, assigned);
    out.header.push_back("procedures");
    for (std::size_t i = 0; i < n; ++i)
    {
      out.rows[i].push_back(proc[i]);
    }
    out.doc["procedures"] = {{"b0", *args.generic}, {"b", args.club_fans}, {"allocation", vec(proc)}};
  }

  int status = kExitOk;
  if (args.check_regression)
  {
    double worst = 0.0;
    for (std::size_t ref = 0; ref < n; ++ref)
    {
      auto const r = regression_allocation(a, ref);
      for (std::size_t i = 0; i < n; ++i)
      {
        worst = std::max(worst, std::abs(r[i] - cd[i]));
      }
    }
    bool const ok = worst <= 1e-6;
    out.notes.push_back(std::string("regression equals concede-and-divide for every reference: ") +
                        (ok ? "yes" : "no") + " (max deviation " + csv::format_number(worst) + ")");
    out.doc["regression_check"] = {{"max_deviation", worst}, {"passed", ok}};
    status = ok ? kExitOk : kExitTolerance;
  }
  (void)g;
  return status;
}

struct GameArgs
{
  std::string           matrix;
  std::string           op{"shapley"};
  double                beta{0.5};
  std::string           allocation;
  std::string           rule;
  std::optional<double> lambda;
  std::string           method{"subset"};
};

int run_game(GameArgs const &args, Globals const &g, Output &out)
{
  auto const  a = load_matrix(args.matrix);
  auto const &labels = a.labels();
  auto const  game = audience_game(a);
  auto const  method = args.method == "permutation" ? ShapleyMethod::Permutation : ShapleyMethod::Subset;

  if (args.op != "core-check")
  {
    Allocation x = args.op == "shapley"       ? shapley(game, method)
                   : args.op == "egalitarian" ? egalitarian(game)
                                              : egalitarian_shapley(game, args.beta, method);
    add_allocation_rows(out, labels, x);
    out.doc = {{"clubs", labels}, {"op", args.op}, {"grand_value", game.grand_value()}, {"values", vec(x)}};
    if (args.op == "eg-shapley")
    {
      out.doc["beta"] = args.beta;
      double const nd = static_cast<double>(a.size());
      out.notes.push_back("equivalent compromise parameter: " +
                          csv::format_number(args.beta * (nd - 2.0) / (2.0 * (nd - 1.0))));
    }
    return kExitOk;
  }

  std::vector<double> x;
  if (!args.allocation.empty())
  {
    auto [values, file_labels] =
        csv::read_file(args.allocation, [](std::istream &in) { return csv::read_values(in); });
    if (file_labels != labels)
    {
      throw Error(ErrorCode::InvalidLabel, "allocation clubs must match the matrix clubs in order");
    }
    x = std::move(values);
  }
  else if (!args.rule.empty())
  {
    auto const alloc = apply_rule(rule_from(args.rule, args.lambda), a);
    x.assign(alloc.values().begin(), alloc.values().end());
  }
  else
  {
    throw Error(ErrorCode::InvalidArgument, "core-check needs --allocation or --rule");
  }
  auto const r = in_core(game, x);
  out.header = {"club", "payoff"};
  for (std::size_t i = 0; i < x.size(); ++i)
  {
    out.rows.push_back({labels[i], x[i]});
  }
  out.notes.push_back(std::string("in core: ") + (r.in_core ? "yes" : "no"));
  out.doc = {{"clubs", labels}, {"op", "core-check"}, {"allocation", x}, {"in_core", r.in_core},
             {"efficient", r.efficient}};
  if (r.violated)
  {
    auto const who = coalition_labels(*r.violated, labels);
    out.notes.push_back("blocking coalition " + who + ": worth " + fixed(r.coalition_value, out.digits) +
                        ", receives " + fixed(r.coalition_payoff, out.digits));
    out.doc["violated"] = {{"clubs", who}, {"value", r.coalition_value}, {"payoff", r.coalition_payoff}};
  }
  return (!r.in_core && g.strict) ? kExitTolerance : kExitOk;
}

struct VoteArgs
{
  std::string              matrix;
  std::string              aggregates;
  std::string              family{"compromise"};
  std::vector<double>      range;
  std::vector<std::string> tournament;
};

int run_vote(VoteArgs const &args, Globals const &, Output &out)
{
  auto const src = load_source(args.matrix, args.aggregates);
  if (!args.tournament.empty())
  {
    std::vector<RuleSpec> rules;
    for (auto const &t : args.tournament)
    {
      rules.push_back(parse_rule(t));
    }
    auto const res = src.matrix ? condorcet_tournament(*src.matrix, rules) : condorcet_tournament(src.agg, rules);
    out.header = {"rule"};
    for (auto const &r : rules)
    {
      out.header.push_back("vs " + to_string(r));
    }
    out.header.push_back("unbeaten");
    std::vector<std::string> names;
    for (std::size_t p = 0; p < rules.size(); ++p)
    {
      names.push_back(to_string(rules[p]));
      std::vector<Cell> row{names.back()};
      for (std::size_t q = 0; q < rules.size(); ++q)
      {
        row.push_back(p == q ? std::string("-") : std::to_string(res.prefer[p][q]));
      }
      bool const won = std::find(res.winners.begin(), res.winners.end(), p) != res.winners.end();
      row.push_back(std::string(won ? "yes" : "no"));
      out.rows.push_back(std::move(row));
    }
    out.notes.push_back("outcome: " + std::string(to_string(res.kind)));
    std::vector<std::string> winners, cycle;
    for (auto w : res.winners)
    {
      winners.push_back(names[w]);
    }
    for (auto c : res.cycle)
    {
      cycle.push_back(names[c]);
    }
    if (!cycle.empty())
    {
      std::string line = "cycle:";
      for (auto const &c : cycle)
      {
        line += " " + c + " >";
      }
      out.notes.push_back(line + " " + cycle.front());
    }
    out.doc = {{"rules", names}, {"outcome", std::string(to_string(res.kind))}, {"winners", winners},
               {"cycle", cycle}, {"prefer", res.prefer}};
    return kExitOk;
  }

  if (args.range.size() != 2)
  {
    throw Error(ErrorCode::InvalidArgument, "give --range LO HI or --tournament RULES");
  }
  double       lo = args.range[0];
  double       hi = args.range[1];
  std::size_t  n = src.agg.size();
  double const c = equal_split_compromise_lambda(n);
  auto to_family = [&](double mu) { return (1.0 - mu) / (1.0 - c); };
  if (args.family == "escd")
  {
    if (!(lo >= 0.0 && hi <= 1.0))
    {
      throw Error(ErrorCode::LambdaOutOfRange, "the escd family needs a range inside [0, 1]");
    }
    // escd(l) is compromise(1 - l (1 - c)), decreasing in l.
    std::tie(lo, hi) = std::pair(escd_to_compromise_lambda(hi, n), escd_to_compromise_lambda(lo, n));
  }
  else if (args.family != "compromise")
  {
    throw Error(ErrorCode::InvalidArgument, "majority voting is supported for the compromise and escd families");
  }
  auto res = majority_winner_compromise(src.agg, lo, hi);
  if (args.family == "escd")
  {
    for (auto &l : res.winning_lambdas)
    {
      l = to_family(l);
    }
    std::sort(res.winning_lambdas.begin(), res.winning_lambdas.end());
  }
  out.header = {"outcome", "winner", "above_mean", "below_mean", "at_mean"};
  std::string winner;
  if (res.kind == VotingOutcome::Kind::UniqueWinner)
  {
    winner = csv::format_number(res.winning_lambdas.front());
  }
  else
  {
    winner = "[" + csv::format_number(res.winning_lambdas.front()) + ", " +
             csv::format_number(res.winning_lambdas.back()) + "]";
  }
  out.rows.push_back({std::string(to_string(res.kind)), winner, std::to_string(res.pivotal.above),
                      std::to_string(res.pivotal.below), std::to_string(res.pivotal.at)});
  out.doc = {{"family", args.family},
             {"range", {args.range[0], args.range[1]}},
             {"outcome", std::string(to_string(res.kind))},
             {"winning_lambdas", res.winning_lambdas},
             {"pivotal", {{"above", res.pivotal.above}, {"below", res.pivotal.below}, {"at", res.pivotal.at}}}};
  return kExitOk;
}

struct LorenzArgs
{
  std::string           matrix;
  std::string           aggregates;
  std::string           left;
  std::string           right;
  std::optional<double> lambda;
};

std::vector<double> lorenz_curve(Allocation const &x)
{
  std::vector<double> v(x.values().begin(), x.values().end());
  std::sort(v.begin(), v.end());
  double s = 0.0;
  for (auto &e : v)
  {
    s += e;
    e = s;
  }
  return v;
}

int run_lorenz(LorenzArgs const &args, Globals const &, Output &out)
{
  auto const src = load_source(args.matrix, args.aggregates);
  auto const lr = rule_from(args.left, args.lambda);
  auto const rr = rule_from(args.right, args.lambda);
  auto const x = src.apply(lr);
  auto const y = src.apply(rr);
  auto const res = lorenz_compare(x, y);
  auto const lx = lorenz_curve(x);
  auto const ly = lorenz_curve(y);
  out.header = {"poorest", to_string(lr), to_string(rr)};
  for (std::size_t k = 0; k < lx.size(); ++k)
  {
    out.rows.push_back({std::to_string(k + 1), lx[k], ly[k]});
  }
  out.notes.push_back("verdict: " + std::string(to_string(res.verdict)));
  out.doc = {{"left", to_string(lr)},   {"right", to_string(rr)}, {"verdict", std::string(to_string(res.verdict))},
             {"left_curve", lx},        {"right_curve", ly}};
  if (res.crossing)
  {
    out.doc["crossing"] = *res.crossing;
  }
  return kExitOk;
}

struct CancelledArgs
{
  std::string           matrix;
  double                endowment{0.0};
  std::string           op{"zero"};
  std::string           rule{"equal-split"};
  std::optional<double> lambda;
};

int run_cancelled(CancelledArgs const &args, Globals const &, Output &out)
{
  auto const p = csv::read_file(args.matrix, [](std::istream &in) { return csv::read_partial_matrix(in); });
  auto const op = args.op == "leg" ? ExtensionOperator::Leg : ExtensionOperator::Zero;
  auto const rule = rule_from(args.rule, args.lambda);
  auto const extended = extend(p, op);
  auto const agg = aggregates(extended);
  auto const x = extended_allocate(p, args.endowment, op, rule);
  warn_negative(x, p.labels());
  out.header = {"club", "assigned_audience", "value"};
  for (std::size_t i = 0; i < x.size(); ++i)
  {
    out.rows.push_back({p.labels()[i], agg.club(i), x[i]});
  }
  out.notes.push_back("cancelled games: " + std::to_string(p.missing_count()));
  out.doc = {{"clubs", p.labels()},
             {"operator", std::string(to_string(op))},
             {"rule", rule_json(rule)},
             {"unit", "money"},
             {"endowment", args.endowment},
             {"assigned_audiences", std::vector<double>(agg.club().begin(), agg.club().end())},
             {"values", vec(x)}};
  return kExitOk;
}

struct AxiomsArgs
{
  std::string           rule;
  std::optional<double> lambda;
  std::string           matrix;
  std::string           suite;
  std::size_t           count{100};
};

std::string witness_text(AxiomReport::Witness const &w, std::vector<std::string> const &labels)
{
  std::string s = w.detail + ":";
  for (std::size_t k = 0; k < w.clubs.size(); ++k)
  {
    s += " " + (w.clubs[k] < labels.size() ? labels[w.clubs[k]] : std::to_string(w.clubs[k] + 1));
  }
  if (!w.observed.empty())
  {
    s += " got " + csv::format_number(w.observed.front());
  }
  if (!w.expected.empty())
  {
    s += " expected " + csv::format_number(w.expected.front());
  }
  return s;
}

json witness_json(AxiomReport::Witness const &w)
{
  return {{"clubs", w.clubs}, {"observed", w.observed}, {"expected", w.expected}, {"detail", w.detail}};
}

int run_axioms(AxiomsArgs const &args, Globals const &g, Output &out)
{
  auto const rule = rule_from(args.rule, args.lambda);
  out.doc = {{"rule", rule_json(rule)}};
  bool any_violated = false;
  if (!args.matrix.empty())
  {
    auto const    a = load_matrix(args.matrix);
    MatrixSampler sampler(g.seed);
    auto const    partner = sampler.matrix(a.size());
    auto const    perm = sampler.permutation(a.size());
    auto const    reports = check_all_axioms(rule, a, partner, perm);
    out.header = {"axiom", "verdict", "witness"};
    json list = json::array();
    for (auto const &r : reports)
    {
      std::string verdict = r.verdict == AxiomReport::Verdict::Holds ? "no counterexample on this input"
                                                                     : std::string(to_string(r.verdict));
      out.rows.push_back({r.axiom, verdict, r.witness ? witness_text(*r.witness, a.labels()) : std::string()});
      json j{{"axiom", r.axiom}, {"verdict", std::string(to_string(r.verdict))}};
      if (r.witness)
      {
        j["witness"] = witness_json(*r.witness);
      }
      list.push_back(std::move(j));
      any_violated = any_violated || r.violated();
    }
    out.doc["matrix"] = list;
  }
  if (args.suite == "random")
  {
    auto const tallies = run_axiom_suite(rule, args.count, g.seed);
    if (out.header.empty())
    {
      out.header = {"axiom", "holds", "violated", "not_applicable", "first_witness"};
    }
    json list = json::array();
    for (auto const &t : tallies)
    {
      std::string w = t.first_witness ? witness_text(*t.first_witness, {}) : std::string();
      if (out.header.size() == 5)
      {
        out.rows.push_back({t.axiom, std::to_string(t.holds), std::to_string(t.violated),
                            std::to_string(t.not_applicable), w});
      }
      else
      {
        out.notes.push_back("random suite, " + t.axiom + ": " + std::to_string(t.holds) + " without counterexample, " +
                            std::to_string(t.violated) + " violated, " + std::to_string(t.not_applicable) +
                            " not applicable");
      }
      json j{{"axiom", t.axiom}, {"holds", t.holds}, {"violated", t.violated}, {"not_applicable", t.not_applicable}};
      if (t.first_witness)
      {
        j["first_witness"] = witness_json(*t.first_witness);
      }
      list.push_back(std::move(j));
    }
    out.doc["suite"] = {{"count", args.count}, {"seed", g.seed}, {"results", list}};
  }
  else if (!args.suite.empty())
  {
    throw Error(ErrorCode::InvalidArgument, "unknown suite '" + args.suite + "'");
  }
  if (args.matrix.empty() && args.suite.empty())
  {
    throw Error(ErrorCode::InvalidArgument, "give --matrix and/or --suite random");
  }
  (void)any_violated;
  return kExitOk;
}

struct ReproduceArgs
{
  int         table{1};
  std::string fixture;
  double      money_tol{0.2};
  double      percent_tol{0.01};
  double      cd_tol{0.1};
};

int run_reproduce(ReproduceArgs const &args, Globals const &g, Output &out)
{
  TableTolerance tol;
  tol.money = args.money_tol;
  tol.percent = args.percent_tol;
  tol.cd_from_es = args.cd_tol;
  out.digits = 2;
  std::string path = args.fixture;
  if (path.empty())
  {
    path = std::string(SPORTSCAST_DATA_DIR) + (args.table == 1 ? "/laliga_2016_17.csv" : "/laliga_2017_18.csv");
  }
  auto const f = read_season_file(path);
  std::size_t problems = 0;

  if (args.table == 1)
  {
    auto const rep = reproduce_table1(f, tol);
    out.header = {"club", "audience", "actual", "es", "cd", "pct_actual", "pct_es", "pct_cd", "d_pct_es", "d_pct_cd"};
    json rows = json::array();
    for (std::size_t i = 0; i < rep.rows.size(); ++i)
    {
      auto const &r = rep.rows[i];
      out.rows.push_back({r.club, r.audience, f.rows[i].actual, r.es, r.cd, r.pct_actual, r.pct_es, r.pct_cd,
                          r.d_pct_es, r.d_pct_cd});
      rows.push_back({{"club", r.club}, {"audience", r.audience}, {"actual", f.rows[i].actual}, {"es", r.es},
                      {"cd", r.cd}, {"pct_es", r.pct_es}, {"pct_cd", r.pct_cd}, {"d_es", r.d_es},
                      {"d_cd", r.d_cd}, {"d_pct_es", r.d_pct_es}, {"d_pct_cd", r.d_pct_cd}});
    }
    problems = rep.cells_out_of_tolerance;
    out.notes.push_back("endowment: " + fixed(rep.endowment, 2) + ", total club audience: " +
                        fixed(rep.total_audience, 2));
    out.notes.push_back("max money delta: " + fixed(rep.max_money_delta, 4) + ", max percent delta: " +
                        fixed(rep.max_percent_delta, 4) + ", cells out of tolerance: " + std::to_string(problems));
    out.doc = {{"table", 1}, {"season", f.season}, {"endowment", rep.endowment}, {"rows", rows},
               {"max_money_delta", rep.max_money_delta}, {"max_percent_delta", rep.max_percent_delta},
               {"cells_out_of_tolerance", problems}};
  }
  else if (args.table == 2)
  {
    auto const rep = reproduce_table2(f, tol);
    out.header = {"club", "actual", "es", "cd", "cd_recomputed", "lambda", "published", "match"};
    json rows = json::array();
    for (auto const &r : rep.rows)
    {
      bool const ok = r.verdict_matches && r.cd_matches;
      out.rows.push_back({r.club, r.actual, r.es, r.cd_published, r.cd_recomputed, r.verdict_text, r.published,
                          std::string(ok ? "yes" : "no")});
      json verdict = r.verdict.kind == Rationalization::Kind::Within ? json(r.verdict.lambda) : json(r.verdict_text);
      rows.push_back({{"club", r.club}, {"actual", r.actual}, {"es", r.es}, {"cd", r.cd_published},
                      {"cd_recomputed", r.cd_recomputed}, {"lambda", verdict}, {"published", r.published},
                      {"verdict_matches", r.verdict_matches}, {"cd_matches", r.cd_matches}});
    }
    problems = rep.verdict_mismatches + rep.cd_mismatches;
    out.notes.push_back("endowment: " + fixed(rep.endowment, 2) + ", max CD delta: " + fixed(rep.max_cd_delta, 4) +
                        ", verdict mismatches: " + std::to_string(rep.verdict_mismatches) +
                        ", CD mismatches: " + std::to_string(rep.cd_mismatches));
    out.doc = {{"table", 2}, {"season", f.season}, {"endowment", rep.endowment}, {"rows", rows},
               {"max_cd_delta", rep.max_cd_delta}, {"verdict_mismatches", rep.verdict_mismatches},
               {"cd_mismatches", rep.cd_mismatches}};
  }
  else
  {
    throw Error(ErrorCode::InvalidArgument, "--table must be 1 or 2");
  }
  if (problems > 0)
  {
    warn(std::to_string(problems) + " published value(s) not reproduced within tolerance");
  }
  return (problems > 0 && g.strict) ? kExitTolerance : kExitOk;
}

}  // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Allocate broadcasting revenue among sports clubs by audience"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals                            g;
  std::map<std::string, Format> const formats{{"table", Format::Table}, {"csv", Format::Csv}, {"json", Format::Json}};
  app.add_option("--format", g.format, "Output format: table, csv or json")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  app.add_flag("--strict", g.strict, "Exit with status 1 when a check exceeds its tolerance");
  app.add_option("--seed", g.seed, "Seed for randomized checks");

  auto const rules_help = "uniform, equal-split, concede-divide, compromise, split or escd; "
                          "parametric rules take :LAMBDA or --lambda";

  AllocateArgs allocate_args;
  auto        *allocate = app.add_subcommand("allocate", "Apply one allocation rule");
  allocate->add_option("--rule", allocate_args.rule, rules_help)->required();
  allocate->add_option("--lambda", allocate_args.lambda, "Rule parameter");
  allocate->add_option("--matrix", allocate_args.matrix, "Audience matrix CSV")->check(CLI::ExistingFile);
  allocate->add_option("--aggregates", allocate_args.aggregates, "Club audience totals CSV")
      ->check(CLI::ExistingFile);
  allocate->add_option("--endowment", allocate_args.endowment, "Money to distribute proportionally");

  DecomposeArgs decompose_args;
  auto         *decompose = app.add_subcommand("decompose", "Fit the fan model and compute the regression rule");
  decompose->add_option("--matrix", decompose_args.matrix, "Audience matrix CSV")
      ->required()
      ->check(CLI::ExistingFile);
  decompose->add_option("--reference-club", decompose_args.reference,
                        "Club whose own fans are fixed at zero (default: last club)");
  decompose->add_flag("--check-regression,--check-theorem1", decompose_args.check_regression,
                      "Verify the regression rule equals concede-and-divide for every reference club");
  decompose->add_option("--generic", decompose_args.generic, "Given generic fans per game");
  decompose->add_option("--club-fans", decompose_args.club_fans, "Given fans per club, one per club")
      ->delimiter(',');

  GameArgs game_args;
  auto    *game = app.add_subcommand("game", "Cooperative game built from the audience matrix");
  game->add_option("--matrix", game_args.matrix, "Audience matrix CSV")->required()->check(CLI::ExistingFile);
  game->add_option("--op", game_args.op, "shapley, egalitarian, eg-shapley or core-check")
      ->check(CLI::IsMember({"shapley", "egalitarian", "eg-shapley", "core-check"}));
  game->add_option("--beta", game_args.beta, "Weight of the Shapley value in eg-shapley");
  game->add_option("--allocation", game_args.allocation, "CSV of club,value to test for core membership")
      ->check(CLI::ExistingFile);
  game->add_option("--rule", game_args.rule, "Rule whose output is tested for core membership");
  game->add_option("--lambda", game_args.lambda, "Rule parameter");
  game->add_option("--method", game_args.method, "Shapley computation: subset or permutation")
      ->check(CLI::IsMember({"subset", "permutation"}));

  VoteArgs vote_args;
  auto    *vote = app.add_subcommand("vote", "Majority voting over rules");
  vote->add_option("--matrix", vote_args.matrix, "Audience matrix CSV")->check(CLI::ExistingFile);
  vote->add_option("--aggregates", vote_args.aggregates, "Club audience totals CSV")->check(CLI::ExistingFile);
  vote->add_option("--family", vote_args.family, "compromise or escd")->check(CLI::IsMember({"compromise", "escd"}));
  vote->add_option("--range", vote_args.range, "Parameter range LO HI")->expected(2);
  vote->add_option("--tournament", vote_args.tournament, "Comma-separated rules for a pairwise tournament")
      ->delimiter(',');

  LorenzArgs lorenz_args;
  auto      *lorenz = app.add_subcommand("lorenz", "Lorenz comparison of two rule outputs");
  lorenz->add_option("--matrix", lorenz_args.matrix, "Audience matrix CSV")->check(CLI::ExistingFile);
  lorenz->add_option("--aggregates", lorenz_args.aggregates, "Club audience totals CSV")->check(CLI::ExistingFile);
  lorenz->add_option("--left", lorenz_args.left, rules_help)->required();
  lorenz->add_option("--right", lorenz_args.right, rules_help)->required();
  lorenz->add_option("--lambda", lorenz_args.lambda, "Parameter for rules given without one");

  CancelledArgs cancelled_args;
  auto         *cancelled = app.add_subcommand("cancelled", "Allocate a season with cancelled games");
  cancelled->add_option("--matrix", cancelled_args.matrix, "Audience matrix CSV, empty cells for cancelled games")
      ->required()
      ->check(CLI::ExistingFile);
  cancelled->add_option("--endowment", cancelled_args.endowment, "Money to distribute")->required();
  cancelled->add_option("--operator", cancelled_args.op, "zero or leg")->check(CLI::IsMember({"zero", "leg"}));
  cancelled->add_option("--rule", cancelled_args.rule, rules_help);
  cancelled->add_option("--lambda", cancelled_args.lambda, "Rule parameter");

  AxiomsArgs axioms_args;
  auto      *axioms = app.add_subcommand("axioms", "Look for axiom violations of a rule");
  axioms->add_option("--rule", axioms_args.rule, rules_help)->required();
  axioms->add_option("--lambda", axioms_args.lambda, "Rule parameter");
  axioms->add_option("--matrix", axioms_args.matrix, "Audience matrix CSV")->check(CLI::ExistingFile);
  axioms->add_option("--suite", axioms_args.suite, "random: run on seeded random instances");
  axioms->add_option("--count", axioms_args.count, "Number of random instances");

  ReproduceArgs reproduce_args;
  auto         *reproduce = app.add_subcommand("reproduce", "Recompute the published season tables");
  reproduce->add_option("--table", reproduce_args.table, "1 (2016/17 audiences) or 2 (2017/18 rationalization)")
      ->required()
      ->check(CLI::IsMember({1, 2}));
  reproduce->add_option("--fixture", reproduce_args.fixture, "Season CSV (default: bundled fixture)")
      ->check(CLI::ExistingFile);
  reproduce->add_option("--money-tolerance", reproduce_args.money_tol, "Tolerance for money columns");
  reproduce->add_option("--percent-tolerance", reproduce_args.percent_tol, "Tolerance for percentage columns");
  reproduce->add_option("--cd-tolerance", reproduce_args.cd_tol, "Tolerance for the recomputed CD column");

  try
  {
    app.parse(argc, argv);
  }
  catch (CLI::ParseError const &e)
  {
    int const code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  Output out;
  int    status = kExitOk;
  try
  {
    if (*allocate)
    {
      status = run_allocate(allocate_args, g, out);
    }
    else if (*decompose)
    {
      status = run_decompose(decompose_args, g, out);
    }
    else if (*game)
    {
      status = run_game(game_args, g, out);
    }
    else if (*vote)
    {
      status = run_vote(vote_args, g, out);
    }
    else if (*lorenz)
    {
      status = run_lorenz(lorenz_args, g, out);
    }
    else if (*cancelled)
    {
      status = run_cancelled(cancelled_args, g, out);
    }
    else if (*axioms)
    {
      status = run_axioms(axioms_args, g, out);
    }
    else if (*reproduce)
    {
      status = run_reproduce(reproduce_args, g, out);
    }
  }
  catch (Error const &e)
  {
    std::cerr << "error (" << to_string(e.code()) << "): " << e.what() << '\n';
    return kExitInput;
  }
  render(out, g.format, std::cout);
  return status;
}
