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
#include "sportscast/cancellation.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace sportscast::csv {

/// Header plus data rows. Blank lines and lines starting with '#' are skipped.
struct Table
{
  std::vector<std::string>              header;
  std::vector<std::vector<std::string>> rows;

  std::optional<std::size_t> column(std::string_view name) const
  {
    for (std::size_t i = 0; i < header.size(); ++i)
    {
      if (header[i] == name)
      {
        return i;
      }
    }
    return std::nullopt;
  }

  std::size_t require_column(std::string_view name) const
  {
    auto c = column(name);
    if (!c)
    {
      throw Error(ErrorCode::MissingColumn, "missing column '" + std::string(name) + "'");
    }
    return *c;
  }
};

namespace detail {

inline std::string trim(std::string_view s)
{
  auto const first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos)
  {
    return {};
  }
  auto const last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

inline std::vector<std::string> split_line(std::string_view line)
{
  std::vector<std::string> fields;
  std::string              cur;
  bool                     quoted = false;
  bool                     was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i)
  {
    char const c = line[i];
    if (quoted)
    {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"')
      {
        cur += '"';
        ++i;
      }
      else if (c == '"')
      {
        quoted = false;
      }
      else
      {
        cur += c;
      }
    }
    else if (c == '"')
    {
      quoted = true;
      was_quoted = true;
    }
    else if (c == ',')
    {
      fields.push_back(was_quoted ? cur : trim(cur));
      cur.clear();
      was_quoted = false;
    }
    else
    {
      cur += c;
    }
  }
  if (quoted)
  {
    throw Error(ErrorCode::ParseError, "unterminated quoted field");
  }
  fields.push_back(was_quoted ? cur : trim(cur));
  return fields;
}

inline std::string quote(std::string const &field)
{
  if (field.find_first_of(",\"\n") == std::string::npos)
  {
    return field;
  }
  std::string out = "\"";
  for (char c : field)
  {
    if (c == '"')
    {
      out += '"';
    }
    out += c;
  }
  return out + "\"";
}

}  // namespace detail

inline Table read_table(std::istream &in)
{
  Table       t;
  std::string line;
  bool        have_header = false;
  while (std::getline(in, line))
  {
    auto const trimmed = detail::trim(line);
    if (trimmed.empty() || trimmed.front() == '#')
    {
      continue;
    }
    auto fields = detail::split_line(line);
    if (!have_header)
    {
      t.header = std::move(fields);
      have_header = true;
    }
    else
    {
      if (fields.size() != t.header.size())
      {
        throw Error(ErrorCode::ParseError, "row has " + std::to_string(fields.size()) +
                                               " fields, header has " +
                                               std::to_string(t.header.size()));
      }
      t.rows.push_back(std::move(fields));
    }
  }
  if (!have_header)
  {
    throw Error(ErrorCode::ParseError, "empty CSV input");
  }
  return t;
}

inline Table read_table_file(std::string const &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
  }
  return read_table(in);
}

inline double parse_number(std::string_view text)
{
  double value = 0.0;
  if (text.empty())
  {
    throw Error(ErrorCode::EmptyCell, "empty cell where a number is required");
  }
  auto const res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
  {
    throw Error(ErrorCode::ParseError, "not a number: '" + std::string(text) + "'");
  }
  return value;
}

/// Shortest decimal form that reads back to the same double.
inline std::string format_number(double v)
{
  char       buf[32];
  auto const res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace detail {

template <typename Cell, typename ParseCell>
std::pair<std::vector<std::vector<Cell>>, std::vector<std::string>>
read_grid(Table const &t, ParseCell parse)
{
  if (t.header.empty() || t.header.front() != "club")
  {
    throw Error(ErrorCode::MissingColumn, "matrix header must start with 'club'");
  }
  std::vector<std::string> labels(t.header.begin() + 1, t.header.end());
  std::size_t const        n = labels.size();
  if (t.rows.size() != n)
  {
    throw Error(ErrorCode::NonSquare, "matrix has " + std::to_string(t.rows.size()) +
                                          " rows and " + std::to_string(n) + " columns");
  }
  std::vector<std::vector<Cell>> grid(n, std::vector<Cell>(n));
  for (std::size_t i = 0; i < n; ++i)
  {
    if (t.rows[i][0] != labels[i])
    {
      throw Error(ErrorCode::InvalidLabel,
                  "row " + std::to_string(i + 1) + " is labelled '" + t.rows[i][0] +
                      "' but column " + std::to_string(i + 1) + " is '" + labels[i] + "'");
    }
    for (std::size_t j = 0; j < n; ++j)
    {
      grid[i][j] = parse(t.rows[i][j + 1]);
    }
  }
  return {std::move(grid), std::move(labels)};
}

}  // namespace detail

/// Complete matrix: `club,<l1>,...` header, then `<li>,a_i1,...,a_in` rows.
inline AudienceMatrix read_matrix(std::istream &in)
{
  auto [grid, labels] =
      detail::read_grid<double>(read_table(in), [](std::string const &s) { return parse_number(s); });
  return validate_matrix(grid, std::move(labels));
}

/// Same layout as read_matrix, but empty cells mark cancelled games.
inline PartialAudienceMatrix read_partial_matrix(std::istream &in)
{
  auto [grid, labels] = detail::read_grid<std::optional<double>>(
      read_table(in), [](std::string const &s) -> std::optional<double> {
        if (s.empty())
        {
          return std::nullopt;
        }
        return parse_number(s);
      });
  return PartialAudienceMatrix::from_grid(grid, std::move(labels));
}

/// `club,audience` rows of per-club totals.
inline AggregateAudience read_aggregates(std::istream &in)
{
  auto const  t = read_table(in);
  auto const  club = t.require_column("club");
  auto const  audience = t.require_column("audience");
  std::vector<double>      totals;
  std::vector<std::string> labels;
  for (auto const &row : t.rows)
  {
    labels.push_back(row[club]);
    totals.push_back(parse_number(row[audience]));
  }
  return AggregateAudience::from_club_totals(std::move(totals), std::move(labels));
}

/// `club,value` rows; returns values in file order with their labels.
inline std::pair<std::vector<double>, std::vector<std::string>> read_values(std::istream &in)
{
  auto const  t = read_table(in);
  auto const  club = t.require_column("club");
  auto const  value = t.require_column("value");
  std::vector<double>      values;
  std::vector<std::string> labels;
  for (auto const &row : t.rows)
  {
    labels.push_back(row[club]);
    values.push_back(parse_number(row[value]));
  }
  return {std::move(values), std::move(labels)};
}

template <typename Reader>
auto read_file(std::string const &path, Reader reader)
{
  std::ifstream in(path);
  if (!in)
  {
    throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
  }
  return reader(in);
}

inline void write_matrix(std::ostream &out, AudienceMatrix const &a)
{
  out << "club";
  for (auto const &label : a.labels())
  {
    out << ',' << detail::quote(label);
  }
  out << '\n';
  for (std::size_t i = 0; i < a.size(); ++i)
  {
    out << detail::quote(a.labels()[i]);
    for (std::size_t j = 0; j < a.size(); ++j)
    {
      out << ',' << format_number(a(i, j));
    }
    out << '\n';
  }
}

inline void write_partial_matrix(std::ostream &out, PartialAudienceMatrix const &p)
{
  out << "club";
  for (auto const &label : p.labels())
  {
    out << ',' << detail::quote(label);
  }
  out << '\n';
  for (std::size_t i = 0; i < p.size(); ++i)
  {
    out << detail::quote(p.labels()[i]);
    for (std::size_t j = 0; j < p.size(); ++j)
    {
      out << ',';
      if (p(i, j))
      {
        out << format_number(*p(i, j));
      }
    }
    out << '\n';
  }
}

inline void write_aggregates(std::ostream &out, AggregateAudience const &agg)
{
  out << "club,audience\n";
  for (std::size_t i = 0; i < agg.size(); ++i)
  {
    out << detail::quote(agg.labels()[i]) << ',' << format_number(agg.club(i)) << '\n';
  }
}

}  // namespace sportscast::csv
