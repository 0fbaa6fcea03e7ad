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

#include <sstream>

using namespace sportscast;
using namespace sportscast::testing;

namespace {

ErrorCode read_error(std::string const &text)
{
  std::istringstream in(text);
  try
  {
    csv::read_matrix(in);
  }
  catch (Error const &e)
  {
    return e.code();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(read_matrix, intro_fixture)
{
  auto const a = csv::read_file(data_path("intro_three_clubs.csv"),
                                [](std::istream &in) { return csv::read_matrix(in); });
  EXPECT_EQ(to_vec(a.entries()), to_vec(intro_matrix().entries()));
}

TEST(read_matrix, errors)
{
  EXPECT_EQ(read_error("club,a,b,c\na,0,1,1\nb,1,0,1\n"), ErrorCode::NonSquare);
  EXPECT_EQ(read_error("club,a,b,c\na,0,1,1\nb,1,0,\nc,1,1,0\n"), ErrorCode::EmptyCell);
  EXPECT_EQ(read_error("club,a,b,c\na,0,1,1\nb,1,0,x\nc,1,1,0\n"), ErrorCode::ParseError);
  EXPECT_EQ(read_error("club,a,b,c\na,0,1,1\nc,1,0,1\nb,1,1,0\n"), ErrorCode::InvalidLabel);
  EXPECT_EQ(read_error("team,a,b,c\na,0,1,1\nb,1,0,1\nc,1,1,0\n"), ErrorCode::MissingColumn);
  EXPECT_EQ(read_error("club,a,b,c\na,0,-1,1\nb,1,0,1\nc,1,1,0\n"), ErrorCode::NegativeEntry);
  EXPECT_EQ(read_error("club,a,b,c\na,1,1,1\nb,1,0,1\nc,1,1,0\n"), ErrorCode::NonZeroDiagonal);
  EXPECT_EQ(read_error("club,a,b\na,0,1\nb,1,0\n"), ErrorCode::TooFewClubs);
  EXPECT_EQ(read_error("club,a,b,c\na,0,1\n"), ErrorCode::ParseError);
  EXPECT_EQ(read_error(""), ErrorCode::ParseError);
  EXPECT_THROW(csv::read_table_file("/nonexistent/file.csv"), Error);
}

TEST(read_matrix, comments_quotes_and_whitespace)
{
  std::istringstream in("# comment\n\nclub,\"Club, A\",B,C\n\"Club, A\", 0, 1.5 ,2\nB,1,0,1\nC,1,1,0\n");
  auto const         a = csv::read_matrix(in);
  EXPECT_EQ(a.labels().front(), "Club, A");
  EXPECT_EQ(a(0, 1), 1.5);
}

TEST(write_matrix, round_trip)
{
  MatrixSampler sampler(137);
  for (int t = 0; t < 20; ++t)
  {
    auto const        a = sampler.matrix(sampler.club_count(3, 8));
    std::stringstream buf;
    csv::write_matrix(buf, a);
    auto const back = csv::read_matrix(buf);
    EXPECT_EQ(to_vec(back.entries()), to_vec(a.entries()));
    EXPECT_EQ(back.labels(), a.labels());
  }
}

TEST(write_partial_matrix, round_trip)
{
  auto const p = csv::read_file(data_path("cancelled_example1.csv"),
                                [](std::istream &in) { return csv::read_partial_matrix(in); });
  std::stringstream buf;
  csv::write_partial_matrix(buf, p);
  auto const back = csv::read_partial_matrix(buf);
  EXPECT_EQ(back.missing_count(), p.missing_count());
  for (std::size_t i = 0; i < p.size(); ++i)
  {
    for (std::size_t j = 0; j < p.size(); ++j)
    {
      EXPECT_EQ(back(i, j), p(i, j));
    }
  }
}

TEST(read_aggregates, fixture_and_round_trip)
{
  auto const agg = csv::read_file(data_path("laliga_2016_17_aggregates.csv"),
                                  [](std::istream &in) { return csv::read_aggregates(in); });
  EXPECT_EQ(agg.size(), 20u);
  EXPECT_EQ(agg.labels()[2], "Atlético de Madrid");
  EXPECT_NEAR(2.0 * agg.total(), 356.98, 1e-9);
  std::stringstream buf;
  csv::write_aggregates(buf, agg);
  auto const back = csv::read_aggregates(buf);
  EXPECT_EQ(back.labels(), agg.labels());
  EXPECT_EQ(back.total(), agg.total());
}

TEST(read_values, basic)
{
  std::istringstream in("club,value\na,1\nb,2.5\n");
  auto const [values, labels] = csv::read_values(in);
  EXPECT_EQ(values, (std::vector<double>{1, 2.5}));
  EXPECT_EQ(labels, (std::vector<std::string>{"a", "b"}));
}

TEST(format_number, shortest_round_trip)
{
  EXPECT_EQ(csv::format_number(0.1), "0.1");
  EXPECT_EQ(csv::format_number(2.0), "2");
  EXPECT_EQ(csv::parse_number(csv::format_number(1.0 / 3.0)), 1.0 / 3.0);
}
