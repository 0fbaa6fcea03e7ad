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

#include <stdexcept>
#include <string>
#include <string_view>

namespace sportscast {

enum class ErrorCode
{
  NonSquare,
  NonZeroDiagonal,
  NegativeEntry,
  TooFewClubs,
  InvalidLabel,
  EmptyCell,
  ParseError,
  LambdaOutOfRange,
  BetaOutOfRange,
  ZeroTotalAudience,
  Degenerate,
  SingularSystem,
  InconsistentDecomposition,
  TooManyPlayers,
  InvalidRange,
  UnequalSums,
  DimensionMismatch,
  InvalidPermutation,
  MissingColumn,
  InvalidArgument,
};

constexpr std::string_view to_string(ErrorCode code) noexcept
{
  switch (code)
  {
  case ErrorCode::NonSquare:
    return "NonSquare";
  case ErrorCode::NonZeroDiagonal:
    return "NonZeroDiagonal";
  case ErrorCode::NegativeEntry:
    return "NegativeEntry";
  case ErrorCode::TooFewClubs:
    return "TooFewClubs";
  case ErrorCode::InvalidLabel:
    return "InvalidLabel";
  case ErrorCode::EmptyCell:
    return "EmptyCell";
  case ErrorCode::ParseError:
    return "ParseError";
  case ErrorCode::LambdaOutOfRange:
    return "LambdaOutOfRange";
  case ErrorCode::BetaOutOfRange:
    return "BetaOutOfRange";
  case ErrorCode::ZeroTotalAudience:
    return "ZeroTotalAudience";
  case ErrorCode::Degenerate:
    return "Degenerate";
  case ErrorCode::SingularSystem:
    return "SingularSystem";
  case ErrorCode::InconsistentDecomposition:
    return "InconsistentDecomposition";
  case ErrorCode::TooManyPlayers:
    return "TooManyPlayers";
  case ErrorCode::InvalidRange:
    return "InvalidRange";
  case ErrorCode::UnequalSums:
    return "UnequalSums";
  case ErrorCode::DimensionMismatch:
    return "DimensionMismatch";
  case ErrorCode::InvalidPermutation:
    return "InvalidPermutation";
  case ErrorCode::MissingColumn:
    return "MissingColumn";
  case ErrorCode::InvalidArgument:
    return "InvalidArgument";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error
{
public:
  Error(ErrorCode code, std::string const &what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what)
    , code_(code)
  {}

  ErrorCode code() const noexcept
  {
    return code_;
  }

private:
  ErrorCode code_;
};

}  // namespace sportscast
