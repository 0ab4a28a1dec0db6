// Copyright 2026 The remetrize Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace remetrize {

/// Base of every library error. `kind()` is the stable name used in
/// machine-readable failure lists.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual std::string_view kind() const noexcept { return "Error"; }
};

#define REMETRIZE_DEFINE_ERROR(Name, Kind)                                \
  class Name : public Error {                                             \
   public:                                                                \
    using Error::Error;                                                   \
    std::string_view kind() const noexcept override { return Kind; }      \
  };

// coding
REMETRIZE_DEFINE_ERROR(SequenceTooLong, "SequenceTooLong")
REMETRIZE_DEFINE_ERROR(PositionOverflow, "PositionOverflow")

// closed_trees
REMETRIZE_DEFINE_ERROR(ChildSearchExhausted, "ChildSearchExhausted")
REMETRIZE_DEFINE_ERROR(InvalidTree, "InvalidTree")

// luzin
REMETRIZE_DEFINE_ERROR(NotUltrametric, "NotUltrametric")
REMETRIZE_DEFINE_ERROR(CellSearchExhausted, "CellSearchExhausted")
REMETRIZE_DEFINE_ERROR(ImageWitnessExhausted, "WitnessSearchExhausted")
REMETRIZE_DEFINE_ERROR(SplitSearchExhausted, "SplitSearchExhausted")

// witness
REMETRIZE_DEFINE_ERROR(WitnessSearchExhausted, "WitnessSearchExhausted")

// remetrize
REMETRIZE_DEFINE_ERROR(NotInterior, "NotInterior")
REMETRIZE_DEFINE_ERROR(OnBoundary, "OnBoundary")
REMETRIZE_DEFINE_ERROR(CrossSide, "CrossSide")

// codes
REMETRIZE_DEFINE_ERROR(MalformedCode, "MalformedCode")
REMETRIZE_DEFINE_ERROR(CauchyRateViolation, "CauchyRateViolation")
REMETRIZE_DEFINE_ERROR(InsufficientDensePoints, "InsufficientDensePoints")

// cli
REMETRIZE_DEFINE_ERROR(UnknownCatalogName, "UnknownCatalogName")
REMETRIZE_DEFINE_ERROR(DslEvaluationError, "DslEvaluationError")

#undef REMETRIZE_DEFINE_ERROR

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
              message),
        line_(line),
        column_(column),
        message_(message) {}

  std::string_view kind() const noexcept override { return "ParseError"; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string message_;
};

}  // namespace remetrize
