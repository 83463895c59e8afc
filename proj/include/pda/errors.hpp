#pragma once

#include <stdexcept>
#include <string>

namespace pda {

/// Base class for every error thrown by this library.
struct PdaError : std::runtime_error {
  explicit PdaError(const std::string& msg) : std::runtime_error(msg) {}
};

struct EmptyArrayError : PdaError {
  EmptyArrayError() : PdaError("array is empty") {}
};

/// C1: the star count of some column differs from the rest.
struct C1Violation : PdaError {
  int column;    // 1-based offending column
  int count;     // stars found in that column
  int expected;  // stars in the reference column (column 1)
  C1Violation(int column, int count, int expected)
      : PdaError("C1 violation: column " + std::to_string(column) + " has " +
                 std::to_string(count) + " stars, expected " + std::to_string(expected)),
        column(column), count(count), expected(expected) {}
};

/// C2: the symbol ids do not form the gap-free range [1:S].
struct C2Violation : PdaError {
  int missing_id;
  explicit C2Violation(int missing_id)
      : PdaError("C2 violation: symbol " + std::to_string(missing_id) + " never occurs"),
        missing_id(missing_id) {}
};

/// C3: two equal symbols whose 2x2 subarray is not star-crossed.
struct C3Violation : PdaError {
  int row1, col1, row2, col2;  // 1-based positions of the offending pair
  C3Violation(int row1, int col1, int row2, int col2)
      : PdaError("C3 violation: equal symbols at (" + std::to_string(row1) + "," +
                 std::to_string(col1) + ") and (" + std::to_string(row2) + "," +
                 std::to_string(col2) + ")"),
        row1(row1), col1(col1), row2(row2), col2(col2) {}
};

/// C4: the star pattern is not periodic with the claimed lambda.
struct C4Violation : PdaError {
  int row, col;
  C4Violation(int row, int col)
      : PdaError("C4 violation: star pattern mismatch at (" + std::to_string(row) + "," +
                 std::to_string(col) + ")"),
        row(row), col(col) {}
};

/// C5 cannot be satisfied: no uniform star-row assignment exists.
struct NoValidPhiError : PdaError {
  explicit NoValidPhiError(const std::string& why)
      : PdaError("no valid star-row assignment: " + why) {}
};

struct NonDivisibleLambdaError : PdaError {
  explicit NonDivisibleLambdaError(const std::string& why)
      : PdaError("lambda does not divide the array shape: " + why) {}
};

struct UnknownSymbolError : PdaError {
  explicit UnknownSymbolError(int id)
      : PdaError("symbol " + std::to_string(id) + " does not occur in the array") {}
};

struct NotRegularError : PdaError {
  explicit NotRegularError(const std::string& why) : PdaError(why) {}
};

struct UnevenStarRowsError : PdaError {
  UnevenStarRowsError() : PdaError("rows carry different star counts") {}
};

/// A construction produced output that fails its own postcondition.
struct VerificationFailedError : PdaError {
  explicit VerificationFailedError(const std::string& why)
      : PdaError("construction postcondition failed: " + why) {}
};

struct ConstructionFailedError : PdaError {
  explicit ConstructionFailedError(const std::string& why)
      : PdaError("construction failed: " + why) {}
};

struct CellBudgetError : PdaError {
  explicit CellBudgetError(const std::string& why)
      : PdaError("cell budget exceeded: " + why) {}
};

struct TooLargeError : PdaError {
  explicit TooLargeError(const std::string& why) : PdaError(why) {}
};

struct InvalidRangeError : PdaError {
  explicit InvalidRangeError(const std::string& why)
      : PdaError("parameters out of range: " + why) {}
};

struct DimensionMismatchError : PdaError {
  explicit DimensionMismatchError(const std::string& why) : PdaError(why) {}
};

struct BadDemandError : PdaError {
  explicit BadDemandError(const std::string& why) : PdaError(why) {}
};

struct DecodeFailureError : PdaError {
  int user, packet;
  DecodeFailureError(int user, int packet)
      : PdaError("user " + std::to_string(user) + " failed to decode packet " +
                 std::to_string(packet)),
        user(user), packet(packet) {}
};

struct BudgetExceededError : PdaError {
  explicit BudgetExceededError(const std::string& why)
      : PdaError("budget exceeded: " + why) {}
};

struct ParseError : PdaError {
  int line;
  ParseError(int line, const std::string& reason)
      : PdaError("parse error at line " + std::to_string(line) + ": " + reason),
        line(line) {}
};

struct VersionMismatchError : PdaError {
  explicit VersionMismatchError(const std::string& why)
      : PdaError("unsupported format version: " + why) {}
};

}  // namespace pda
