#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace louvain {

using VertexId = std::uint32_t;
using EdgeIndex = std::uint64_t;
using CommunityId = std::uint32_t;
using Weight = double;

inline constexpr VertexId kInvalidVertex = std::numeric_limits<VertexId>::max();
inline constexpr CommunityId kInvalidCommunity = std::numeric_limits<CommunityId>::max();

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A file could not be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Input text does not follow the declared format.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

  /// 1-based line number, 0 when the error is not tied to a line.
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// The graph carries no edge weight, so modularity and degree statistics are undefined.
class EdgelessGraphError : public Error {
 public:
  using Error::Error;
};

/// Two partitions do not cover the same vertex set.
class MismatchError : public Error {
 public:
  using Error::Error;
};

/// A caller broke an operation's precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace louvain
