#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cocoa {

// Invalid run or experiment configuration (bad flag values, bad parameters).
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input data. Carries the 1-based line number and the byte offset
// of the offending line within the stream.
struct ParseError : std::runtime_error {
  ParseError(const std::string& what, std::size_t line, std::size_t byte)
      : std::runtime_error(what + " (line " + std::to_string(line) + ", byte " +
                           std::to_string(byte) + ")"),
        line_number(line),
        byte_offset(byte) {}

  std::size_t line_number;
  std::size_t byte_offset;
};

// Vector/matrix shape mismatch, or a block vector with support outside its
// partition block.
struct DimensionError : std::runtime_error {
  explicit DimensionError(const std::string& what) : std::runtime_error(what) {}
};

struct IoError : std::runtime_error {
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// A run produced a non-finite objective or iterate. Carries the round at
// which divergence was detected.
struct DivergedError : std::runtime_error {
  DivergedError(const std::string& what, int round_number)
      : std::runtime_error(what + " (round " + std::to_string(round_number) + ")"),
        round(round_number) {}

  int round;
};

}  // namespace cocoa
