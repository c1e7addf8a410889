#pragma once

#include <stdexcept>
#include <string>

namespace isingfix {

// Domain and argument errors use std::invalid_argument / std::out_of_range.
// The two classes below carry the remaining failure kinds that callers (the
// CLI in particular) need to tell apart.

/// Malformed external input: WCNF text, instance JSON, weight files.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An enumeration or representation limit would be exceeded.
class LimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace isingfix
