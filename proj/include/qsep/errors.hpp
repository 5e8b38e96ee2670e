#pragma once

#include <stdexcept>
#include <string>

namespace qsep {

// Raised when an operation is asked to exceed its size cap (table width,
// search width, simulator width).  The CLI maps this to its own exit code,
// distinct from plain usage errors.
struct cap_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised by the text parsers (ANF expressions, truth-table files, tree
// JSON).  The message carries a position where that makes sense.
struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace qsep
