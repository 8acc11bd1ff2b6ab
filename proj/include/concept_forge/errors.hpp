#pragma once

#include <stdexcept>

namespace concept_forge {

// User-supplied parameter outside its documented range (s, p, optimizer settings, ...).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input data: files that do not parse, shape or
// dimension mismatches, unknown feature names.
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace concept_forge
