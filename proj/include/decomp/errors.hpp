#pragma once

#include <stdexcept>
#include <string>

namespace decomp {

// Base class for every exception thrown by the library.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed textual input (bad rational literal, bad JSON, ...).
struct ParseError : Error {
  explicit ParseError(const std::string& what) : Error(what) {}
};

// Structurally valid input that violates the scenario schema.
struct SchemaError : Error {
  explicit SchemaError(const std::string& what) : Error(what) {}
};

// Shape mismatch between operands (matrix products, block sizes, ...).
struct DimensionError : Error {
  explicit DimensionError(const std::string& what) : Error(what) {}
};

// Input data that is well-formed but mathematically inconsistent
// (non-nested filtration steps, singular pairing, failed uniqueness, ...).
struct DataError : Error {
  explicit DataError(const std::string& what) : Error(what) {}
};

}  // namespace decomp
