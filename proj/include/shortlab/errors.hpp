#pragma once

#include <stdexcept>
#include <string>

namespace shortlab {

// Bad argument or violated precondition. The CLI maps it to exit status 2.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Query outside the tabulated or certified range (also exit 2).
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Malformed input file (also exit 2).
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Memory, table size or combinatorial budget exhausted. Exit status 3.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace shortlab
