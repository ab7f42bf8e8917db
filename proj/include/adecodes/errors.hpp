#pragma once

#include <stdexcept>
#include <string>

namespace adecodes {

/// Malformed or inconsistent user input (bad labels, non-prime p, a dual
/// generator that does not annihilate the kernel, ...).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A configured size cap was exceeded (enumeration, subgroup search, DAG).
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace adecodes
