#pragma once

#include <stdexcept>
#include <string>

namespace gluing {

/// Malformed or unsupported input (bad file, unknown symbol, non-expanding system, ...).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A construction produced something its invariants forbid.
class BuildError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace gluing
