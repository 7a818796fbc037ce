#pragma once

#include <stdexcept>
#include <string>

namespace cambrian {

// Bad input: malformed matrices, unknown generator names, incomparable
// endpoints, structures that fail lattice validation, and similar.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// A numeric computation could not be certified: an ambiguous sign under the
// floating-point tolerance policy, or coefficient overflow in exact mode.
// Never a silent wrong answer.
class ArithmeticError : public std::runtime_error {
 public:
  explicit ArithmeticError(const std::string& what) : std::runtime_error(what) {}
};

// A configured resource bound (element count, length cap) was exceeded.
class LimitError : public std::runtime_error {
 public:
  explicit LimitError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cambrian
