#pragma once

#include <stdexcept>
#include <string>

namespace bgb {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct parse_error : error {
  using error::error;
};

// inv() of an element of the maximal ideal
struct non_unit : error {
  using error::error;
};

// matrix with non-unit determinant where GL membership is required
struct non_invertible : error {
  using error::error;
};

struct block_not_invertible : error {
  using error::error;
};

// 2x2 input whose unit pattern is not "top-right unit, rest in the maximal ideal"
struct not_in_m2 : error {
  using error::error;
};

struct budget_exceeded : error {
  using error::error;
};

struct ring_mismatch : error {
  using error::error;
};

} // namespace bgb
