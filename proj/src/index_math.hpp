#pragma once

#include <cstddef>

namespace geomwave::detail {

constexpr std::ptrdiff_t floor_div(std::ptrdiff_t a, std::ptrdiff_t b) {
  const std::ptrdiff_t q = a / b;
  return (a % b != 0 && ((a < 0) != (b < 0))) ? q - 1 : q;
}

constexpr std::ptrdiff_t ceil_div(std::ptrdiff_t a, std::ptrdiff_t b) {
  return -floor_div(-a, b);
}

constexpr std::ptrdiff_t mod(std::ptrdiff_t a, std::ptrdiff_t b) {
  const std::ptrdiff_t r = a % b;
  return r < 0 ? r + b : r;
}

}  // namespace geomwave::detail
