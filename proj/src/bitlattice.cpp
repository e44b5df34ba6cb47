#include "wedge/bitlattice.hpp"

#include <string>

#include "wedge/errors.hpp"

namespace wedge {
namespace {

void require_same_width(const BitVector& x, const BitVector& y) {
  if (x.width() != y.width()) {
    throw UsageError("bit width mismatch: " + std::to_string(x.width()) + " vs " +
                     std::to_string(y.width()));
  }
}

}  // namespace

BitVector::BitVector(std::uint64_t value, int width) : value_(value), width_(width) {
  if (width < 1 || width > kMaxBitWidth) {
    throw UsageError("bit width out of range: " + std::to_string(width));
  }
  if (value >> width != 0) {
    throw UsageError("value " + std::to_string(value) + " does not fit in " +
                     std::to_string(width) + " bits");
  }
}

BitVector bit_or(const BitVector& x, const BitVector& y) {
  require_same_width(x, y);
  return BitVector(x.value() | y.value(), x.width());
}

BitVector bit_and(const BitVector& x, const BitVector& y) {
  require_same_width(x, y);
  return BitVector(x.value() & y.value(), x.width());
}

bool in_2_shadow(const BitVector& x, const BitVector& y) {
  require_same_width(x, y);
  return (x.value() & ~y.value()) == 0;
}

int binom_mod2(const BitVector& x, const BitVector& y) {
  return in_2_shadow(y, x) ? 1 : 0;
}

std::vector<BitVector> enumerate_2_shadow(const BitVector& y) {
  std::vector<BitVector> out;
  out.reserve(std::size_t{1} << __builtin_popcountll(y.value()));
  any_in_2_shadow(y.value(), [&](std::uint64_t s) {
    out.emplace_back(s, y.width());
    return false;
  });
  return out;
}

}  // namespace wedge
