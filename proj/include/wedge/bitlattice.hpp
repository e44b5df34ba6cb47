#pragma once

// Bit-pattern arithmetic on fixed-width nonnegative integers: bitwise OR/AND,
// the 2-shadow partial order, and binomial coefficients mod 2 (Lucas, p = 2).
//
// Widths are always explicit. Two values compare only at the same width, and
// leading zeros are significant for the block conditions used by `classify`.

#include <cstdint>
#include <vector>

namespace wedge {

inline constexpr int kMaxBitWidth = 63;

class BitVector {
 public:
  // Throws UsageError unless 1 <= width <= kMaxBitWidth and value < 2^width.
  BitVector(std::uint64_t value, int width);

  std::uint64_t value() const { return value_; }
  int width() const { return width_; }
  int bit(int i) const { return static_cast<int>((value_ >> i) & 1U); }
  std::uint64_t all_ones() const { return (std::uint64_t{1} << width_) - 1; }

  friend bool operator==(const BitVector&, const BitVector&) = default;

 private:
  std::uint64_t value_;
  int width_;
};

BitVector bit_or(const BitVector& x, const BitVector& y);
BitVector bit_and(const BitVector& x, const BitVector& y);

// x <=_2 y: every set bit of x is set in y.
bool in_2_shadow(const BitVector& x, const BitVector& y);

// C(x, y) mod 2, which is 1 exactly when y <=_2 x.
int binom_mod2(const BitVector& x, const BitVector& y);

// All i <=_2 y, in increasing order; 2^popcount(y) entries.
std::vector<BitVector> enumerate_2_shadow(const BitVector& y);

// Calls fn(i) for every i <=_2 mask in increasing order; stops early if fn
// returns true. Returns whether it stopped early.
template <typename Fn>
bool any_in_2_shadow(std::uint64_t mask, Fn&& fn) {
  // Counting through the submasks of `mask` from below: (s - mask) & mask is
  // the next submask after s.
  std::uint64_t s = 0;
  while (true) {
    if (fn(s)) return true;
    if (s == mask) return false;
    s = (s - mask) & mask;
  }
}

}  // namespace wedge
