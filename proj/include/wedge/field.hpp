#pragma once

// GF(2^ell) arithmetic with log/antilog tables, the absolute trace to GF(2),
// and the coset machinery for subgroups of the multiplicative group.
//
// Elements are encoded as integers whose bit k is the coefficient of x^k in
// the polynomial basis. That integer encoding is the "fixed order" on field
// elements used by every coordinate ordering in the library.

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace wedge {

inline constexpr int kMaxFieldBits = 24;

struct FieldElement {
  std::uint32_t bits = 0;

  bool is_zero() const { return bits == 0; }
  friend auto operator<=>(const FieldElement&, const FieldElement&) = default;
};

// Characteristic 2: addition and subtraction are both XOR.
inline FieldElement operator+(FieldElement a, FieldElement b) { return {a.bits ^ b.bits}; }
inline FieldElement& operator+=(FieldElement& a, FieldElement b) {
  a.bits ^= b.bits;
  return a;
}

// Built-in modulus for GF(2^ell), including the x^ell term.
std::uint32_t builtin_modulus(int ell);

// Exhaustive trial division by every polynomial of degree <= deg/2.
bool is_irreducible_gf2(std::uint64_t poly);

class Field;
using FieldPtr = std::shared_ptr<const Field>;

class Field {
 public:
  // Throws UsageError unless 1 <= ell <= kMaxFieldBits. Irreducibility of the
  // built-in modulus is re-checked here.
  static FieldPtr make(int ell);

  int ell() const { return ell_; }
  std::uint32_t order() const { return q_; }
  std::uint32_t modulus() const { return modulus_; }
  FieldElement generator() const { return generator_; }

  // Throws UsageError if v >= q.
  FieldElement element(std::uint32_t v) const;

  FieldElement add(FieldElement a, FieldElement b) const { return a + b; }
  FieldElement mul(FieldElement a, FieldElement b) const {
    if (a.is_zero() || b.is_zero()) return {};
    std::uint32_t s = log_[a.bits] + log_[b.bits];
    if (s >= q_ - 1) s -= q_ - 1;
    return {antilog_[s]};
  }
  // Throws DomainError on zero.
  FieldElement inv(FieldElement a) const;
  // 0^0 = 1.
  FieldElement pow(FieldElement a, std::uint64_t n) const;

  // Discrete log base generator(); a must be nonzero.
  std::uint32_t log(FieldElement a) const { return log_[a.bits]; }
  // generator()^k.
  FieldElement exp(std::uint64_t k) const { return {antilog_[k % (q_ - 1)]}; }

  // sum_{i<ell} a^(2^i), always 0 or 1.
  int trace2(FieldElement a) const;

 private:
  Field() = default;

  int ell_ = 0;
  std::uint32_t q_ = 0;
  std::uint32_t modulus_ = 0;
  FieldElement generator_;
  std::vector<std::uint32_t> log_;
  std::vector<std::uint32_t> antilog_;
};

inline FieldPtr make_field(int ell) { return Field::make(ell); }

// The subgroup H of order h in F_q^x together with its t = (q-1)/h cosets.
class CosetFamily {
 public:
  // H = { g^(t*k) : 0 <= k < h }; cosets g^j H for 0 <= j < t.
  // Throws UsageError unless h divides q-1.
  static CosetFamily make(FieldPtr field, std::uint32_t subgroup_order);

  const Field& field() const { return *field_; }
  const FieldPtr& field_ptr() const { return field_; }
  std::uint32_t subgroup_order() const { return h_; }
  std::uint32_t coset_count() const { return static_cast<std::uint32_t>(cosets_.size()); }

  // Sorted by integer encoding.
  std::span<const FieldElement> subgroup() const { return subgroup_; }
  // Each coset sorted ascending; cosets ordered by their minimum element.
  const std::vector<std::vector<FieldElement>>& cosets() const { return cosets_; }
  std::span<const FieldElement> coset(std::size_t j) const { return cosets_.at(j); }
  // Index of the coset containing a nonzero element.
  std::size_t coset_index(FieldElement a) const { return coset_of_[a.bits]; }

 private:
  FieldPtr field_;
  std::uint32_t h_ = 0;
  std::vector<FieldElement> subgroup_;
  std::vector<std::vector<FieldElement>> cosets_;
  std::vector<std::uint32_t> coset_of_;
};

// sum_{alpha in subgroup} alpha^n, by direct summation.
FieldElement subgroup_power_sum(const Field& field, std::span<const FieldElement> subgroup,
                                std::uint64_t n);

struct DyadicPlan {
  int ell = 0;
  std::uint64_t subgroup_order = 0;
  std::uint64_t coset_count = 0;
};

// Parameters realizing t ~ N^alpha for alpha = (1 - a_num / 2^b_exp) / 2:
// ell = 2^b_exp * n and h = prod over set bits i of a_num of (2^(2^i n) + 1).
// Throws UsageError unless 0 < a_num < 2^b_exp, n >= 1 and ell <= kMaxFieldBits.
DyadicPlan plan_dyadic_parameters(std::uint64_t a_num, int b_exp, int n);

}  // namespace wedge
