#include "wedge/field.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <string>

#include "wedge/errors.hpp"

namespace wedge {
namespace {

// Index = ell. Entries for 2, 3, 4, 6, 8, 10, 12 are the published table; the
// rest are standard low-weight irreducibles.
constexpr std::array<std::uint32_t, kMaxFieldBits + 1> kModulus = {
    0,
    0b11,
    0b111,
    0b1011,
    0b10011,
    0b100101,
    0b1000011,
    0b10000011,
    0b100011011,
    0b1000010001,
    0b10000001001,
    0b100000000101,
    0b1000001010011,
    0x201B,
    0x4443,
    0x8003,
    0x1100B,
    0x20009,
    0x40081,
    0x80027,
    0x100009,
    0x200005,
    0x400003,
    0x800021,
    0x1000087,
};

int degree(std::uint64_t p) { return 63 - std::countl_zero(p); }

std::uint64_t poly_mod(std::uint64_t a, std::uint64_t m) {
  const int dm = degree(m);
  while (a != 0 && degree(a) >= dm) a ^= m << (degree(a) - dm);
  return a;
}

// Shift-and-add multiplication mod the modulus, used before tables exist.
std::uint32_t slow_mul(std::uint32_t a, std::uint32_t b, std::uint32_t modulus, int ell) {
  std::uint64_t r = 0;
  for (int i = 0; i < ell; ++i) {
    if ((b >> i) & 1U) r ^= std::uint64_t{a} << i;
  }
  return static_cast<std::uint32_t>(poly_mod(r, modulus));
}

std::uint32_t slow_pow(std::uint32_t a, std::uint64_t n, std::uint32_t modulus, int ell) {
  std::uint32_t r = 1;
  while (n != 0) {
    if (n & 1U) r = slow_mul(r, a, modulus, ell);
    a = slow_mul(a, a, modulus, ell);
    n >>= 1;
  }
  return r;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

std::uint32_t builtin_modulus(int ell) {
  if (ell < 1 || ell > kMaxFieldBits) {
    throw UsageError("field degree out of range [1, " + std::to_string(kMaxFieldBits) +
                     "]: " + std::to_string(ell));
  }
  return kModulus[static_cast<std::size_t>(ell)];
}

bool is_irreducible_gf2(std::uint64_t poly) {
  if (poly < 2) return false;
  const int d = degree(poly);
  for (std::uint64_t f = 2; degree(f) <= d / 2; ++f) {
    if (poly_mod(poly, f) == 0) return false;
  }
  return true;
}

FieldPtr Field::make(int ell) {
  const std::uint32_t modulus = builtin_modulus(ell);
  if (degree(modulus) != ell || !is_irreducible_gf2(modulus)) {
    throw InvariantError("built-in modulus for ell=" + std::to_string(ell) +
                         " is not an irreducible polynomial of degree ell");
  }

  auto f = std::shared_ptr<Field>(new Field());
  f->ell_ = ell;
  f->q_ = std::uint32_t{1} << ell;
  f->modulus_ = modulus;

  const std::uint64_t group_order = f->q_ - 1;
  const auto primes = prime_factors(group_order);
  std::uint32_t gen = 0;
  for (std::uint32_t c = 1; c < f->q_; ++c) {
    const bool full_order = std::all_of(primes.begin(), primes.end(), [&](std::uint64_t p) {
      return slow_pow(c, group_order / p, modulus, ell) != 1;
    });
    if (full_order) {
      gen = c;
      break;
    }
  }
  if (gen == 0) throw InvariantError("no generator found for ell=" + std::to_string(ell));
  f->generator_ = {gen};

  f->log_.assign(f->q_, 0);
  f->antilog_.assign(group_order, 0);
  std::uint32_t x = 1;
  for (std::uint32_t k = 0; k < group_order; ++k) {
    f->antilog_[k] = x;
    f->log_[x] = k;
    x = slow_mul(x, gen, modulus, ell);
  }
  if (x != 1) throw InvariantError("generator order check failed");
  return f;
}

FieldElement Field::element(std::uint32_t v) const {
  if (v >= q_) {
    throw UsageError("value " + std::to_string(v) + " is not an element of GF(" +
                     std::to_string(q_) + ")");
  }
  return {v};
}

FieldElement Field::inv(FieldElement a) const {
  if (a.is_zero()) throw DomainError("inverse of zero in GF(2^" + std::to_string(ell_) + ")");
  const std::uint32_t l = log_[a.bits];
  return {antilog_[l == 0 ? 0 : (q_ - 1) - l]};
}

FieldElement Field::pow(FieldElement a, std::uint64_t n) const {
  if (n == 0) return {1};
  if (a.is_zero()) return {};
  const std::uint64_t e = (std::uint64_t{log_[a.bits]} * (n % (q_ - 1))) % (q_ - 1);
  return {antilog_[e]};
}

int Field::trace2(FieldElement a) const {
  FieldElement sum{};
  FieldElement power = a;
  for (int i = 0; i < ell_; ++i) {
    sum += power;
    power = mul(power, power);
  }
  if (sum.bits > 1) throw InvariantError("trace left GF(2)");
  return static_cast<int>(sum.bits);
}

CosetFamily CosetFamily::make(FieldPtr field, std::uint32_t subgroup_order) {
  const std::uint32_t group_order = field->order() - 1;
  if (subgroup_order == 0 || group_order % subgroup_order != 0) {
    throw UsageError("subgroup order " + std::to_string(subgroup_order) +
                     " does not divide q-1 = " + std::to_string(group_order));
  }
  CosetFamily fam;
  fam.field_ = std::move(field);
  fam.h_ = subgroup_order;
  const Field& f = *fam.field_;
  const std::uint32_t t = group_order / subgroup_order;

  for (std::uint32_t k = 0; k < subgroup_order; ++k) {
    fam.subgroup_.push_back(f.exp(std::uint64_t{t} * k));
  }
  std::sort(fam.subgroup_.begin(), fam.subgroup_.end());

  for (std::uint32_t j = 0; j < t; ++j) {
    std::vector<FieldElement> coset;
    coset.reserve(subgroup_order);
    const FieldElement shift = f.exp(j);
    for (FieldElement h : fam.subgroup_) coset.push_back(f.mul(shift, h));
    std::sort(coset.begin(), coset.end());
    fam.cosets_.push_back(std::move(coset));
  }
  std::sort(fam.cosets_.begin(), fam.cosets_.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });

  fam.coset_of_.assign(f.order(), 0);
  std::vector<bool> seen(f.order(), false);
  for (std::uint32_t j = 0; j < t; ++j) {
    for (FieldElement e : fam.cosets_[j]) {
      if (e.is_zero() || seen[e.bits]) throw InvariantError("cosets do not partition F_q^x");
      seen[e.bits] = true;
      fam.coset_of_[e.bits] = j;
    }
  }
  return fam;
}

FieldElement subgroup_power_sum(const Field& field, std::span<const FieldElement> subgroup,
                                std::uint64_t n) {
  FieldElement sum{};
  for (FieldElement alpha : subgroup) sum += field.pow(alpha, n);
  return sum;
}

DyadicPlan plan_dyadic_parameters(std::uint64_t a_num, int b_exp, int n) {
  if (b_exp < 1 || b_exp > 5) throw UsageError("b_exp must be in [1, 5]");
  if (a_num == 0 || a_num >= (std::uint64_t{1} << b_exp)) {
    throw UsageError("a_num must satisfy 0 < a_num < 2^b_exp");
  }
  if (n < 1) throw UsageError("n must be positive");
  const std::uint64_t ell = (std::uint64_t{1} << b_exp) * static_cast<std::uint64_t>(n);
  if (ell > kMaxFieldBits) {
    throw UsageError("planned field degree " + std::to_string(ell) + " exceeds " +
                     std::to_string(kMaxFieldBits));
  }
  std::uint64_t h = 1;
  for (int i = 0; i < b_exp; ++i) {
    if ((a_num >> i) & 1U) h *= (std::uint64_t{1} << ((std::uint64_t{1} << i) * n)) + 1;
  }
  const std::uint64_t group_order = (std::uint64_t{1} << ell) - 1;
  if (group_order % h != 0) throw InvariantError("planned subgroup order does not divide q-1");
  return {static_cast<int>(ell), h, group_order / h};
}

}  // namespace wedge
