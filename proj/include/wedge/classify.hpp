#pragma once

// Good/bad classification of monomials X^a Y^b for wedge-lifted codes.
//
// Three independent routes are provided:
//   * is_good_oracle: brute force over every wedge of the family;
//   * is_bad_coset_criterion: a∨b = q-1 and some i ≡ b (mod h) with i ≤₂ a∧b;
//   * is_bad_block_criterion: the bit-block test, valid only when
//     q = 2^(ell'·d) and h = (q-1)/(2^ell' - 1).

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "wedge/field.hpp"

namespace wedge {

struct Monomial {
  std::uint32_t a = 0;  // exponent of X
  std::uint32_t b = 0;  // exponent of Y
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

struct Term {
  Monomial monomial;
  FieldElement coeff{1};
};
using Polynomial = std::vector<Term>;

struct Point {
  FieldElement x;
  FieldElement y;
  friend auto operator<=>(const Point&, const Point&) = default;
};

// Row-major coordinate of a point: int(x)·q + int(y).
inline std::uint32_t coordinate_index(std::uint32_t q, Point p) { return p.x.bits * q + p.y.bits; }
inline Point coordinate_point(std::uint32_t q, std::uint32_t index) {
  return {{index / q}, {index % q}};
}

// Lines through `point` with slopes in `slopes`: L(T) = (T, s(T - x) + y).
struct Wedge {
  std::span<const FieldElement> slopes;
  Point point;
};

// Distinct points of the wedge, sorted by coordinate index. Size is
// |slopes|·(q-1) + 1 when 0 is not a slope.
std::vector<Point> wedge_point_set(const Field& field, const Wedge& w);
std::vector<std::uint32_t> wedge_coordinates(const Field& field, const Wedge& w);

// Line-sum form: sum over slopes s and T in F_q of P(T, s(T - x) + y).
FieldElement wedge_restriction(const Field& field, const Polynomial& poly, const Wedge& w);
// Point-set form: sum of P over the distinct wedge points. Agrees with the
// line-sum form when the number of slopes is odd.
FieldElement wedge_point_sum(const Field& field, const Polynomial& poly, const Wedge& w);

#ifdef NDEBUG
inline constexpr bool kDebugBuild = false;
#else
inline constexpr bool kDebugBuild = true;
#endif

inline constexpr std::uint64_t kDefaultOracleBudget = 1'000'000'000;

struct OracleOptions {
  // Upper bound on field evaluations for one monomial.
  std::uint64_t budget = kDefaultOracleBudget;
  // Also evaluate the point-set form and throw InvariantError on disagreement.
  bool cross_check = kDebugBuild;
};

// Cost in evaluations of the exhaustive oracle for one monomial.
std::uint64_t oracle_cost(const Field& field, std::span<const std::vector<FieldElement>> slope_sets);

// True iff the wedge restriction vanishes for every slope set and every point.
// Accepts arbitrary slope sets (not only cosets). Throws ResourceGuardError when
// oracle_cost exceeds the budget.
bool is_good_oracle(const Field& field, Monomial m,
                    std::span<const std::vector<FieldElement>> slope_sets,
                    const OracleOptions& opts = {});
bool is_good_oracle(Monomial m, const CosetFamily& fam, const OracleOptions& opts = {});

// Checks `wedges` random (coset, point) pairs. Returns the first wedge with a
// nonzero restriction, if any. Any hit proves the monomial bad.
std::optional<std::pair<std::size_t, Point>> sample_bad_wedge(Monomial m, const CosetFamily& fam,
                                                               std::size_t wedges,
                                                               std::mt19937_64& rng);

bool is_bad_coset_criterion(Monomial m, std::uint32_t subgroup_order, int ell);
bool is_bad_block_criterion(Monomial m, int ell_prime, int d);

// Subgroup order (q-1)/(2^ell' - 1) for q = 2^(ell'·d).
std::uint32_t block_subgroup_order(int ell_prime, int d);

// Exhaustive count of bad monomials by the coset criterion.
std::uint64_t count_bad(const CosetFamily& fam);
// (2^(d+1) - 1)^ell'.
std::uint64_t count_bad_closed_form(int ell_prime, int d);
// t·q, the count argued by the naive bound.
std::uint64_t count_bad_naive_bound(const CosetFamily& fam);

struct ClassificationRow {
  Monomial monomial;
  bool bad = false;
  std::string criterion;  // "coset", "block" or "oracle"
};

// All q² monomials in order (a, b) row-major, classified by the coset criterion.
std::vector<ClassificationRow> classify_all(const CosetFamily& fam);

// CSV with header "a,b,bad,criterion_used".
void write_classification_csv(std::ostream& os, std::span<const ClassificationRow> rows);

}  // namespace wedge
