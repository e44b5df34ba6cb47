#include "wedge/classify.hpp"

#include <algorithm>
#include <ostream>

#include "wedge/bitlattice.hpp"
#include "wedge/errors.hpp"

namespace wedge {
namespace {

void require_exponents(const Field& field, Monomial m) {
  if (m.a >= field.order() || m.b >= field.order()) {
    throw UsageError("monomial exponents must lie in [0, q-1]");
  }
}

FieldElement evaluate(const Field& field, const Polynomial& poly, Point p) {
  FieldElement sum{};
  for (const Term& term : poly) {
    sum += field.mul(term.coeff, field.mul(field.pow(p.x, term.monomial.a),
                                           field.pow(p.y, term.monomial.b)));
  }
  return sum;
}

// v^e for every v in F_q, indexed by integer encoding.
std::vector<FieldElement> power_table(const Field& field, std::uint32_t e) {
  std::vector<FieldElement> out(field.order());
  for (std::uint32_t v = 0; v < field.order(); ++v) out[v] = field.pow({v}, e);
  return out;
}

FieldElement monomial_line_sum(const Field& field, std::span<const FieldElement> xa,
                               std::span<const FieldElement> yb,
                               std::span<const FieldElement> slopes, Point p) {
  const std::uint32_t q = field.order();
  FieldElement sum{};
  for (FieldElement s : slopes) {
    for (std::uint32_t t = 0; t < q; ++t) {
      const FieldElement y = field.mul(s, FieldElement{t} + p.x) + p.y;
      sum += field.mul(xa[t], yb[y.bits]);
    }
  }
  return sum;
}

FieldElement monomial_point_sum(const Field& field, std::span<const FieldElement> xa,
                                std::span<const FieldElement> yb, const Wedge& w) {
  FieldElement sum{};
  for (std::uint32_t idx : wedge_coordinates(field, w)) {
    const Point pt = coordinate_point(field.order(), idx);
    sum += field.mul(xa[pt.x.bits], yb[pt.y.bits]);
  }
  return sum;
}

}  // namespace

std::vector<std::uint32_t> wedge_coordinates(const Field& field, const Wedge& w) {
  const std::uint32_t q = field.order();
  std::vector<std::uint32_t> out;
  out.reserve(w.slopes.size() * q);
  for (FieldElement s : w.slopes) {
    for (std::uint32_t t = 0; t < q; ++t) {
      const FieldElement y = field.mul(s, FieldElement{t} + w.point.x) + w.point.y;
      out.push_back(coordinate_index(q, {{t}, y}));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Point> wedge_point_set(const Field& field, const Wedge& w) {
  std::vector<Point> out;
  for (std::uint32_t idx : wedge_coordinates(field, w)) {
    out.push_back(coordinate_point(field.order(), idx));
  }
  return out;
}

FieldElement wedge_restriction(const Field& field, const Polynomial& poly, const Wedge& w) {
  for (const Term& term : poly) require_exponents(field, term.monomial);
  FieldElement sum{};
  for (FieldElement s : w.slopes) {
    for (std::uint32_t t = 0; t < field.order(); ++t) {
      const Point pt{{t}, field.mul(s, FieldElement{t} + w.point.x) + w.point.y};
      sum += evaluate(field, poly, pt);
    }
  }
  return sum;
}

FieldElement wedge_point_sum(const Field& field, const Polynomial& poly, const Wedge& w) {
  for (const Term& term : poly) require_exponents(field, term.monomial);
  FieldElement sum{};
  for (const Point& pt : wedge_point_set(field, w)) sum += evaluate(field, poly, pt);
  return sum;
}

std::uint64_t oracle_cost(const Field& field,
                          std::span<const std::vector<FieldElement>> slope_sets) {
  const std::uint64_t q = field.order();
  std::uint64_t slopes = 0;
  for (const auto& s : slope_sets) slopes += s.size();
  return slopes * q * q * q;
}

bool is_good_oracle(const Field& field, Monomial m,
                    std::span<const std::vector<FieldElement>> slope_sets,
                    const OracleOptions& opts) {
  require_exponents(field, m);
  const std::uint64_t cost = oracle_cost(field, slope_sets) * (opts.cross_check ? 2 : 1);
  if (cost > opts.budget) {
    throw ResourceGuardError("oracle infeasible: " + std::to_string(cost) +
                             " evaluations exceed budget " + std::to_string(opts.budget) +
                             "; sample wedges instead");
  }
  const auto xa = power_table(field, m.a);
  const auto yb = power_table(field, m.b);
  const std::uint32_t q = field.order();
  bool good = true;
  for (const auto& slopes : slope_sets) {
    for (std::uint32_t idx = 0; idx < q * q; ++idx) {
      const Point p = coordinate_point(q, idx);
      const FieldElement lines = monomial_line_sum(field, xa, yb, slopes, p);
      if (opts.cross_check && slopes.size() % 2 == 1) {
        if (monomial_point_sum(field, xa, yb, Wedge{slopes, p}) != lines) {
          throw InvariantError("line-sum and point-sum wedge restrictions disagree");
        }
      }
      if (!lines.is_zero()) {
        good = false;
        if (!opts.cross_check) return false;
      }
    }
  }
  return good;
}

bool is_good_oracle(Monomial m, const CosetFamily& fam, const OracleOptions& opts) {
  return is_good_oracle(fam.field(), m, fam.cosets(), opts);
}

std::optional<std::pair<std::size_t, Point>> sample_bad_wedge(Monomial m, const CosetFamily& fam,
                                                               std::size_t wedges,
                                                               std::mt19937_64& rng) {
  const Field& field = fam.field();
  require_exponents(field, m);
  const auto xa = power_table(field, m.a);
  const auto yb = power_table(field, m.b);
  std::uniform_int_distribution<std::size_t> pick_coset(0, fam.coset_count() - 1);
  std::uniform_int_distribution<std::uint32_t> pick_elem(0, field.order() - 1);
  for (std::size_t k = 0; k < wedges; ++k) {
    const std::size_t j = pick_coset(rng);
    const Point p{{pick_elem(rng)}, {pick_elem(rng)}};
    if (!monomial_line_sum(field, xa, yb, fam.coset(j), p).is_zero()) return std::pair{j, p};
  }
  return std::nullopt;
}

bool is_bad_coset_criterion(Monomial m, std::uint32_t subgroup_order, int ell) {
  if (ell < 1 || ell > kMaxFieldBits) throw UsageError("field degree out of range");
  const std::uint64_t full = (std::uint64_t{1} << ell) - 1;
  if (subgroup_order == 0 || full % subgroup_order != 0) {
    throw UsageError("subgroup order must divide q-1");
  }
  const BitVector a(m.a, ell);
  const BitVector b(m.b, ell);
  if (bit_or(a, b).value() != full) return false;
  const std::uint64_t target = m.b % subgroup_order;
  return any_in_2_shadow(bit_and(a, b).value(),
                         [&](std::uint64_t i) { return i % subgroup_order == target; });
}

bool is_bad_block_criterion(Monomial m, int ell_prime, int d) {
  if (ell_prime < 1 || d < 1 || ell_prime * d > kMaxFieldBits) {
    throw UsageError("block parameters out of range");
  }
  const int ell = ell_prime * d;
  const BitVector a(m.a, ell);
  const BitVector b(m.b, ell);
  if (bit_or(a, b).value() != a.all_ones()) return false;
  for (int j = 0; j < ell_prime; ++j) {
    for (int r = 0; r < d; ++r) {
      const int hi = r * ell_prime + j;
      if (b.bit(hi) != 1 || a.bit(hi) != 0) continue;
      for (int s = 0; s < d; ++s) {
        const int lo = s * ell_prime + j;
        if (a.bit(lo) == 1 && b.bit(lo) == 0) return false;
      }
    }
  }
  return true;
}

std::uint32_t block_subgroup_order(int ell_prime, int d) {
  if (ell_prime < 1 || d < 1 || ell_prime * d > kMaxFieldBits) {
    throw UsageError("block parameters out of range");
  }
  const std::uint32_t q_minus_1 = (std::uint32_t{1} << (ell_prime * d)) - 1;
  return q_minus_1 / ((std::uint32_t{1} << ell_prime) - 1);
}

std::uint64_t count_bad(const CosetFamily& fam) {
  const std::uint32_t q = fam.field().order();
  std::uint64_t n = 0;
  for (std::uint32_t a = 0; a < q; ++a) {
    for (std::uint32_t b = 0; b < q; ++b) {
      if (is_bad_coset_criterion({a, b}, fam.subgroup_order(), fam.field().ell())) ++n;
    }
  }
  return n;
}

std::uint64_t count_bad_closed_form(int ell_prime, int d) {
  if (ell_prime < 1 || d < 1 || d > 62) throw UsageError("block parameters out of range");
  const std::uint64_t base = (std::uint64_t{1} << (d + 1)) - 1;
  std::uint64_t n = 1;
  for (int i = 0; i < ell_prime; ++i) n *= base;
  return n;
}

std::uint64_t count_bad_naive_bound(const CosetFamily& fam) {
  return std::uint64_t{fam.coset_count()} * fam.field().order();
}

std::vector<ClassificationRow> classify_all(const CosetFamily& fam) {
  const std::uint32_t q = fam.field().order();
  std::vector<ClassificationRow> rows;
  rows.reserve(std::size_t{q} * q);
  for (std::uint32_t a = 0; a < q; ++a) {
    for (std::uint32_t b = 0; b < q; ++b) {
      rows.push_back({{a, b},
                      is_bad_coset_criterion({a, b}, fam.subgroup_order(), fam.field().ell()),
                      "coset"});
    }
  }
  return rows;
}

void write_classification_csv(std::ostream& os, std::span<const ClassificationRow> rows) {
  os << "a,b,bad,criterion_used\n";
  for (const auto& r : rows) {
    os << r.monomial.a << ',' << r.monomial.b << ',' << (r.bad ? 1 : 0) << ',' << r.criterion
       << '\n';
  }
}

}  // namespace wedge
