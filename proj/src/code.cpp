#include "wedge/code.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <string>

#include "json.hpp"
#include "wedge/errors.hpp"

namespace wedge {
namespace {

// Bit k of every entry of an F_q word, as ell GF(2) rows.
std::vector<Gf2Row> bit_planes(std::span<const FieldElement> word, int ell) {
  std::vector<Gf2Row> planes(static_cast<std::size_t>(ell), Gf2Row(word.size()));
  for (std::size_t c = 0; c < word.size(); ++c) {
    std::uint32_t v = word[c].bits;
    for (int k = 0; v != 0; ++k, v >>= 1) {
      if (v & 1U) planes[static_cast<std::size_t>(k)].set(c);
    }
  }
  return planes;
}

}  // namespace

std::vector<FieldElement> eval_monomial(Monomial m, const Field& field) {
  const std::uint32_t q = field.order();
  if (m.a >= q || m.b >= q) throw UsageError("monomial exponents must lie in [0, q-1]");
  std::vector<FieldElement> ya(q);
  for (std::uint32_t y = 0; y < q; ++y) ya[y] = field.pow({y}, m.b);
  std::vector<FieldElement> out(std::size_t{q} * q);
  for (std::uint32_t x = 0; x < q; ++x) {
    const FieldElement xa = field.pow({x}, m.a);
    for (std::uint32_t y = 0; y < q; ++y) out[std::size_t{x} * q + y] = field.mul(xa, ya[y]);
  }
  return out;
}

std::size_t parity_matrix_bytes(const CosetFamily& fam) {
  const std::size_t n = std::size_t{fam.field().order()} * fam.field().order();
  return std::size_t{fam.coset_count()} * n * ((n + 63) / 64) * 8;
}

WedgeLiftedCode WedgeLiftedCode::build(const CosetFamily& fam, const BuildOptions& opts) {
  const Field& field = fam.field();
  const std::uint32_t q = field.order();
  if (opts.materialize) {
    const std::size_t bytes = parity_matrix_bytes(fam);
    if (q > kMaxMaterializedOrder || bytes > opts.memory_limit_bytes) {
      throw ResourceGuardError("parity-check matrix needs " + std::to_string(bytes) +
                               " bytes at q=" + std::to_string(q) +
                               "; use dimension-only mode");
    }
  }

  WedgeLiftedCode code(fam);
  const std::uint32_t n = q * q;
  for (std::uint32_t a = 0; a < q; ++a) {
    for (std::uint32_t b = 0; b < q; ++b) {
      if (!is_bad_coset_criterion({a, b}, fam.subgroup_order(), field.ell())) {
        code.good_.push_back({a, b});
      }
    }
  }

  code.row_space_ = Gf2Basis(n);
  if (opts.materialize) code.parity_checks_.reserve(std::size_t{fam.coset_count()} * n);
  for (std::size_t j = 0; j < fam.coset_count(); ++j) {
    for (std::uint32_t idx = 0; idx < n; ++idx) {
      Gf2Row row(n);
      for (std::uint32_t c : wedge_coordinates(field, {fam.coset(j), coordinate_point(q, idx)})) {
        row.set(c);
      }
      if (opts.materialize) code.parity_checks_.push_back(row);
      code.row_space_.insert(std::move(row));
    }
  }
  code.row_space_.to_rref();

  if (opts.verify_kernel) {
    for (Monomial m : code.good_) {
      if (!code.contains(eval_monomial(m, field))) {
        throw InvariantError("good monomial X^" + std::to_string(m.a) + " Y^" +
                             std::to_string(m.b) + " violates a wedge parity check");
      }
    }
  }
  return code;
}

bool WedgeLiftedCode::contains(std::span<const FieldElement> word) const {
  if (word.size() != length()) throw UsageError("word length must be q^2");
  const auto planes = bit_planes(word, field().ell());
  for (const Gf2Row& r : row_space_.rows()) {
    for (const Gf2Row& plane : planes) {
      if (r.dot(plane) != 0) return false;
    }
  }
  return true;
}

bool WedgeLiftedCode::contains(const Gf2Row& word) const {
  if (word.size() != length()) throw UsageError("word length must be q^2");
  for (const Gf2Row& r : row_space_.rows()) {
    if (r.dot(word) != 0) return false;
  }
  return true;
}

std::vector<FieldElement> encode(const WedgeLiftedCode& code,
                                 std::span<const FieldElement> message) {
  const auto& good = code.good_monomials();
  if (message.size() != good.size()) {
    throw UsageError("message length " + std::to_string(message.size()) + " != dimension " +
                     std::to_string(good.size()));
  }
  const Field& field = code.field();
  std::vector<FieldElement> word(code.length());
  for (std::size_t i = 0; i < good.size(); ++i) {
    if (message[i].is_zero()) continue;
    const auto row = eval_monomial(good[i], field);
    for (std::size_t c = 0; c < word.size(); ++c) word[c] += field.mul(message[i], row[c]);
  }
  return word;
}

Gf2Row trace_word(const Field& field, std::span<const FieldElement> word) {
  Gf2Row out(word.size());
  for (std::size_t c = 0; c < word.size(); ++c) {
    if (field.trace2(word[c]) != 0) out.set(c);
  }
  return out;
}

BinaryTraceCode trace_code(const WedgeLiftedCode& code) {
  const Field& field = code.field();
  const std::size_t n = code.length();
  Gf2Basis basis(n);
  const auto kernel = code.kernel_basis();
  std::vector<FieldElement> scaled(n);
  for (const Gf2Row& g : kernel) {
    for (int k = 0; k < field.ell(); ++k) {
      const FieldElement beta{std::uint32_t{1} << k};
      for (std::size_t c = 0; c < n; ++c) scaled[c] = g.get(c) ? beta : FieldElement{};
      basis.insert(trace_word(field, scaled));
    }
  }
  basis.to_rref();

  BinaryTraceCode out;
  out.length = n;
  out.parent_dimension = code.exact_dimension();
  out.generators = basis.rows();
  const std::size_t lo = out.parent_dimension;
  const std::size_t hi = lo * static_cast<std::size_t>(field.ell());
  if (out.dimension() < lo || out.dimension() > hi) {
    throw InvariantError("trace code dimension " + std::to_string(out.dimension()) +
                         " outside Delsarte bounds [" + std::to_string(lo) + ", " +
                         std::to_string(hi) + "]");
  }
  return out;
}

double redundancy_exponent(int d) {
  if (d < 1) throw UsageError("d must be positive");
  return 0.5 + std::log2(2.0 - std::ldexp(1.0, -d)) / (2.0 * d);
}

void write_matrix_text(std::ostream& os, std::uint32_t q,
                       std::span<const std::vector<FieldElement>> rows, std::size_t cols) {
  os << "# q=" << q << " rows=" << rows.size() << " cols=" << cols << '\n';
  const auto flags = os.flags();
  os << std::hex << std::nouppercase;
  for (const auto& row : rows) {
    if (row.size() != cols) throw UsageError("ragged matrix");
    for (std::size_t c = 0; c < cols; ++c) {
      if (c != 0) os << ' ';
      os << row[c].bits;
    }
    os << '\n';
  }
  os.flags(flags);
}

void write_matrix_text(std::ostream& os, std::uint32_t q, std::span<const Gf2Row> rows,
                       std::size_t cols) {
  os << "# q=" << q << " rows=" << rows.size() << " cols=" << cols << '\n';
  for (const Gf2Row& row : rows) {
    if (row.size() != cols) throw UsageError("ragged matrix");
    for (std::size_t c = 0; c < cols; ++c) {
      if (c != 0) os << ' ';
      os << (row.get(c) ? '1' : '0');
    }
    os << '\n';
  }
}

std::vector<std::vector<FieldElement>> generator_rows(const WedgeLiftedCode& code) {
  std::vector<std::vector<FieldElement>> rows;
  rows.reserve(code.good_monomials().size());
  for (Monomial m : code.good_monomials()) rows.push_back(eval_monomial(m, code.field()));
  return rows;
}

void write_code_descriptor(std::ostream& os, const WedgeLiftedCode& code) {
  const nlohmann::ordered_json j = {
      {"ell", code.field().ell()},
      {"modulus", code.field().modulus()},
      {"subgroup_order", code.family().subgroup_order()},
      {"coordinate_order", "row-major-poly-basis"},
  };
  os << j.dump(2) << '\n';
}

}  // namespace wedge
