#pragma once

// The (H, q) wedge-lifted code as a concrete linear code of length q², and its
// coordinate-wise binary trace code.
//
// Parity checks are 0/1 indicator rows of wedge point sets, one per
// (coset, point). Because the entries lie in GF(2), the rank over F_q equals
// the rank over GF(2) and the F_q-kernel is spanned by the GF(2)-kernel; all
// elimination therefore runs on bit-packed rows.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "wedge/classify.hpp"
#include "wedge/field.hpp"
#include "wedge/linalg.hpp"

namespace wedge {

// Coordinates ordered row-major: index = int(x)·q + int(y). 0^0 = 1.
std::vector<FieldElement> eval_monomial(Monomial m, const Field& field);

inline constexpr std::uint32_t kMaxMaterializedOrder = 256;
inline constexpr std::size_t kDefaultMemoryLimit = std::size_t{1} << 30;

struct BuildOptions {
  // Keep every parity-check row. When false only the row space is kept
  // ("dimension-only" mode).
  bool materialize = true;
  std::size_t memory_limit_bytes = kDefaultMemoryLimit;
  // Check every good-monomial evaluation against the parity checks.
  bool verify_kernel = true;
};

// Bytes needed to hold all t·q² parity rows of q² bits each.
std::size_t parity_matrix_bytes(const CosetFamily& fam);

class WedgeLiftedCode {
 public:
  // Throws ResourceGuardError when materialization would exceed the memory
  // guard (q > 256 or parity_matrix_bytes > limit). Throws InvariantError if a
  // good monomial fails a parity check.
  static WedgeLiftedCode build(const CosetFamily& fam, const BuildOptions& opts = {});

  const Field& field() const { return family_.field(); }
  const CosetFamily& family() const { return family_; }

  std::uint32_t length() const { return field().order() * field().order(); }
  std::size_t exact_dimension() const { return length() - row_space_.rank(); }
  std::size_t redundancy() const { return row_space_.rank(); }
  std::uint32_t repair_groups() const { return family_.coset_count(); }

  const std::vector<Monomial>& good_monomials() const { return good_; }
  std::size_t bad_count() const { return std::size_t{length()} - good_.size(); }

  bool has_parity_checks() const { return !parity_checks_.empty(); }
  // Row (j, p) at index j·q² + coordinate_index(p). Empty in dimension-only mode.
  const std::vector<Gf2Row>& parity_checks() const { return parity_checks_; }
  // Reduced row-echelon basis of the parity-check row space.
  const Gf2Basis& parity_row_space() const { return row_space_; }

  // F_q-kernel membership of a length-q² word.
  bool contains(std::span<const FieldElement> word) const;
  // GF(2) word membership (words over GF(2) ⊂ F_q).
  bool contains(const Gf2Row& word) const;

  // Basis of the code: the kernel of the parity checks. Entries are 0/1.
  std::vector<Gf2Row> kernel_basis() const { return row_space_.kernel(); }

 private:
  explicit WedgeLiftedCode(CosetFamily fam) : family_(std::move(fam)), row_space_(0) {}

  CosetFamily family_;
  std::vector<Monomial> good_;
  std::vector<Gf2Row> parity_checks_;
  Gf2Basis row_space_;
};

inline WedgeLiftedCode build_code(const CosetFamily& fam, const BuildOptions& opts = {}) {
  return WedgeLiftedCode::build(fam, opts);
}

// sum_i message[i] · eval(good_i). Throws UsageError on length mismatch.
std::vector<FieldElement> encode(const WedgeLiftedCode& code,
                                 std::span<const FieldElement> message);

struct BinaryTraceCode {
  std::size_t length = 0;
  std::size_t parent_dimension = 0;
  // Reduced row-echelon GF(2) basis of tr₂(C).
  std::vector<Gf2Row> generators;
  std::size_t dimension() const { return generators.size(); }
  std::size_t redundancy() const { return length - generators.size(); }
};

// Generators tr₂(β·g) for g in the kernel basis and β in {1, x, ..., x^(ell-1)},
// row-reduced over GF(2). Throws InvariantError if the Delsarte bounds
// dim C <= dim tr₂(C) <= ell·dim C fail.
BinaryTraceCode trace_code(const WedgeLiftedCode& code);

// Coordinate-wise trace of an F_q word.
Gf2Row trace_word(const Field& field, std::span<const FieldElement> word);

// Exponent log_N of the binary redundancy for t = N^(1/(2d)):
// 1/2 + log2(2 - 2^-d) / (2d). Throws UsageError for d < 1.
double redundancy_exponent(int d);

// "# q=<q> rows=<r> cols=<c>" then one row per line, lowercase hex entries.
void write_matrix_text(std::ostream& os, std::uint32_t q,
                       std::span<const std::vector<FieldElement>> rows, std::size_t cols);
void write_matrix_text(std::ostream& os, std::uint32_t q, std::span<const Gf2Row> rows,
                       std::size_t cols);

// Generator rows: evaluations of the good monomials.
std::vector<std::vector<FieldElement>> generator_rows(const WedgeLiftedCode& code);

// {"ell", "modulus", "subgroup_order", "coordinate_order"} as JSON.
void write_code_descriptor(std::ostream& os, const WedgeLiftedCode& code);

}  // namespace wedge
