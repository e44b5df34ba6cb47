#pragma once

// Dense linear algebra over GF(2) (bit-packed rows) and over GF(2^ell).
// Pivoting takes the first nonzero entry in column order; no tolerances.

#include <cstdint>
#include <span>
#include <vector>

#include "wedge/field.hpp"

namespace wedge {

class Gf2Row {
 public:
  Gf2Row() = default;
  explicit Gf2Row(std::size_t cols) : cols_(cols), words_((cols + 63) / 64, 0) {}

  std::size_t size() const { return cols_; }
  bool get(std::size_t c) const { return (words_[c / 64] >> (c % 64)) & 1U; }
  void set(std::size_t c, bool v = true) {
    const std::uint64_t m = std::uint64_t{1} << (c % 64);
    if (v) {
      words_[c / 64] |= m;
    } else {
      words_[c / 64] &= ~m;
    }
  }
  void flip(std::size_t c) { words_[c / 64] ^= std::uint64_t{1} << (c % 64); }

  Gf2Row& operator^=(const Gf2Row& o);
  bool is_zero() const;
  // Lowest set column, or size() if zero.
  std::size_t first_set() const;
  std::size_t popcount() const;
  // Parity of popcount(this & o).
  int dot(const Gf2Row& o) const;

  std::span<const std::uint64_t> words() const { return words_; }
  friend bool operator==(const Gf2Row&, const Gf2Row&) = default;

 private:
  std::size_t cols_ = 0;
  std::vector<std::uint64_t> words_;
};

// Incremental row-echelon basis over GF(2). Rows are reduced against the basis
// in insertion order, so each stored row lacks the pivots of earlier rows.
class Gf2Basis {
 public:
  explicit Gf2Basis(std::size_t cols) : cols_(cols) {}

  // Returns true if the row was independent of the basis.
  bool insert(Gf2Row row);
  // Reduces v in place; true if v ends in the span.
  bool reduce(Gf2Row& v) const;
  bool contains(Gf2Row v) const { return reduce(v); }

  std::size_t rank() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  const std::vector<Gf2Row>& rows() const { return rows_; }

  // Back-substitutes to reduced row-echelon form (pivots ascending).
  void to_rref();
  // Basis of { v : <row, v> = 0 for all rows }; needs to_rref() first.
  std::vector<Gf2Row> kernel() const;

 private:
  std::size_t cols_;
  std::vector<Gf2Row> rows_;
  std::vector<std::size_t> pivots_;
  bool rref_ = false;
};

std::size_t gf2_rank(std::span<const Gf2Row> rows, std::size_t cols);

// Row-major matrix over a GF(2^ell).
class FqMatrix {
 public:
  FqMatrix(const Field& field, std::size_t rows, std::size_t cols)
      : field_(&field), rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  FieldElement at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  FieldElement& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::span<const FieldElement> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }

  // In-place reduced row-echelon form; returns pivot columns.
  std::vector<std::size_t> rref();
  std::size_t rank() const;
  // Basis of the right kernel { v : M v = 0 }, one vector per free column.
  std::vector<std::vector<FieldElement>> kernel() const;

 private:
  const Field* field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<FieldElement> data_;
};

}  // namespace wedge
