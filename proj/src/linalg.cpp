#include "wedge/linalg.hpp"

#include <algorithm>
#include <bit>

#include "wedge/errors.hpp"

namespace wedge {

Gf2Row& Gf2Row::operator^=(const Gf2Row& o) {
  if (o.cols_ != cols_) throw UsageError("GF(2) row length mismatch");
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
  return *this;
}

bool Gf2Row::is_zero() const {
  for (std::uint64_t w : words_) {
    if (w != 0) return false;
  }
  return true;
}

std::size_t Gf2Row::first_set() const {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] != 0) return i * 64 + static_cast<std::size_t>(std::countr_zero(words_[i]));
  }
  return cols_;
}

std::size_t Gf2Row::popcount() const {
  std::size_t n = 0;
  for (std::uint64_t w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

int Gf2Row::dot(const Gf2Row& o) const {
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < words_.size(); ++i) acc ^= words_[i] & o.words_[i];
  return std::popcount(acc) & 1;
}

bool Gf2Basis::reduce(Gf2Row& v) const {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (v.get(pivots_[i])) v ^= rows_[i];
  }
  return v.is_zero();
}

bool Gf2Basis::insert(Gf2Row row) {
  if (row.size() != cols_) throw UsageError("GF(2) row length mismatch");
  if (reduce(row)) return false;
  pivots_.push_back(row.first_set());
  rows_.push_back(std::move(row));
  rref_ = false;
  return true;
}

void Gf2Basis::to_rref() {
  // Sort by pivot, then clear every pivot column above its pivot row.
  std::vector<std::size_t> order(rows_.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return pivots_[a] < pivots_[b]; });
  std::vector<Gf2Row> rows;
  std::vector<std::size_t> pivots;
  rows.reserve(rows_.size());
  for (std::size_t i : order) {
    rows.push_back(std::move(rows_[i]));
    pivots.push_back(pivots_[i]);
  }
  for (std::size_t i = rows.size(); i-- > 0;) {
    for (std::size_t j = 0; j < i; ++j) {
      if (rows[j].get(pivots[i])) rows[j] ^= rows[i];
    }
  }
  rows_ = std::move(rows);
  pivots_ = std::move(pivots);
  rref_ = true;
}

std::vector<Gf2Row> Gf2Basis::kernel() const {
  if (!rref_) throw UsageError("Gf2Basis::kernel requires to_rref()");
  std::vector<bool> is_pivot(cols_, false);
  for (std::size_t p : pivots_) is_pivot[p] = true;
  std::vector<Gf2Row> out;
  out.reserve(cols_ - rows_.size());
  for (std::size_t f = 0; f < cols_; ++f) {
    if (is_pivot[f]) continue;
    Gf2Row v(cols_);
    v.set(f);
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (rows_[i].get(f)) v.set(pivots_[i]);
    }
    out.push_back(std::move(v));
  }
  return out;
}

std::size_t gf2_rank(std::span<const Gf2Row> rows, std::size_t cols) {
  Gf2Basis basis(cols);
  for (const Gf2Row& r : rows) basis.insert(r);
  return basis.rank();
}

std::vector<std::size_t> FqMatrix::rref() {
  const Field& f = *field_;
  std::vector<std::size_t> pivots;
  std::size_t pr = 0;
  for (std::size_t c = 0; c < cols_ && pr < rows_; ++c) {
    std::size_t sel = pr;
    while (sel < rows_ && at(sel, c).is_zero()) ++sel;
    if (sel == rows_) continue;
    if (sel != pr) {
      for (std::size_t k = 0; k < cols_; ++k) std::swap(at(sel, k), at(pr, k));
    }
    const FieldElement scale = f.inv(at(pr, c));
    for (std::size_t k = c; k < cols_; ++k) at(pr, k) = f.mul(at(pr, k), scale);
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == pr) continue;
      const FieldElement factor = at(r, c);
      if (factor.is_zero()) continue;
      for (std::size_t k = c; k < cols_; ++k) at(r, k) += f.mul(factor, at(pr, k));
    }
    pivots.push_back(c);
    ++pr;
  }
  return pivots;
}

std::size_t FqMatrix::rank() const {
  FqMatrix copy = *this;
  return copy.rref().size();
}

std::vector<std::vector<FieldElement>> FqMatrix::kernel() const {
  FqMatrix m = *this;
  const auto pivots = m.rref();
  std::vector<bool> is_pivot(cols_, false);
  for (std::size_t p : pivots) is_pivot[p] = true;
  std::vector<std::vector<FieldElement>> out;
  for (std::size_t fcol = 0; fcol < cols_; ++fcol) {
    if (is_pivot[fcol]) continue;
    std::vector<FieldElement> v(cols_);
    v[fcol] = {1};
    // Characteristic 2: -x = x.
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = m.at(i, fcol);
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace wedge
