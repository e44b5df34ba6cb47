#include "wedge/code.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "gtest/gtest.h"
#include "json.hpp"
#include "wedge/errors.hpp"

namespace wedge {
namespace {

FqMatrix parity_as_fq(const WedgeLiftedCode& code) {
  const auto& rows = code.parity_checks();
  FqMatrix m(code.field(), rows.size(), code.length());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < code.length(); ++c) m.at(r, c) = {rows[r].get(c) ? 1U : 0U};
  }
  return m;
}

// Direct parity evaluation: XOR of the word over every wedge point set.
bool passes_all_wedges(const WedgeLiftedCode& code, std::span<const FieldElement> word) {
  const Field& f = code.field();
  const auto& fam = code.family();
  for (std::size_t j = 0; j < fam.coset_count(); ++j) {
    for (std::uint32_t p = 0; p < code.length(); ++p) {
      FieldElement s{};
      for (std::uint32_t c : wedge_coordinates(f, {fam.coset(j), coordinate_point(f.order(), p)})) {
        s += word[c];
      }
      if (!s.is_zero()) return false;
    }
  }
  return true;
}

TEST(Eval, Examples) {
  auto f = make_field(2);
  const auto ones = eval_monomial({0, 0}, *f);
  for (FieldElement e : ones) EXPECT_EQ(e, FieldElement{1});

  const auto xq = eval_monomial({3, 0}, *f);
  for (std::uint32_t idx = 0; idx < 16; ++idx) {
    EXPECT_EQ(xq[idx], FieldElement{idx / 4 == 0 ? 0U : 1U});
  }

  // Hand-built GF(4) multiplication table, x^2 = x + 1, omega = 2.
  const std::vector<std::uint32_t> table = {0, 0, 0, 0, 0, 1, 2, 3, 0, 2, 3, 1, 0, 3, 1, 2};
  const auto xy = eval_monomial({1, 1}, *f);
  for (std::size_t i = 0; i < 16; ++i) EXPECT_EQ(xy[i].bits, table[i]) << i;
  EXPECT_THROW(eval_monomial({4, 0}, *f), UsageError);
}

TEST(Build, Q16H5DimensionAndInvariants) {
  auto fam = CosetFamily::make(make_field(4), 5);
  const auto code = build_code(fam);
  EXPECT_EQ(code.length(), 256U);
  EXPECT_EQ(code.parity_checks().size(), 3U * 256U);
  EXPECT_EQ(code.good_monomials().size(), 207U);
  EXPECT_GE(code.exact_dimension(), 207U);
  EXPECT_LE(code.redundancy(), code.bad_count());
  // Observed: exactly one dimension beyond the good-monomial span.
  EXPECT_EQ(code.redundancy(), 48U);
  for (Monomial m : code.good_monomials()) {
    EXPECT_TRUE(passes_all_wedges(code, eval_monomial(m, code.field())));
  }
}

TEST(Build, FqRankAgreesWithGf2Rank) {
  for (auto [ell, h] : {std::pair{2, 1U}, std::pair{2, 3U}, std::pair{3, 7U}, std::pair{4, 5U},
                        std::pair{4, 15U}}) {
    auto fam = CosetFamily::make(make_field(ell), h);
    const auto code = build_code(fam);
    EXPECT_EQ(parity_as_fq(code).rank(), code.redundancy()) << "ell=" << ell << " h=" << h;
  }
}

// At q = 4 the binary kernel has dimension K (rank is field independent), so
// exactly 2^K of the 2^16 binary words pass every wedge check.
TEST(Build, Q4DimensionMatchesBinaryEnumeration) {
  auto fam = CosetFamily::make(make_field(2), 3);
  const auto code = build_code(fam);
  std::uint64_t passing = 0;
  std::vector<FieldElement> word(16);
  for (std::uint32_t bits = 0; bits < (1U << 16); ++bits) {
    for (std::uint32_t c = 0; c < 16; ++c) word[c] = {(bits >> c) & 1U};
    if (passes_all_wedges(code, word)) ++passing;
  }
  EXPECT_EQ(passing, std::uint64_t{1} << code.exact_dimension());

  // Random F_4 combinations of the kernel basis stay in the code.
  const auto basis = code.kernel_basis();
  ASSERT_EQ(basis.size(), code.exact_dimension());
  std::mt19937_64 rng(4);
  for (int k = 0; k < 50; ++k) {
    std::vector<FieldElement> w(16);
    for (const auto& g : basis) {
      const FieldElement s{static_cast<std::uint32_t>(rng() % 4)};
      for (std::uint32_t c = 0; c < 16; ++c) {
        if (g.get(c)) w[c] += s;
      }
    }
    EXPECT_TRUE(passes_all_wedges(code, w));
    EXPECT_TRUE(code.contains(w));
  }
}

TEST(Build, Q16H15SingleGroupRedundancy) {
  auto fam = CosetFamily::make(make_field(4), 15);
  const auto code = build_code(fam);
  EXPECT_EQ(code.repair_groups(), 1U);
  EXPECT_EQ(code.bad_count(), 31U);
  EXPECT_EQ(code.redundancy(), 30U);
  // t·sqrt(N) = 16 is below the measured redundancy.
  EXPECT_GT(code.redundancy(), std::uint64_t{code.repair_groups()} * 16);
}

TEST(Build, DimensionOnlyModeMatchesMaterialized) {
  auto fam = CosetFamily::make(make_field(4), 3);
  BuildOptions opts;
  opts.materialize = false;
  const auto lean = build_code(fam, opts);
  const auto full = build_code(fam);
  EXPECT_FALSE(lean.has_parity_checks());
  EXPECT_EQ(lean.exact_dimension(), full.exact_dimension());
}

TEST(Build, MemoryGuard) {
  auto fam = CosetFamily::make(make_field(6), 9);
  BuildOptions opts;
  opts.memory_limit_bytes = 1024;
  EXPECT_THROW(build_code(fam, opts), ResourceGuardError);
  // Past the order cap even a huge limit refuses to materialize.
  auto big = CosetFamily::make(make_field(10), 1023);
  opts.memory_limit_bytes = ~std::size_t{0};
  EXPECT_THROW(build_code(big, opts), ResourceGuardError);
}

TEST(Encode, Examples) {
  auto fam = CosetFamily::make(make_field(4), 5);
  const auto code = build_code(fam);
  const std::size_t k = code.good_monomials().size();
  std::vector<FieldElement> msg(k);
  for (FieldElement e : encode(code, msg)) EXPECT_TRUE(e.is_zero());

  msg[17] = {1};
  EXPECT_EQ(encode(code, msg), eval_monomial(code.good_monomials()[17], code.field()));

  std::mt19937_64 rng(16);
  for (auto& m : msg) m = {static_cast<std::uint32_t>(rng() % 16)};
  const auto word = encode(code, msg);
  EXPECT_TRUE(passes_all_wedges(code, word));
  EXPECT_TRUE(code.contains(word));

  std::vector<FieldElement> short_msg(k - 1);
  EXPECT_THROW(encode(code, short_msg), UsageError);
}

TEST(Contains, DetectsSingleSymbolCorruption) {
  auto fam = CosetFamily::make(make_field(4), 5);
  const auto code = build_code(fam);
  std::vector<FieldElement> msg(code.good_monomials().size(), FieldElement{3});
  auto word = encode(code, msg);
  word[100] += FieldElement{1};
  EXPECT_FALSE(code.contains(word));
}

TEST(Trace, Q16H5BinaryRedundancyAndDelsarte) {
  auto fam = CosetFamily::make(make_field(4), 5);
  const auto code = build_code(fam);
  const auto tc = trace_code(code);
  EXPECT_GE(tc.dimension(), 207U);
  EXPECT_GE(tc.dimension(), code.exact_dimension());
  EXPECT_LE(tc.dimension(), 4 * code.exact_dimension());
  EXPECT_LE(tc.redundancy(), code.redundancy());
  // 16 · 4^{log2(7/4)} = 49.
  EXPECT_NEAR(16.0 * std::pow(4.0, std::log2(2.0 - 0.25)), 49.0, 1e-9);
  EXPECT_LE(tc.redundancy(), 49U);

  for (const auto& g : tc.generators) EXPECT_TRUE(code.contains(g));

  // Traces of scaled good-monomial evaluations land in tr2(C).
  Gf2Basis span(code.length());
  for (const auto& g : tc.generators) span.insert(g);
  std::mt19937_64 rng(9);
  for (int k = 0; k < 40; ++k) {
    const Monomial m = code.good_monomials()[rng() % code.good_monomials().size()];
    auto word = eval_monomial(m, code.field());
    const FieldElement beta{static_cast<std::uint32_t>(1 + rng() % 15)};
    for (auto& e : word) e = code.field().mul(e, beta);
    EXPECT_TRUE(span.contains(trace_word(code.field(), word)));
  }
}

TEST(Trace, WedgeXorSumsVanishAtQ64Sampled) {
  auto fam = CosetFamily::make(make_field(6), 9);
  BuildOptions opts;
  opts.materialize = false;
  opts.verify_kernel = false;
  const auto code = build_code(fam, opts);
  EXPECT_EQ(code.redundancy(), 342U);
  const auto basis = code.kernel_basis();
  std::mt19937_64 rng(64);
  const Field& f = code.field();
  for (int k = 0; k < 20; ++k) {
    // A random trace codeword: tr2(beta · g) summed over a few basis vectors.
    std::vector<FieldElement> word(code.length());
    for (int s = 0; s < 8; ++s) {
      const auto& g = basis[rng() % basis.size()];
      const FieldElement beta{static_cast<std::uint32_t>(rng() % 64)};
      for (std::uint32_t c = 0; c < code.length(); ++c) {
        if (g.get(c)) word[c] += beta;
      }
    }
    const Gf2Row bin = trace_word(f, word);
    for (int w = 0; w < 50; ++w) {
      const auto coset = fam.coset(rng() % fam.coset_count());
      const auto pts = wedge_coordinates(f, {coset, coordinate_point(64, static_cast<std::uint32_t>(rng() % 4096))});
      int parity = 0;
      for (std::uint32_t c : pts) parity ^= bin.get(c) ? 1 : 0;
      EXPECT_EQ(parity, 0);
    }
  }
}

TEST(Trace, ZeroCodeHasZeroTrace) {
  auto f = make_field(4);
  std::vector<FieldElement> zero(256);
  EXPECT_TRUE(trace_word(*f, zero).is_zero());
}

TEST(Exponent, FigureValues) {
  EXPECT_NEAR(redundancy_exponent(2), 0.702, 0.0005);
  EXPECT_NEAR(redundancy_exponent(3), 0.651, 0.0005);
  EXPECT_NEAR(redundancy_exponent(4), 0.619, 0.0005);
  EXPECT_NEAR(redundancy_exponent(60), 0.5, 0.01);
  EXPECT_THROW(redundancy_exponent(0), UsageError);
}

TEST(Export, MatrixTextFormat) {
  std::vector<std::vector<FieldElement>> rows = {{{0}, {10}, {15}}, {{1}, {2}, {3}}};
  std::ostringstream os;
  write_matrix_text(os, 16, rows, 3);
  EXPECT_EQ(os.str(), "# q=16 rows=2 cols=3\n0 a f\n1 2 3\n");

  Gf2Row r(4);
  r.set(1);
  std::ostringstream bs;
  write_matrix_text(bs, 2, std::span(&r, 1), 4);
  EXPECT_EQ(bs.str(), "# q=2 rows=1 cols=4\n0 1 0 0\n");
}

TEST(Export, DescriptorJson) {
  auto fam = CosetFamily::make(make_field(4), 5);
  const auto code = build_code(fam);
  std::ostringstream os;
  write_code_descriptor(os, code);
  const auto j = nlohmann::json::parse(os.str());
  EXPECT_EQ(j.at("ell"), 4);
  EXPECT_EQ(j.at("modulus"), 19);
  EXPECT_EQ(j.at("subgroup_order"), 5);
  EXPECT_EQ(j.at("coordinate_order"), "row-major-poly-basis");
  EXPECT_EQ(j.size(), 4U);
}

}  // namespace
}  // namespace wedge
