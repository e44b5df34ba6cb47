#pragma once

// Disjoint repair groups for wedge-lifted codes and their trace codes.
//
// For coordinate p and coset j the repair group is W_{coset_j, p} \ {p}; the
// symbol at p equals the plain sum (XOR) of the codeword over the group.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "wedge/code.hpp"

namespace wedge {

class RepairPlan {
 public:
  // Throws InvariantError if two groups of one coordinate intersect.
  static RepairPlan build(const CosetFamily& fam);

  std::uint32_t q() const { return q_; }
  std::uint32_t subgroup_order() const { return h_; }
  std::uint32_t length() const { return q_ * q_; }
  std::uint32_t group_count() const { return t_; }
  std::size_t group_size() const { return std::size_t{h_} * (q_ - 1); }

  // Sorted coordinates of group j for `coordinate`.
  std::span<const std::uint32_t> group(std::uint32_t coordinate, std::size_t j) const;

  // Removes one index from a group. Only for fault-injection tests.
  void corrupt_group(std::uint32_t coordinate, std::size_t j);

 private:
  std::uint32_t q_ = 0;
  std::uint32_t h_ = 0;
  std::uint32_t t_ = 0;
  std::vector<std::vector<std::uint32_t>> groups_;  // [coordinate * t + j]
};

inline RepairPlan build_repair_plan(const WedgeLiftedCode& code) {
  return RepairPlan::build(code.family());
}

// Sum of the word over group j of `coordinate`.
FieldElement repair_symbol(const RepairPlan& plan, std::span<const FieldElement> word,
                           std::uint32_t coordinate, std::size_t j);
int repair_bit(const RepairPlan& plan, const Gf2Row& word, std::uint32_t coordinate,
               std::size_t j);

struct RepairFailure {
  std::size_t trial = 0;
  std::uint32_t coordinate = 0;
  std::size_t group = 0;
  std::uint32_t expected = 0;
  std::uint32_t got = 0;
};

struct DrgpReport {
  std::string alphabet;  // "fq" or "binary"
  std::uint32_t q = 0;
  std::uint32_t h = 0;
  std::uint32_t t = 0;
  std::size_t trials = 0;
  std::uint64_t checks = 0;
  std::uint64_t seed = 0;
  std::vector<RepairFailure> failures;

  bool passed() const { return failures.empty(); }
  void merge(const DrgpReport& other);
};

nlohmann::ordered_json to_json(const DrgpReport& report);

// Checks every (coordinate, group) repair of one word. `trial` tags failures.
void check_word(const RepairPlan& plan, std::span<const FieldElement> word, std::size_t trial,
                DrgpReport& report);
void check_word(const RepairPlan& plan, const Gf2Row& word, std::size_t trial,
                DrgpReport& report);

// `trials` random codewords (random messages over the good monomials, or
// random combinations of the binary generators). Each trial draws from its own
// generator seeded by (seed, trial), so results do not depend on trial order.
DrgpReport verify_drgp(const RepairPlan& plan, const WedgeLiftedCode& code, std::size_t trials,
                       std::uint64_t seed);
DrgpReport verify_drgp(const RepairPlan& plan, const BinaryTraceCode& code, std::size_t trials,
                       std::uint64_t seed);

struct ParallelReads {
  std::vector<std::size_t> groups;
  std::vector<FieldElement> values;
  // The coordinate itself, unless erased.
  std::optional<FieldElement> direct;
  bool consistent = true;
};

// k recoveries of `coordinate` from k disjoint groups that avoid every erased
// coordinate. Throws UsageError if k > t or fewer than k groups are usable.
ParallelReads simulate_parallel_reads(const RepairPlan& plan, std::span<const FieldElement> word,
                                      std::uint32_t coordinate, std::size_t k,
                                      std::span<const std::uint32_t> erased = {});

}  // namespace wedge
