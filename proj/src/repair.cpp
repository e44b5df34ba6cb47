#include "wedge/repair.hpp"

#include <algorithm>
#include <random>

#include "wedge/errors.hpp"

namespace wedge {
namespace {

std::mt19937_64 trial_rng(std::uint64_t seed, std::size_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
  return std::mt19937_64(seq);
}

DrgpReport empty_report(const RepairPlan& plan, std::string alphabet, std::size_t trials,
                        std::uint64_t seed) {
  DrgpReport r;
  r.alphabet = std::move(alphabet);
  r.q = plan.q();
  r.h = plan.subgroup_order();
  r.t = plan.group_count();
  r.trials = trials;
  r.seed = seed;
  return r;
}

}  // namespace

RepairPlan RepairPlan::build(const CosetFamily& fam) {
  const Field& field = fam.field();
  RepairPlan plan;
  plan.q_ = field.order();
  plan.h_ = fam.subgroup_order();
  plan.t_ = fam.coset_count();
  const std::uint32_t n = plan.length();
  plan.groups_.resize(std::size_t{n} * plan.t_);

  std::vector<std::uint32_t> owner(n, 0);
  for (std::uint32_t p = 0; p < n; ++p) {
    const std::uint32_t stamp_base = p * plan.t_ + 1;
    for (std::size_t j = 0; j < plan.t_; ++j) {
      auto coords = wedge_coordinates(field, {fam.coset(j), coordinate_point(plan.q_, p)});
      coords.erase(std::remove(coords.begin(), coords.end(), p), coords.end());
      if (coords.size() != plan.group_size()) {
        throw InvariantError("repair group has wrong size");
      }
      // Stamps are unique per (p, j), so a stale stamp from an earlier group of
      // the same coordinate marks an intersection.
      for (std::uint32_t c : coords) {
        if (owner[c] >= stamp_base && owner[c] < stamp_base + j) {
          throw InvariantError("repair groups of coordinate " + std::to_string(p) +
                               " are not disjoint");
        }
        owner[c] = stamp_base + static_cast<std::uint32_t>(j);
      }
      plan.groups_[std::size_t{p} * plan.t_ + j] = std::move(coords);
    }
  }
  return plan;
}

std::span<const std::uint32_t> RepairPlan::group(std::uint32_t coordinate, std::size_t j) const {
  if (coordinate >= length() || j >= t_) throw UsageError("repair group index out of range");
  return groups_[std::size_t{coordinate} * t_ + j];
}

void RepairPlan::corrupt_group(std::uint32_t coordinate, std::size_t j) {
  if (coordinate >= length() || j >= t_) throw UsageError("repair group index out of range");
  auto& g = groups_[std::size_t{coordinate} * t_ + j];
  if (!g.empty()) g.pop_back();
}

FieldElement repair_symbol(const RepairPlan& plan, std::span<const FieldElement> word,
                           std::uint32_t coordinate, std::size_t j) {
  if (word.size() != plan.length()) throw UsageError("word length must be q^2");
  FieldElement sum{};
  for (std::uint32_t c : plan.group(coordinate, j)) sum += word[c];
  return sum;
}

int repair_bit(const RepairPlan& plan, const Gf2Row& word, std::uint32_t coordinate,
               std::size_t j) {
  if (word.size() != plan.length()) throw UsageError("word length must be q^2");
  int sum = 0;
  for (std::uint32_t c : plan.group(coordinate, j)) sum ^= word.get(c) ? 1 : 0;
  return sum;
}

void DrgpReport::merge(const DrgpReport& other) {
  trials += other.trials;
  checks += other.checks;
  failures.insert(failures.end(), other.failures.begin(), other.failures.end());
}

nlohmann::ordered_json to_json(const DrgpReport& report) {
  nlohmann::ordered_json failures = nlohmann::ordered_json::array();
  for (const auto& f : report.failures) {
    failures.push_back({{"trial", f.trial},
                        {"coordinate", f.coordinate},
                        {"group", f.group},
                        {"expected", f.expected},
                        {"got", f.got}});
  }
  return {{"alphabet", report.alphabet}, {"q", report.q},         {"h", report.h},
          {"t", report.t},               {"trials", report.trials}, {"checks", report.checks},
          {"failures", failures},        {"seed", report.seed}};
}

void check_word(const RepairPlan& plan, std::span<const FieldElement> word, std::size_t trial,
                DrgpReport& report) {
  for (std::uint32_t p = 0; p < plan.length(); ++p) {
    for (std::size_t j = 0; j < plan.group_count(); ++j) {
      const FieldElement got = repair_symbol(plan, word, p, j);
      ++report.checks;
      if (got != word[p]) report.failures.push_back({trial, p, j, word[p].bits, got.bits});
    }
  }
}

void check_word(const RepairPlan& plan, const Gf2Row& word, std::size_t trial,
                DrgpReport& report) {
  for (std::uint32_t p = 0; p < plan.length(); ++p) {
    const int expected = word.get(p) ? 1 : 0;
    for (std::size_t j = 0; j < plan.group_count(); ++j) {
      const int got = repair_bit(plan, word, p, j);
      ++report.checks;
      if (got != expected) {
        report.failures.push_back({trial, p, j, static_cast<std::uint32_t>(expected),
                                   static_cast<std::uint32_t>(got)});
      }
    }
  }
}

DrgpReport verify_drgp(const RepairPlan& plan, const WedgeLiftedCode& code, std::size_t trials,
                       std::uint64_t seed) {
  if (trials < 1) throw UsageError("trials must be at least 1");
  if (code.length() != plan.length()) throw UsageError("plan and code lengths differ");
  DrgpReport report = empty_report(plan, "fq", trials, seed);
  const std::uint32_t q = code.field().order();
  std::vector<FieldElement> message(code.good_monomials().size());
  for (std::size_t trial = 0; trial < trials; ++trial) {
    auto rng = trial_rng(seed, trial);
    std::uniform_int_distribution<std::uint32_t> symbol(0, q - 1);
    for (auto& m : message) m = {symbol(rng)};
    check_word(plan, encode(code, message), trial, report);
  }
  return report;
}

DrgpReport verify_drgp(const RepairPlan& plan, const BinaryTraceCode& code, std::size_t trials,
                       std::uint64_t seed) {
  if (trials < 1) throw UsageError("trials must be at least 1");
  if (code.length != plan.length()) throw UsageError("plan and code lengths differ");
  DrgpReport report = empty_report(plan, "binary", trials, seed);
  for (std::size_t trial = 0; trial < trials; ++trial) {
    auto rng = trial_rng(seed, trial);
    std::bernoulli_distribution coin(0.5);
    Gf2Row word(code.length);
    for (const Gf2Row& g : code.generators) {
      if (coin(rng)) word ^= g;
    }
    check_word(plan, word, trial, report);
  }
  return report;
}

ParallelReads simulate_parallel_reads(const RepairPlan& plan, std::span<const FieldElement> word,
                                      std::uint32_t coordinate, std::size_t k,
                                      std::span<const std::uint32_t> erased) {
  if (k < 1 || k > plan.group_count()) {
    throw UsageError("k must be in [1, t] with t = " + std::to_string(plan.group_count()));
  }
  if (word.size() != plan.length() || coordinate >= plan.length()) {
    throw UsageError("word length or coordinate out of range");
  }
  std::vector<bool> is_erased(plan.length(), false);
  for (std::uint32_t e : erased) {
    if (e >= plan.length()) throw UsageError("erased coordinate out of range");
    is_erased[e] = true;
  }

  ParallelReads out;
  if (!is_erased[coordinate]) out.direct = word[coordinate];
  for (std::size_t j = 0; j < plan.group_count() && out.groups.size() < k; ++j) {
    const auto g = plan.group(coordinate, j);
    if (std::any_of(g.begin(), g.end(), [&](std::uint32_t c) { return is_erased[c]; })) continue;
    out.groups.push_back(j);
    out.values.push_back(repair_symbol(plan, word, coordinate, j));
  }
  if (out.groups.size() < k) {
    throw UsageError("only " + std::to_string(out.groups.size()) +
                     " repair groups avoid the erased coordinates; requested " +
                     std::to_string(k));
  }
  for (FieldElement v : out.values) {
    if (v != out.values.front() || (out.direct && v != *out.direct)) out.consistent = false;
  }
  return out;
}

}  // namespace wedge
