#include "commands.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <iomanip>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "wedge/classify.hpp"
#include "wedge/code.hpp"
#include "wedge/errors.hpp"
#include "wedge/field.hpp"
#include "wedge/repair.hpp"

namespace wedge::cli {
namespace {

namespace fs = std::filesystem;

struct RunConfig {
  std::optional<int> ell;
  std::optional<std::uint32_t> subgroup_order;
  std::optional<int> ell_prime;
  std::optional<int> d;
  std::uint64_t seed = 1;
  std::size_t trials = 100;
  std::uint64_t budget = kDefaultOracleBudget;
  std::string out_dir;
  bool binary = false;
  bool oracle = false;
  bool dimension_only = false;
  bool inject_fault = false;
  std::string alpha;
  int n = 1;
};

struct Instance {
  CosetFamily family;
  bool block = false;  // built from (ell', d)
  int ell_prime = 0;
  int d = 0;
};

Instance resolve(const RunConfig& cfg) {
  const bool by_ell = cfg.ell || cfg.subgroup_order;
  const bool by_block = cfg.ell_prime || cfg.d;
  if (by_ell == by_block) {
    throw UsageError("give exactly one of (--ell, --subgroup-order) or (--ell-prime, --d)");
  }
  if (by_ell) {
    if (!cfg.ell || !cfg.subgroup_order) {
      throw UsageError("--ell and --subgroup-order must be given together");
    }
    return {CosetFamily::make(make_field(*cfg.ell), *cfg.subgroup_order)};
  }
  if (!cfg.ell_prime || !cfg.d) throw UsageError("--ell-prime and --d must be given together");
  if (*cfg.ell_prime < 1 || *cfg.d < 1 || *cfg.ell_prime * *cfg.d > kMaxFieldBits) {
    throw UsageError("ell' * d must lie in [1, " + std::to_string(kMaxFieldBits) + "]");
  }
  const std::uint32_t h = block_subgroup_order(*cfg.ell_prime, *cfg.d);
  return {CosetFamily::make(make_field(*cfg.ell_prime * *cfg.d), h), true, *cfg.ell_prime,
          *cfg.d};
}

void echo_parameters(std::ostream& out, const Instance& inst) {
  const CosetFamily& fam = inst.family;
  out << "q=" << fam.field().order() << " ell=" << fam.field().ell();
  if (inst.block) out << " ell_prime=" << inst.ell_prime << " d=" << inst.d;
  out << " h=" << fam.subgroup_order() << " t=" << fam.coset_count() << '\n';
}

// Writes via a temporary file and rename so readers never see partial output.
void write_file(const fs::path& path, const std::function<void(std::ostream&)>& body) {
  fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot write " + tmp.string());
    body(os);
    if (!os) throw std::runtime_error("write failed: " + tmp.string());
  }
  fs::rename(tmp, path);
}

int cmd_classify(const RunConfig& cfg, std::ostream& out) {
  const Instance inst = resolve(cfg);
  const CosetFamily& fam = inst.family;
  const Field& field = fam.field();
  echo_parameters(out, inst);

  auto rows = classify_all(fam);
  int status = kSuccess;
  const auto bad =
      static_cast<std::uint64_t>(std::count_if(rows.begin(), rows.end(), [](const auto& r) {
        return r.bad;
      }));

  if (inst.block) {
    std::uint64_t mismatches = 0;
    for (const auto& r : rows) {
      if (is_bad_block_criterion(r.monomial, inst.ell_prime, inst.d) != r.bad) ++mismatches;
    }
    out << "block_criterion_mismatches=" << mismatches << '\n';
    if (mismatches != 0) status = kVerificationFailure;
  }

  if (cfg.oracle) {
    OracleOptions opts;
    opts.budget = cfg.budget;
    std::uint64_t disagreements = 0;
    for (auto& r : rows) {
      const bool oracle_bad = !is_good_oracle(r.monomial, fam, opts);
      if (oracle_bad != r.bad) ++disagreements;
      r.bad = oracle_bad;
      r.criterion = "oracle";
    }
    out << "oracle_disagreements=" << disagreements << '\n';
    if (disagreements != 0) status = kVerificationFailure;
  }

  out << "bad=" << bad;
  if (inst.block) {
    const std::uint64_t closed = count_bad_closed_form(inst.ell_prime, inst.d);
    out << " closed_form=" << closed;
    if (closed != bad) status = kVerificationFailure;
  }
  out << " naive_bound=" << count_bad_naive_bound(fam) << " monomials="
      << std::uint64_t{field.order()} * field.order() << '\n';

  if (!cfg.out_dir.empty()) {
    const fs::path path = fs::path(cfg.out_dir) / "classify.csv";
    write_file(path, [&](std::ostream& os) { write_classification_csv(os, rows); });
    out << "wrote " << path.string() << '\n';
  }
  return status;
}

int cmd_build(const RunConfig& cfg, std::ostream& out) {
  const Instance inst = resolve(cfg);
  const CosetFamily& fam = inst.family;
  echo_parameters(out, inst);

  BuildOptions opts;
  opts.materialize = !cfg.dimension_only;
  const WedgeLiftedCode code = build_code(fam, opts);
  const std::uint32_t q = code.field().order();
  out << "N=" << code.length() << " q=" << q << " t=" << code.repair_groups()
      << " K=" << code.exact_dimension() << " redundancy=" << code.redundancy()
      << " bad_monomial_bound=" << code.bad_count() << '\n';

  std::optional<BinaryTraceCode> binary;
  if (cfg.binary) {
    binary = trace_code(code);
    out << "binary_dimension=" << binary->dimension()
        << " binary_redundancy=" << binary->redundancy() << '\n';
  }

  const fs::path dir = cfg.out_dir.empty() ? fs::path("wedge_out") : fs::path(cfg.out_dir);
  write_file(dir / "code.json", [&](std::ostream& os) { write_code_descriptor(os, code); });
  if (!cfg.dimension_only) {
    write_file(dir / "generator.txt", [&](std::ostream& os) {
      const auto rows = generator_rows(code);
      write_matrix_text(os, q, rows, code.length());
    });
    write_file(dir / "parity.txt", [&](std::ostream& os) {
      write_matrix_text(os, q, code.parity_checks(), code.length());
    });
  }
  if (binary) {
    write_file(dir / "trace_generators.txt", [&](std::ostream& os) {
      write_matrix_text(os, 2, binary->generators, binary->length);
    });
  }
  out << "wrote " << dir.string() << '\n';
  return kSuccess;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  const Instance inst = resolve(cfg);
  const CosetFamily& fam = inst.family;

  BuildOptions opts;
  opts.materialize = false;
  const WedgeLiftedCode code = build_code(fam, opts);
  RepairPlan plan = build_repair_plan(code);
  if (cfg.inject_fault) plan.corrupt_group(0, 0);

  DrgpReport report;
  if (cfg.binary) {
    report = verify_drgp(plan, trace_code(code), cfg.trials, cfg.seed);
  } else {
    report = verify_drgp(plan, code, cfg.trials, cfg.seed);
  }

  // Parallel-read smoke test: all t groups at a few coordinates of one codeword.
  bool reads_ok = true;
  std::size_t read_coords = 0;
  if (!cfg.binary) {
    std::vector<FieldElement> message(code.good_monomials().size());
    std::mt19937_64 rng(cfg.seed);
    std::uniform_int_distribution<std::uint32_t> symbol(0, code.field().order() - 1);
    for (auto& m : message) m = {symbol(rng)};
    const auto word = encode(code, message);
    for (std::uint32_t c : {0U, code.length() / 2, code.length() - 1}) {
      reads_ok = simulate_parallel_reads(plan, word, c, plan.group_count()).consistent && reads_ok;
      ++read_coords;
    }
  }

  auto json = to_json(report);
  json["parallel_reads"] = {{"coordinates", read_coords}, {"consistent", reads_ok}};
  json["passed"] = report.passed() && reads_ok;
  out << json.dump(2) << '\n';
  if (!cfg.out_dir.empty()) {
    write_file(fs::path(cfg.out_dir) / "verify.json",
               [&](std::ostream& os) { os << json.dump(2) << '\n'; });
  }
  return report.passed() && reads_ok ? kSuccess : kVerificationFailure;
}

int cmd_table(std::ostream& out) {
  // Reference values read off the published trade-off figure.
  const std::map<int, std::string> figure = {{2, ".702"}, {3, ".651"}, {4, ".619"}};
  out << std::fixed << std::setprecision(4);
  out << "d\talpha\texponent\tbaseline\tfigure\n";
  for (int d = 1; d <= 10; ++d) {
    const double alpha = 1.0 / (2.0 * d);
    out << d << '\t' << alpha << '\t' << redundancy_exponent(d) << '\t' << 0.5 + alpha << '\t';
    const auto it = figure.find(d);
    out << (it == figure.end() ? "-" : it->second) << '\n';
  }
  out << "# exponent = 1/2 + log2(2 - 2^-d)/(2d) for binary codes with t = N^(1/(2d));"
         " baseline = 1/2 + alpha (t*sqrt(N) redundancy)\n";
  out << "# exponent -> 0.5000 as d -> infinity\n";
  out << "# reference constants: lower bound .500; .714 and .750 at t=N^(1/4); .792 for lifted codes\n";
  return kSuccess;
}

// Parses "p/2^k" (denominator a power of two) into 1 - 2 alpha = a_num / 2^b_exp.
std::pair<std::uint64_t, int> parse_alpha(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) throw UsageError("--alpha must look like p/2^k, e.g. 1/4");
  std::uint64_t num = 0;
  std::uint64_t den = 0;
  try {
    num = std::stoull(text.substr(0, slash));
    den = std::stoull(text.substr(slash + 1));
  } catch (const std::exception&) {
    throw UsageError("cannot parse --alpha " + text);
  }
  if (den == 0 || (den & (den - 1)) != 0 || den > (std::uint64_t{1} << 32)) {
    throw UsageError("--alpha denominator must be a power of two");
  }
  if (num == 0 || 2 * num >= den) throw UsageError("--alpha must lie in (0, 1/2)");
  std::uint64_t a = den - 2 * num;
  int b = std::countr_zero(den);
  while (a % 2 == 0 && b > 0) {
    a /= 2;
    --b;
  }
  return {a, b};
}

int cmd_plan(const RunConfig& cfg, std::ostream& out) {
  const auto [a_num, b_exp] = parse_alpha(cfg.alpha);
  out << "alpha=" << cfg.alpha << " a=" << a_num << " b=" << b_exp << " n=" << cfg.n << '\n';
  DyadicPlan plan;
  try {
    plan = plan_dyadic_parameters(a_num, b_exp, cfg.n);
  } catch (const UsageError& e) {
    out << "feasible=no (" << e.what() << ")\n";
    return kUsageError;
  }
  const std::uint64_t q = std::uint64_t{1} << plan.ell;
  out << "q=" << q << " ell=" << plan.ell << " h=" << plan.subgroup_order
      << " t=" << plan.coset_count << " N=" << q * q
      << " redundancy_bound=" << plan.coset_count * q << '\n';
  out << "divides=" << (((q - 1) % plan.subgroup_order == 0) ? "yes" : "no")
      << " feasible=yes\n";
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Wedge-lifted codes: construction, classification and repair verification"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_family = [&](CLI::App* sub) {
    sub->add_option("--ell", cfg.ell, "field degree, q = 2^ell");
    sub->add_option("--subgroup-order", cfg.subgroup_order, "order h of the subgroup H");
    sub->add_option("--ell-prime", cfg.ell_prime, "block width ell' (q = 2^(ell' d))");
    sub->add_option("--d", cfg.d, "number of blocks d");
    sub->add_option("--out-dir", cfg.out_dir, "directory for output files");
    sub->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
    sub->add_option("--trials", cfg.trials, "random codewords to test")->capture_default_str();
    sub->add_option("--budget", cfg.budget, "oracle evaluation budget per monomial")
        ->capture_default_str();
    sub->add_flag("--binary", cfg.binary, "use the binary trace code");
  };

  auto* classify = app.add_subcommand("classify", "classify all q^2 monomials as good or bad");
  add_family(classify);
  classify->add_flag("--oracle", cfg.oracle, "classify with the brute-force wedge oracle");

  auto* build = app.add_subcommand("build", "build the code and write matrices");
  add_family(build);
  build->add_flag("--dimension-only", cfg.dimension_only, "skip matrix files");

  auto* verify = app.add_subcommand("verify", "verify the disjoint repair group property");
  add_family(verify);
  verify->add_flag("--inject-fault", cfg.inject_fault, "corrupt one repair group");

  auto* table = app.add_subcommand("table", "print the redundancy exponent table");

  auto* plan = app.add_subcommand("plan", "parameters for a dyadic t = N^alpha");
  plan->add_option("--alpha", cfg.alpha, "dyadic alpha in (0, 1/2), e.g. 1/4")->required();
  plan->add_option("--n", cfg.n, "scale parameter n >= 1")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  try {
    if (classify->parsed()) return cmd_classify(cfg, out);
    if (build->parsed()) return cmd_build(cfg, out);
    if (verify->parsed()) return cmd_verify(cfg, out);
    if (table->parsed()) return cmd_table(out);
    if (plan->parsed()) return cmd_plan(cfg, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const ResourceGuardError& e) {
    err << "resource guard: " << e.what() << '\n';
    return kResourceGuard;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kVerificationFailure;
  }
  return kUsageError;
}

}  // namespace wedge::cli
