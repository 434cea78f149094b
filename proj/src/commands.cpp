#include "rxtx/commands.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"

#include "rxtx/addition_plan.hpp"
#include "rxtx/cost_model.hpp"
#include "rxtx/gram.hpp"
#include "rxtx/scheme.hpp"

namespace rxtx::cli {

namespace {

bool report_scheme(const BilinearScheme& s, std::ostream& out, std::ostream& err) {
  const VerifyReport r = verify_scheme(s);
  out << s.name << ": " << r.passed() << "/" << r.checked << " output identities verified\n";
  if (!r.ok()) {
    err << "FAIL " << s.name << " " << describe(r.failures.front()) << "\n";
    return false;
  }
  return true;
}

bool report_plan(const BilinearScheme& s, const AdditionPlan& p, std::ostream& out, std::ostream& err) {
  const auto problems = check_plan_consistency(s, p);
  const auto c = count_scheme_additions(p);
  out << "plan " << p.name << ": " << c.stage1 << " + " << c.stage2 << " = " << c.total() << " additions, "
      << (problems.empty() ? "consistent" : "INCONSISTENT") << "\n";
  if (!problems.empty()) {
    err << "FAIL plan " << p.name << ": " << problems.front() << "\n";
    return false;
  }
  return true;
}

// rxtx and the 2x2 baseline against the direct Gram product on small integer inputs.
bool oracle_suite(std::ostream& out, std::ostream& err) {
  std::mt19937_64 rng(20250101);
  const std::size_t shapes[][2] = {{1, 1}, {4, 4}, {5, 3}, {7, 9}, {8, 8}, {12, 5}, {16, 16}, {17, 11}};
  std::size_t cases = 0, passed = 0;
  for (const auto& sh : shapes)
    for (std::size_t cutoff : {1, 2}) {
      MatrixZ x(sh[0], sh[1]);
      for (auto& v : x.data()) v = ExactInt(static_cast<std::int64_t>(rng() % 19) - 9);
      const MatrixZ want = naive_gram(x);
      GramOptions opts;
      opts.cutoff = cutoff;
      const bool ok = rxtx_gram(x, opts, PlanKind::Optimized) == want && rxtx_gram(x, opts, PlanKind::Naive) == want &&
                      strassen_xxt_gram(x, opts) == want;
      ++cases;
      if (ok) {
        ++passed;
      } else if (passed + 1 == cases) {
        err << "FAIL oracle n=" << sh[0] << " m=" << sh[1] << " cutoff=" << cutoff << "\n";
      }
    }
  out << "oracle: " << passed << "/" << cases << " cases equal the direct Gram product\n";
  return passed == cases;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  return f;
}

}  // namespace

int cmd_verify(const VerifyOptions& o, std::ostream& out, std::ostream& err) {
  if (o.scheme_file) {
    const BilinearScheme s = load_scheme(*o.scheme_file);
    return report_scheme(s, out, err) ? kExitOk : kExitFailure;
  }
  // every check runs; the first failure is named on stderr
  bool ok = report_scheme(rxtx_scheme(), out, err);
  ok = report_scheme(strassen_xxt_scheme(), out, err) && ok;
  ok = report_plan(rxtx_scheme(), rxtx_plan(PlanKind::Naive), out, err) && ok;
  ok = report_plan(rxtx_scheme(), rxtx_plan(PlanKind::Optimized), out, err) && ok;
  if (o.oracle) ok = oracle_suite(out, err) && ok;
  return ok ? kExitOk : kExitFailure;
}

int cmd_count(const CountOptions& o, std::ostream& out, std::ostream& err) {
  const auto alg = cost::parse_algorithm(o.algo);
  const auto metric = cost::parse_metric(o.metric);
  if (!alg) {
    err << "unknown algorithm '" << o.algo << "' (rxtx, strassen-xxt, winograd, naive-gram, naive-gemm)\n";
    return kExitUsage;
  }
  if (!metric) {
    err << "unknown metric '" << o.metric << "' (mults, ops)\n";
    return kExitUsage;
  }
  if (!o.opt) {
    out << cost::count_recurrence(*alg, *metric, o.n) << "\n";
    return kExitOk;
  }
  const auto r = cost::count_optimal_cutoff(*alg, *metric, o.n);
  out << r.value << "\n";
  if (o.explain) {
    for (const auto& d : r.chain) out << "  n=" << d.n << " " << (d.recurse ? "recurse" : "naive") << " " << d.value << "\n";
    out << "  general products naive at n <= " << r.gemm_naive_threshold << "\n";
  }
  return kExitOk;
}

int cmd_table(const TableOptions& o, std::ostream& out, std::ostream&) {
  const std::string csv = cost::emit_ratio_table(o.max_exp, cost::TableOptions{o.with_opt});
  if (o.out) {
    auto f = open_output(*o.out);
    f << csv;
    if (!f.flush()) throw std::runtime_error("cannot write " + *o.out);
  } else {
    out << csv;
  }
  return kExitOk;
}

int cmd_bench(const BenchOptions& o, std::ostream& out, std::ostream& err) {
  const BenchReport r = run_bench(o.config);
  for (const auto& w : r.warnings) err << "warning: " << w << "\n";
  const auto j = to_json(r);
  if (!o.config.output.empty()) {
    auto f = open_output(o.config.output);
    f << j.dump(2) << "\n";
  }
  if (o.json_stdout) {
    out << j.dump(2) << "\n";
  } else {
    out << "n=" << r.config.n << " reps=" << r.config.reps << " backend=" << r.backend_name
        << " depth=" << r.config.depth << " baseline=" << r.baseline_name << "\n"
        << "rxtx     mean " << r.rxtx.mean << " s, median " << r.rxtx.median << " s\n"
        << "baseline mean " << r.baseline.mean << " s, median " << r.baseline.median << " s\n"
        << "rxtx faster in " << r.fraction_rxtx_faster * 100 << "% of reps\n"
        << "worst relative Frobenius deviation " << r.worst_rel_frobenius << "\n";
  }
  return kExitOk;
}

int cmd_discover(const DiscoverOptions& o, std::ostream& out, std::ostream& err) {
  using namespace discovery;
  const std::size_t vars = o.dim * o.dim;
  const CandidateSet cands = sample_candidates(vars, o.mode, o.samples, o.seed, o.space);
  const auto targets = gram_targets(o.dim, o.space);
  CoverOptions copts;
  copts.max_relation_size = o.max_relation_size;
  copts.time_budget_seconds = o.time_budget;
  const CoverResult cover = select_minimal_cover(cands, targets, copts);
  const bool certified = certify(cands, targets, cover);

  out << "space " << to_string(o.space) << ", " << cands.raw_pairs << " pairs, " << cands.items.size()
      << " distinct candidates\n"
      << "k* = " << cover.k_star << (cover.exact ? "" : " (time budget hit, upper bound only)")
      << "  [rank bound " << cover.lower_bound << ", relation cover " << cover.relation_bound << ", "
      << cover.covers_found << " minimum covers, " << cover.subspaces_examined << " subspaces examined]\n";
  for (std::size_t k = 0; k < cover.subset.size(); ++k) {
    const auto& c = cands.items[cover.subset[k]];
    out << "  p" << k + 1 << " = (";
    for (std::size_t i = 0; i < vars; ++i) out << (i ? " " : "") << c.alpha[i];
    out << ") x (";
    for (std::size_t i = 0; i < vars; ++i) out << (i ? " " : "") << c.beta[i];
    out << ")\n";
  }
  for (std::size_t t = 0; t < targets.size(); ++t) {
    out << "  " << targets[t].name << " =";
    for (std::size_t k = 0; k < cover.subset.size(); ++k)
      if (const auto& g = cover.combinations[t][k]; g.numerator() != 0) {
        out << (g.numerator() < 0 ? " - " : " + ");
        const auto mag = g.numerator() < 0 ? -g : g;
        if (mag.numerator() != 1 || mag.denominator() != 1) {
          out << mag.numerator();
          if (mag.denominator() != 1) out << "/" << mag.denominator();
          out << " ";
        }
        out << "p" << k + 1;
      }
    out << "\n";
  }
  out << "certificate: " << (certified ? "exact re-expansion matches every target" : "FAILED") << "\n";
  if (!certified) return kExitFailure;
  if (o.max_products && cover.k_star > *o.max_products) {
    err << "k* = " << cover.k_star << " exceeds --max-products " << *o.max_products << "\n";
    return kExitFailure;
  }

  if (o.space == FormSpace::Free) {
    BilinearScheme s;
    try {
      s = to_scheme(cands, cover, o.dim);
    } catch (const std::invalid_argument& e) {
      err << "cannot emit scheme: " << e.what() << "\n";
      return kExitFailure;
    }
    if (!report_scheme(s, out, err)) return kExitFailure;
    if (o.out) {
      save_scheme(*o.out, s);
      out << "scheme written to " << *o.out << "\n";
    }
  } else if (o.out) {
    err << "schemes are only emitted from the free (non-commutative) space\n";
    return kExitUsage;
  }
  return kExitOk;
}

int cmd_export(const ExportOptions& o, std::ostream& out, std::ostream& err) {
  const BilinearScheme* s = nullptr;
  if (o.scheme == "rxtx") s = &rxtx_scheme();
  if (o.scheme == "strassen-xxt") s = &strassen_xxt_scheme();
  if (!s) {
    err << "unknown scheme '" << o.scheme << "' (rxtx, strassen-xxt)\n";
    return kExitUsage;
  }
  if (o.out)
    save_scheme(*o.out, *s);
  else
    write_scheme(out, *s);
  return kExitOk;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gram products X X^t with the RXTX block scheme: verification, counts, benchmarks, search"};
  app.require_subcommand(1);

  VerifyOptions vo;
  auto* verify = app.add_subcommand("verify", "Symbolic proof of the built-in schemes and plans, plus oracle checks");
  std::string scheme_file;
  verify->add_option("--scheme", scheme_file, "Verify a scheme table file instead of the built-ins");
  verify->add_flag("!--no-oracle", vo.oracle, "Skip the randomized equivalence suite");

  CountOptions co;
  auto* count = app.add_subcommand("count", "Exact operation count from the cost model");
  count->add_option("--algo", co.algo, "rxtx | strassen-xxt | winograd | naive-gram | naive-gemm")->capture_default_str();
  count->add_option("--metric", co.metric, "mults | ops")->capture_default_str();
  count->add_option("--n", co.n, "Matrix size")->capture_default_str()->check(CLI::PositiveNumber);
  count->add_flag("--opt", co.opt, "Use the optimal switch-to-naive cutoff");
  count->add_flag("--explain", co.explain, "With --opt, print the decision at each size");

  TableOptions to;
  auto* table = app.add_subcommand("table", "CSV of counts and ratios for n = 4^1..4^k");
  table->footer(cost::csv_columns_help());
  std::string table_out;
  table->add_option("--max-exp", to.max_exp, "Largest exponent k")->capture_default_str()->check(CLI::Range(1, 20));
  table->add_option("--out", table_out, "Output file (default stdout)");
  table->add_flag("!--no-opt", to.with_opt, "Omit the optimal-cutoff columns");

  BenchOptions bo;
  auto* bench = app.add_subcommand("bench", "Time RXTX against a direct Gram product on random normal inputs");
  std::string backend = "naive";
  bool no_warmup = false;
  bench->add_option("--n", bo.config.n, "Matrix size")->capture_default_str()->check(CLI::Range(4, 1 << 20));
  bench->add_option("--reps", bo.config.reps, "Repetitions")->capture_default_str()->check(CLI::PositiveNumber);
  bench->add_option("--seed", bo.config.seed, "Seed for the input matrices")->capture_default_str();
  bench->add_option("--backend", backend, "naive | winograd | external")->capture_default_str();
  bench->add_option("--winograd-cutoff", bo.config.winograd_cutoff, "Winograd switch-to-naive size")
      ->capture_default_str();
  bench->add_option("--depth", bo.config.depth, "Levels of the 4x4 scheme")->capture_default_str()->check(
      CLI::PositiveNumber);
  bench->add_option("--threads", bo.config.threads, "Worker threads")
      ->envname("RXTX_THREADS")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  bench->add_flag("--no-warmup", no_warmup, "Time the first repetition too (no untimed warm-up run)");
  bench->add_option("--out", bo.config.output, "Write the JSON report here");
  bench->add_flag("--json", bo.json_stdout, "Print the JSON report on stdout");

  DiscoverOptions dopt;
  auto* discover = app.add_subcommand("discover", "Search for a minimal product cover of the Gram entries");
  std::string mode = "exhaustive", space = "free", disc_out;
  std::size_t max_products = 0;
  discover->add_option("--dim", dopt.dim, "Grid size of the variable matrix")->capture_default_str()->check(
      CLI::Range(1, 3));
  discover->add_option("--samples", dopt.samples, "Pairs drawn in random mode")->capture_default_str();
  discover->add_option("--seed", dopt.seed, "Seed for random mode")->capture_default_str();
  discover->add_option("--mode", mode, "exhaustive | random")->capture_default_str();
  discover->add_option("--space", space, "free | symmetric")->capture_default_str();
  discover->add_option("--max-products", max_products, "Fail if the minimum exceeds this");
  discover->add_option("--max-relation-size", dopt.max_relation_size, "Relation size bound for the upper bound")
      ->capture_default_str();
  discover->add_option("--time-budget", dopt.time_budget, "Seconds for the deep exhaustive phase (0 = none)")
      ->capture_default_str();
  discover->add_option("--out", disc_out, "Write the found scheme table here");

  ExportOptions eo;
  auto* exp = app.add_subcommand("export-scheme", "Print or save a built-in scheme table");
  std::string exp_out;
  exp->add_option("--scheme", eo.scheme, "rxtx | strassen-xxt")->capture_default_str();
  exp->add_option("--out", exp_out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*verify) {
      if (!scheme_file.empty()) vo.scheme_file = scheme_file;
      return cmd_verify(vo, out, err);
    }
    if (*count) return cmd_count(co, out, err);
    if (*table) {
      if (!table_out.empty()) to.out = table_out;
      return cmd_table(to, out, err);
    }
    if (*bench) {
      if (backend == "naive")
        bo.config.backend = GemmKind::Naive;
      else if (backend == "winograd" || backend == "strassen-winograd")
        bo.config.backend = GemmKind::StrassenWinograd;
      else if (backend == "external")
        bo.config.backend = GemmKind::External;
      else {
        err << "unknown backend '" << backend << "' (naive, winograd, external)\n";
        return kExitUsage;
      }
      bo.config.warmup = !no_warmup;
      return cmd_bench(bo, out, err);
    }
    if (*discover) {
      if (mode == "exhaustive")
        dopt.mode = discovery::SampleMode::Exhaustive;
      else if (mode == "random")
        dopt.mode = discovery::SampleMode::Random;
      else {
        err << "unknown mode '" << mode << "' (exhaustive, random)\n";
        return kExitUsage;
      }
      if (space == "free")
        dopt.space = discovery::FormSpace::Free;
      else if (space == "symmetric")
        dopt.space = discovery::FormSpace::Symmetric;
      else {
        err << "unknown space '" << space << "' (free, symmetric)\n";
        return kExitUsage;
      }
      if (max_products > 0) dopt.max_products = max_products;
      if (!disc_out.empty()) dopt.out = disc_out;
      return cmd_discover(dopt, out, err);
    }
    if (*exp) {
      if (!exp_out.empty()) eo.out = exp_out;
      return cmd_export(eo, out, err);
    }
  } catch (const MalformedScheme& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"rxtx"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace rxtx::cli
