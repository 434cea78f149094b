#include "rxtx/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "json.hpp"

#include "rxtx/gram.hpp"

namespace rxtx {

double NormalSampler::uniform() {
  double u;
  do {
    u = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
  } while (u == 0.0);
  return u;
}

double NormalSampler::operator()() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  const double r = std::sqrt(-2.0 * std::log(uniform()));
  const double t = 2.0 * std::numbers::pi * uniform();
  spare_ = r * std::sin(t);
  have_spare_ = true;
  return r * std::cos(t);
}

DenseMatrix<double> random_normal_matrix(std::size_t rows, std::size_t cols, NormalSampler& rng) {
  DenseMatrix<double> m(rows, cols);
  for (auto& v : m.data()) v = rng();
  return m;
}

TimingSummary summarize(std::vector<double> s) {
  TimingSummary t;
  if (s.empty()) return t;
  std::sort(s.begin(), s.end());
  t.mean = std::accumulate(s.begin(), s.end(), 0.0) / static_cast<double>(s.size());
  const std::size_t h = s.size() / 2;
  t.median = s.size() % 2 ? s[h] : 0.5 * (s[h - 1] + s[h]);
  t.min = s.front();
  t.max = s.back();
  return t;
}

namespace {

using Clock = std::chrono::steady_clock;

template <typename F>
std::pair<DenseMatrix<double>, double> timed(F&& f) {
  const auto t0 = Clock::now();
  DenseMatrix<double> out = f();
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  return {std::move(out), std::max(secs, 1e-9)};
}

}  // namespace

BenchReport run_bench(const BenchConfig& cfg) {
  if (cfg.reps < 1) throw std::invalid_argument("bench: reps must be >= 1");
  if (cfg.n < 4) throw std::invalid_argument("bench: n must be >= 4");
  if (cfg.depth < 1) throw std::invalid_argument("bench: depth must be >= 1");

  BenchReport rep;
  rep.config = cfg;
  rep.rng = NormalSampler::kAlgorithm;
  rep.padded_n = round_up(cfg.n, 4);
  if (rep.padded_n != cfg.n)
    rep.warnings.push_back("n = " + std::to_string(cfg.n) + " is not divisible by 4; blocks are zero-padded to " +
                           std::to_string(rep.padded_n));

  GramOptions opts;
  opts.max_depth = cfg.depth;
  opts.threads = cfg.threads;
  switch (cfg.backend) {
    case GemmKind::Naive:
      opts.backend = GemmBackend::naive();
      break;
    case GemmKind::StrassenWinograd:
      opts.backend = GemmBackend::strassen_winograd(cfg.winograd_cutoff);
      break;
    case GemmKind::External:
      if (!GemmBackend::external_available()) throw BackendUnavailable("external backend not built in");
      opts.backend = GemmBackend::external();
      opts.base = BaseGram::External;
      set_external_threads(cfg.threads);
      break;
  }
  opts.backend.with_threads(cfg.threads);
  rep.backend_name = opts.backend.name();

  const GemmBackend base_backend = opts.backend;
  auto baseline = [&](const DenseMatrix<double>& x) -> DenseMatrix<double> {
    switch (cfg.backend) {
      case GemmKind::External:
        return external_gram(x);
      case GemmKind::StrassenWinograd:
        return base_backend.multiply_abt(x, x);
      case GemmKind::Naive:
        break;
    }
    return naive_gram(x);
  };
  rep.baseline_name = cfg.backend == GemmKind::External           ? "external-syrk"
                      : cfg.backend == GemmKind::StrassenWinograd ? "strassen-winograd-gemm"
                                                                  : "naive-gram";

  NormalSampler rng(cfg.seed);
  if (cfg.warmup) {
    NormalSampler warm(cfg.seed ^ 0x9e3779b97f4a7c15ull);
    const auto x = random_normal_matrix(cfg.n, cfg.n, warm);
    (void)rxtx_gram(x, opts);
    (void)baseline(x);
  }

  std::vector<double> tr, tb;
  std::size_t faster = 0;
  for (std::size_t r = 0; r < cfg.reps; ++r) {
    const auto x = random_normal_matrix(cfg.n, cfg.n, rng);
    auto [c_rxtx, t_rxtx] = timed([&] { return rxtx_gram(x, opts); });
    auto [c_base, t_base] = timed([&] { return baseline(x); });
    BenchRep b{t_rxtx, t_base, relative_frobenius_error(c_rxtx, c_base), max_abs_difference(c_rxtx, c_base)};
    faster += t_rxtx < t_base;
    rep.worst_rel_frobenius = std::max(rep.worst_rel_frobenius, b.rel_frobenius);
    rep.worst_max_abs_deviation = std::max(rep.worst_max_abs_deviation, b.max_abs_deviation);
    tr.push_back(t_rxtx);
    tb.push_back(t_base);
    rep.reps.push_back(b);
  }
  rep.rxtx = summarize(tr);
  rep.baseline = summarize(tb);
  rep.fraction_rxtx_faster = static_cast<double>(faster) / static_cast<double>(cfg.reps);
  return rep;
}

namespace {

nlohmann::json to_json(const TimingSummary& t) {
  return {{"mean", t.mean}, {"median", t.median}, {"min", t.min}, {"max", t.max}};
}

}  // namespace

nlohmann::json to_json(const BenchReport& r) {
  nlohmann::json j;
  j["config"] = {{"n", r.config.n},
                 {"padded_n", r.padded_n},
                 {"reps", r.config.reps},
                 {"seed", r.config.seed},
                 {"backend", r.backend_name},
                 {"depth", r.config.depth},
                 {"threads", r.config.threads},
                 {"warmup", r.config.warmup}};
  j["rng"] = r.rng;
  j["baseline"] = r.baseline_name;
  auto& reps = j["reps"] = nlohmann::json::array();
  for (const auto& b : r.reps)
    reps.push_back({{"rxtx_seconds", b.rxtx_seconds},
                    {"baseline_seconds", b.baseline_seconds},
                    {"rel_frobenius", b.rel_frobenius},
                    {"max_abs_deviation", b.max_abs_deviation}});
  j["summary"] = {{"rxtx", to_json(r.rxtx)},
                  {"baseline", to_json(r.baseline)},
                  {"fraction_rxtx_faster", r.fraction_rxtx_faster},
                  {"worst_rel_frobenius", r.worst_rel_frobenius},
                  {"worst_max_abs_deviation", r.worst_max_abs_deviation}};
  j["warnings"] = r.warnings;
  return j;
}

}  // namespace rxtx
