#include <cmath>

#include "doctest.h"
#include "rxtx/bench.hpp"

using namespace rxtx;

TEST_CASE("normal sampler is seeded and roughly standard") {
  NormalSampler a(5), b(5);
  double sum = 0, sq = 0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const double x = a();
    CHECK(x == b());
    sum += x;
    sq += x * x;
  }
  const double mean = sum / n;
  CHECK(std::abs(mean) < 0.05);
  CHECK(std::abs(sq / n - mean * mean - 1.0) < 0.05);
}

TEST_CASE("summary statistics") {
  const auto t = summarize({3.0, 1.0, 2.0, 10.0});
  CHECK(t.mean == doctest::Approx(4.0));
  CHECK(t.median == doctest::Approx(2.5));
  CHECK(t.min == 1.0);
  CHECK(t.max == 10.0);
  CHECK(summarize({7.0}).median == 7.0);
}

TEST_CASE("bench report") {
  BenchConfig cfg;
  cfg.n = 64;
  cfg.reps = 3;
  cfg.seed = 9;
  const auto r = run_bench(cfg);
  REQUIRE(r.reps.size() == 3);
  for (const auto& rep : r.reps) {
    CHECK(rep.rxtx_seconds > 0);
    CHECK(rep.baseline_seconds > 0);
    CHECK(rep.rel_frobenius <= 1e-10);
  }
  CHECK(r.warnings.empty());
  const auto j = to_json(r);
  CHECK(j["reps"].size() == 3);
  CHECK(j["rng"] == NormalSampler::kAlgorithm);
  CHECK(j["summary"]["rxtx"]["median"].get<double>() > 0);

  // same seed, same inputs, same deviations
  const auto again = run_bench(cfg);
  for (std::size_t i = 0; i < 3; ++i) CHECK(again.reps[i].rel_frobenius == r.reps[i].rel_frobenius);
}

TEST_CASE("padding warning and argument checks") {
  BenchConfig cfg;
  cfg.n = 30;
  cfg.reps = 1;
  cfg.warmup = false;
  const auto r = run_bench(cfg);
  CHECK(r.padded_n == 32);
  CHECK(r.warnings.size() == 1);
  CHECK(r.worst_rel_frobenius <= 1e-12);

  cfg.reps = 0;
  CHECK_THROWS_AS(run_bench(cfg), std::invalid_argument);
  cfg.reps = 1;
  cfg.n = 3;
  CHECK_THROWS_AS(run_bench(cfg), std::invalid_argument);
}

TEST_CASE("other backends") {
  BenchConfig cfg;
  cfg.n = 64;
  cfg.reps = 1;
  cfg.backend = GemmKind::StrassenWinograd;
  cfg.winograd_cutoff = 4;
  CHECK(run_bench(cfg).worst_rel_frobenius <= 1e-12);
  cfg.backend = GemmKind::External;
  if (GemmBackend::external_available())
    CHECK(run_bench(cfg).worst_rel_frobenius <= 1e-12);
  else
    CHECK_THROWS_AS(run_bench(cfg), BackendUnavailable);
}
