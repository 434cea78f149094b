#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"

#include "rxtx/gemm.hpp"
#include "rxtx/matrix.hpp"

namespace rxtx {

struct BenchConfig {
  std::size_t n = 512;
  std::size_t reps = 5;
  std::uint64_t seed = 42;
  GemmKind backend = GemmKind::Naive;
  std::size_t winograd_cutoff = kDefaultWinogradCutoff;
  /// Levels of the 4x4 scheme; 1 = one level, then Gram base products on the n/4 blocks.
  std::size_t depth = 1;
  unsigned threads = 1;
  bool warmup = true;
  std::string output;  // empty: no file
};

struct BenchRep {
  double rxtx_seconds = 0;
  double baseline_seconds = 0;
  double rel_frobenius = 0;
  double max_abs_deviation = 0;
};

struct TimingSummary {
  double mean = 0;
  double median = 0;
  double min = 0;
  double max = 0;
};

struct BenchReport {
  BenchConfig config;
  std::size_t padded_n = 0;
  std::string backend_name;
  std::string baseline_name;
  std::string rng;
  std::vector<BenchRep> reps;
  TimingSummary rxtx;
  TimingSummary baseline;
  double fraction_rxtx_faster = 0;
  double worst_rel_frobenius = 0;
  double worst_max_abs_deviation = 0;
  std::vector<std::string> warnings;
};

/// Standard normal sampler: mt19937_64 + Box-Muller on 53-bit uniforms.
class NormalSampler {
 public:
  static constexpr const char* kAlgorithm = "mt19937_64+box-muller";

  explicit NormalSampler(std::uint64_t seed) : rng_(seed) {}
  double operator()();

 private:
  double uniform();  // in (0, 1)
  std::mt19937_64 rng_;
  bool have_spare_ = false;
  double spare_ = 0;
};

DenseMatrix<double> random_normal_matrix(std::size_t rows, std::size_t cols, NormalSampler& rng);

/// Times RXTX against a direct Gram product on the same backend family, one fresh input per rep.
/// Throws BackendUnavailable or std::invalid_argument (reps < 1, n < 4).
BenchReport run_bench(const BenchConfig& cfg);

nlohmann::json to_json(const BenchReport& r);
TimingSummary summarize(std::vector<double> samples);

}  // namespace rxtx
