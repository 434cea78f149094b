#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace rxtx::cost {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

enum class Algorithm { Rxtx, StrassenXxt, Winograd, NaiveGram, NaiveGemm };
enum class Metric { Mults, TotalOps };

std::string to_string(Algorithm a);
std::string to_string(Metric m);
std::optional<Algorithm> parse_algorithm(const std::string& s);
std::optional<Metric> parse_metric(const std::string& s);

/// Coefficients of the closed forms, all exact.
///   R(n)  = alpha M(n) + beta n^{3/2}
///   S(n)  = gamma M(n) + delta n^2
///   R+(n) = r7 n^{log2 7} + r2 n^2 + r32 n^{3/2}
///   S+(n) = s7 n^{log2 7} + slog n^2 log2 n + s2 n^2
///   M+(n) = 6 n^{log2 7} - 5 n^2
struct CostModel {
  Rational alpha{26, 41};
  Rational beta{15, 41};
  Rational gamma{2, 3};
  Rational delta{1, 3};
  Rational r7{156, 41};
  Rational r2{-615, 164};
  Rational r32{155, 164};
  Rational s7{4};
  Rational slog{-7, 4};
  Rational s2{-3};
};

const CostModel& cost_model();

/// Exact count by evaluating the defining recursion down to n = 1 (all base counts 1).
/// Requires n = 4^k for Rxtx, n = 2^k for StrassenXxt / Winograd, any n >= 1 for the naive ones.
BigInt count_recurrence(Algorithm alg, Metric metric, std::uint64_t n);

/// Exact value of the closed-form expression, same domain as count_recurrence.
Rational count_closed_form(Algorithm alg, Metric metric, std::uint64_t n);

struct CutoffDecision {
  std::uint64_t n = 0;
  bool recurse = false;  // false: the naive algorithm is used at this size
  BigInt value;
};

struct OptimalCount {
  BigInt value;
  /// Decisions down the main recursion chain, largest size first.
  std::vector<CutoffDecision> chain;
  /// Largest size (<= n) at which the general products fall back to the naive kernel.
  std::uint64_t gemm_naive_threshold = 0;
};

/// Minimum over "naive here" and "one more level of the scheme" at every size.
/// Recursion is only possible while the size divides by the grid (4 for Rxtx, 2 otherwise),
/// so any n >= 1 is accepted.
OptimalCount count_optimal_cutoff(Algorithm alg, Metric metric, std::uint64_t n);

/// value rounded half-up to `places` decimals, e.g. "0.951219".
std::string to_decimal(const Rational& value, int places = 6);

struct CountRow {
  std::uint64_t n = 0;
  BigInt r, s, m, naive_mults;
  BigInt r_plus, s_plus, m_plus, naive_ops;
  std::optional<BigInt> r_opt, s_opt, r_plus_opt, s_plus_opt;
};

struct TableOptions {
  bool with_opt = true;
};

/// Rows for n = 4^1 .. 4^max_exp (max_exp <= 20).
std::vector<CountRow> count_table(int max_exp, const TableOptions& opts = {});

/// CSV rendering: header + one line per row, ratios as 6-place decimals.
std::string emit_ratio_table(int max_exp, const TableOptions& opts = {});
std::string csv_header(const TableOptions& opts);
std::string csv_columns_help();

}  // namespace rxtx::cost
