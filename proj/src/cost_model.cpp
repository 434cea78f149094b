#include "rxtx/cost_model.hpp"

#include <bit>
#include <map>
#include <sstream>
#include <stdexcept>

namespace rxtx::cost {

namespace {

bool is_pow2(std::uint64_t n) { return n != 0 && std::has_single_bit(n); }
bool is_pow4(std::uint64_t n) { return is_pow2(n) && std::countr_zero(n) % 2 == 0; }
unsigned log2u(std::uint64_t n) { return static_cast<unsigned>(std::countr_zero(n)); }

void require_domain(Algorithm alg, std::uint64_t n) {
  switch (alg) {
    case Algorithm::Rxtx:
      if (!is_pow4(n)) throw std::invalid_argument("rxtx counts need n = 4^k, got " + std::to_string(n));
      return;
    case Algorithm::StrassenXxt:
    case Algorithm::Winograd:
      if (!is_pow2(n)) throw std::invalid_argument(to_string(alg) + " counts need n = 2^k, got " + std::to_string(n));
      return;
    case Algorithm::NaiveGram:
    case Algorithm::NaiveGemm:
      if (n == 0) throw std::invalid_argument("n must be >= 1");
      return;
  }
}

BigInt big(std::uint64_t v) { return BigInt(v); }

BigInt naive_gram_count(Metric metric, std::uint64_t n) {
  const BigInt N = big(n);
  if (metric == Metric::Mults) return N * N * (N + 1) / 2;
  return (2 * N - 1) * N * (N + 1) / 2;
}

BigInt naive_gemm_count(Metric metric, std::uint64_t n) {
  const BigInt N = big(n);
  if (metric == Metric::Mults) return N * N * N;
  return 2 * N * N * N - N * N;
}

// per-level block additions of each scheme (zero when only multiplications are counted)
BigInt level_adds(Metric metric, unsigned per_level, std::uint64_t sub) {
  return metric == Metric::Mults ? BigInt(0) : BigInt(per_level) * big(sub) * big(sub);
}

constexpr unsigned kRxtxAdds = 100;
constexpr unsigned kStrassenXxtAdds = 3;
constexpr unsigned kWinogradAdds = 15;

BigInt winograd_rec(Metric metric, std::uint64_t n) {
  if (n == 1) return 1;
  return 7 * winograd_rec(metric, n / 2) + level_adds(metric, kWinogradAdds, n / 2);
}

BigInt strassen_rec(Metric metric, std::uint64_t n) {
  if (n == 1) return 1;
  return 4 * strassen_rec(metric, n / 2) + 2 * winograd_rec(metric, n / 2) + level_adds(metric, kStrassenXxtAdds, n / 2);
}

BigInt rxtx_rec(Metric metric, std::uint64_t n) {
  if (n == 1) return 1;
  return 8 * rxtx_rec(metric, n / 4) + 26 * winograd_rec(metric, n / 4) + level_adds(metric, kRxtxAdds, n / 4);
}

Rational pow_r(unsigned base, unsigned exp) { return Rational(boost::multiprecision::pow(BigInt(base), exp)); }

// Memoised optimal-cutoff dynamic program for one metric.
class OptimalSolver {
 public:
  explicit OptimalSolver(Metric m) : metric_(m) {}

  const BigInt& gemm(std::uint64_t n) {
    if (auto it = gemm_.find(n); it != gemm_.end()) return it->second.value;
    CutoffDecision d{n, false, naive_gemm_count(metric_, n)};
    if (n % 2 == 0) {
      BigInt rec = 7 * gemm(n / 2) + level_adds(metric_, kWinogradAdds, n / 2);
      if (rec < d.value) d = {n, true, rec};
    }
    return gemm_.emplace(n, d).first->second.value;
  }

  const CutoffDecision& gram(Algorithm alg, std::uint64_t n) {
    auto& memo = alg == Algorithm::Rxtx ? rxtx_ : strassen_;
    if (auto it = memo.find(n); it != memo.end()) return it->second;
    CutoffDecision d{n, false, naive_gram_count(metric_, n)};
    const std::uint64_t g = alg == Algorithm::Rxtx ? 4 : 2;
    if (n % g == 0) {
      const std::uint64_t h = n / g;
      BigInt rec = alg == Algorithm::Rxtx
                       ? 8 * gram(alg, h).value + 26 * gemm(h) + level_adds(metric_, kRxtxAdds, h)
                       : 4 * gram(alg, h).value + 2 * gemm(h) + level_adds(metric_, kStrassenXxtAdds, h);
      if (rec < d.value) d = {n, true, rec};
    }
    return memo.emplace(n, d).first->second;
  }

  bool gemm_recurses(std::uint64_t n) {
    gemm(n);
    return gemm_.at(n).recurse;
  }

 private:
  Metric metric_;
  std::map<std::uint64_t, CutoffDecision> gemm_, rxtx_, strassen_;
};

}  // namespace

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::Rxtx:
      return "rxtx";
    case Algorithm::StrassenXxt:
      return "strassen-xxt";
    case Algorithm::Winograd:
      return "winograd";
    case Algorithm::NaiveGram:
      return "naive-gram";
    case Algorithm::NaiveGemm:
      return "naive-gemm";
  }
  return "?";
}

std::string to_string(Metric m) { return m == Metric::Mults ? "mults" : "ops"; }

std::optional<Algorithm> parse_algorithm(const std::string& s) {
  for (auto a : {Algorithm::Rxtx, Algorithm::StrassenXxt, Algorithm::Winograd, Algorithm::NaiveGram,
                 Algorithm::NaiveGemm})
    if (s == to_string(a)) return a;
  if (s == "naive") return Algorithm::NaiveGram;
  return std::nullopt;
}

std::optional<Metric> parse_metric(const std::string& s) {
  if (s == "mults") return Metric::Mults;
  if (s == "ops" || s == "total" || s == "totalOps") return Metric::TotalOps;
  return std::nullopt;
}

const CostModel& cost_model() {
  static const CostModel m;
  return m;
}

BigInt count_recurrence(Algorithm alg, Metric metric, std::uint64_t n) {
  require_domain(alg, n);
  switch (alg) {
    case Algorithm::Rxtx:
      return rxtx_rec(metric, n);
    case Algorithm::StrassenXxt:
      return strassen_rec(metric, n);
    case Algorithm::Winograd:
      return winograd_rec(metric, n);
    case Algorithm::NaiveGram:
      return naive_gram_count(metric, n);
    case Algorithm::NaiveGemm:
      return naive_gemm_count(metric, n);
  }
  throw std::logic_error("count_recurrence: unknown algorithm");
}

Rational count_closed_form(Algorithm alg, Metric metric, std::uint64_t n) {
  require_domain(alg, n);
  const CostModel& c = cost_model();
  const Rational N(n);
  if (alg == Algorithm::NaiveGram) {
    if (metric == Metric::Mults) return Rational(N * N * (N + 1) / 2);
    return Rational((2 * N - 1) * N * (N + 1) / 2);
  }
  if (alg == Algorithm::NaiveGemm) {
    if (metric == Metric::Mults) return Rational(N * N * N);
    return Rational(2 * N * N * N - N * N);
  }

  const unsigned k = log2u(n);
  const Rational n_log7 = pow_r(7, k);  // n^{log2 7} = 7^{log2 n}
  const Rational n2 = N * N;
  switch (alg) {
    case Algorithm::Winograd:
      if (metric == Metric::Mults) return n_log7;
      return Rational(6 * n_log7 - 5 * n2);
    case Algorithm::StrassenXxt:
      if (metric == Metric::Mults) return c.gamma * n_log7 + c.delta * n2;
      return c.s7 * n_log7 + c.slog * n2 * Rational(k) + c.s2 * n2;
    case Algorithm::Rxtx: {
      const Rational n32 = pow_r(8, k / 2);  // n^{3/2} with n = 4^{k/2}
      if (metric == Metric::Mults) return c.alpha * n_log7 + c.beta * n32;
      return c.r7 * n_log7 + c.r2 * n2 + c.r32 * n32;
    }
    default:
      break;
  }
  throw std::logic_error("count_closed_form: unknown algorithm");
}

OptimalCount count_optimal_cutoff(Algorithm alg, Metric metric, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("n must be >= 1");
  OptimalSolver solver(metric);
  OptimalCount out;
  switch (alg) {
    case Algorithm::NaiveGram:
      out.value = naive_gram_count(metric, n);
      out.chain.push_back({n, false, out.value});
      return out;
    case Algorithm::NaiveGemm:
      out.value = naive_gemm_count(metric, n);
      out.chain.push_back({n, false, out.value});
      return out;
    case Algorithm::Winograd: {
      out.value = solver.gemm(n);
      for (std::uint64_t s = n;; s /= 2) {
        const bool rec = solver.gemm_recurses(s);
        out.chain.push_back({s, rec, solver.gemm(s)});
        if (!rec) break;
      }
      break;
    }
    case Algorithm::Rxtx:
    case Algorithm::StrassenXxt: {
      const std::uint64_t g = alg == Algorithm::Rxtx ? 4 : 2;
      out.value = solver.gram(alg, n).value;
      for (std::uint64_t s = n;; s /= g) {
        const auto& d = solver.gram(alg, s);
        out.chain.push_back(d);
        if (!d.recurse) break;
      }
      break;
    }
  }
  for (std::uint64_t s = n; s >= 1; s = s / 2) {
    if (!solver.gemm_recurses(s)) {
      out.gemm_naive_threshold = s;
      break;
    }
    if (s % 2) break;
  }
  return out;
}

std::string to_decimal(const Rational& value, int places) {
  BigInt num = boost::multiprecision::numerator(value);
  const BigInt den = boost::multiprecision::denominator(value);
  const bool neg = num < 0;
  if (neg) num = -num;
  const BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(places));
  BigInt scaled = (num * scale * 2 + den) / (den * 2);  // half-up
  const BigInt int_part = scaled / scale;
  const BigInt frac = scaled % scale;
  std::string f = frac.str();
  if (static_cast<int>(f.size()) < places) f.insert(0, static_cast<std::size_t>(places) - f.size(), '0');
  std::string out = (neg && scaled != 0 ? "-" : "") + int_part.str();
  if (places > 0) out += "." + f;
  return out;
}

std::vector<CountRow> count_table(int max_exp, const TableOptions& opts) {
  if (max_exp < 1 || max_exp > 20) throw std::invalid_argument("max_exp must be in [1, 20]");
  std::vector<CountRow> rows;
  OptimalSolver mults(Metric::Mults), ops(Metric::TotalOps);
  for (int e = 1; e <= max_exp; ++e) {
    const std::uint64_t n = std::uint64_t{1} << (2 * e);
    CountRow r;
    r.n = n;
    r.r = count_recurrence(Algorithm::Rxtx, Metric::Mults, n);
    r.s = count_recurrence(Algorithm::StrassenXxt, Metric::Mults, n);
    r.m = count_recurrence(Algorithm::Winograd, Metric::Mults, n);
    r.naive_mults = count_recurrence(Algorithm::NaiveGram, Metric::Mults, n);
    r.r_plus = count_recurrence(Algorithm::Rxtx, Metric::TotalOps, n);
    r.s_plus = count_recurrence(Algorithm::StrassenXxt, Metric::TotalOps, n);
    r.m_plus = count_recurrence(Algorithm::Winograd, Metric::TotalOps, n);
    r.naive_ops = count_recurrence(Algorithm::NaiveGram, Metric::TotalOps, n);
    if (opts.with_opt) {
      r.r_opt = mults.gram(Algorithm::Rxtx, n).value;
      r.s_opt = mults.gram(Algorithm::StrassenXxt, n).value;
      r.r_plus_opt = ops.gram(Algorithm::Rxtx, n).value;
      r.s_plus_opt = ops.gram(Algorithm::StrassenXxt, n).value;
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string csv_header(const TableOptions& opts) {
  std::string h =
      "n,R,S,M,naive_mults,R_plus,S_plus,M_plus,naive_ops,"
      "R_over_S,R_over_naive,Rplus_over_Splus,Rplus_over_naiveops";
  if (opts.with_opt)
    h +=
        ",R_opt,S_opt,R_plus_opt,S_plus_opt,"
        "Ropt_over_Sopt,Ropt_over_naive,Rplusopt_over_Splusopt,Rplusopt_over_naiveops";
  return h;
}

std::string csv_columns_help() {
  return "CSV columns (one row per n = 4^1..4^k):\n"
         "  n                 matrix size\n"
         "  R, S, M           multiplications: RXTX, recursive Strassen for XX^t, Strassen-Winograd GEMM\n"
         "  naive_mults       n^2(n+1)/2\n"
         "  R_plus, S_plus, M_plus  additions + multiplications of the same algorithms\n"
         "  naive_ops         (2n-1)n(n+1)/2\n"
         "  *_over_*          exact ratios rounded half-up to 6 decimals\n"
         "  *_opt columns     same counts with the optimal naive cutoff (omitted with --no-opt)\n";
}

std::string emit_ratio_table(int max_exp, const TableOptions& opts) {
  const auto rows = count_table(max_exp, opts);
  std::ostringstream os;
  os << csv_header(opts) << "\n";
  auto ratio = [](const BigInt& a, const BigInt& b) { return to_decimal(Rational(a, b)); };
  for (const auto& r : rows) {
    os << r.n << ',' << r.r << ',' << r.s << ',' << r.m << ',' << r.naive_mults << ',' << r.r_plus << ','
       << r.s_plus << ',' << r.m_plus << ',' << r.naive_ops << ',' << ratio(r.r, r.s) << ','
       << ratio(r.r, r.naive_mults) << ',' << ratio(r.r_plus, r.s_plus) << ',' << ratio(r.r_plus, r.naive_ops);
    if (opts.with_opt) {
      os << ',' << *r.r_opt << ',' << *r.s_opt << ',' << *r.r_plus_opt << ',' << *r.s_plus_opt << ','
         << ratio(*r.r_opt, *r.s_opt) << ',' << ratio(*r.r_opt, r.naive_mults) << ','
         << ratio(*r.r_plus_opt, *r.s_plus_opt) << ',' << ratio(*r.r_plus_opt, r.naive_ops);
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace rxtx::cost
