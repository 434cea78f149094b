#include "rxtx/gemm.hpp"

#include <algorithm>
#include <array>
#include <future>
#include <optional>
#include <vector>

#ifdef RXTX_HAVE_CBLAS
#include <cblas.h>
#endif

namespace rxtx {

namespace {

using Op = BlockStep::Op;

// S1..S4 = slots 8..11, T1..T4 = 12..15, P1..P7 = 16..22, U1..U7 = 23..29
constexpr std::array<BlockStep, 22> kWinograd{{
    {Op::Add, 8, 2, 3},     // S1 = A21 + A22
    {Op::Sub, 9, 8, 0},     // S2 = S1 - A11
    {Op::Sub, 10, 0, 2},    // S3 = A11 - A21
    {Op::Sub, 11, 1, 9},    // S4 = A12 - S2
    {Op::Sub, 12, 5, 4},    // T1 = B12 - B11
    {Op::Sub, 13, 7, 12},   // T2 = B22 - T1
    {Op::Sub, 14, 7, 5},    // T3 = B22 - B12
    {Op::Sub, 15, 13, 6},   // T4 = T2 - B21
    {Op::Mul, 16, 0, 4},    // P1 = A11 B11
    {Op::Mul, 17, 1, 6},    // P2 = A12 B21
    {Op::Mul, 18, 11, 7},   // P3 = S4 B22
    {Op::Mul, 19, 3, 15},   // P4 = A22 T4
    {Op::Mul, 20, 8, 12},   // P5 = S1 T1
    {Op::Mul, 21, 9, 13},   // P6 = S2 T2
    {Op::Mul, 22, 10, 14},  // P7 = S3 T3
    {Op::Add, 23, 16, 17},  // U1 = P1 + P2
    {Op::Add, 24, 16, 21},  // U2 = P1 + P6
    {Op::Add, 25, 24, 22},  // U3 = U2 + P7
    {Op::Add, 26, 24, 20},  // U4 = U2 + P5
    {Op::Add, 27, 26, 18},  // U5 = U4 + P3
    {Op::Sub, 28, 25, 19},  // U6 = U3 - P4
    {Op::Add, 29, 25, 20},  // U7 = U3 + P5
}};
constexpr std::array<int, 4> kWinogradOut{23, 27, 28, 29};
constexpr int kWinogradSlots = 30;

template <Element T>
DenseMatrix<T> winograd(const DenseMatrix<T>& a, const DenseMatrix<T>& b, std::size_t cutoff, OpCounter* counter,
                        unsigned threads) {
  const std::size_t p = a.rows(), q = a.cols(), r = b.cols();
  if (std::min({p, q, r}) <= cutoff) return naive_multiply(a, b, counter);

  const std::size_t hp = round_up(p, 2) / 2, hq = round_up(q, 2) / 2, hr = round_up(r, 2) / 2;
  std::vector<std::optional<DenseMatrix<T>>> slot(kWinogradSlots);
  slot[0] = extract_block(a, 0, 0, hp, hq);
  slot[1] = extract_block(a, 0, hq, hp, hq);
  slot[2] = extract_block(a, hp, 0, hp, hq);
  slot[3] = extract_block(a, hp, hq, hp, hq);
  slot[4] = extract_block(b, 0, 0, hq, hr);
  slot[5] = extract_block(b, 0, hr, hq, hr);
  slot[6] = extract_block(b, hq, 0, hq, hr);
  slot[7] = extract_block(b, hq, hr, hq, hr);

  std::vector<std::future<void>> pending;
  auto flush = [&] {
    for (auto& f : pending) f.get();
    pending.clear();
  };
  for (const BlockStep& s : kWinograd) {
    if (s.op == Op::Mul) {
      auto run = [&, s] { slot[s.dst] = winograd(*slot[s.lhs], *slot[s.rhs], cutoff, counter, 1); };
      if (threads > 1)
        pending.push_back(std::async(std::launch::async, run));
      else
        run();
      continue;
    }
    flush();
    slot[s.dst] = s.op == Op::Add ? add(*slot[s.lhs], *slot[s.rhs], counter) : sub(*slot[s.lhs], *slot[s.rhs], counter);
  }
  flush();

  DenseMatrix<T> c(p, r);
  place_block(c, *slot[kWinogradOut[0]], 0, 0);
  place_block(c, *slot[kWinogradOut[1]], 0, hr);
  place_block(c, *slot[kWinogradOut[2]], hp, 0);
  place_block(c, *slot[kWinogradOut[3]], hp, hr);
  return c;
}

}  // namespace

std::string to_string(GemmKind kind) {
  switch (kind) {
    case GemmKind::Naive:
      return "naive";
    case GemmKind::StrassenWinograd:
      return "strassen-winograd";
    case GemmKind::External:
      return "external";
  }
  return "unknown";
}

std::span<const BlockStep> winograd_program() { return kWinograd; }
std::span<const int, 4> winograd_outputs() { return std::span<const int, 4>(kWinogradOut); }

std::size_t winograd_addition_count() {
  return static_cast<std::size_t>(
      std::count_if(kWinograd.begin(), kWinograd.end(), [](const BlockStep& s) { return s.op != Op::Mul; }));
}

GemmBackend GemmBackend::naive(OpCounter* counter) { return {GemmKind::Naive, 0, counter}; }

GemmBackend GemmBackend::strassen_winograd(std::size_t cutoff, OpCounter* counter) {
  if (cutoff == 0) throw std::invalid_argument("strassen_winograd: cutoff must be >= 1");
  return {GemmKind::StrassenWinograd, cutoff, counter};
}

GemmBackend GemmBackend::external() { return {GemmKind::External, 0, nullptr}; }

bool GemmBackend::external_available() {
#ifdef RXTX_HAVE_CBLAS
  return true;
#else
  return false;
#endif
}

std::string GemmBackend::name() const {
  if (kind_ == GemmKind::StrassenWinograd) return to_string(kind_) + "(cutoff=" + std::to_string(cutoff_) + ")";
  return to_string(kind_);
}

template <Element T>
DenseMatrix<T> GemmBackend::multiply(const DenseMatrix<T>& a, const DenseMatrix<T>& b) const {
  if (a.cols() != b.rows())
    throw DimensionError("gemm: inner dimension mismatch " + detail::dims(a.rows(), a.cols()) + " * " +
                         detail::dims(b.rows(), b.cols()));
  switch (kind_) {
    case GemmKind::Naive:
      return naive_multiply(a, b, counter_);
    case GemmKind::StrassenWinograd:
      return winograd(a, b, cutoff_, counter_, threads_);
    case GemmKind::External:
      if constexpr (std::is_same_v<T, double>) {
#ifdef RXTX_HAVE_CBLAS
        DenseMatrix<double> c(a.rows(), b.cols());
        if (c.empty() || a.cols() == 0) return c;
        cblas_dgemm(CblasRowMajor, CblasNoTrans, CblasNoTrans, static_cast<int>(a.rows()), static_cast<int>(b.cols()),
                    static_cast<int>(a.cols()), 1.0, a.data().data(), static_cast<int>(a.cols()), b.data().data(),
                    static_cast<int>(b.cols()), 0.0, c.data().data(), static_cast<int>(c.cols()));
        return c;
#endif
      }
      throw BackendUnavailable("external backend unavailable for this element domain/build");
  }
  throw std::logic_error("gemm: unknown backend kind");
}

template <Element T>
DenseMatrix<T> GemmBackend::multiply_abt(const DenseMatrix<T>& a, const DenseMatrix<T>& b) const {
  switch (kind_) {
    case GemmKind::Naive:
      return naive_multiply_abt(a, b, counter_);
    case GemmKind::StrassenWinograd:
      return multiply(a, transpose(b));
    case GemmKind::External:
      if constexpr (std::is_same_v<T, double>) {
#ifdef RXTX_HAVE_CBLAS
        if (a.cols() != b.cols()) throw DimensionError("gemm: inner dimension mismatch in a*b^t");
        DenseMatrix<double> c(a.rows(), b.rows());
        if (c.empty() || a.cols() == 0) return c;
        cblas_dgemm(CblasRowMajor, CblasNoTrans, CblasTrans, static_cast<int>(a.rows()), static_cast<int>(b.rows()),
                    static_cast<int>(a.cols()), 1.0, a.data().data(), static_cast<int>(a.cols()), b.data().data(),
                    static_cast<int>(b.cols()), 0.0, c.data().data(), static_cast<int>(c.cols()));
        return c;
#endif
      }
      throw BackendUnavailable("external backend unavailable for this element domain/build");
  }
  throw std::logic_error("gemm: unknown backend kind");
}

template DenseMatrix<double> GemmBackend::multiply(const DenseMatrix<double>&, const DenseMatrix<double>&) const;
template DenseMatrix<ExactInt> GemmBackend::multiply(const DenseMatrix<ExactInt>&, const DenseMatrix<ExactInt>&) const;
template DenseMatrix<double> GemmBackend::multiply_abt(const DenseMatrix<double>&, const DenseMatrix<double>&) const;
template DenseMatrix<ExactInt> GemmBackend::multiply_abt(const DenseMatrix<ExactInt>&,
                                                         const DenseMatrix<ExactInt>&) const;

DenseMatrix<double> external_gram(const DenseMatrix<double>& x) {
#ifdef RXTX_HAVE_CBLAS
  const std::size_t n = x.rows();
  DenseMatrix<double> c(n, n);
  if (n == 0 || x.cols() == 0) return c;
  cblas_dsyrk(CblasRowMajor, CblasUpper, CblasNoTrans, static_cast<int>(n), static_cast<int>(x.cols()), 1.0,
              x.data().data(), static_cast<int>(x.cols()), 0.0, c.data().data(), static_cast<int>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) c(i, j) = c(j, i);
  return c;
#else
  (void)x;
  throw BackendUnavailable("external gram requires a BLAS build (RXTX_WITH_CBLAS)");
#endif
}

void set_external_threads(unsigned threads) {
#ifdef RXTX_HAVE_CBLAS
  openblas_set_num_threads(static_cast<int>(threads == 0 ? 1 : threads));
#else
  (void)threads;
#endif
}

}  // namespace rxtx
