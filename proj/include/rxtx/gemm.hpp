#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>

#include "rxtx/matrix.hpp"

namespace rxtx {

class BackendUnavailable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class GemmKind { Naive, StrassenWinograd, External };

std::string to_string(GemmKind kind);

/// One step of a one-level 2x2 block multiplication program.
/// Slots 0..3 are A11, A12, A21, A22; slots 4..7 are B11, B12, B21, B22; later slots are temporaries.
struct BlockStep {
  enum class Op { Add, Sub, Mul };
  Op op;
  int dst;
  int lhs;
  int rhs;
};

/// The Strassen-Winograd program (7 products, 15 block additions) run by GemmKind::StrassenWinograd.
std::span<const BlockStep> winograd_program();

/// Output slots of winograd_program() for C11, C12, C21, C22.
std::span<const int, 4> winograd_outputs();

/// Structural count of block additions/subtractions in one Winograd level.
std::size_t winograd_addition_count();

inline constexpr std::size_t kDefaultWinogradCutoff = 64;

/// General matrix-product engine. Cheap to copy; the counter is shared, not owned.
class GemmBackend {
 public:
  static GemmBackend naive(OpCounter* counter = nullptr);
  static GemmBackend strassen_winograd(std::size_t cutoff = kDefaultWinogradCutoff, OpCounter* counter = nullptr);
  /// Platform BLAS adapter; Float64 only and never instrumented.
  static GemmBackend external();
  static bool external_available();

  GemmKind kind() const { return kind_; }
  std::size_t cutoff() const { return cutoff_; }
  OpCounter* counter() const { return counter_; }
  std::string name() const;

  /// Sub-products of the top Winograd level run on up to `threads` threads.
  GemmBackend& with_threads(unsigned threads) {
    threads_ = threads == 0 ? 1 : threads;
    return *this;
  }
  unsigned threads() const { return threads_; }

  GemmBackend with_counter(OpCounter* counter) const {
    GemmBackend b = *this;
    b.counter_ = counter;
    return b;
  }

  template <Element T>
  DenseMatrix<T> multiply(const DenseMatrix<T>& a, const DenseMatrix<T>& b) const;

  /// a * b^t.
  template <Element T>
  DenseMatrix<T> multiply_abt(const DenseMatrix<T>& a, const DenseMatrix<T>& b) const;

 private:
  GemmBackend(GemmKind kind, std::size_t cutoff, OpCounter* counter) : kind_(kind), cutoff_(cutoff), counter_(counter) {}

  GemmKind kind_;
  std::size_t cutoff_;
  OpCounter* counter_;
  unsigned threads_ = 1;
};

/// x * x^t through BLAS syrk (upper triangle, mirrored). Throws BackendUnavailable without BLAS.
DenseMatrix<double> external_gram(const DenseMatrix<double>& x);

/// Thread count used inside the BLAS library itself. No-op without BLAS.
void set_external_threads(unsigned threads);

}  // namespace rxtx
