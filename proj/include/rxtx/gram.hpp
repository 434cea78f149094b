#pragma once

#include <cstddef>

#include "rxtx/addition_plan.hpp"
#include "rxtx/gemm.hpp"
#include "rxtx/matrix.hpp"
#include "rxtx/scheme.hpp"

namespace rxtx {

/// How a Gram product is computed once recursion stops.
enum class BaseGram { Naive, External };

struct GramOptions {
  /// Recursion stops once min(rows, cols) <= cutoff. Must be >= 1.
  std::size_t cutoff = 1;
  /// Engine for the general products.
  GemmBackend backend = GemmBackend::naive();
  /// Additions, base-case Gram products and (overriding the backend's own handle) general
  /// products are tallied here when set.
  OpCounter* counter = nullptr;
  /// 0 = recurse until the cutoff; d > 0 = at most d levels of the block scheme.
  std::size_t max_depth = 0;
  BaseGram base = BaseGram::Naive;
  /// Products and recursive calls of the top level run on up to this many threads.
  unsigned threads = 1;
};

/// x * x^t by recursive application of `scheme` with the additions laid out by `plan`.
/// The result is exactly symmetric: the strict lower triangle is copied from the upper one.
template <Element T>
DenseMatrix<T> scheme_gram(const DenseMatrix<T>& x, const BilinearScheme& scheme, const AdditionPlan& plan,
                           const GramOptions& opts);

template <Element T>
DenseMatrix<T> rxtx_gram(const DenseMatrix<T>& x, const GramOptions& opts, PlanKind plan = PlanKind::Optimized) {
  return scheme_gram(x, rxtx_scheme(), rxtx_plan(plan), opts);
}

template <Element T>
DenseMatrix<T> strassen_xxt_gram(const DenseMatrix<T>& x, const GramOptions& opts) {
  static const AdditionPlan plan = naive_plan(strassen_xxt_scheme());
  return scheme_gram(x, strassen_xxt_scheme(), plan, opts);
}

}  // namespace rxtx
