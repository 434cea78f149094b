#include "rxtx/matrix.hpp"

#include <cmath>

namespace rxtx {

double relative_frobenius_error(const DenseMatrix<double>& a, const DenseMatrix<double>& b) {
  detail::require_same_shape(a, b, "relative_frobenius_error");
  double diff = 0.0, ref = 0.0;
  auto x = a.data(), y = b.data();
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - y[i];
    diff += d * d;
    ref += y[i] * y[i];
  }
  if (ref == 0.0) return diff == 0.0 ? 0.0 : INFINITY;
  return std::sqrt(diff / ref);
}

double max_abs_difference(const DenseMatrix<double>& a, const DenseMatrix<double>& b) {
  detail::require_same_shape(a, b, "max_abs_difference");
  double m = 0.0;
  auto x = a.data(), y = b.data();
  for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x[i] - y[i]));
  return m;
}

}  // namespace rxtx
