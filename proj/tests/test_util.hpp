#pragma once

#include <cstdint>
#include <random>

#include "rxtx/matrix.hpp"

namespace rxtx::testing {

inline MatrixZ random_int_matrix(std::size_t r, std::size_t c, std::mt19937_64& rng, int bound = 9) {
  MatrixZ m(r, c);
  const auto span = static_cast<std::uint64_t>(2 * bound + 1);
  for (auto& v : m.data()) v = ExactInt(static_cast<std::int64_t>(rng() % span) - bound);
  return m;
}

inline MatrixF to_double(const MatrixZ& m) {
  MatrixF out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.size(); ++i) out.data()[i] = static_cast<double>(m.data()[i].value());
  return out;
}

}  // namespace rxtx::testing
