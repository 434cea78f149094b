#include <limits>
#include <random>

#include "doctest.h"
#include "rxtx/matrix.hpp"
#include "test_util.hpp"

using namespace rxtx;

TEST_CASE("ExactInt throws instead of wrapping") {
  const ExactInt big(std::numeric_limits<std::int64_t>::max());
  CHECK_THROWS_AS(big + ExactInt(1), OverflowError);
  CHECK_THROWS_AS(ExactInt(std::numeric_limits<std::int64_t>::min()) - ExactInt(1), OverflowError);
  CHECK_THROWS_AS(big * ExactInt(2), OverflowError);
  CHECK((ExactInt(6) * ExactInt(-7)).value() == -42);
}

TEST_CASE("OpCounter accumulates and rejects overflow") {
  OpCounter c;
  c.add_mults(3);
  c.add_adds(4);
  CHECK(c.total() == 7);
  count_mults(nullptr, 5);  // no counter, no effect
  c.add_adds(std::numeric_limits<std::uint64_t>::max() - 4);
  CHECK_THROWS_AS(c.add_adds(1), OverflowError);
  c.reset();
  CHECK(c.total() == 0);
}

TEST_CASE("naive products against hand values") {
  const MatrixZ a{{1, 2}, {3, 4}};
  const MatrixZ b{{5, 6}, {7, 8}};
  CHECK(naive_multiply(a, b) == MatrixZ{{19, 22}, {43, 50}});
  CHECK(naive_multiply_abt(a, b) == MatrixZ{{17, 23}, {39, 53}});
  CHECK(naive_gram(a) == MatrixZ{{5, 11}, {11, 25}});
  CHECK_THROWS_AS(naive_multiply(a, MatrixZ(3, 2)), DimensionError);
}

TEST_CASE("naive counts") {
  std::mt19937_64 rng(1);
  const auto a = testing::random_int_matrix(3, 5, rng);
  const auto b = testing::random_int_matrix(5, 4, rng);
  OpCounter c;
  naive_multiply(a, b, &c);
  CHECK(c.mults() == 3 * 5 * 4);
  CHECK(c.adds() == 3 * 4 * 4);

  OpCounter g;
  const auto x = testing::random_int_matrix(4, 4, rng);
  naive_gram(x, &g);
  CHECK(g.mults() == 40);  // n^2 (n + 1) / 2
  CHECK(g.adds() == 30);
}

TEST_CASE("negation is free, additions are counted") {
  const MatrixZ a{{1, -2}, {3, 0}};
  OpCounter c;
  auto n = negate(a);
  CHECK(n == MatrixZ{{-1, 2}, {-3, 0}});
  accumulate(n, a, 1, &c);
  CHECK(n == MatrixZ(2, 2));
  CHECK(c.mults() == 0);
  CHECK(c.adds() == 4);
}

TEST_CASE("partition and assemble round-trip, with padding") {
  std::mt19937_64 rng(7);
  for (auto [r, c] : {std::pair{8, 8}, {7, 5}, {1, 3}, {9, 12}}) {
    const auto x = testing::random_int_matrix(r, c, rng);
    const auto p = partition(x, 4);
    CHECK(p.padded_rows % 4 == 0);
    CHECK(p.blocks.size() == 16);
    CHECK(assemble(p) == x);
  }
  const MatrixZ x{{1, 2, 3}};
  const auto p = partition(x, 2);
  CHECK(p.at(0, 1) == MatrixZ{{3, 0}});
  CHECK(p.at(1, 0) == MatrixZ{{0, 0}});
}

TEST_CASE("upper block indexing is row-major over the upper triangle") {
  std::size_t k = 0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i; j < 4; ++j) CHECK(upper_block_index(4, i, j) == k++);
  CHECK(upper_block_count(4) == 10);
}

TEST_CASE("assemble_symmetric mirrors the whole strict lower triangle") {
  std::vector<MatrixZ> up{MatrixZ{{1, 2}, {99, 3}}, MatrixZ{{4, 5}, {6, 7}}, MatrixZ{{8, 9}, {-1, 10}}};
  const auto c = assemble_symmetric<ExactInt>(up, 2, 3);
  CHECK(c == MatrixZ{{1, 2, 4}, {2, 3, 6}, {4, 6, 8}});
  CHECK(is_symmetric(c));
}

TEST_CASE("float error helpers") {
  const MatrixF a{{1, 0}, {0, 1}};
  MatrixF b = a;
  CHECK(relative_frobenius_error(b, a) == 0.0);
  b(0, 1) = 1e-3;
  CHECK(max_abs_difference(a, b) == doctest::Approx(1e-3));
  CHECK(relative_frobenius_error(b, a) == doctest::Approx(1e-3 / std::sqrt(2.0)));
}
