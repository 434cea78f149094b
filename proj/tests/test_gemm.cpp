#include <random>

#include "doctest.h"
#include "rxtx/gemm.hpp"
#include "test_util.hpp"

using namespace rxtx;

TEST_CASE("Winograd program shape") {
  const auto prog = winograd_program();
  std::size_t muls = 0;
  for (const auto& s : prog) muls += s.op == BlockStep::Op::Mul;
  CHECK(muls == 7);
  CHECK(winograd_addition_count() == 15);
  CHECK(prog.size() == 22);
}

TEST_CASE("backends agree exactly on integer inputs") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t p = 1 + rng() % 20, q = 1 + rng() % 20, r = 1 + rng() % 20;
    const auto a = testing::random_int_matrix(p, q, rng);
    const auto b = testing::random_int_matrix(q, r, rng);
    const auto bt = testing::random_int_matrix(r, q, rng);
    const auto want = naive_multiply(a, b);
    const auto want_abt = naive_multiply_abt(a, bt);
    for (std::size_t cutoff : {1, 2, 4, 7}) {
      const auto w = GemmBackend::strassen_winograd(cutoff);
      CHECK(w.multiply(a, b) == want);
      CHECK(w.multiply_abt(a, bt) == want_abt);
    }
    CHECK(GemmBackend::naive().multiply(a, b) == want);
  }
}

TEST_CASE("threaded Winograd matches serial") {
  std::mt19937_64 rng(5);
  const auto a = testing::random_int_matrix(33, 30, rng);
  const auto b = testing::random_int_matrix(30, 17, rng);
  auto w = GemmBackend::strassen_winograd(4);
  const auto serial = w.multiply(a, b);
  w.with_threads(4);
  CHECK(w.multiply(a, b) == serial);
}

TEST_CASE("instrumented Winograd counts: M(2^k) = 7^k, M+(2^k) = 6*7^k - 5*4^k") {
  std::mt19937_64 rng(3);
  std::uint64_t p7 = 1, p4 = 1;
  for (int k = 0; k <= 5; ++k) {
    const std::size_t n = std::size_t{1} << k;
    const auto a = testing::random_int_matrix(n, n, rng, 2);
    const auto b = testing::random_int_matrix(n, n, rng, 2);
    OpCounter c;
    GemmBackend::strassen_winograd(1, &c).multiply(a, b);
    CAPTURE(n);
    CHECK(c.mults() == p7);
    CHECK(c.total() == 6 * p7 - 5 * p4);
    p7 *= 7;
    p4 *= 4;
  }
}

TEST_CASE("M+(4) = 214 by instrumentation") {
  std::mt19937_64 rng(2);
  OpCounter c;
  GemmBackend::strassen_winograd(1, &c).multiply(testing::random_int_matrix(4, 4, rng),
                                                  testing::random_int_matrix(4, 4, rng));
  CHECK(c.total() == 214);
}

TEST_CASE("external backend") {
  std::mt19937_64 rng(9);
  const auto az = testing::random_int_matrix(13, 9, rng);
  const auto bz = testing::random_int_matrix(9, 6, rng);
  if (!GemmBackend::external_available()) {
    CHECK_THROWS_AS(GemmBackend::external().multiply(testing::to_double(az), testing::to_double(bz)),
                    BackendUnavailable);
    return;
  }
  const auto ext = GemmBackend::external();
  const auto want = testing::to_double(naive_multiply(az, bz));
  CHECK(max_abs_difference(ext.multiply(testing::to_double(az), testing::to_double(bz)), want) == 0.0);
  CHECK(max_abs_difference(external_gram(testing::to_double(az)), testing::to_double(naive_gram(az))) == 0.0);
  CHECK_THROWS_AS(ext.multiply(az, bz), BackendUnavailable);
}
