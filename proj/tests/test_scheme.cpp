#include <algorithm>
#include <sstream>

#include "doctest.h"
#include "rxtx/scheme.hpp"

using namespace rxtx;

TEST_CASE("built-in schemes are exact") {
  const auto r = verify_scheme(rxtx_scheme());
  CHECK(r.ok());
  CHECK(r.checked == 10);
  const auto s = verify_scheme(strassen_xxt_scheme());
  CHECK(s.ok());
  CHECK(s.checked == 3);
}

TEST_CASE("rxtx shape") {
  const auto& s = rxtx_scheme();
  CHECK(s.grid == 4);
  CHECK(s.products.size() == 26);
  CHECK(s.recursive_calls == std::vector<std::size_t>{0, 1, 2, 3, 12, 13, 14, 15});
  CHECK_NOTHROW(s.validate());
}

TEST_CASE("first products read off the table") {
  const auto& s = rxtx_scheme();
  // m1 = (-X2 + X3 - X4 + X8) (X8 + X11)^t
  std::vector<int> l(16, 0), r(16, 0);
  l[1] = -1, l[2] = 1, l[3] = -1, l[7] = 1;
  r[7] = 1, r[10] = 1;
  CHECK(s.products[0].left == l);
  CHECK(s.products[0].right == r);
}

TEST_CASE("target monomials") {
  const auto t = target_monomials(2, 0, 1);  // X1 X3^t + X2 X4^t
  CHECK(t(0, 2) == 1);
  CHECK(t(1, 3) == 1);
  CHECK(t(0, 0) == 0);
}

namespace {

// Flips every nonzero coefficient of the scheme in turn; each mutant must be rejected.
std::size_t count_undetected_mutations(const BilinearScheme& base) {
  std::size_t undetected = 0, tried = 0;
  auto probe = [&](BilinearScheme m) {
    ++tried;
    if (verify_scheme(m).ok()) ++undetected;
  };
  for (std::size_t k = 0; k < base.products.size(); ++k)
    for (int side = 0; side < 2; ++side)
      for (std::size_t a = 0; a < base.block_count(); ++a) {
        auto m = base;
        auto& v = side == 0 ? m.products[k].left : m.products[k].right;
        if (v[a] == 0) continue;
        v[a] = -v[a];
        probe(std::move(m));
      }
  for (std::size_t o = 0; o < base.outputs.size(); ++o) {
    for (std::size_t k = 0; k < base.outputs[o].products.size(); ++k) {
      if (base.outputs[o].products[k] == 0) continue;
      auto m = base;
      m.outputs[o].products[k] = -m.outputs[o].products[k];
      probe(std::move(m));
    }
    for (std::size_t c = 0; c < base.outputs[o].calls.size(); ++c) {
      if (base.outputs[o].calls[c] == 0) continue;
      auto m = base;
      m.outputs[o].calls[c] = -m.outputs[o].calls[c];
      probe(std::move(m));
    }
  }
  REQUIRE(tried > 0);
  return undetected;
}

}  // namespace

TEST_CASE("every single sign flip is detected") {
  CHECK(count_undetected_mutations(rxtx_scheme()) == 0);
  CHECK(count_undetected_mutations(strassen_xxt_scheme()) == 0);
}

TEST_CASE("mismatch report names the output") {
  auto m = rxtx_scheme();
  auto& c12 = m.outputs[1].products;
  auto hit = std::find_if(c12.begin(), c12.end(), [](int v) { return v != 0; });
  REQUIRE(hit != c12.end());
  *hit = -*hit;
  const auto r = verify_scheme(m);
  REQUIRE(r.failures.size() == 1);
  CHECK(r.failures[0].row == 0);
  CHECK(r.failures[0].col == 1);
  CHECK(describe(r.failures[0]).find("C12") != std::string::npos);
}

TEST_CASE("text round-trip") {
  for (const auto* s : {&rxtx_scheme(), &strassen_xxt_scheme()}) {
    const std::string text = to_text(*s);
    const auto back = parse_scheme(text);
    CHECK(back == *s);
    CHECK(to_text(back) == text);
  }
}

TEST_CASE("malformed text is rejected") {
  CHECK_THROWS_AS(parse_scheme("grid 2\ncalls\n1 : 1 0 0 | 1 0 0 0\n"), MalformedScheme);
  CHECK_THROWS_AS(parse_scheme("1 : 1 0 0 0 | 1 0 0 0\n"), MalformedScheme);
  std::string t = to_text(strassen_xxt_scheme());
  t.replace(t.find("C22"), 3, "C21");
  CHECK_THROWS_AS(parse_scheme(t), MalformedScheme);
}

TEST_CASE("validate catches wrong lengths") {
  auto s = strassen_xxt_scheme();
  s.outputs[0].products.pop_back();
  CHECK_THROWS_AS(s.validate(), MalformedScheme);
  s = strassen_xxt_scheme();
  s.recursive_calls.push_back(9);
  CHECK_THROWS_AS(s.validate(), MalformedScheme);
}
