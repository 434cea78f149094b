#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "rxtx/discovery.hpp"

using namespace rxtx;
using namespace rxtx::discovery;

namespace {

std::vector<int> e(std::size_t i, std::size_t n = 4) {
  std::vector<int> v(n, 0);
  v[i] = 1;
  return v;
}

std::vector<int> vec(std::initializer_list<int> v) { return v; }

// Rank over Q by fraction-free elimination with gcd reduction.
std::size_t rank_of(std::vector<std::vector<std::int64_t>> rows) {
  std::size_t rank = 0;
  const std::size_t dim = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < dim && rank < rows.size(); ++c) {
    std::size_t p = rank;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[rank]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      const auto a = rows[rank][c], b = rows[r][c];
      std::int64_t g = 0;
      for (std::size_t j = 0; j < dim; ++j) {
        rows[r][j] = a * rows[r][j] - b * rows[rank][j];
        g = std::gcd(g, rows[r][j]);
      }
      if (g > 1)
        for (auto& x : rows[r]) x /= g;
    }
    ++rank;
  }
  return rank;
}

// Smallest k such that some k-subset spans all targets: span(S) contains T iff rank(S) == rank(S + T).
std::size_t brute_force_min_cover(const CandidateSet& c, const std::vector<Target>& targets) {
  const std::size_t n = c.items.size();
  std::vector<std::vector<std::int64_t>> all;
  for (const auto& it : c.items) all.push_back(it.form);
  const std::size_t full = rank_of(all);
  for (const auto& t : targets) all.push_back(t.form);
  if (rank_of(all) != full) return 0;
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<bool> pick(n, false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), true);
    do {
      std::vector<std::vector<std::int64_t>> rows;
      for (std::size_t i = 0; i < n; ++i)
        if (pick[i]) rows.push_back(c.items[i].form);
      const std::size_t r = rank_of(rows);
      for (const auto& t : targets) rows.push_back(t.form);
      if (rank_of(rows) == r) return k;
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return 0;
}

}  // namespace

TEST_CASE("symmetric canonical form") {
  const auto m = symmetric_matrix(e(0), e(2));
  CHECK(m[0][2] == Rational(1, 2));
  CHECK(m[2][0] == Rational(1, 2));
  CHECK(m[0][0] == Rational(0));
  // x1 x3 as a polynomial coefficient
  const auto f = product_form(e(0), e(2), FormSpace::Symmetric);
  CHECK(std::count(f.begin(), f.end(), 1) == 1);
  CHECK(product_form(e(0), e(2), FormSpace::Free) != product_form(e(2), e(0), FormSpace::Free));
  CHECK(product_form(e(0), e(2), FormSpace::Symmetric) == product_form(e(2), e(0), FormSpace::Symmetric));
}

TEST_CASE("exhaustive sampling") {
  for (auto space : {FormSpace::Symmetric, FormSpace::Free}) {
    const auto c = sample_candidates(4, SampleMode::Exhaustive, 0, 0, space);
    CHECK(c.raw_pairs == 6400);
    CHECK(c.items.size() < 6400);
  }
  CHECK(sample_candidates(4, SampleMode::Exhaustive, 0, 0, FormSpace::Free).items.size() == 1600);
  CHECK(sample_candidates(4, SampleMode::Exhaustive, 0, 0, FormSpace::Symmetric).items.size() == 820);
}

TEST_CASE("random sampling is seeded") {
  const auto a = sample_candidates(4, SampleMode::Random, 300, 42, FormSpace::Free);
  const auto b = sample_candidates(4, SampleMode::Random, 300, 42, FormSpace::Free);
  REQUIRE(a.items.size() == b.items.size());
  for (std::size_t i = 0; i < a.items.size(); ++i) CHECK(a.items[i].form == b.items[i].form);
  CHECK(a.raw_pairs == 300);
  CHECK_THROWS_AS(sample_candidates(4, SampleMode::Random, 0, 1, FormSpace::Free), std::invalid_argument);
}

TEST_CASE("duplicates up to sign collapse") {
  const auto c = make_candidates(4, FormSpace::Free, {{e(0), e(1)}, {vec({-1, 0, 0, 0}), e(1)}});
  CHECK(c.items.size() == 1);
  const auto s = make_candidates(4, FormSpace::Symmetric, {{e(0), e(1)}, {e(1), e(0)}});
  CHECK(s.items.size() == 1);
}

TEST_CASE("targets of the 2x2 example") {
  const auto t = gram_targets(2, FormSpace::Symmetric);
  REQUIRE(t.size() == 3);
  CHECK(t[0].name == "C11");
  CHECK(t[1].name == "C12");
  CHECK(t[2].name == "C22");
}

TEST_CASE("relation examples") {
  const auto t = gram_targets(2, FormSpace::Symmetric);
  const auto squares = make_candidates(4, FormSpace::Symmetric, {{e(0), e(0)}, {e(1), e(1)}});
  const auto r = enumerate_relations(squares, {t[0]});
  REQUIRE(r[0].relations.size() == 1);
  CHECK(r[0].relations[0].coeffs == std::vector<Rational>{1, 1});

  const auto one = make_candidates(4, FormSpace::Symmetric, {{vec({1, 1, 0, 0}), vec({1, 1, 0, 0})}});
  CHECK(enumerate_relations(one, {t[0]})[0].relations.empty());
}

TEST_CASE("every target has relations over the exhaustive set") {
  for (auto space : {FormSpace::Symmetric, FormSpace::Free}) {
    const auto c = sample_candidates(4, SampleMode::Exhaustive, 0, 0, space);
    const auto targets = gram_targets(2, space);
    const auto rels = enumerate_relations(c, targets);
    for (std::size_t i = 0; i < targets.size(); ++i) {
      CHECK_FALSE(rels[i].relations.empty());
      CHECK(rels[i].target == i);
    }
  }
}

TEST_CASE("relations expand to their target") {
  const auto c = sample_candidates(4, SampleMode::Random, 150, 3, FormSpace::Symmetric);
  const auto targets = gram_targets(2, FormSpace::Symmetric);
  const auto rels = enumerate_relations(c, targets, 3);
  for (std::size_t ti = 0; ti < targets.size(); ++ti)
    for (const auto& r : rels[ti].relations) {
      std::vector<Rational> sum(targets[ti].form.size(), Rational(0));
      for (std::size_t k = 0; k < r.support.size(); ++k) {
        CHECK(r.coeffs[k].numerator() != 0);
        for (std::size_t j = 0; j < sum.size(); ++j) sum[j] += r.coeffs[k] * c.items[r.support[k]].form[j];
      }
      for (std::size_t j = 0; j < sum.size(); ++j) CHECK(sum[j] == Rational(targets[ti].form[j]));
    }
}

TEST_CASE("diagonal targets only: four squares suffice") {
  const auto c = sample_candidates(4, SampleMode::Exhaustive, 0, 0, FormSpace::Symmetric);
  auto t = gram_targets(2, FormSpace::Symmetric);
  t.erase(t.begin() + 1);
  const auto cover = select_minimal_cover(c, t);
  CHECK(cover.k_star <= 4);
  CHECK(cover.subset.size() == cover.k_star);
  CHECK(certify(c, t, cover));
}

TEST_CASE("naive six products give a cover of six") {
  const auto c = make_candidates(4, FormSpace::Free,
                                 {{e(0), e(0)}, {e(1), e(1)}, {e(0), e(2)}, {e(1), e(3)}, {e(2), e(2)}, {e(3), e(3)}});
  const auto t = gram_targets(2, FormSpace::Free);
  const auto cover = select_minimal_cover(c, t);
  CHECK(cover.k_star == 6);
  CHECK(certify(c, t, cover));
  const auto s = to_scheme(c, cover, 2);
  CHECK(verify_scheme(s).ok());
}

TEST_CASE("exhaustive 2x2 search") {
  SUBCASE("free space: the emitted scheme verifies") {
    const auto c = sample_candidates(4, SampleMode::Exhaustive, 0, 0, FormSpace::Free);
    const auto t = gram_targets(2, FormSpace::Free);
    const auto cover = select_minimal_cover(c, t);
    CHECK(cover.exact);
    CHECK(cover.k_star <= 6);
    CHECK(cover.k_star >= cover.lower_bound);
    CHECK(certify(c, t, cover));
    CHECK(verify_scheme(to_scheme(c, cover, 2)).ok());
  }
  SUBCASE("symmetric space: commuting variables allow fewer products") {
    const auto c = sample_candidates(4, SampleMode::Exhaustive, 0, 0, FormSpace::Symmetric);
    const auto t = gram_targets(2, FormSpace::Symmetric);
    const auto cover = select_minimal_cover(c, t);
    CHECK(cover.exact);
    CHECK(cover.k_star < 6);
    CHECK(cover.covers_found > 0);
    CHECK(certify(c, t, cover));
  }
}

TEST_CASE("cover size matches brute force on small random sets") {
  const auto targets = gram_targets(2, FormSpace::Symmetric);
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    const auto c = sample_candidates(4, SampleMode::Random, 18, seed, FormSpace::Symmetric);
    CAPTURE(seed);
    std::size_t bf = 0;
    bool infeasible = false;
    try {
      const auto cover = select_minimal_cover(c, targets);
      CHECK(certify(c, targets, cover));
      bf = brute_force_min_cover(c, targets);
      CHECK(cover.k_star == bf);
    } catch (const InfeasibleCover&) {
      infeasible = true;
    }
    if (infeasible) CHECK(brute_force_min_cover(c, targets) == 0);
  }
}

TEST_CASE("infeasible targets are reported") {
  const auto c = make_candidates(4, FormSpace::Free, {{e(0), e(0)}});
  CHECK_THROWS_AS(select_minimal_cover(c, gram_targets(2, FormSpace::Free)), InfeasibleCover);
}

TEST_CASE("certify rejects a tampered combination") {
  const auto c = make_candidates(4, FormSpace::Free,
                                 {{e(0), e(0)}, {e(1), e(1)}, {e(0), e(2)}, {e(1), e(3)}, {e(2), e(2)}, {e(3), e(3)}});
  const auto t = gram_targets(2, FormSpace::Free);
  auto cover = select_minimal_cover(c, t);
  cover.combinations[0][0] += 1;
  CHECK_FALSE(certify(c, t, cover));
}
