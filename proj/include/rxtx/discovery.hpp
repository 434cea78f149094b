#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "rxtx/scheme.hpp"

namespace rxtx::discovery {

using Rational = boost::rational<std::int64_t>;

/// Where products and targets are compared.
///  Symmetric: commuting scalar variables; a product is the quadratic form (a.x)(b.x),
///             i.e. the symmetric matrix (a b^t + b a^t)/2.
///  Free:      non-commuting blocks; a product is the monomial matrix a b^t over X_i X_j^t.
///             Only covers found here are valid block schemes.
enum class FormSpace { Symmetric, Free };

enum class SampleMode { Random, Exhaustive };

std::string to_string(FormSpace s);

/// (sum_i alpha_i x_i) * (sum_j beta_j x_j) with alpha, beta in {-1, 0, 1}^vars.
struct CandidateProduct {
  std::vector<int> alpha;
  std::vector<int> beta;
  /// Integer coordinates in the chosen space, sign-normalised (first nonzero entry positive).
  ///  Free: entry i*vars + j = alpha_i beta_j.
  ///  Symmetric: coefficient of x_i x_j for i <= j, row-major.
  std::vector<std::int64_t> form;
};

/// (a b^t + b a^t) / 2 as a vars x vars rational matrix.
std::vector<std::vector<Rational>> symmetric_matrix(const std::vector<int>& alpha, const std::vector<int>& beta);

std::size_t form_dimension(std::size_t vars, FormSpace space);
std::vector<std::int64_t> product_form(const std::vector<int>& alpha, const std::vector<int>& beta, FormSpace space);

struct CandidateSet {
  std::size_t vars = 0;
  FormSpace space = FormSpace::Free;
  std::size_t raw_pairs = 0;  // pairs drawn or enumerated before deduplication
  std::vector<CandidateProduct> items;
};

/// Exhaustive mode enumerates all (3^vars - 1)^2 pairs of nonzero coefficient vectors;
/// random mode draws `count` pairs from a seeded generator. Both deduplicate by form up to sign
/// and order the survivors sparsest first.
CandidateSet sample_candidates(std::size_t vars, SampleMode mode, std::size_t count, std::uint64_t seed,
                               FormSpace space);

/// Candidate set from explicit (alpha, beta) pairs, deduplicated, original order kept.
CandidateSet make_candidates(std::size_t vars, FormSpace space,
                             const std::vector<std::pair<std::vector<int>, std::vector<int>>>& pairs);

struct Target {
  std::string name;
  std::vector<std::int64_t> form;
};

/// Entries of X X^t for a grid x grid matrix of variables x_1.. (row-major), upper triangle
/// row-major: for grid 2 these are x1^2 + x2^2, x1x3 + x2x4, x3^2 + x4^2.
std::vector<Target> gram_targets(std::size_t grid, FormSpace space);

/// target = sum coeffs[i] * candidates[support[i]], with every coefficient nonzero.
struct Relation {
  std::vector<std::size_t> support;
  std::vector<Rational> coeffs;
};

struct TargetRelations {
  std::size_t target = 0;
  std::vector<Relation> relations;
};

/// All minimal relations with support size <= max_size. Sizes 1 and 2 scale to thousands of
/// candidates; size >= 3 is brute force and limited to small candidate sets.
std::vector<TargetRelations> enumerate_relations(const CandidateSet& candidates, const std::vector<Target>& targets,
                                                 std::size_t max_size = 2);

class InfeasibleCover : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CoverOptions {
  std::size_t max_relation_size = 2;
  /// Seconds allowed for the exhaustive phase once it needs subspaces of dimension >= 3; 0 = unlimited.
  double time_budget_seconds = 0.0;
  /// Among minimum covers, return one with integer combination coefficients when one exists.
  bool prefer_integer = true;
};

struct CoverResult {
  std::vector<std::size_t> subset;                   // candidate indices, ascending
  std::vector<std::vector<Rational>> combinations;   // [target][position in subset]
  std::size_t k_star = 0;
  std::size_t lower_bound = 0;     // rank of the target span
  std::size_t relation_bound = 0;  // size of the cover assembled from enumerated relations
  std::size_t covers_found = 0;    // minimum covers seen at k_star (0 if the relation cover was kept)
  std::size_t subspaces_examined = 0;
  bool exact = true;  // false only when the time budget cut the exhaustive phase short
};

/// Smallest subset of candidates whose span contains every target.
///
/// The relation-based cover gives an upper bound. Sizes below it are then ruled out or realised
/// exhaustively: a minimum cover U is linearly independent, so modulo the target span its
/// image spans exactly |U| - rank(targets) dimensions. Every subspace of that dimension spanned
/// by candidate images is visited once, and it yields a cover iff the candidates lying over it
/// have rank |U|.
///
/// Throws InfeasibleCover when some target is outside the span of all candidates.
CoverResult select_minimal_cover(const CandidateSet& candidates, const std::vector<Target>& targets,
                                 const CoverOptions& opts = {});

/// Exact re-expansion: every target equals its combination of the chosen products.
bool certify(const CandidateSet& candidates, const std::vector<Target>& targets, const CoverResult& cover);

/// Emits the cover as a grid x grid block scheme without recursive calls. Targets must be
/// gram_targets(grid, ...) order. Throws std::invalid_argument on non-integer coefficients.
BilinearScheme to_scheme(const CandidateSet& candidates, const CoverResult& cover, std::size_t grid);

}  // namespace rxtx::discovery
