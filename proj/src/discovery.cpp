#include "rxtx/discovery.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <numeric>
#include <random>
#include <unordered_map>

#include "rxtx/matrix.hpp"

namespace rxtx::discovery {

namespace {

using IVec = std::vector<std::int64_t>;
using QVec = std::vector<Rational>;

struct IVecHash {
  std::size_t operator()(const IVec& v) const {
    std::size_t h = 0xcbf29ce484222325ull;
    for (auto x : v) h = (h ^ static_cast<std::size_t>(x)) * 0x100000001b3ull;
    return h;
  }
};

std::size_t nnz(const IVec& v) {
  return static_cast<std::size_t>(std::count_if(v.begin(), v.end(), [](auto x) { return x != 0; }));
}
std::size_t nnz(const std::vector<int>& v) {
  return static_cast<std::size_t>(std::count_if(v.begin(), v.end(), [](auto x) { return x != 0; }));
}

bool is_zero(const IVec& v) {
  return std::all_of(v.begin(), v.end(), [](auto x) { return x == 0; });
}

// Divides out the content and makes the first nonzero entry positive. Returns the sign applied.
int make_primitive(IVec& v) {
  std::int64_t g = 0;
  for (auto x : v) g = std::gcd(g, x < 0 ? -x : x);
  if (g == 0) return 1;
  int sign = 1;
  for (auto x : v)
    if (x != 0) {
      sign = x < 0 ? -1 : 1;
      break;
    }
  for (auto& x : v) x = x / g * sign;
  return sign;
}

QVec to_q(const IVec& v) { return QVec(v.begin(), v.end()); }

IVec primitive_from_q(const QVec& v) {
  std::int64_t l = 1;
  for (const auto& x : v) l = std::lcm(l, x.denominator());
  IVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i].numerator() * (l / v[i].denominator());
  make_primitive(out);
  return out;
}

// Removes the component along `a` at a's first nonzero coordinate; result is primitive.
IVec eliminate(const IVec& a, const IVec& b) {
  std::size_t p = 0;
  while (a[p] == 0) ++p;
  IVec w(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) w[i] = a[p] * b[i] - b[p] * a[i];
  make_primitive(w);
  return w;
}

// Rank over Q of integer vectors by fraction-free elimination.
std::size_t integer_rank(std::vector<IVec> rows) {
  std::size_t rank = 0;
  if (rows.empty()) return 0;
  const std::size_t dim = rows[0].size();
  for (std::size_t c = 0; c < dim && rank < rows.size(); ++c) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[rank], rows[piv]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (rows[r][c] == 0) continue;
      const std::int64_t a = rows[rank][c], b = rows[r][c];
      for (std::size_t j = 0; j < dim; ++j) rows[r][j] = a * rows[r][j] - b * rows[rank][j];
      make_primitive(rows[r]);
    }
    ++rank;
  }
  return rank;
}

// Row space kept in reduced row echelon form.
class RationalBasis {
 public:
  explicit RationalBasis(std::size_t dim) : dim_(dim) {}

  QVec reduce(QVec v) const {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Rational f = v[pivots_[r]];
      if (f.numerator() == 0) continue;
      for (std::size_t j = 0; j < dim_; ++j)
        if (rows_[r][j].numerator() != 0) v[j] -= f * rows_[r][j];
    }
    return v;
  }

  bool insert(const QVec& v) {
    QVec r = reduce(v);
    std::size_t p = 0;
    while (p < dim_ && r[p].numerator() == 0) ++p;
    if (p == dim_) return false;
    const Rational lead = r[p];
    for (auto& x : r) x /= lead;
    for (auto& row : rows_) {
      const Rational f = row[p];
      if (f.numerator() == 0) continue;
      for (std::size_t j = 0; j < dim_; ++j) row[j] -= f * r[j];
    }
    rows_.push_back(std::move(r));
    pivots_.push_back(p);
    return true;
  }

  bool contains(const QVec& v) const {
    const QVec r = reduce(v);
    return std::all_of(r.begin(), r.end(), [](const Rational& x) { return x.numerator() == 0; });
  }

  std::size_t rank() const { return rows_.size(); }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

 private:
  std::size_t dim_;
  std::vector<QVec> rows_;
  std::vector<std::size_t> pivots_;
};

// Solves sum x_i cols[i] = t. Free variables are set to zero.
std::optional<QVec> solve_combination(const std::vector<QVec>& cols, const QVec& t) {
  const std::size_t dim = t.size(), s = cols.size();
  std::vector<QVec> m(dim, QVec(s + 1));
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < s; ++c) m[r][c] = cols[c][r];
    m[r][s] = t[r];
  }
  std::vector<std::size_t> pivot_col;
  std::size_t row = 0;
  for (std::size_t c = 0; c < s && row < dim; ++c) {
    std::size_t piv = row;
    while (piv < dim && m[piv][c].numerator() == 0) ++piv;
    if (piv == dim) continue;
    std::swap(m[row], m[piv]);
    const Rational lead = m[row][c];
    for (auto& x : m[row]) x /= lead;
    for (std::size_t r = 0; r < dim; ++r) {
      if (r == row || m[r][c].numerator() == 0) continue;
      const Rational f = m[r][c];
      for (std::size_t j = c; j <= s; ++j) m[r][j] -= f * m[row][j];
    }
    pivot_col.push_back(c);
    ++row;
  }
  for (std::size_t r = row; r < dim; ++r)
    if (m[r][s].numerator() != 0) return std::nullopt;
  QVec x(s, Rational(0));
  for (std::size_t r = 0; r < pivot_col.size(); ++r) x[pivot_col[r]] = m[r][s];
  return x;
}

std::size_t sym_index(std::size_t vars, std::size_t a, std::size_t b) {
  if (a > b) std::swap(a, b);
  return a * vars - a * (a == 0 ? 0 : a - 1) / 2 + (b - a);
}

std::vector<int> ternary(std::uint64_t code, std::size_t vars) {
  std::vector<int> v(vars);
  for (std::size_t i = 0; i < vars; ++i) {
    v[vars - 1 - i] = static_cast<int>(code % 3) - 1;
    code /= 3;
  }
  return v;
}

class CandidateBuilder {
 public:
  CandidateBuilder(std::size_t vars, FormSpace space) {
    set_.vars = vars;
    set_.space = space;
  }

  void offer(std::vector<int> alpha, std::vector<int> beta) {
    if (alpha.size() != set_.vars || beta.size() != set_.vars)
      throw std::invalid_argument("candidate coefficient vector has wrong length");
    if (nnz(alpha) == 0 || nnz(beta) == 0) throw std::invalid_argument("candidate factor is identically zero");
    ++set_.raw_pairs;
    // (-a)(-b) is the same product; keep alpha's leading entry positive
    if (*std::find_if(alpha.begin(), alpha.end(), [](int v) { return v != 0; }) < 0) {
      for (auto& a : alpha) a = -a;
      for (auto& b : beta) b = -b;
    }
    IVec form = product_form(alpha, beta, set_.space);
    if (make_sign_canonical(form) < 0)
      for (auto& b : beta) b = -b;
    if (!seen_.emplace(form, set_.items.size()).second) return;
    set_.items.push_back({std::move(alpha), std::move(beta), std::move(form)});
  }

  CandidateSet take(bool sort_sparse_first) {
    if (sort_sparse_first) {
      std::stable_sort(set_.items.begin(), set_.items.end(), [](const auto& a, const auto& b) {
        const auto ka = std::make_tuple(nnz(a.form), nnz(a.alpha) + nnz(a.beta));
        const auto kb = std::make_tuple(nnz(b.form), nnz(b.alpha) + nnz(b.beta));
        if (ka != kb) return ka < kb;
        return a.form > b.form;
      });
    }
    return std::move(set_);
  }

 private:
  static int make_sign_canonical(IVec& v) {
    for (auto x : v)
      if (x != 0) {
        if (x < 0)
          for (auto& y : v) y = -y;
        return x < 0 ? -1 : 1;
      }
    return 1;
  }

  CandidateSet set_;
  std::unordered_map<IVec, std::size_t, IVecHash> seen_;
};

std::vector<QVec> candidate_vectors(const CandidateSet& c, const std::vector<std::size_t>& idx) {
  std::vector<QVec> out;
  out.reserve(idx.size());
  for (auto i : idx) out.push_back(to_q(c.items[i].form));
  return out;
}

bool all_integral(const std::vector<QVec>& combos) {
  for (const auto& v : combos)
    for (const auto& x : v)
      if (x.denominator() != 1) return false;
  return true;
}

// Combination coefficients of every target over `subset`; nullopt if some target is not spanned.
std::optional<std::vector<QVec>> combinations_for(const CandidateSet& c, const std::vector<Target>& targets,
                                                  const std::vector<std::size_t>& subset) {
  const auto cols = candidate_vectors(c, subset);
  std::vector<QVec> out;
  for (const auto& t : targets) {
    auto x = solve_combination(cols, to_q(t.form));
    if (!x) return std::nullopt;
    out.push_back(std::move(*x));
  }
  return out;
}

// Each subspace (of the quotient by the target span) spanned by `dim` direction items, visited once.
struct DirectionItem {
  std::vector<std::size_t> classes;
  IVec dir;
  bool forbidden = false;
};

class SubspaceWalker {
 public:
  using Clock = std::chrono::steady_clock;

  SubspaceWalker(std::optional<Clock::time_point> deadline) : deadline_(deadline) {}

  // emit(classes) returns false to stop the walk
  template <typename Emit>
  bool walk(const std::vector<DirectionItem>& items, std::size_t dim, std::vector<std::size_t>& chosen, Emit& emit) {
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (items[i].forbidden) continue;
      if (deadline_ && Clock::now() > *deadline_) {
        timed_out_ = true;
        return false;
      }
      const std::size_t mark = chosen.size();
      chosen.insert(chosen.end(), items[i].classes.begin(), items[i].classes.end());
      bool keep_going = true;
      if (dim == 1) {
        keep_going = emit(chosen);
      } else {
        std::vector<DirectionItem> next;
        std::unordered_map<IVec, std::size_t, IVecHash> where;
        for (std::size_t j = 0; j < items.size(); ++j) {
          if (j == i) continue;
          IVec w = eliminate(items[i].dir, items[j].dir);
          auto [it, fresh] = where.emplace(w, next.size());
          if (fresh) next.push_back({{}, std::move(w), false});
          auto& item = next[it->second];
          item.classes.insert(item.classes.end(), items[j].classes.begin(), items[j].classes.end());
          item.forbidden = item.forbidden || items[j].forbidden || j < i;
        }
        keep_going = walk(next, dim - 1, chosen, emit);
      }
      chosen.resize(mark);
      if (!keep_going) return false;
    }
    return true;
  }

  bool timed_out() const { return timed_out_; }

 private:
  std::optional<Clock::time_point> deadline_;
  bool timed_out_ = false;
};

}  // namespace

std::string to_string(FormSpace s) { return s == FormSpace::Free ? "free" : "symmetric"; }

std::vector<std::vector<Rational>> symmetric_matrix(const std::vector<int>& alpha, const std::vector<int>& beta) {
  const std::size_t n = alpha.size();
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = Rational(alpha[i] * beta[j] + beta[i] * alpha[j], 2);
  return m;
}

std::size_t form_dimension(std::size_t vars, FormSpace space) {
  return space == FormSpace::Free ? vars * vars : vars * (vars + 1) / 2;
}

std::vector<std::int64_t> product_form(const std::vector<int>& alpha, const std::vector<int>& beta, FormSpace space) {
  const std::size_t n = alpha.size();
  IVec f(form_dimension(n, space), 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const std::int64_t v = std::int64_t{alpha[i]} * beta[j];
      if (v == 0) continue;
      if (space == FormSpace::Free)
        f[i * n + j] += v;
      else
        f[sym_index(n, i, j)] += v;
    }
  return f;
}

CandidateSet sample_candidates(std::size_t vars, SampleMode mode, std::size_t count, std::uint64_t seed,
                               FormSpace space) {
  if (vars == 0) throw std::invalid_argument("sample_candidates: vars must be positive");
  CandidateBuilder b(vars, space);
  if (mode == SampleMode::Exhaustive) {
    if (vars > 6) throw std::invalid_argument("exhaustive sampling is limited to <= 6 variables");
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < vars; ++i) total *= 3;
    std::vector<std::vector<int>> nonzero;
    for (std::uint64_t code = 0; code < total; ++code) {
      auto v = ternary(code, vars);
      if (nnz(v) != 0) nonzero.push_back(std::move(v));
    }
    for (const auto& a : nonzero)
      for (const auto& bb : nonzero) b.offer(a, bb);
    return b.take(true);
  }
  if (count == 0) throw std::invalid_argument("sample_candidates: count must be >= 1 in random mode");
  std::mt19937_64 rng(seed);
  auto draw = [&] {
    std::vector<int> v(vars);
    do {
      for (auto& x : v) x = static_cast<int>(rng() % 3) - 1;
    } while (nnz(v) == 0);
    return v;
  };
  for (std::size_t i = 0; i < count; ++i) {
    auto a = draw();
    auto bb = draw();
    b.offer(std::move(a), std::move(bb));
  }
  return b.take(true);
}

CandidateSet make_candidates(std::size_t vars, FormSpace space,
                             const std::vector<std::pair<std::vector<int>, std::vector<int>>>& pairs) {
  CandidateBuilder b(vars, space);
  for (const auto& [a, bb] : pairs) b.offer(a, bb);
  return b.take(false);
}

std::vector<Target> gram_targets(std::size_t grid, FormSpace space) {
  const std::size_t vars = grid * grid;
  std::vector<Target> out;
  for (std::size_t i = 0; i < grid; ++i)
    for (std::size_t j = i; j < grid; ++j) {
      Target t{output_name(i, j), IVec(form_dimension(vars, space), 0)};
      for (std::size_t k = 0; k < grid; ++k) {
        const std::size_t a = i * grid + k, b = j * grid + k;
        if (space == FormSpace::Free)
          t.form[a * vars + b] += 1;
        else
          t.form[sym_index(vars, a, b)] += 1;
      }
      out.push_back(std::move(t));
    }
  return out;
}

std::vector<TargetRelations> enumerate_relations(const CandidateSet& c, const std::vector<Target>& targets,
                                                 std::size_t max_size) {
  if (c.items.empty()) throw std::invalid_argument("enumerate_relations: no candidates");
  if (max_size >= 3 && c.items.size() > 200)
    throw std::invalid_argument("relations of size >= 3 are brute force; use at most 200 candidates");
  std::vector<TargetRelations> out;
  for (std::size_t ti = 0; ti < targets.size(); ++ti) {
    const IVec& t = targets[ti].form;
    const QVec tq = to_q(t);
    TargetRelations tr{ti, {}};
    if (is_zero(t) || max_size == 0) {
      out.push_back(std::move(tr));
      continue;
    }
    // Candidates with parallel images modulo span(t) pair up into relations.
    std::unordered_map<IVec, std::vector<std::size_t>, IVecHash> groups;
    std::vector<const IVec*> order;
    for (std::size_t i = 0; i < c.items.size(); ++i) {
      IVec r = eliminate(t, c.items[i].form);
      if (is_zero(r)) {
        auto x = solve_combination({to_q(c.items[i].form)}, tq);
        if (x) tr.relations.push_back({{i}, {(*x)[0]}});
        continue;
      }
      auto [it, fresh] = groups.try_emplace(std::move(r));
      if (fresh) order.push_back(&it->first);
      it->second.push_back(i);
    }
    if (max_size >= 2) {
      for (const IVec* key : order) {
        const auto& g = groups.at(*key);
        for (std::size_t a = 0; a < g.size(); ++a)
          for (std::size_t b = a + 1; b < g.size(); ++b) {
            auto x = solve_combination({to_q(c.items[g[a]].form), to_q(c.items[g[b]].form)}, tq);
            if (x && (*x)[0].numerator() != 0 && (*x)[1].numerator() != 0) tr.relations.push_back({{g[a], g[b]}, *x});
          }
      }
    }
    for (std::size_t s = 3; s <= max_size && s <= c.items.size(); ++s) {
      std::vector<std::size_t> pick(s);
      std::iota(pick.begin(), pick.end(), 0);
      while (true) {
        std::vector<IVec> rows;
        for (auto i : pick) rows.push_back(c.items[i].form);
        if (integer_rank(rows) == s) {
          auto x = solve_combination(candidate_vectors(c, pick), tq);
          if (x && std::all_of(x->begin(), x->end(), [](const Rational& v) { return v.numerator() != 0; }))
            tr.relations.push_back({pick, *x});
        }
        // next combination
        std::size_t k = s;
        while (k > 0 && pick[k - 1] == c.items.size() - s + k - 1) --k;
        if (k == 0) break;
        ++pick[k - 1];
        for (std::size_t j = k; j < s; ++j) pick[j] = pick[j - 1] + 1;
      }
    }
    std::sort(tr.relations.begin(), tr.relations.end(), [](const Relation& a, const Relation& b) {
      if (a.support.size() != b.support.size()) return a.support.size() < b.support.size();
      return a.support < b.support;
    });
    out.push_back(std::move(tr));
  }
  return out;
}

CoverResult select_minimal_cover(const CandidateSet& c, const std::vector<Target>& targets, const CoverOptions& opts) {
  if (c.items.empty()) throw InfeasibleCover("no candidates");
  const std::size_t dim = form_dimension(c.vars, c.space);

  RationalBasis target_span(dim);
  for (const auto& t : targets) target_span.insert(to_q(t.form));
  const std::size_t dim_v = target_span.rank();

  {
    RationalBasis all(dim);
    for (const auto& it : c.items) all.insert(to_q(it.form));
    for (const auto& t : targets)
      if (!all.contains(to_q(t.form)))
        throw InfeasibleCover("target " + t.name + " is not in the span of the candidate products");
  }

  CoverResult res;
  res.lower_bound = dim_v;

  // Upper bound: per target, the enumerated relation adding the fewest new products.
  std::vector<std::size_t> incumbent;
  {
    const auto rels = enumerate_relations(c, targets, opts.max_relation_size);
    RationalBasis chosen_span(dim);
    auto take = [&](std::size_t idx) {
      if (std::find(incumbent.begin(), incumbent.end(), idx) != incumbent.end()) return;
      incumbent.push_back(idx);
      chosen_span.insert(to_q(c.items[idx].form));
    };
    for (std::size_t ti = 0; ti < targets.size(); ++ti) {
      if (chosen_span.contains(to_q(targets[ti].form))) continue;
      const Relation* best = nullptr;
      std::size_t best_new = SIZE_MAX;
      for (const auto& r : rels[ti].relations) {
        std::size_t fresh = 0;
        for (auto i : r.support) fresh += std::find(incumbent.begin(), incumbent.end(), i) == incumbent.end();
        if (fresh < best_new) {
          best_new = fresh;
          best = &r;
        }
      }
      if (best) {
        for (auto i : best->support) take(i);
        continue;
      }
      // no short relation: fall back to the candidates needed over a spanning basis
      std::vector<std::size_t> basis;
      RationalBasis b(dim);
      for (std::size_t i = 0; i < c.items.size(); ++i)
        if (b.insert(to_q(c.items[i].form))) basis.push_back(i);
      auto x = solve_combination(candidate_vectors(c, basis), to_q(targets[ti].form));
      for (std::size_t k = 0; k < basis.size(); ++k)
        if ((*x)[k].numerator() != 0) take(basis[k]);
    }
    // drop products the others already make redundant
    for (std::size_t k = incumbent.size(); k-- > 0;) {
      std::vector<std::size_t> trial = incumbent;
      trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(k));
      if (combinations_for(c, targets, trial)) incumbent = std::move(trial);
    }
    std::sort(incumbent.begin(), incumbent.end());
  }
  res.relation_bound = incumbent.size();

  // Images modulo the target span, grouped by direction.
  const auto& pivots = target_span.pivots();
  std::vector<std::size_t> inside;  // candidates already in span(targets)
  std::vector<DirectionItem> items;
  {
    std::unordered_map<IVec, std::size_t, IVecHash> where;
    for (std::size_t i = 0; i < c.items.size(); ++i) {
      QVec r = target_span.reduce(to_q(c.items[i].form));
      QVec rest;
      for (std::size_t j = 0; j < dim; ++j)
        if (std::find(pivots.begin(), pivots.end(), j) == pivots.end()) rest.push_back(r[j]);
      IVec key = primitive_from_q(rest);
      if (is_zero(key)) {
        inside.push_back(i);
        continue;
      }
      auto [it, fresh] = where.emplace(key, items.size());
      if (fresh) items.push_back({{}, key, false});
      items[it->second].classes.push_back(i);
    }
  }

  std::optional<SubspaceWalker::Clock::time_point> deadline;
  if (opts.time_budget_seconds > 0)
    deadline = SubspaceWalker::Clock::now() + std::chrono::duration_cast<SubspaceWalker::Clock::duration>(
                                                   std::chrono::duration<double>(opts.time_budget_seconds));

  constexpr std::size_t kMaxCoversKept = 4096;
  for (std::size_t k = std::max<std::size_t>(dim_v, 1); k < incumbent.size(); ++k) {
    const std::size_t d = k - dim_v;
    std::vector<std::vector<std::size_t>> covers;
    std::size_t found = 0;

    auto consider = [&](const std::vector<std::size_t>& item_ids) {
      ++res.subspaces_examined;
      std::size_t members = inside.size();
      for (auto id : item_ids) members += items[id].classes.size();
      if (members < k) return true;
      std::vector<std::size_t> pool = inside;
      for (auto id : item_ids) pool.insert(pool.end(), items[id].classes.begin(), items[id].classes.end());
      std::sort(pool.begin(), pool.end());
      std::vector<IVec> rows;
      for (auto i : pool) rows.push_back(c.items[i].form);
      if (integer_rank(rows) != k) return true;
      // any basis of the pool spans the same k-dimensional space, which contains the targets
      std::vector<std::size_t> basis;
      std::vector<IVec> acc;
      for (auto i : pool) {
        acc.push_back(c.items[i].form);
        if (integer_rank(acc) == basis.size() + 1)
          basis.push_back(i);
        else
          acc.pop_back();
        if (basis.size() == k) break;
      }
      ++found;
      if (covers.size() < kMaxCoversKept) covers.push_back(std::move(basis));
      return true;
    };

    if (d == 0) {
      consider({});
    } else {
      // item ids stand in for their classes while walking
      std::vector<DirectionItem> walk_items;
      for (std::size_t i = 0; i < items.size(); ++i) walk_items.push_back({{i}, items[i].dir, false});
      SubspaceWalker walker(d >= 3 ? deadline : std::nullopt);
      std::vector<std::size_t> chosen;
      walker.walk(walk_items, d, chosen, consider);
      if (walker.timed_out()) {
        res.exact = false;
        break;
      }
    }

    if (!covers.empty()) {
      res.k_star = k;
      res.covers_found = found;
      const std::vector<std::size_t>* pick = &covers.front();
      std::optional<std::vector<QVec>> pick_combo;
      for (const auto& cov : covers) {
        auto combo = combinations_for(c, targets, cov);
        if (!combo) continue;
        if (!pick_combo) {
          pick = &cov;
          pick_combo = combo;
        }
        if (!opts.prefer_integer || all_integral(*combo)) {
          pick = &cov;
          pick_combo = std::move(combo);
          break;
        }
      }
      res.subset = *pick;
      res.combinations = std::move(*pick_combo);
      return res;
    }
  }

  res.k_star = incumbent.size();
  res.subset = incumbent;
  res.combinations = *combinations_for(c, targets, incumbent);
  return res;
}

bool certify(const CandidateSet& c, const std::vector<Target>& targets, const CoverResult& cover) {
  if (cover.combinations.size() != targets.size()) return false;
  for (std::size_t ti = 0; ti < targets.size(); ++ti) {
    const auto& g = cover.combinations[ti];
    if (g.size() != cover.subset.size()) return false;
    QVec sum(targets[ti].form.size(), Rational(0));
    for (std::size_t k = 0; k < g.size(); ++k) {
      const auto& f = c.items.at(cover.subset[k]).form;
      for (std::size_t j = 0; j < f.size(); ++j) sum[j] += g[k] * f[j];
    }
    if (sum != to_q(targets[ti].form)) return false;
  }
  return true;
}

BilinearScheme to_scheme(const CandidateSet& c, const CoverResult& cover, std::size_t grid) {
  if (c.vars != grid * grid) throw std::invalid_argument("to_scheme: candidate variables do not match grid");
  if (cover.combinations.size() != upper_block_count(grid))
    throw std::invalid_argument("to_scheme: expected one combination per upper-triangle block");
  BilinearScheme s;
  s.name = "discovered-" + to_string(c.space) + "-" + std::to_string(grid) + "x" + std::to_string(grid);
  s.grid = grid;
  for (auto i : cover.subset) s.products.push_back({c.items[i].alpha, c.items[i].beta});
  std::size_t idx = 0;
  for (std::size_t i = 0; i < grid; ++i)
    for (std::size_t j = i; j < grid; ++j, ++idx) {
      SchemeOutput o{i, j, {}, {}};
      for (const auto& g : cover.combinations[idx]) {
        if (g.denominator() != 1)
          throw std::invalid_argument("to_scheme: non-integer coefficient in " + output_name(i, j));
        o.products.push_back(static_cast<int>(g.numerator()));
      }
      s.outputs.push_back(std::move(o));
    }
  s.validate();
  return s;
}

}  // namespace rxtx::discovery
