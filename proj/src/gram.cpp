#include "rxtx/gram.hpp"

#include <future>
#include <stdexcept>
#include <vector>

namespace rxtx {

namespace {

template <Element T>
class SchemeExecutor {
 public:
  SchemeExecutor(const BilinearScheme& s, const AdditionPlan& p, const GramOptions& o)
      : scheme_(s), plan_(p), opts_(o), backend_(o.counter ? o.backend.with_counter(o.counter) : o.backend) {}

  DenseMatrix<T> run(const DenseMatrix<T>& x, std::size_t depth) const {
    const bool depth_exhausted = opts_.max_depth != 0 && depth >= opts_.max_depth;
    if (std::min(x.rows(), x.cols()) <= opts_.cutoff || depth_exhausted) return base(x);

    const std::size_t g = scheme_.grid;
    const BlockPartition<T> part = partition(x, g);

    const auto factors = evaluate(plan_.stage1, part.blocks);

    const std::size_t np = scheme_.products.size();
    const std::size_t nc = scheme_.recursive_calls.size();
    std::vector<DenseMatrix<T>> inner(np + nc);
    auto product = [&](std::size_t k) {
      inner[k] = backend_.multiply_abt(factors[plan_.left[k]], factors[plan_.right[k]]);
    };
    auto call = [&](std::size_t c) { inner[np + c] = run(part.blocks[scheme_.recursive_calls[c]], depth + 1); };

    if (depth == 0 && opts_.threads > 1) {
      parallel_for(np + nc, [&](std::size_t i) { i < np ? product(i) : call(i - np); });
    } else {
      for (std::size_t k = 0; k < np; ++k) product(k);
      for (std::size_t c = 0; c < nc; ++c) call(c);
    }

    const auto combos = evaluate(plan_.stage2, inner);
    std::vector<DenseMatrix<T>> upper;
    upper.reserve(plan_.outputs.size());
    for (std::size_t idx : plan_.outputs) upper.push_back(combos[idx]);
    return assemble_symmetric<T>(upper, g, x.rows());
  }

 private:
  DenseMatrix<T> base(const DenseMatrix<T>& x) const {
    if (opts_.base == BaseGram::External) {
      if constexpr (std::is_same_v<T, double>) {
        return external_gram(x);
      } else {
        throw BackendUnavailable("external base gram supports Float64 only");
      }
    }
    return naive_gram(x, opts_.counter);
  }

  // Values of every node of `stage`; single-term +1 nodes are plain copies and cost nothing.
  std::vector<DenseMatrix<T>> evaluate(const PlanStage& stage, const std::vector<DenseMatrix<T>>& inputs) const {
    std::vector<DenseMatrix<T>> val;
    val.reserve(stage.nodes.size());
    for (const auto& node : stage.nodes) {
      auto operand = [&](const PlanTerm& t) -> const DenseMatrix<T>& {
        return t.from_node ? val.at(t.index) : inputs.at(t.index);
      };
      if (node.terms.empty()) {
        val.emplace_back(inputs.front().rows(), inputs.front().cols());
        continue;
      }
      // start from a positive term when there is one so the leading sign costs nothing
      std::size_t first = 0;
      for (std::size_t i = 0; i < node.terms.size(); ++i)
        if (node.terms[i].coeff > 0) {
          first = i;
          break;
        }
      DenseMatrix<T> acc = scaled(operand(node.terms[first]), node.terms[first].coeff);
      for (std::size_t i = 0; i < node.terms.size(); ++i) {
        if (i == first) continue;
        const auto& t = node.terms[i];
        if (t.coeff == 1 || t.coeff == -1) {
          accumulate(acc, operand(t), t.coeff, opts_.counter);
        } else {
          accumulate(acc, scaled(operand(t), t.coeff), 1, opts_.counter);
        }
      }
      val.push_back(std::move(acc));
    }
    return val;
  }

  // coeff * m; +-1 are free, other integers cost one multiplication per element
  DenseMatrix<T> scaled(const DenseMatrix<T>& m, int coeff) const {
    if (coeff == 1) return m;
    if (coeff == -1) return negate(m);
    DenseMatrix<T> r(m.rows(), m.cols());
    auto src = m.data();
    auto dst = r.data();
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = src[i] * T(coeff);
    count_mults(opts_.counter, dst.size());
    return r;
  }

  template <typename F>
  void parallel_for(std::size_t count, F&& f) const {
    const std::size_t workers = std::min<std::size_t>(opts_.threads, count);
    std::vector<std::future<void>> jobs;
    for (std::size_t w = 0; w < workers; ++w)
      jobs.push_back(std::async(std::launch::async, [&, w] {
        for (std::size_t i = w; i < count; i += workers) f(i);
      }));
    for (auto& j : jobs) j.get();
  }

  const BilinearScheme& scheme_;
  const AdditionPlan& plan_;
  const GramOptions& opts_;
  GemmBackend backend_;
};

}  // namespace

template <Element T>
DenseMatrix<T> scheme_gram(const DenseMatrix<T>& x, const BilinearScheme& scheme, const AdditionPlan& plan,
                           const GramOptions& opts) {
  if (opts.cutoff == 0) throw std::invalid_argument("scheme_gram: cutoff must be >= 1");
  if (plan.left.size() != scheme.products.size() || plan.outputs.size() != scheme.outputs.size())
    throw std::invalid_argument("scheme_gram: plan does not fit scheme '" + scheme.name + "'");
  scheme.validate();
  return SchemeExecutor<T>(scheme, plan, opts).run(x, 0);
}

template DenseMatrix<double> scheme_gram(const DenseMatrix<double>&, const BilinearScheme&, const AdditionPlan&,
                                         const GramOptions&);
template DenseMatrix<ExactInt> scheme_gram(const DenseMatrix<ExactInt>&, const BilinearScheme&, const AdditionPlan&,
                                           const GramOptions&);

}  // namespace rxtx
