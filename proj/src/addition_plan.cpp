#include "rxtx/addition_plan.hpp"

#include <map>
#include <stdexcept>
#include <string_view>

#include "linear_expr.hpp"

namespace rxtx {

namespace {

// Builds a stage from "name = expr" definitions. Input symbols map through `input_index`;
// anything else must name an earlier node.
template <typename InputIndex>
PlanStage build_stage(std::initializer_list<std::pair<std::string_view, std::string_view>> defs,
                      InputIndex input_index, std::map<std::string, std::size_t>& by_name) {
  PlanStage st;
  for (const auto& [name, expr] : defs) {
    PlanNode node{std::string(name), {}};
    for (const auto& t : detail::parse_terms(expr)) {
      const std::string key = t.symbol + std::to_string(t.index);
      if (const long in = input_index(t); in >= 0) {
        node.terms.push_back({false, static_cast<std::size_t>(in), t.sign});
      } else if (auto it = by_name.find(key); it != by_name.end()) {
        node.terms.push_back({true, it->second, t.sign});
      } else {
        throw std::logic_error("plan: '" + key + "' used before definition in " + std::string(name));
      }
    }
    by_name[node.name] = st.nodes.size();
    st.nodes.push_back(std::move(node));
  }
  return st;
}

AdditionPlan build_optimized() {
  AdditionPlan p;
  p.name = "optimized100";
  std::map<std::string, std::size_t> names;
  auto x_input = [](const detail::Term& t) -> long {
    return t.symbol == "X" && t.index >= 1 && t.index <= 16 ? static_cast<long>(t.index - 1) : -1;
  };
  p.stage1 = build_stage(
      {
          {"y1", "X13 - X14"},
          {"y2", "X12 - X10"},
          {"w1", "X2 + X4 - X8"},
          {"w2", "X1 - X5 - X6"},
          {"w3", "X6 + X7"},
          {"w4", "X14 + X15"},
          {"w5", "y2 + X16"},
          {"w6", "X10 + X11"},
          {"w7", "X9 + y1"},
          {"w8", "X9 - X8"},
          {"w9", "X7 - X11"},
          {"w10", "X6 - X7"},
          {"w11", "X2 - X3"},
          {"L1", "-w1 + X3"},         {"R1", "X8 + X11"},
          {"L2", "w2 + X7"},          {"R2", "X15 + X5"},
          {"L3", "-X2 + X12"},        {"R3", "w5"},
          {"L4", "X9 - X6"},          {"R4", "w7"},
          {"L5", "X2 + X11"},         {"R5", "X15 - w3"},
          {"L6", "X6 + X11"},         {"R6", "w3 - X11"},
          {"L7", "X11"},              {"R7", "w3"},
          {"L8", "X2"},               {"R8", "w3 - w4 + w5"},
          {"L9", "X6"},               {"R9", "w7 - w6 + w3"},
          {"L10", "w1 - X3 + X7 + X11"}, {"R10", "X11"},
          {"L11", "X5 + w10"},        {"R11", "X5"},
          {"L12", "w11 + X4"},        {"R12", "X8"},
          {"L13", "-w2 + X3 - w9"},   {"R13", "X15"},
          {"L14", "-w2"},             {"R14", "w7 + w4"},
          {"L15", "w1"},              {"R15", "w6 + w5"},
          {"L16", "X1 - X8"},         {"R16", "X9 - X16"},
          {"L17", "X12"},             {"R17", "-y2"},
          {"L18", "X9"},              {"R18", "y1"},
          {"L19", "-w11"},            {"R19", "-X15 + X7 + X8"},
          {"L20", "X5 + w8"},         {"R20", "X9"},
          {"L21", "X8"},              {"R21", "X12 + w8"},
          {"L22", "-w10"},            {"R22", "X5 + w9"},
          {"L23", "X1"},              {"R23", "X13 - X5 + X16"},
          {"L24", "-X1 + X4 + X12"},  {"R24", "X16"},
          {"L25", "X9 + X2 + X10"},   {"R25", "X14"},
          {"L26", "X6 + X10 + X12"},  {"R26", "X10"},
      },
      x_input, names);
  for (int k = 1; k <= 26; ++k) {
    p.left.push_back(names.at("L" + std::to_string(k)));
    p.right.push_back(names.at("R" + std::to_string(k)));
  }

  names.clear();
  auto ms_input = [](const detail::Term& t) -> long {
    if (t.symbol == "m" && t.index >= 1 && t.index <= 26) return static_cast<long>(t.index - 1);
    if (t.symbol == "s" && t.index >= 1 && t.index <= 8) return static_cast<long>(26 + t.index - 1);
    return -1;
  };
  p.stage2 = build_stage(
      {
          {"z1", "m7 - m11 - m12"},
          {"z2", "m1 + m12 + m21"},
          {"z3", "m3 + m17 - m24"},
          {"z4", "m2 + m11 + m23"},
          {"z5", "m5 + m7 + m8"},
          {"z6", "m4 - m18 - m20"},
          {"z7", "m6 - m7 - m9"},
          {"z8", "m17 + m18"},
          {"C11", "s1 + s2 + s3 + s4"},
          {"C12", "m2 - m5 - z1 + m13 + m19"},
          {"C13", "z2 + z3 + m15 + m16"},
          {"C14", "z4 - z3 - z5 + m13"},
          {"C22", "m1 + m6 - z1 + m10 + m22"},
          {"C23", "z2 - z6 + z7 + m10"},
          {"C24", "z4 + z6 + m14 + m16"},
          {"C33", "m4 - z7 - z8 + m26"},
          {"C34", "m3 + z5 + z8 + m25"},
          {"C44", "s5 + s6 + s7 + s8"},
      },
      ms_input, names);
  for (const char* c : {"C11", "C12", "C13", "C14", "C22", "C23", "C24", "C33", "C34", "C44"})
    p.outputs.push_back(names.at(c));
  return p;
}

PlanNode direct_node(std::string name, const std::vector<int>& coeffs) {
  PlanNode n{std::move(name), {}};
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (coeffs[i] != 0) n.terms.push_back({false, i, coeffs[i]});
  return n;
}

}  // namespace

std::size_t PlanStage::additions() const {
  std::size_t total = 0;
  for (const auto& n : nodes)
    if (n.terms.size() > 1) total += n.terms.size() - 1;
  return total;
}

std::string to_string(PlanKind k) { return k == PlanKind::Naive ? "naive" : "optimized"; }

AdditionPlan naive_plan(const BilinearScheme& s) {
  s.validate();
  AdditionPlan p;
  p.name = "naive";
  for (std::size_t k = 0; k < s.products.size(); ++k) {
    p.left.push_back(p.stage1.nodes.size());
    p.stage1.nodes.push_back(direct_node("L" + std::to_string(k + 1), s.products[k].left));
    p.right.push_back(p.stage1.nodes.size());
    p.stage1.nodes.push_back(direct_node("R" + std::to_string(k + 1), s.products[k].right));
  }
  for (const auto& o : s.outputs) {
    std::vector<int> c = o.products;
    c.insert(c.end(), o.calls.begin(), o.calls.end());
    p.outputs.push_back(p.stage2.nodes.size());
    p.stage2.nodes.push_back(direct_node(output_name(o.row, o.col), c));
  }
  return p;
}

const AdditionPlan& rxtx_optimized_plan() {
  static const AdditionPlan p = build_optimized();
  return p;
}

const AdditionPlan& rxtx_plan(PlanKind kind) {
  static const AdditionPlan naive = [] {
    auto p = naive_plan(rxtx_scheme());
    p.name = "naive139";
    return p;
  }();
  return kind == PlanKind::Naive ? naive : rxtx_optimized_plan();
}

AdditionCount count_scheme_additions(const AdditionPlan& plan) {
  return {plan.stage1.additions(), plan.stage2.additions()};
}

AdditionCount count_scheme_additions(const BilinearScheme& s, PlanKind kind) {
  if (kind == PlanKind::Optimized) {
    if (!(s == rxtx_scheme())) throw std::invalid_argument("optimized plan exists only for the rxtx scheme");
    return count_scheme_additions(rxtx_optimized_plan());
  }
  return count_scheme_additions(naive_plan(s));
}

std::vector<std::vector<int>> evaluate_symbolic(const PlanStage& stage, std::size_t input_count) {
  std::vector<std::vector<int>> val;
  val.reserve(stage.nodes.size());
  for (const auto& n : stage.nodes) {
    std::vector<int> v(input_count, 0);
    for (const auto& t : n.terms) {
      if (t.from_node) {
        const auto& src = val.at(t.index);
        for (std::size_t i = 0; i < input_count; ++i) v[i] += t.coeff * src[i];
      } else {
        v.at(t.index) += t.coeff;
      }
    }
    val.push_back(std::move(v));
  }
  return val;
}

std::vector<std::string> check_plan_consistency(const BilinearScheme& s, const AdditionPlan& plan) {
  std::vector<std::string> errs;
  const std::size_t np = s.products.size();
  if (plan.left.size() != np || plan.right.size() != np || plan.outputs.size() != s.outputs.size()) {
    errs.push_back("plan shape does not match scheme");
    return errs;
  }
  const auto f = evaluate_symbolic(plan.stage1, s.block_count());
  for (std::size_t k = 0; k < np; ++k) {
    if (f.at(plan.left[k]) != s.products[k].left) errs.push_back("left factor of m" + std::to_string(k + 1));
    if (f.at(plan.right[k]) != s.products[k].right) errs.push_back("right factor of m" + std::to_string(k + 1));
  }
  const auto c = evaluate_symbolic(plan.stage2, np + s.recursive_calls.size());
  for (std::size_t i = 0; i < s.outputs.size(); ++i) {
    std::vector<int> want = s.outputs[i].products;
    want.insert(want.end(), s.outputs[i].calls.begin(), s.outputs[i].calls.end());
    if (c.at(plan.outputs[i]) != want) errs.push_back(output_name(s.outputs[i].row, s.outputs[i].col));
  }
  return errs;
}

}  // namespace rxtx
