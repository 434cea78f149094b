#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "rxtx/scheme.hpp"

namespace rxtx {

/// Operand of a plan node: a stage input or an earlier node of the same stage.
struct PlanTerm {
  bool from_node = false;
  std::size_t index = 0;
  int coeff = 1;
};

/// A named signed sum. A node with t terms costs t - 1 block additions;
/// a lone term with coefficient -1 is a sign change and costs nothing.
struct PlanNode {
  std::string name;
  std::vector<PlanTerm> terms;
};

struct PlanStage {
  std::vector<PlanNode> nodes;
  std::size_t additions() const;
};

/// Two-stage straight-line program realising a scheme's additions.
///  stage 1: inputs are the g*g blocks; left[k] / right[k] name the nodes holding product k's factors.
///  stage 2: inputs are the products followed by the recursive calls; outputs[i] is upper-triangle block i.
struct AdditionPlan {
  std::string name;
  PlanStage stage1;
  std::vector<std::size_t> left;
  std::vector<std::size_t> right;
  PlanStage stage2;
  std::vector<std::size_t> outputs;
};

enum class PlanKind { Naive, Optimized };

std::string to_string(PlanKind k);

/// One node per factor and per output, read straight off the coefficient vectors.
AdditionPlan naive_plan(const BilinearScheme& s);

/// Common-subexpression plan for rxtx_scheme(): 53 stage-1 and 47 stage-2 additions.
const AdditionPlan& rxtx_optimized_plan();

/// rxtx_scheme() + kind, cached.
const AdditionPlan& rxtx_plan(PlanKind kind);

struct AdditionCount {
  std::size_t stage1 = 0;
  std::size_t stage2 = 0;
  std::size_t total() const { return stage1 + stage2; }
};

AdditionCount count_scheme_additions(const AdditionPlan& plan);
AdditionCount count_scheme_additions(const BilinearScheme& s, PlanKind kind);

/// Integer coefficient vectors of every node when the stage inputs are unit vectors.
std::vector<std::vector<int>> evaluate_symbolic(const PlanStage& stage, std::size_t input_count);

/// Empty when the plan reproduces the scheme's factors and output combinations exactly;
/// otherwise one message per disagreeing factor/output.
std::vector<std::string> check_plan_consistency(const BilinearScheme& s, const AdditionPlan& plan);

}  // namespace rxtx
