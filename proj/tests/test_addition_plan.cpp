#include "doctest.h"
#include "rxtx/addition_plan.hpp"

using namespace rxtx;

TEST_CASE("naive plan counts") {
  const auto c = count_scheme_additions(rxtx_scheme(), PlanKind::Naive);
  CHECK(c.stage1 == 77);
  CHECK(c.stage2 == 62);
  CHECK(c.total() == 139);
}

TEST_CASE("optimized plan counts") {
  const auto c = count_scheme_additions(rxtx_scheme(), PlanKind::Optimized);
  CHECK(c.stage1 == 53);
  CHECK(c.stage2 == 47);
  CHECK(c.total() == 100);
}

TEST_CASE("baseline scheme needs three additions") {
  const auto c = count_scheme_additions(naive_plan(strassen_xxt_scheme()));
  CHECK(c.stage1 == 0);
  CHECK(c.stage2 == 3);
}

TEST_CASE("both plans realise the scheme's coefficient vectors") {
  CHECK(check_plan_consistency(rxtx_scheme(), rxtx_plan(PlanKind::Naive)).empty());
  CHECK(check_plan_consistency(rxtx_scheme(), rxtx_plan(PlanKind::Optimized)).empty());
  CHECK(check_plan_consistency(strassen_xxt_scheme(), naive_plan(strassen_xxt_scheme())).empty());
}

TEST_CASE("a corrupted plan is reported") {
  AdditionPlan p = rxtx_optimized_plan();
  p.stage1.nodes[0].terms[0].coeff = -p.stage1.nodes[0].terms[0].coeff;
  CHECK_FALSE(check_plan_consistency(rxtx_scheme(), p).empty());

  AdditionPlan q = rxtx_optimized_plan();
  std::swap(q.outputs[0], q.outputs[1]);
  CHECK_FALSE(check_plan_consistency(rxtx_scheme(), q).empty());
}

TEST_CASE("symbolic evaluation of a small stage") {
  PlanStage st;
  st.nodes.push_back({"a", {{false, 0, 1}, {false, 1, -1}}});
  st.nodes.push_back({"b", {{true, 0, 1}, {false, 2, 1}}});
  const auto v = evaluate_symbolic(st, 3);
  CHECK(v[0] == std::vector<int>{1, -1, 0});
  CHECK(v[1] == std::vector<int>{1, -1, 1});
  CHECK(st.additions() == 2);
}

TEST_CASE("optimized plan is for rxtx only") {
  CHECK_THROWS(count_scheme_additions(strassen_xxt_scheme(), PlanKind::Optimized));
}
