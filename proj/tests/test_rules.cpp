#include <sstream>
#include <vector>

#include "doctest.h"
#include "eser/rules.hpp"

using namespace eser;

namespace {

const VarId v0 = var_id(0);

Event low(int lo_old, int lo_new) { return {EventType::Low, v0, Cause::constraint(0), 0, lo_old, lo_new, 9, 9}; }
Event upp(int up_old, int up_new) { return {EventType::Upp, v0, Cause::constraint(0), 0, 0, 0, up_old, up_new}; }
Event rem(int x) { return {EventType::Rem, v0, Cause::constraint(0), x, 0, 0, 9, 9}; }
Event asg(int a, int lo_old, int up_old) { return {EventType::Asg, v0, Cause::constraint(0), a, lo_old, a, up_old, a}; }

RuleEntry dom() { return {v0, kRuleDom, {}}; }
RuleEntry lb() { return {v0, kRuleLb, {}}; }
RuleEntry ub() { return {v0, kRuleUb, {}}; }
RuleEntry removed(std::vector<int> xs) { return {v0, kRuleNone, std::move(xs)}; }

}  // namespace

TEST_CASE("covering conditions on single events") {
  CHECK(covers(dom(), low(1, 3), 3, 9));
  CHECK(covers(dom(), rem(4), 0, 9));
  CHECK_FALSE(covers(lb(), upp(9, 7), 0, 7));
  CHECK(covers(lb(), low(1, 3), 3, 9));
  CHECK(covers(ub(), upp(9, 7), 0, 7));
  CHECK(covers(removed({5}), rem(5), 0, 9));
  CHECK_FALSE(covers(removed({5}), rem(6), 0, 9));
  CHECK(covers(removed({5}), low(3, 7), 7, 9));
  CHECK_FALSE(covers(removed({7}), low(3, 7), 7, 9));
  CHECK(covers(removed({8}), upp(9, 7), 0, 7));
  CHECK_FALSE(covers(removed({7}), upp(9, 7), 0, 7));
  CHECK(covers(removed({2}), asg(4, 1, 6), 4, 4));
  CHECK_FALSE(covers(removed({4}), asg(4, 1, 6), 4, 4));
  CHECK_FALSE(covers(removed({7}), asg(4, 1, 6), 4, 4));
}

TEST_CASE("a REM feeds a bound rule only outside the current bounds") {
  CHECK(covers(lb(), rem(2), 3, 9));
  CHECK_FALSE(covers(lb(), rem(4), 3, 9));
  CHECK(covers(ub(), rem(8), 0, 7));
  CHECK_FALSE(covers(ub(), rem(6), 0, 7));
}

TEST_CASE("an ASG feeds a bound rule only when it moved that bound") {
  CHECK(covers(lb(), asg(4, 1, 6), 4, 4));
  CHECK(covers(ub(), asg(4, 1, 6), 4, 4));
  CHECK_FALSE(covers(lb(), asg(1, 1, 6), 1, 1));
  CHECK(covers(ub(), asg(1, 1, 6), 1, 1));
  CHECK_FALSE(covers(ub(), asg(6, 1, 6), 6, 6));
}

TEST_CASE("exact form ignores interval values removed earlier") {
  Store s;
  const VarId v = s.add_variable(std::vector<int>{3, 4, 5, 6, 7, 8});
  s.remove_value(v, 4, Cause::constraint(0));   // event 0
  s.update_lower(v, 7, Cause::constraint(1));   // event 1, interval [3,6]
  const RuleEntry r{v, kRuleNone, {4}};
  CHECK(covers(r, s.event(1), 7, 8));  // interval form over-approximates
  CHECK_FALSE(covers(r, 1, s));
  CHECK(covers(r, 0, s));
}

TEST_CASE("rule set union, erase and entry merging") {
  RuleSet rs(4);
  CHECK(rs.empty());
  rs.add_lb(var_id(1));
  rs.add_ub(var_id(1));
  rs.add_removed(var_id(2), 5);
  rs.add_removed(var_id(2), 3);
  REQUIRE(rs.find(var_id(1)));
  CHECK(rs.find(var_id(1))->mask == (kRuleLb | kRuleUb));
  CHECK(rs.find(var_id(2))->removed == std::vector<int>{3, 5});
  CHECK(rs.size() == 2);

  rs.erase_removed(var_id(2), 3);
  rs.erase_removed(var_id(2), 5);
  CHECK(rs.find(var_id(2)) == nullptr);
  CHECK(rs.size() == 1);

  // DOM subsumes the rest.
  rs.add_removed(var_id(3), 1);
  rs.add_dom(var_id(3));
  CHECK(rs.find(var_id(3))->removed.empty());
  rs.add_removed(var_id(3), 2);
  CHECK(rs.find(var_id(3))->removed.empty());

  RuleSet a(4), b(4);
  a.add_lb(var_id(0));
  b.add_ub(var_id(0));
  a.merge(b);
  CHECK(a.size() == 1);
  CHECK(a.find(var_id(0))->mask == (kRuleLb | kRuleUb));
}

TEST_CASE("rule printing") {
  RuleSet rs(5);
  rs.add_bounds(var_id(3));
  rs.add_removed(var_id(3), 7);
  rs.add_removed(var_id(3), 2);
  rs.add_dom(var_id(1));
  std::ostringstream os;
  for (const auto& e : rs.sorted_entries()) os << e << ' ';
  CHECK(os.str() == "v1:DOM v3:LB|UB|{2,7} ");
}
