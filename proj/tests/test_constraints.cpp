#include <algorithm>
#include <vector>

#include "doctest.h"
#include "eser/constraints.hpp"
#include "eser/random.hpp"

using namespace eser;

namespace {

std::vector<int> range(int lo, int hi) {
  std::vector<int> v;
  for (int x = lo; x <= hi; ++x) v.push_back(x);
  return v;
}

struct Fixture {
  Model m;
  std::unique_ptr<Space> sp;
  bool ok{true};

  void run() {
    sp = build_space(m);
    sp->schedule_all();
    ok = sp->propagate();
  }
  std::vector<int> dom(int v) const { return sp->store().domain(var_id(static_cast<std::size_t>(v))).values(); }
};

// Values of variable `v` (index into `doms`) having a support: an
// assignment of the whole scope within `doms` satisfying `c`.
bool supported(const ConstraintSpec& c, const std::vector<std::vector<int>>& doms, int var, int value) {
  std::vector<int> scope = c.vars;
  std::sort(scope.begin(), scope.end());
  scope.erase(std::unique(scope.begin(), scope.end()), scope.end());
  std::vector<int> a(doms.size(), 0);
  std::vector<std::size_t> idx(scope.size(), 0);
  for (;;) {
    bool consistent = true;
    for (std::size_t i = 0; i < scope.size(); ++i) {
      a[static_cast<std::size_t>(scope[i])] = doms[static_cast<std::size_t>(scope[i])][idx[i]];
      if (scope[i] == var && a[static_cast<std::size_t>(var)] != value) consistent = false;
    }
    if (consistent && satisfied(c, a)) return true;
    std::size_t i = 0;
    while (i < idx.size() && ++idx[i] == doms[static_cast<std::size_t>(scope[i])].size()) idx[i++] = 0;
    if (i == idx.size()) return false;
  }
}

// Bounds(R) support for a linear equality: with `var` = value, the other
// terms can still reach the constant over the real box.
bool real_supported(const ConstraintSpec& c, const std::vector<std::vector<int>>& box, int var, int value) {
  long long lo = 0, hi = 0;
  long long rest = c.constant;
  for (std::size_t i = 0; i < c.vars.size(); ++i) {
    const long long a = c.coeffs[i];
    if (c.vars[i] == var) {
      rest -= a * value;
      continue;
    }
    const auto& d = box[static_cast<std::size_t>(c.vars[i])];
    lo += std::min(a * d.front(), a * d.back());
    hi += std::max(a * d.front(), a * d.back());
  }
  return lo <= rest && rest <= hi;
}

// Applies one constraint alone to random domains and compares with the
// brute-force support oracle: removed values never have a support, and kept
// values (or only the bounds, for bounds consistency) do.
enum class Level { Arc, Bounds, Forward };

void check_filter(const ConstraintSpec& c, std::vector<std::vector<int>> doms, Level level) {
  Fixture f;
  for (std::size_t i = 0; i < doms.size(); ++i) f.m.add_var("v" + std::to_string(i), doms[i]);
  f.m.constraints.push_back(c);
  f.run();
  bool any_solution = false;
  for (int v : c.vars)
    for (int x : doms[static_cast<std::size_t>(v)]) any_solution = any_solution || supported(c, doms, v, x);
  if (!f.ok) {
    // Forward checking may miss a dead end but never invents one.
    CHECK_FALSE(any_solution);
    return;
  }
  std::vector<std::vector<int>> after(doms.size());
  for (std::size_t i = 0; i < doms.size(); ++i) after[i] = f.dom(static_cast<int>(i));
  for (int v : c.vars) {
    const auto& before = doms[static_cast<std::size_t>(v)];
    const auto& kept = after[static_cast<std::size_t>(v)];
    for (int x : before) {
      const bool k = std::binary_search(kept.begin(), kept.end(), x);
      if (!k) CHECK_MESSAGE(!supported(c, doms, v, x), "removed a supported value");
    }
    if (level == Level::Arc) {
      for (int x : kept) CHECK_MESSAGE(supported(c, after, v, x), "kept an unsupported value");
    } else if (level == Level::Bounds) {
      // Bounds support: the other variables range over their intervals.
      std::vector<std::vector<int>> box(after.size());
      for (std::size_t i = 0; i < after.size(); ++i) box[i] = range(after[i].front(), after[i].back());
      // Equalities only reach bounds(R) consistency: 2y - z = c has parity gaps.
      auto ok = [&](int x) {
        return c.kind == ConstraintKind::LinearEq ? real_supported(c, box, v, x) : supported(c, box, v, x);
      };
      CHECK(ok(kept.front()));
      CHECK(ok(kept.back()));
    }
  }
}

std::vector<int> random_domain(Rng& rng) {
  std::vector<int> d;
  for (int x = -2; x <= 5; ++x)
    if (rng.below(3) != 0) d.push_back(x);
  if (d.empty()) d.push_back(0);
  return d;
}

const Event* last_event_by(const Store& s, int constraint, VarId v) {
  for (std::size_t i = s.num_events(); i-- > 0;)
    if (s.event(i).cause == Cause::constraint(constraint) && s.event(i).var == v) return &s.event(i);
  return nullptr;
}

}  // namespace

TEST_CASE("filtering examples") {
  SUBCASE("leq") {
    Fixture f;
    f.m.add_range("x", 3, 9);
    f.m.add_range("y", 1, 5);
    f.m.constraints.push_back(ConstraintSpec::leq(0, 1, 0));
    f.run();
    REQUIRE(f.ok);
    CHECK(f.dom(0) == range(3, 5));
    CHECK(f.dom(1) == range(3, 5));
  }
  SUBCASE("neq") {
    Fixture f;
    f.m.add_range("x", 4, 4);
    f.m.add_range("y", 2, 6);
    f.m.constraints.push_back(ConstraintSpec::neq(0, 1, 0));
    f.run();
    REQUIRE(f.ok);
    CHECK(f.dom(1) == std::vector<int>{2, 3, 5, 6});
  }
  SUBCASE("linear") {
    Fixture f;
    f.m.add_range("x", 1, 5);
    f.m.add_range("y", 1, 5);
    f.m.constraints.push_back(ConstraintSpec::linear_leq({2, 3}, {0, 1}, 12));
    f.run();
    REQUIRE(f.ok);
    CHECK(f.dom(0) == range(1, 4));
    CHECK(f.dom(1) == range(1, 3));
  }
  SUBCASE("alldifferent") {
    Fixture f;
    f.m.add_range("x", 2, 2);
    f.m.add_range("y", 1, 4);
    f.m.add_range("z", 1, 4);
    f.m.constraints.push_back(ConstraintSpec::alldifferent({0, 1, 2}));
    f.run();
    REQUIRE(f.ok);
    CHECK(f.dom(1) == std::vector<int>{1, 3, 4});
    CHECK(f.dom(2) == std::vector<int>{1, 3, 4});
  }
  SUBCASE("eq") {
    Fixture f;
    f.m.add_var("x", {1, 3, 5, 7});
    f.m.add_range("y", 0, 4);
    f.m.constraints.push_back(ConstraintSpec::eq(0, 1, 2));
    f.run();
    REQUIRE(f.ok);
    CHECK(f.dom(0) == std::vector<int>{3, 5});
    CHECK(f.dom(1) == std::vector<int>{1, 3});
  }
  SUBCASE("forbid") {
    Fixture f;
    f.m.add_range("x", 0, 1);
    f.m.add_range("y", 0, 1);
    f.m.constraints.push_back(ConstraintSpec::forbidden(0, 1, {{0, 0}, {0, 1}}));
    f.run();
    REQUIRE(f.ok);
    CHECK(f.dom(0) == std::vector<int>{1});
    CHECK(f.dom(1) == range(0, 1));
  }
}

TEST_CASE("filters against the brute-force support oracle") {
  Rng rng(21);
  for (int round = 0; round < 400; ++round) {
    std::vector<std::vector<int>> doms{random_domain(rng), random_domain(rng), random_domain(rng)};
    const int c = static_cast<int>(rng.below(7)) - 3;
    check_filter(ConstraintSpec::eq(0, 1, c), doms, Level::Arc);
    check_filter(ConstraintSpec::neq(0, 1, c), doms, Level::Arc);
    check_filter(ConstraintSpec::leq(0, 1, c), doms, Level::Arc);
    check_filter(ConstraintSpec::forbidden(0, 1, {{0, 0}, {1, 1}, {2, 0}, {-1, 3}, {c, c}}), doms, Level::Arc);
    const int a = static_cast<int>(rng.below(5)) - 2;
    const int b = a == 0 ? 1 : a;
    check_filter(ConstraintSpec::linear_leq({b, 2, -3}, {0, 1, 2}, c), doms, Level::Bounds);
    check_filter(ConstraintSpec::linear_eq({b, 2, -1}, {0, 1, 2}, c), doms, Level::Bounds);
    check_filter(ConstraintSpec::alldifferent({0, 1, 2}), doms, Level::Forward);
  }
}

TEST_CASE("linear merges repeated variables") {
  Fixture f;
  f.m.add_range("x", 0, 9);
  f.m.add_range("y", 0, 9);
  // x + y - x + 2x <= 4  ==  2x + y <= 4
  f.m.constraints.push_back(ConstraintSpec::linear_leq({1, 1, -1, 2}, {0, 1, 0, 0}, 4));
  f.run();
  REQUIRE(f.ok);
  CHECK(f.dom(0) == range(0, 2));
  CHECK(f.dom(1) == range(0, 4));

  Fixture g;
  g.m.add_range("x", 0, 9);
  g.m.constraints.push_back(ConstraintSpec::linear_leq({1, -1}, {0, 0}, -1));  // 0 <= -1
  g.run();
  CHECK_FALSE(g.ok);
}

TEST_CASE("e-schemas") {
  SUBCASE("leq: x's upper bound comes from y's") {
    Fixture f;
    f.m.add_range("x", 1, 8);
    f.m.add_range("y", 1, 8);
    f.m.constraints.push_back(ConstraintSpec::leq(0, 1, 0));
    f.run();
    f.sp->store().update_upper(var_id(1), 5, Cause::decision(1));
    f.sp->schedule(0);
    REQUIRE(f.sp->propagate());
    const Event* e = last_event_by(f.sp->store(), 0, var_id(0));
    REQUIRE(e);
    CHECK(e->type == EventType::Upp);
    RuleSet rs(2);
    f.sp->eschema(0, *e, rs);
    REQUIRE(rs.size() == 1);
    CHECK(rs.find(var_id(1))->mask == kRuleUb);
  }
  SUBCASE("neq: both bounds of the other side") {
    Fixture f;
    f.m.add_range("x", 1, 8);
    f.m.add_range("y", 1, 8);
    f.m.constraints.push_back(ConstraintSpec::neq(0, 1, 0));
    f.run();
    f.sp->store().instantiate(var_id(1), 4, Cause::decision(1));
    REQUIRE(f.sp->propagate());
    const Event* e = last_event_by(f.sp->store(), 0, var_id(0));
    REQUIRE(e);
    CHECK(e->type == EventType::Rem);
    RuleSet rs(2);
    f.sp->eschema(0, *e, rs);
    REQUIRE(rs.size() == 1);
    CHECK(rs.find(var_id(1))->mask == (kRuleLb | kRuleUb));
  }
  SUBCASE("linear <=: signs pick the bound") {
    Fixture f;
    f.m.add_range("a", 0, 9);
    f.m.add_range("b", 0, 9);
    f.m.add_range("c", 0, 2);
    f.m.constraints.push_back(ConstraintSpec::linear_leq({1, 1, -1}, {0, 1, 2}, 6));
    f.run();
    f.sp->store().update_lower(var_id(1), 5, Cause::decision(1));
    REQUIRE(f.sp->propagate());
    const Event* e = last_event_by(f.sp->store(), 0, var_id(0));
    REQUIRE(e);
    CHECK(e->type == EventType::Upp);
    RuleSet rs(3);
    f.sp->eschema(0, *e, rs);
    CHECK(rs.size() == 2);
    CHECK(rs.find(var_id(1))->mask == kRuleLb);
    CHECK(rs.find(var_id(2))->mask == kRuleUb);
  }
  SUBCASE("alldifferent: bounds of the variable fixed to the value") {
    Fixture f;
    for (const char* n : {"x", "y", "z"}) f.m.add_range(n, 1, 3);
    f.m.constraints.push_back(ConstraintSpec::alldifferent({0, 1, 2}));
    f.run();
    f.sp->store().instantiate(var_id(0), 2, Cause::decision(1));
    f.sp->schedule(0);
    REQUIRE(f.sp->propagate());
    const Event* e = last_event_by(f.sp->store(), 0, var_id(1));
    REQUIRE(e);
    RuleSet rs(3);
    f.sp->eschema(0, *e, rs);
    REQUIRE(rs.size() == 1);
    CHECK(rs.find(var_id(0))->mask == (kRuleLb | kRuleUb));
  }
  SUBCASE("default schema: DOM on the whole scope") {
    Fixture f;
    for (const char* n : {"x", "y", "z"}) f.m.add_range(n, 1, 3);
    f.m.constraints.push_back(ConstraintSpec::alldifferent({0, 1, 2}));
    f.run();
    f.sp->set_default_eschemas(true);
    f.sp->store().instantiate(var_id(0), 2, Cause::decision(1));
    f.sp->schedule(0);
    REQUIRE(f.sp->propagate());
    RuleSet rs(3);
    f.sp->eschema(0, *last_event_by(f.sp->store(), 0, var_id(1)), rs);
    CHECK(rs.size() == 3);
    for (int v = 0; v < 3; ++v) CHECK(rs.find(var_id(static_cast<std::size_t>(v)))->mask == kRuleDom);
  }
}

TEST_CASE("malformed constraints are rejected") {
  Model m;
  m.add_range("x", 0, 3);
  m.constraints.push_back(ConstraintSpec::linear_leq({1, 2}, {0}, 3));
  CHECK_THROWS_AS(m.validate(), std::invalid_argument);
  Model n;
  n.add_range("x", 0, 3);
  n.constraints.push_back(ConstraintSpec::neq(0, 4, 0));
  CHECK_THROWS_AS(n.validate(), std::invalid_argument);
}
