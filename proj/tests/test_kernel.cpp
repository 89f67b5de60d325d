#include <set>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "eser/kernel.hpp"
#include "eser/random.hpp"

using namespace eser;

namespace {

std::vector<int> range(int lo, int hi) {
  std::vector<int> v;
  for (int x = lo; x <= hi; ++x) v.push_back(x);
  return v;
}

// Classifies a change from the two value sets alone.
EventType classify(const std::set<int>& before, const std::set<int>& after) {
  if (after.size() == 1) return EventType::Asg;
  if (*after.begin() != *before.begin()) return EventType::Low;
  if (*after.rbegin() != *before.rbegin()) return EventType::Upp;
  return EventType::Rem;
}

std::set<int> as_set(const Domain& d) {
  auto v = d.values();
  return {v.begin(), v.end()};
}

const Cause kC = Cause::constraint(0);

}  // namespace

TEST_CASE("remove_value classifies by the resulting change") {
  Store s;
  const VarId v = s.add_variable(range(1, 8));
  CHECK(s.remove_value(v, 5, kC) == Outcome::Changed);
  CHECK(s.event(0).type == EventType::Rem);
  CHECK(s.event(0).value == 5);

  CHECK(s.remove_value(v, 1, kC) == Outcome::Changed);
  CHECK(s.event(1).type == EventType::Low);
  CHECK(s.event(1).lo_old == 1);
  CHECK(s.event(1).lo_new == 2);

  CHECK(s.remove_value(v, 5, kC) == Outcome::Unchanged);
  CHECK(s.num_events() == 2);

  Store t;
  const VarId w = t.add_variable(std::vector<int>{2, 5});
  CHECK(t.remove_value(w, 2, kC) == Outcome::Changed);
  const Event& e = t.event(0);
  CHECK(e.type == EventType::Asg);
  CHECK(e.value == 5);
  CHECK(e.lo_old == 2);
  CHECK(e.up_old == 5);
}

TEST_CASE("emptying a domain fails without recording an event") {
  Store s;
  const VarId v = s.add_variable(std::vector<int>{3});
  CHECK(s.remove_value(v, 3, Cause::decision(2)) == Outcome::Failure);
  CHECK(s.num_events() == 0);
  REQUIRE(s.failure());
  CHECK(s.failure()->var == v);
  CHECK(s.failure()->cause == Cause::decision(2));
  CHECK(s.domain(v).size() == 1);
}

TEST_CASE("bound updates skip holes and fail past the other bound") {
  Store s;
  const VarId v = s.add_variable(range(1, 8));
  CHECK(s.update_lower(v, 4, kC) == Outcome::Changed);
  CHECK(s.event(0).type == EventType::Low);
  CHECK(s.event(0).lo_old == 1);
  CHECK(s.event(0).lo_new == 4);
  CHECK(s.update_lower(v, 9, kC) == Outcome::Failure);

  Store t;
  const VarId w = t.add_variable(std::vector<int>{1, 2, 7, 9});
  CHECK(t.update_lower(w, 3, kC) == Outcome::Changed);
  CHECK(t.event(0).lo_new == 7);
  CHECK(t.domain(w).min() == 7);
  CHECK(t.update_upper(w, 8, kC) == Outcome::Changed);
  CHECK(t.event(1).type == EventType::Asg);
  CHECK(t.event(1).value == 7);
}

TEST_CASE("instantiate") {
  Store s;
  const VarId v = s.add_variable(range(1, 8));
  CHECK(s.instantiate(v, 3, kC) == Outcome::Changed);
  CHECK(s.event(0).type == EventType::Asg);
  CHECK(s.event(0).lo_old == 1);
  CHECK(s.event(0).up_old == 8);
  CHECK(s.instantiate(v, 3, kC) == Outcome::Unchanged);

  Store t;
  const VarId w = t.add_variable(std::vector<int>{1, 3});
  CHECK(t.instantiate(w, 2, kC) == Outcome::Failure);
}

TEST_CASE("recorded event type matches a before/after classifier on random mutations") {
  Rng rng(7);
  for (int round = 0; round < 2000; ++round) {
    std::vector<int> init;
    for (int x = 0; x < 12; ++x)
      if (rng.below(3) != 0) init.push_back(x);
    if (init.size() < 2) continue;
    Store s;
    const VarId v = s.add_variable(init);
    for (int step = 0; step < 6 && !s.failure(); ++step) {
      const std::set<int> before = as_set(s.domain(v));
      const int x = static_cast<int>(rng.below(12));
      Outcome o{};
      switch (rng.below(4)) {
        case 0: o = s.remove_value(v, x, kC); break;
        case 1: o = s.update_lower(v, x, kC); break;
        case 2: o = s.update_upper(v, x, kC); break;
        default: o = s.instantiate(v, x, kC); break;
      }
      const std::set<int> after = as_set(s.domain(v));
      if (o != Outcome::Changed) {
        CHECK(after == before);
        continue;
      }
      const Event& e = s.event(s.num_events() - 1);
      REQUIRE(e.type == classify(before, after));
      CHECK(e.lo_old == *before.begin());
      CHECK(e.up_old == *before.rbegin());
      CHECK(e.lo_new == *after.begin());
      CHECK(e.up_new == *after.rbegin());
      // Every value the event removed points back at it.
      for (int y : before)
        if (!after.count(y)) CHECK(s.removed_at(v, y) == s.num_events() - 1);
    }
  }
}

TEST_CASE("pop_world restores domains and the event list") {
  Store s;
  const VarId v = s.add_variable(range(1, 8));
  s.push_world();
  s.remove_value(v, 5, kC);
  s.pop_world();
  CHECK(s.domain(v) == Domain(range(1, 8)));
  CHECK(s.num_events() == 0);

  s.push_world();
  s.push_world();
  s.pop_world();
  s.pop_world();
  CHECK(s.depth() == 0);
  CHECK_THROWS_AS(s.pop_world(), std::logic_error);
}

TEST_CASE("random push/mutate/pop sequences restore snapshots exactly") {
  Rng rng(11);
  for (int round = 0; round < 300; ++round) {
    Store s;
    std::vector<VarId> vars;
    for (int i = 0; i < 4; ++i) vars.push_back(s.add_variable(range(0, 9)));
    struct Snapshot {
      std::vector<std::vector<int>> domains;
      std::vector<Event> events;
    };
    std::vector<Snapshot> stack;
    auto snap = [&] {
      Snapshot sn;
      for (VarId v : vars) sn.domains.push_back(s.domain(v).values());
      sn.events.assign(s.events().begin(), s.events().end());
      return sn;
    };
    for (int step = 0; step < 40; ++step) {
      const auto r = rng.below(10);
      if (r < 3) {
        stack.push_back(snap());
        s.push_world();
      } else if (r < 5 && !stack.empty()) {
        s.pop_world();
        const Snapshot now = snap();
        CHECK(now.domains == stack.back().domains);
        CHECK(now.events == stack.back().events);
        stack.pop_back();
      } else {
        const VarId v = vars[rng.below(vars.size())];
        const int x = static_cast<int>(rng.below(10));
        if (rng.below(2)) s.remove_value(v, x, kC);
        else s.update_lower(v, x, kC);
        s.clear_failure();
      }
    }
  }
}

TEST_CASE("events_backward walks newest first") {
  Store s;
  CHECK(s.events_backward().empty());
  const VarId v = s.add_variable(range(1, 8));
  for (int x : {2, 4, 6}) s.remove_value(v, x, kC);
  std::vector<int> seen;
  std::vector<std::size_t> idx;
  for (auto item : s.events_backward()) {
    seen.push_back(item.event.value);
    idx.push_back(item.index);
  }
  CHECK(seen == std::vector<int>{6, 4, 2});
  CHECK(idx == std::vector<std::size_t>{2, 1, 0});
  seen.clear();
  for (auto item : s.events_backward(1)) seen.push_back(item.event.value);
  CHECK(seen == std::vector<int>{4, 2});
}

TEST_CASE("bounds only move inward along one branch") {
  Rng rng(3);
  Store s;
  const VarId v = s.add_variable(range(0, 30));
  for (int i = 0; i < 200 && !s.failure(); ++i) s.remove_value(v, static_cast<int>(rng.below(31)), kC);
  int lo = -1, up = 31;
  for (const Event& e : s.events()) {
    if (e.type == EventType::Low) {
      CHECK(e.lo_new > lo);
      lo = e.lo_new;
    }
    if (e.type == EventType::Upp) {
      CHECK(e.up_new < up);
      up = e.up_new;
    }
  }
}
