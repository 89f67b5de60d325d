#include <algorithm>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "eser/generators.hpp"
#include "eser/search.hpp"
#include "oracles.hpp"

using namespace eser;

namespace {

const EngineKind kEngines[] = {EngineKind::Std, EngineKind::Cbj, EngineKind::CbjI, EngineKind::Dbt};

SearchResult run(const Model& m, EngineKind k, SearchGoal g = SearchGoal::First) {
  SearchOptions so;
  so.engine = k;
  so.goal = g;
  so.keep_solutions = 1000;
  return solve(m, so);
}

}  // namespace

TEST_CASE("queens solution counts match a permutation enumerator") {
  for (int n : {1, 4, 5, 6}) {
    const auto r = run(gen_queens(n), EngineKind::Std, SearchGoal::All);
    const auto expected = testing::queens_bruteforce(n);
    CHECK(r.stats.solutions == expected);
    CHECK(r.status == (expected ? Status::Sat : Status::Unsat));
    std::vector<std::vector<int>> seen = r.solutions;
    std::sort(seen.begin(), seen.end());
    CHECK(std::adjacent_find(seen.begin(), seen.end()) == seen.end());
  }
  CHECK(testing::queens_bruteforce(4) == 2);
  CHECK(testing::queens_bruteforce(6) == 4);
}

TEST_CASE("all engines agree on small instances and return valid solutions") {
  std::vector<Model> models{gen_queens(5), gen_queens(3), gen_pigeonhole(4, 3, 0), gen_pigeonhole(3, 3, 2)};
  for (std::uint64_t seed = 1; seed <= 30; ++seed) models.push_back(gen_randcsp(8, 4, 0.5, 0.4, seed));
  for (const Model& m : models) {
    const bool sat = !testing::all_solutions_bruteforce(m).empty();
    for (EngineKind k : kEngines) {
      CAPTURE(to_string(k));
      const auto r = run(m, k);
      CHECK(r.status == (sat ? Status::Sat : Status::Unsat));
      if (sat) {
        REQUIRE(r.solutions.size() == 1);
        CHECK(satisfies(m, r.solutions[0]));
      }
    }
  }
}

TEST_CASE("pigeonhole 4 into 3 is unsatisfiable for every engine") {
  for (EngineKind k : kEngines) CHECK(run(gen_pigeonhole(4, 3, 0), k).status == Status::Unsat);
}

TEST_CASE("ALL goal needs the standard engine") {
  for (EngineKind k : {EngineKind::Cbj, EngineKind::CbjI, EngineKind::Dbt})
    CHECK_THROWS_AS(run(gen_queens(4), k, SearchGoal::All), std::invalid_argument);
}

TEST_CASE("runs are deterministic") {
  const Model m = gen_randcsp(14, 6, 0.5, 0.42, 77);
  for (EngineKind k : kEngines) {
    const auto a = run(m, k), b = run(m, k);
    CHECK(a.status == b.status);
    CHECK(a.solutions == b.solutions);
    CHECK(a.stats.nodes == b.stats.nodes);
    CHECK(a.stats.backjumps == b.stats.backjumps);
  }
}

TEST_CASE("CBJ and CBJ-I pick the same jump targets") {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    const Model m = gen_randcsp(14, 6, 0.5, 0.45, seed);
    std::vector<std::pair<int, int>> jumps[2];
    int i = 0;
    for (EngineKind k : {EngineKind::Cbj, EngineKind::CbjI}) {
      SearchOptions so;
      so.engine = k;
      so.on_jump = [&, i](int from, int to) { jumps[i].emplace_back(from, to); };
      solve(m, so);
      ++i;
    }
    CHECK(jumps[0] == jumps[1]);
  }
}

TEST_CASE("jump hook reports upward moves and one explanation per failure") {
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    SearchOptions so;
    so.engine = EngineKind::Cbj;
    std::vector<int> deepest;
    so.on_failure = [&](const FailureView& v) {
      const auto d = deepest_decision(v.explain(false));
      deepest.push_back(d ? static_cast<int>(*d) : 0);
    };
    std::uint64_t jumps = 0;
    so.on_jump = [&](int from, int to) {
      CHECK(to <= from);
      ++jumps;
    };
    const auto r = solve(gen_randcsp(14, 6, 0.5, 0.45, seed), so);
    CHECK(r.stats.fails == deepest.size());
    CHECK(jumps >= r.stats.backjumps);
  }
}

TEST_CASE("limits give UNKNOWN") {
  const Model m = gen_pigeonhole(9, 8, 0);
  SearchOptions so;
  so.node_limit = 50;
  auto r = solve(m, so);
  CHECK(r.status == Status::Unknown);
  CHECK(r.stats.timed_out);
  CHECK(r.stats.nodes <= 51);

  so.node_limit.reset();
  so.timeout_ms = 20;
  r = solve(m, so);
  CHECK(r.status == Status::Unknown);
  CHECK(r.stats.elapsed_ms < 2000);
}

TEST_CASE("branching heuristics") {
  // mindom starts on b, input order on a; the first value is kept either way.
  Model m;
  m.add_range("a", 1, 5);
  m.add_range("b", 1, 2);
  m.constraints.push_back(ConstraintSpec::neq(0, 1, 0));
  SearchOptions so;
  so.branching = Branching::MinDom;
  auto r = solve(m, so);
  REQUIRE(r.status == Status::Sat);
  CHECK(r.solutions[0] == std::vector<int>{2, 1});
  so.branching = Branching::Input;
  r = solve(m, so);
  REQUIRE(r.status == Status::Sat);
  CHECK(r.solutions[0] == std::vector<int>{1, 2});
}
