#include "eser/search.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <stdexcept>

#include "eser/constraints.hpp"

namespace eser {

const char* to_string(EngineKind k) {
  switch (k) {
    case EngineKind::Std: return "std";
    case EngineKind::Cbj: return "cbj";
    case EngineKind::CbjI: return "cbj-i";
    case EngineKind::Dbt: return "dbt";
  }
  return "?";
}

const char* to_string(Status s) {
  switch (s) {
    case Status::Sat: return "SAT";
    case Status::Unsat: return "UNSAT";
    case Status::Unknown: return "UNKNOWN";
  }
  return "?";
}

std::optional<EngineKind> parse_engine(std::string_view name) {
  if (name == "std") return EngineKind::Std;
  if (name == "cbj") return EngineKind::Cbj;
  if (name == "cbj-i" || name == "cbji" || name == "cbj_i") return EngineKind::CbjI;
  if (name == "dbt") return EngineKind::Dbt;
  return std::nullopt;
}

namespace {

enum class Step { Ok, Failed, Exhausted };

struct RefutationInfo {
  VarId var;
  int value;
  int depth;
};

BitSet renumber(const BitSet& b, const std::vector<int>& remap, bool& ok) {
  BitSet out;
  for (std::size_t p : b.to_vector()) {
    if (p >= remap.size() || remap[p] < 0) {
      ok = false;
      return out;
    }
    out.set(static_cast<std::size_t>(remap[p]));
  }
  return out;
}

class Search final : public FailureView {
 public:
  Search(const Model& model, const SearchOptions& opt)
      : model_(model), opt_(opt), space_(build_space(model, opt.default_eschemas)), explainer_(*space_, refutations_) {}

  SearchResult run();

  // FailureView
  const FailureContext& context() const override { return *space_->store().failure(); }
  std::span<const Decision> path() const override { return path_; }
  const Space& space() const override { return *space_; }
  Explanation explain(bool partial, ScanProbe* probe) const override {
    Explainer x(*space_, refutations_);
    x.set_probe(probe);
    return x.explain(context(), partial);
  }
  Dependency resume(Explanation& e, std::optional<int> until) const override {
    Explainer x(*space_, refutations_);
    return x.resume(e, until);
  }

 private:
  Store& store() { return space_->store(); }
  int depth() const { return space_->store().depth(); }

  void open_world();
  void close_world();
  Step take_decision(VarId var, int value);
  Step post_refutation(VarId var, int value, Explanation record);
  Step settle(Outcome o) {
    if (o == Outcome::Failure) {
      space_->clear_queue();
      return Step::Failed;
    }
    return space_->propagate() ? Step::Ok : Step::Failed;
  }

  std::optional<VarId> select() const;
  void note_jump(int target);
  Step exhausted();

  Step on_failure();
  Step backtrack_std();
  Step backjump(bool partial);
  Step dynamic_backtrack();
  Explanation explain_failure(bool partial);
  std::optional<int> jump_target(Explanation& e, bool partial);

  const Model& model_;
  const SearchOptions& opt_;
  std::unique_ptr<Space> space_;
  std::vector<Decision> path_;
  std::vector<Explanation> refutations_;
  std::vector<RefutationInfo> refutation_info_;
  std::vector<std::size_t> refutation_marks_;
  Explainer explainer_;
  SearchStats stats_;
  std::uint64_t next_decision_id_{0};
};

void Search::open_world() {
  refutation_marks_.push_back(refutations_.size());
  store().push_world();
}

void Search::close_world() {
  store().pop_world();
  const std::size_t mark = refutation_marks_.back();
  refutation_marks_.pop_back();
  refutations_.resize(mark);
  refutation_info_.resize(mark);
  path_.pop_back();
}

Step Search::take_decision(VarId var, int value) {
  open_world();
  const int position = depth();
  path_.push_back({var, value, position, next_decision_id_++, store().num_events()});
  ++stats_.nodes;
  stats_.peak_depth = std::max<std::uint64_t>(stats_.peak_depth, static_cast<std::uint64_t>(position));
  return settle(store().instantiate(var, value, Cause::decision(position)));
}

Step Search::post_refutation(VarId var, int value, Explanation record) {
  const int r = static_cast<int>(refutations_.size());
  refutations_.push_back(std::move(record));
  refutation_info_.push_back({var, value, depth()});
  return settle(store().remove_value(var, value, Cause::refutation(r)));
}

std::optional<VarId> Search::select() const {
  const Store& s = space_->store();
  std::optional<VarId> best;
  int best_size = 0;
  for (std::size_t i = 0; i < s.num_vars(); ++i) {
    const int size = s.domain(var_id(i)).size();
    if (size <= 1) continue;
    if (opt_.branching == Branching::Input) return var_id(i);
    if (!best || size < best_size) {
      best = var_id(i);
      best_size = size;
    }
  }
  return best;
}

// A failure explained by no decision refutes the whole path.
Step Search::exhausted() {
  if (depth() > 0) note_jump(0);
  return Step::Exhausted;
}

void Search::note_jump(int target) {
  const int failed_depth = depth();
  if (opt_.on_jump) opt_.on_jump(failed_depth, target);
  const auto length = static_cast<std::uint64_t>(failed_depth - target);
  if (length >= 1) ++stats_.backjumps;
  stats_.max_jump = std::max(stats_.max_jump, length);
}

// Chronological: undo the last decision and post its refutation, labelled
// with every decision still on the path.
Step Search::backtrack_std() {
  if (depth() == 0) return Step::Exhausted;
  note_jump(depth());
  const Decision d = path_.back();
  close_world();
  Explanation record;
  for (int p = 1; p <= depth(); ++p) record.decisions.set(static_cast<std::size_t>(p));
  return post_refutation(d.var, d.value, std::move(record));
}

Explanation Search::explain_failure(bool partial) {
  ++stats_.explanations;
  const auto before = explainer_.visited();
  Explanation e = explainer_.explain(*store().failure(), partial);
  stats_.events_visited += explainer_.visited() - before;
  return e;
}

std::optional<int> Search::jump_target(Explanation& e, bool partial) {
  auto target = deepest_decision(e);
  if (!target && partial && e.residual && e.residual->scan_index > 0) {
    // An early stop may hide decisions; only a complete scan proves none.
    const auto before = explainer_.visited();
    explainer_.resume(e);
    stats_.events_visited += explainer_.visited() - before;
    target = deepest_decision(e);
  }
  return target;
}

Step Search::backjump(bool partial) {
  Explanation e = explain_failure(partial);
  const auto target = jump_target(e, partial);
  if (!target) return exhausted();
  note_jump(*target);
  const Decision d = path_[static_cast<std::size_t>(*target - 1)];
  while (depth() >= *target) close_world();
  e.decisions.reset(static_cast<std::size_t>(*target));
  return post_refutation(d.var, d.value, std::move(e));
}

Step Search::dynamic_backtrack() {
  Explanation e = explain_failure(true);
  const auto target_opt = jump_target(e, true);
  if (!target_opt) return exhausted();
  const int target = *target_opt;
  const Decision jumped = path_[static_cast<std::size_t>(target - 1)];

  // Levels between the jump target and the failure, in chronological order:
  // each decision, then the refutations posted under it. Refutations are
  // kept only when their explanation does not depend on the jumped decision.
  struct Item {
    bool decision;
    VarId var;
    int value;
    int old_position;
    Explanation record;
  };
  std::vector<Item> items;
  const int failed_depth = depth();
  for (int level = target; level <= failed_depth; ++level) {
    if (level > target) {
      const Decision& d = path_[static_cast<std::size_t>(level - 1)];
      items.push_back({true, d.var, d.value, d.position, {}});
    }
    for (std::size_t r = 0; r < refutations_.size(); ++r) {
      if (refutation_info_[r].depth != level) continue;
      Explanation rec = refutations_[r];
      Dependency dep = Dependency::Independent;
      if (rec.decisions.test(static_cast<std::size_t>(target))) {
        dep = Dependency::Depends;
      } else if (rec.residual && rec.residual->scan_index > jumped.event_index) {
        const auto before = explainer_.visited();
        dep = explainer_.resume(rec, target);
        stats_.events_visited += explainer_.visited() - before;
      }
      if (dep == Dependency::Independent)
        items.push_back({false, refutation_info_[r].var, refutation_info_[r].value, 0, std::move(rec)});
    }
  }

  note_jump(target);
  while (depth() >= target) close_world();
  e.decisions.reset(static_cast<std::size_t>(target));
  Step step = post_refutation(jumped.var, jumped.value, std::move(e));
  if (step != Step::Ok) return step;

  std::vector<int> remap(static_cast<std::size_t>(failed_depth) + 1, -1);
  for (int p = 0; p < target; ++p) remap[static_cast<std::size_t>(p)] = p;
  for (auto& item : items) {
    const Domain& d = store().domain(item.var);
    if (item.decision) {
      if (!d.contains(item.value) || d.fixed()) break;
      step = take_decision(item.var, item.value);
      remap[static_cast<std::size_t>(item.old_position)] = depth();
    } else {
      bool ok = true;
      item.record.decisions = renumber(item.record.decisions, remap, ok);
      if (!ok) break;
      if (!d.contains(item.value)) continue;
      step = post_refutation(item.var, item.value, std::move(item.record));
    }
    if (step != Step::Ok) return step;
  }
  return Step::Ok;
}

Step Search::on_failure() {
  switch (opt_.engine) {
    case EngineKind::Std: return backtrack_std();
    case EngineKind::Cbj: return backjump(false);
    case EngineKind::CbjI: return backjump(true);
    case EngineKind::Dbt: return dynamic_backtrack();
  }
  return Step::Exhausted;
}

SearchResult Search::run() {
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  SearchResult result;
  auto elapsed_ms = [&] { return std::chrono::duration<double, std::milli>(clock::now() - start).count(); };

  space_->schedule_all();
  Step step = space_->propagate() ? Step::Ok : Step::Failed;
  bool exhausted = false;
  for (;;) {
    if (step == Step::Exhausted) {
      exhausted = true;
      break;
    }
    if (step == Step::Failed) {
      ++stats_.fails;
      if (opt_.on_failure) opt_.on_failure(*this);
      step = on_failure();
      continue;
    }
    if ((opt_.timeout_ms && elapsed_ms() > static_cast<double>(*opt_.timeout_ms)) ||
        (opt_.node_limit && stats_.nodes >= *opt_.node_limit)) {
      stats_.timed_out = true;
      break;
    }
    const auto var = select();
    if (!var) {
      ++stats_.solutions;
      if (result.solutions.size() < opt_.keep_solutions) {
        std::vector<int> sol;
        for (std::size_t i = 0; i < store().num_vars(); ++i) sol.push_back(store().domain(var_id(i)).min());
        result.solutions.push_back(std::move(sol));
      }
      if (opt_.goal != SearchGoal::All) break;
      step = backtrack_std();
      continue;
    }
    step = take_decision(*var, store().domain(*var).min());
  }

  if (stats_.timed_out)
    result.status = Status::Unknown;
  else if (stats_.solutions > 0)
    result.status = Status::Sat;
  else
    result.status = exhausted ? Status::Unsat : Status::Unknown;
  stats_.elapsed_ms = elapsed_ms();
  result.stats = stats_;
  return result;
}

}  // namespace

SearchResult solve(const Model& model, const SearchOptions& options) {
  if (options.goal == SearchGoal::All && options.engine != EngineKind::Std)
    throw std::invalid_argument("all-solutions search is only supported by the std engine");
  Search search(model, options);
  return search.run();
}

}  // namespace eser
