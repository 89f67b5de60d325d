#include "eser/explain.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <stdexcept>

namespace eser {

void merge(Explanation& target, const Explanation& source) {
  target.decisions |= source.decisions;
  target.constraints |= source.constraints;
  if (!source.residual) return;
  if (!target.residual) {
    target.residual = source.residual;
    return;
  }
  target.residual->rules.merge(source.residual->rules);
  target.residual->scan_index = std::min(target.residual->scan_index, source.residual->scan_index);
}

std::optional<int> deepest_decision(const Explanation& e) {
  if (auto h = e.decisions.highest()) return static_cast<int>(*h);
  return std::nullopt;
}

std::string to_string(const Explanation& e) {
  std::ostringstream os;
  auto list = [&](const BitSet& b) {
    os << '[';
    const auto v = b.to_vector();
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ']';
  };
  os << "decisions=";
  list(e.decisions);
  os << ", constraints=";
  list(e.constraints);
  os << ", residual={";
  if (e.residual) {
    os << "scan=" << e.residual->scan_index;
    for (const auto& r : e.residual->rules.sorted_entries()) os << "; " << r;
  }
  os << '}';
  return os.str();
}

void Explainer::absorb_refutation(Explanation& e, RuleSet& rules, int record) const {
  const Explanation& r = refutations_.at(static_cast<std::size_t>(record));
  e.decisions |= r.decisions;
  e.constraints |= r.constraints;
  if (r.residual) rules.merge(r.residual->rules);
}

Explainer::Outcome Explainer::scan(Explanation& e, RuleSet& rules, std::size_t start, Stop mode,
                                   int position) {
  const Store& store = space_.store();
  assert(start <= store.num_events());
  if (probe_) probe_->begin(store.num_events());
  for (std::size_t i = start; i-- > 0;) {
    if (rules.empty()) return {false, 0};
    ++visited_;
    if (probe_) probe_->visit(i);
    const Event& ev = store.event(i);
    const bool target = mode == Stop::AtPosition && ev.cause == Cause::decision(position);
    const RuleEntry* r = rules.find(ev.var);
    bool stop = target;
    if (r && covers(*r, i, store)) {
      switch (ev.cause.kind) {
        case CauseKind::Decision:
          e.decisions.set(static_cast<std::size_t>(ev.cause.ref));
          stop = stop || mode == Stop::FirstDecision;
          break;
        case CauseKind::Refutation: absorb_refutation(e, rules, ev.cause.ref); break;
        case CauseKind::Constraint:
          e.constraints.set(static_cast<std::size_t>(ev.cause.ref));
          space_.eschema(ev.cause.ref, ev, rules);
          break;
      }
      if (ev.type == EventType::Rem) rules.erase_removed(ev.var, ev.value);
    }
    if (stop || (mode == Stop::AtPosition && e.decisions.test(static_cast<std::size_t>(position))))
      return {true, i};
  }
  return {false, 0};
}

Explanation Explainer::explain(const FailureContext& f, bool partial) {
  const Store& store = space_.store();
  Explanation e;
  RuleSet rules(store.num_vars());
  rules.add_dom(f.var);
  switch (f.cause.kind) {
    case CauseKind::Constraint:
      e.constraints.set(static_cast<std::size_t>(f.cause.ref));
      space_.eschema(f.cause.ref, f.attempted, rules);
      break;
    case CauseKind::Decision:
      e.decisions.set(static_cast<std::size_t>(f.cause.ref));
      if (partial) {
        e.residual = Residual{std::move(rules), f.sigma_tail};
        return e;
      }
      break;
    case CauseKind::Refutation: absorb_refutation(e, rules, f.cause.ref); break;
  }
  const auto out = scan(e, rules, f.sigma_tail, partial ? Stop::FirstDecision : Stop::Never, 0);
  if (partial) e.residual = Residual{std::move(rules), out.stopped ? out.index : 0};
  return e;
}

Dependency Explainer::resume(Explanation& e, std::optional<int> until_position) {
  if (!e.residual) throw std::logic_error("resume: explanation has no residual");
  if (until_position && e.decisions.test(static_cast<std::size_t>(*until_position))) return Dependency::Depends;
  Residual& res = *e.residual;
  const auto out = until_position ? scan(e, res.rules, res.scan_index, Stop::AtPosition, *until_position)
                                  : scan(e, res.rules, res.scan_index, Stop::Never, 0);
  res.scan_index = out.stopped ? out.index : 0;
  if (until_position && e.decisions.test(static_cast<std::size_t>(*until_position))) return Dependency::Depends;
  return Dependency::Independent;
}

}  // namespace eser
