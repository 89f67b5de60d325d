#include "eser/rules.hpp"

#include <algorithm>
#include <ostream>

namespace eser {

bool RuleEntry::tracks(int x) const { return std::binary_search(removed.begin(), removed.end(), x); }

namespace {

// Bound part of the covering test; an ASG feeds a bound rule only when it
// moved that bound.
bool bound_covers(const RuleEntry& r, const Event& e, int lb, int ub) {
  const bool l = r.has(kRuleLb), u = r.has(kRuleUb);
  switch (e.type) {
    case EventType::Asg: return (l && e.lo_old < e.value) || (u && e.up_old > e.value);
    case EventType::Low: return l;
    case EventType::Upp: return u;
    case EventType::Rem: return (l && e.value < lb) || (u && e.value > ub);
  }
  return false;
}

}  // namespace

bool covers(const RuleEntry& r, const Event& e, int lb, int ub) {
  if (r.has(kRuleDom) || bound_covers(r, e, lb, ub)) return true;
  auto [lo, hi] = std::pair{e.lo_old, e.up_old};
  switch (e.type) {
    case EventType::Rem: return r.tracks(e.value);
    case EventType::Low: hi = e.lo_new - 1; break;
    case EventType::Upp: lo = e.up_new + 1; break;
    case EventType::Asg: break;
  }
  for (int x : r.removed)
    if (x >= lo && x <= hi && !(e.type == EventType::Asg && x == e.value)) return true;
  return false;
}

bool covers(const RuleEntry& r, std::size_t index, const Store& store) {
  const Event& e = store.event(index);
  const Domain& d = store.domain(e.var);
  if (r.has(kRuleDom) || bound_covers(r, e, d.min(), d.max())) return true;
  for (int x : r.removed)
    if (store.removed_at(e.var, x) == index) return true;
  return false;
}

RuleEntry& RuleSet::entry(VarId v) {
  if (idx(v) >= slot_.size()) slot_.resize(idx(v) + 1, -1);
  int& s = slot_[idx(v)];
  if (s < 0) {
    s = static_cast<int>(entries_.size());
    entries_.push_back(RuleEntry{v, kRuleNone, {}});
  }
  return entries_[static_cast<std::size_t>(s)];
}

void RuleSet::drop(VarId v) {
  const int s = slot_[idx(v)];
  const auto last = static_cast<int>(entries_.size()) - 1;
  if (s != last) {
    entries_[static_cast<std::size_t>(s)] = std::move(entries_.back());
    slot_[idx(entries_[static_cast<std::size_t>(s)].var)] = s;
  }
  entries_.pop_back();
  slot_[idx(v)] = -1;
}

void RuleSet::add_dom(VarId v) {
  RuleEntry& r = entry(v);
  r.mask = kRuleDom;
  r.removed.clear();
}

void RuleSet::add_lb(VarId v) {
  RuleEntry& r = entry(v);
  if (!r.has(kRuleDom)) r.mask |= kRuleLb;
}

void RuleSet::add_ub(VarId v) {
  RuleEntry& r = entry(v);
  if (!r.has(kRuleDom)) r.mask |= kRuleUb;
}

void RuleSet::add_removed(VarId v, int x) {
  RuleEntry& r = entry(v);
  if (r.has(kRuleDom)) return;
  auto it = std::lower_bound(r.removed.begin(), r.removed.end(), x);
  if (it == r.removed.end() || *it != x) r.removed.insert(it, x);
}

void RuleSet::add(const RuleEntry& o) {
  if (o.has(kRuleDom)) {
    add_dom(o.var);
    return;
  }
  if (o.has(kRuleLb)) add_lb(o.var);
  if (o.has(kRuleUb)) add_ub(o.var);
  for (int x : o.removed) add_removed(o.var, x);
}

void RuleSet::erase_removed(VarId v, int x) {
  if (idx(v) >= slot_.size() || slot_[idx(v)] < 0) return;
  RuleEntry& r = entries_[static_cast<std::size_t>(slot_[idx(v)])];
  auto it = std::lower_bound(r.removed.begin(), r.removed.end(), x);
  if (it == r.removed.end() || *it != x) return;
  r.removed.erase(it);
  if (r.mask == kRuleNone && r.removed.empty()) drop(v);
}

void RuleSet::merge(const RuleSet& other) {
  for (const auto& r : other.entries_) add(r);
}

std::vector<RuleEntry> RuleSet::sorted_entries() const {
  std::vector<RuleEntry> out = entries_;
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.var < b.var; });
  return out;
}

std::ostream& operator<<(std::ostream& os, const RuleEntry& r) {
  os << 'v' << idx(r.var) << ':';
  if (r.has(kRuleDom)) return os << "DOM";
  bool first = true;
  auto sep = [&] {
    if (!first) os << '|';
    first = false;
  };
  if (r.has(kRuleLb)) sep(), os << "LB";
  if (r.has(kRuleUb)) sep(), os << "UB";
  if (!r.removed.empty()) {
    sep();
    os << '{';
    for (std::size_t i = 0; i < r.removed.size(); ++i) os << (i ? "," : "") << r.removed[i];
    os << '}';
  }
  return os;
}

}  // namespace eser
