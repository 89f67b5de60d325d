#ifndef ESER_RULES_HPP
#define ESER_RULES_HPP

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "eser/kernel.hpp"

namespace eser {

/// Modification kinds a selection rule tracks on one variable.
enum RuleMask : std::uint8_t {
  kRuleNone = 0,
  kRuleDom = 1,  // any event
  kRuleLb = 2,   // events that raised the lower bound
  kRuleUb = 4,   // events that lowered the upper bound
};

/// All selection rules on one variable: a modification mask plus the
/// individually tracked removed values.
struct RuleEntry {
  VarId var{};
  std::uint8_t mask{kRuleNone};
  std::vector<int> removed;  // sorted, unique; empty when DOM is set

  bool has(RuleMask m) const { return (mask & m) != 0; }
  bool tracks(int x) const;

  friend bool operator==(const RuleEntry&, const RuleEntry&) = default;
};

/// Whether event `e` removed a value tracked by `r`. `lb`/`ub` are the
/// current (failure-time) bounds of the variable: a bound rule tracks the
/// values outside them. Tracked removed values are matched against the
/// event's removal interval, which over-approximates when the interval spans
/// values already gone.
bool covers(const RuleEntry& r, const Event& e, int lb, int ub);

/// Exact form for event `index` of `store`: tracked removed values match only
/// the event that actually removed them.
bool covers(const RuleEntry& r, std::size_t index, const Store& store);

/// Per-variable rule set. Lookup by variable is O(1); copies cost
/// O(num_vars + rules).
class RuleSet {
 public:
  RuleSet() = default;
  explicit RuleSet(std::size_t num_vars) : slot_(num_vars, -1) {}

  void add_dom(VarId v);
  void add_lb(VarId v);
  void add_ub(VarId v);
  void add_bounds(VarId v) {
    add_lb(v);
    add_ub(v);
  }
  void add_removed(VarId v, int x);
  void add(const RuleEntry& r);

  /// Drops the removed-value rule for `x`, if any.
  void erase_removed(VarId v, int x);

  const RuleEntry* find(VarId v) const {
    if (idx(v) >= slot_.size()) return nullptr;
    const int s = slot_[idx(v)];
    return s < 0 ? nullptr : &entries_[static_cast<std::size_t>(s)];
  }

  void merge(const RuleSet& other);

  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

  /// Entries ordered by variable.
  std::vector<RuleEntry> sorted_entries() const;

  friend bool operator==(const RuleSet& a, const RuleSet& b) {
    return a.sorted_entries() == b.sorted_entries();
  }

 private:
  RuleEntry& entry(VarId v);
  void drop(VarId v);

  std::vector<int> slot_;
  std::vector<RuleEntry> entries_;
};

std::ostream& operator<<(std::ostream& os, const RuleEntry& r);

}  // namespace eser

#endif  // ESER_RULES_HPP
