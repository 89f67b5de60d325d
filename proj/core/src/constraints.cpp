#include "eser/constraints.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <sstream>
#include <stdexcept>

namespace eser {

namespace {

constexpr int kMaxValueRules = 64;

long long floor_div(long long a, long long b) {
  long long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

long long ceil_div(long long a, long long b) { return -floor_div(-a, b); }

int clamp_int(long long v) {
  return static_cast<int>(std::clamp<long long>(v, INT_MIN, INT_MAX));
}

bool failed(Outcome o) { return o == Outcome::Failure; }

// Adds removed-value rules on `target` for every value the event removed,
// mapped through `map`; falls back to DOM when the interval is large.
template <class Map>
void rules_for_removed(const Event& e, VarId target, RuleSet& rules, Map&& map) {
  const auto [lo, hi] = removed_interval(e);
  if (static_cast<long long>(hi) - lo + 1 > kMaxValueRules) {
    rules.add_dom(target);
    return;
  }
  for (int w = lo; w <= hi; ++w) {
    if (e.type == EventType::Asg && w == e.value) continue;
    map(w);
  }
}

}  // namespace

std::pair<int, int> removed_interval(const Event& e) {
  switch (e.type) {
    case EventType::Rem: return {e.value, e.value};
    case EventType::Low: return {e.lo_old, e.lo_new - 1};
    case EventType::Upp: return {e.up_new + 1, e.up_old};
    case EventType::Asg: return {e.lo_old, e.up_old};
  }
  return {0, -1};
}

// ---------------------------------------------------------------------------

bool EqOffset::filter(Store& s, Cause self) {
  for (int w : s.domain(x_).values())
    if (!s.domain(y_).contains(w - c_) && failed(s.remove_value(x_, w, self))) return false;
  for (int u : s.domain(y_).values())
    if (!s.domain(x_).contains(u + c_) && failed(s.remove_value(y_, u, self))) return false;
  return true;
}

void EqOffset::eschema(const Event& e, const Store&, RuleSet& rules) const {
  if (x_ == y_) return default_eschema(rules);
  if (e.var == x_)
    rules_for_removed(e, y_, rules, [&](int w) { rules.add_removed(y_, w - c_); });
  else
    rules_for_removed(e, x_, rules, [&](int u) { rules.add_removed(x_, u + c_); });
}

std::string EqOffset::describe() const {
  std::ostringstream os;
  os << "eq(v" << idx(x_) << ",v" << idx(y_) << ',' << c_ << ')';
  return os.str();
}

// ---------------------------------------------------------------------------

bool NeqOffset::filter(Store& s, Cause self) {
  if (s.domain(y_).fixed() && failed(s.remove_value(x_, s.domain(y_).min() + c_, self))) return false;
  if (s.domain(x_).fixed() && failed(s.remove_value(y_, s.domain(x_).min() - c_, self))) return false;
  return true;
}

void NeqOffset::eschema(const Event& e, const Store&, RuleSet& rules) const {
  if (x_ == y_) return default_eschema(rules);
  rules.add_bounds(e.var == x_ ? y_ : x_);
}

std::string NeqOffset::describe() const {
  std::ostringstream os;
  os << "neq(v" << idx(x_) << ",v" << idx(y_) << ',' << c_ << ')';
  return os.str();
}

// ---------------------------------------------------------------------------

bool LeqOffset::filter(Store& s, Cause self) {
  for (;;) {
    const Outcome a = s.update_upper(x_, clamp_int(static_cast<long long>(s.domain(y_).max()) + c_), self);
    if (failed(a)) return false;
    const Outcome b = s.update_lower(y_, clamp_int(static_cast<long long>(s.domain(x_).min()) - c_), self);
    if (failed(b)) return false;
    if (x_ != y_ || (a == Outcome::Unchanged && b == Outcome::Unchanged)) return true;
  }
}

void LeqOffset::eschema(const Event& e, const Store&, RuleSet& rules) const {
  if (x_ == y_) return default_eschema(rules);
  if (e.var == x_)
    rules.add_ub(y_);
  else
    rules.add_lb(x_);
}

std::string LeqOffset::describe() const {
  std::ostringstream os;
  os << "leq(v" << idx(x_) << ",v" << idx(y_) << ',' << c_ << ')';
  return os.str();
}

// ---------------------------------------------------------------------------

namespace {

std::vector<LinearTerm> normalize(std::vector<LinearTerm> terms) {
  std::map<VarId, long long> merged;
  std::vector<VarId> order;
  for (const auto& t : terms) {
    if (!merged.count(t.var)) order.push_back(t.var);
    merged[t.var] += t.coeff;
  }
  std::vector<LinearTerm> out;
  for (VarId v : order)
    if (merged[v] != 0) out.push_back({static_cast<int>(merged[v]), v});
  return out;
}

}  // namespace

std::vector<VarId> Linear::scope_of(const std::vector<LinearTerm>& terms) {
  std::vector<VarId> scope;
  for (const auto& t : terms)
    if (std::find(scope.begin(), scope.end(), t.var) == scope.end()) scope.push_back(t.var);
  return scope;
}

Linear::Linear(std::vector<LinearTerm> terms, long long bound, bool equality)
    : Propagator(scope_of(terms)), terms_(normalize(terms)), bound_(bound), equality_(equality) {
  for (const auto& t : terms_) negated_.push_back({-t.coeff, t.var});
}

std::optional<bool> Linear::tighten(Store& s, Cause self, const std::vector<LinearTerm>& terms,
                                    long long bound) const {
  auto term_min = [&](const LinearTerm& t) {
    const Domain& d = s.domain(t.var);
    return static_cast<long long>(t.coeff) * (t.coeff > 0 ? d.min() : d.max());
  };
  long long min_sum = 0;
  for (const auto& t : terms) min_sum += term_min(t);
  bool changed = false;
  for (const auto& t : terms) {
    const long long own = term_min(t);
    const long long slack = bound - (min_sum - own);
    Outcome o;
    if (t.coeff > 0)
      o = s.update_upper(t.var, clamp_int(floor_div(slack, t.coeff)), self);
    else
      o = s.update_lower(t.var, clamp_int(ceil_div(slack, t.coeff)), self);
    if (failed(o)) return std::nullopt;
    if (o == Outcome::Changed) {
      changed = true;
      min_sum += term_min(t) - own;
    }
  }
  return changed;
}

bool Linear::filter(Store& s, Cause self) {
  if (terms_.empty()) {
    // Every coefficient cancelled: the constraint is constant.
    if (bound_ >= 0 && (!equality_ || bound_ == 0)) return true;
    const VarId v = scope().front();
    return !failed(s.update_upper(v, s.domain(v).min() - 1, self));
  }
  for (;;) {
    auto a = tighten(s, self, terms_, bound_);
    if (!a) return false;
    bool changed = *a;
    if (equality_) {
      auto b = tighten(s, self, negated_, -bound_);
      if (!b) return false;
      changed = changed || *b;
    }
    if (!changed) return true;
  }
}

void Linear::eschema(const Event& e, const Store&, RuleSet& rules) const {
  if (equality_) {
    for (const auto& t : terms_)
      if (t.var != e.var) rules.add_bounds(t.var);
    return;
  }
  for (const auto& t : terms_) {
    if (t.var == e.var) continue;
    if (t.coeff > 0)
      rules.add_lb(t.var);
    else
      rules.add_ub(t.var);
  }
}

std::string Linear::describe() const {
  std::ostringstream os;
  os << "linear(";
  for (std::size_t i = 0; i < terms_.size(); ++i)
    os << (i ? "+" : "") << terms_[i].coeff << "*v" << idx(terms_[i].var);
  os << (equality_ ? "=" : "<=") << bound_ << ')';
  return os.str();
}

// ---------------------------------------------------------------------------

bool AllDifferent::filter(Store& s, Cause self) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (!s.domain(vars_[i]).fixed()) continue;
      const int a = s.domain(vars_[i]).min();
      for (std::size_t j = 0; j < vars_.size(); ++j) {
        if (j == i) continue;
        const Outcome o = s.remove_value(vars_[j], a, self);
        if (failed(o)) return false;
        if (o == Outcome::Changed) changed = true;
      }
    }
  }
  return true;
}

void AllDifferent::eschema(const Event& e, const Store& s, RuleSet& rules) const {
  int removed = e.value;
  if (e.type == EventType::Low) removed = e.lo_old;
  if (e.type == EventType::Upp) removed = e.up_old;
  if (e.type == EventType::Asg) removed = e.value == e.lo_old ? e.up_old : e.lo_old;
  bool found = false;
  bool skipped_self = false;
  for (VarId z : vars_) {
    if (z == e.var && !skipped_self) {
      skipped_self = true;
      continue;
    }
    const Domain& d = s.domain(z);
    if (d.fixed() && d.min() == removed) {
      rules.add_bounds(z);
      found = true;
    }
  }
  if (!found) default_eschema(rules);
}

std::string AllDifferent::describe() const {
  std::ostringstream os;
  os << "alldifferent(";
  for (std::size_t i = 0; i < vars_.size(); ++i) os << (i ? "," : "") << 'v' << idx(vars_[i]);
  os << ')';
  return os.str();
}

// ---------------------------------------------------------------------------

ForbiddenPairs::ForbiddenPairs(const Store& s, VarId x, VarId y, std::vector<std::pair<int, int>> tuples)
    : Propagator({x, y}), x_(x), y_(y), tuples_(std::move(tuples)) {
  std::sort(tuples_.begin(), tuples_.end());
  tuples_.erase(std::unique(tuples_.begin(), tuples_.end()), tuples_.end());
  for (const auto& [a, b] : tuples_) by_y_.emplace_back(b, a);
  std::sort(by_y_.begin(), by_y_.end());
  init_x_ = s.domain(x).values();
  init_y_ = s.domain(y).values();
}

bool ForbiddenPairs::forbidden(int a, int b) const {
  return std::binary_search(tuples_.begin(), tuples_.end(), std::pair{a, b});
}

// Removes values of one side with no allowed partner on the other side.
std::optional<bool> ForbiddenPairs::revise(Store& s, Cause self, bool on_x) const {
  const VarId v = on_x ? x_ : y_;
  const VarId w = on_x ? y_ : x_;
  const auto& index = on_x ? tuples_ : by_y_;
  bool changed = false;
  for (int a : s.domain(v).values()) {
    const Domain& other = s.domain(w);
    auto it = std::lower_bound(index.begin(), index.end(), std::pair{a, INT_MIN});
    int blocked = 0;
    for (; it != index.end() && it->first == a; ++it)
      if (other.contains(it->second)) ++blocked;
    if (blocked < other.size()) continue;
    if (failed(s.remove_value(v, a, self))) return std::nullopt;
    changed = true;
  }
  return changed;
}

bool ForbiddenPairs::filter(Store& s, Cause self) {
  if (x_ == y_) {
    for (int a : s.domain(x_).values())
      if (forbidden(a, a) && failed(s.remove_value(x_, a, self))) return false;
    return true;
  }
  for (;;) {
    auto a = revise(s, self, true);
    if (!a) return false;
    auto b = revise(s, self, false);
    if (!b) return false;
    if (!*b) return true;
  }
}

void ForbiddenPairs::eschema(const Event& e, const Store&, RuleSet& rules) const {
  if (x_ == y_) return default_eschema(rules);
  const bool on_x = e.var == x_;
  const VarId other = on_x ? y_ : x_;
  const auto& partners = on_x ? init_y_ : init_x_;
  std::vector<int> supports;
  bool overflow = false;
  rules_for_removed(e, other, rules, [&](int w) {
    if (overflow) return;
    for (int u : partners) {
      if (on_x ? forbidden(w, u) : forbidden(u, w)) continue;
      supports.push_back(u);
    }
    if (supports.size() > 4 * kMaxValueRules) overflow = true;
  });
  if (overflow) {
    rules.add_dom(other);
    return;
  }
  for (int u : supports) rules.add_removed(other, u);
}

std::string ForbiddenPairs::describe() const {
  std::ostringstream os;
  os << "forbid(v" << idx(x_) << ",v" << idx(y_) << ",#" << tuples_.size() << ')';
  return os.str();
}

// ---------------------------------------------------------------------------

std::unique_ptr<Propagator> make_propagator(const Store& s, const ConstraintSpec& c) {
  auto var = [&](std::size_t i) { return var_id(static_cast<std::size_t>(c.vars[i])); };
  switch (c.kind) {
    case ConstraintKind::EqOffset: return std::make_unique<EqOffset>(var(0), var(1), c.constant);
    case ConstraintKind::NeqOffset: return std::make_unique<NeqOffset>(var(0), var(1), c.constant);
    case ConstraintKind::LeqOffset: return std::make_unique<LeqOffset>(var(0), var(1), c.constant);
    case ConstraintKind::LinearLeq:
    case ConstraintKind::LinearEq: {
      std::vector<LinearTerm> terms;
      for (std::size_t i = 0; i < c.vars.size(); ++i) terms.push_back({c.coeffs[i], var(i)});
      return std::make_unique<Linear>(std::move(terms), c.constant, c.kind == ConstraintKind::LinearEq);
    }
    case ConstraintKind::AllDifferent: {
      std::vector<VarId> vars;
      for (std::size_t i = 0; i < c.vars.size(); ++i) vars.push_back(var(i));
      return std::make_unique<AllDifferent>(std::move(vars));
    }
    case ConstraintKind::Forbidden: return std::make_unique<ForbiddenPairs>(s, var(0), var(1), c.tuples);
  }
  throw std::invalid_argument("unknown constraint kind");
}

std::unique_ptr<Space> build_space(const Model& m, bool default_eschemas) {
  m.validate();
  auto space = std::make_unique<Space>();
  for (const auto& v : m.vars) space->add_variable(v.values);
  for (const auto& c : m.constraints) space->add_propagator(make_propagator(space->store(), c));
  space->set_default_eschemas(default_eschemas);
  return space;
}

}  // namespace eser
