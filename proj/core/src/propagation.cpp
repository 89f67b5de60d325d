#include "eser/propagation.hpp"

#include <algorithm>

namespace eser {

void Propagator::eschema(const Event&, const Store&, RuleSet& rules) const { default_eschema(rules); }

void Propagator::default_eschema(RuleSet& rules) const {
  for (VarId v : scope_) rules.add_dom(v);
}

VarId Space::add_variable(std::span<const int> sorted_values) {
  watchers_.emplace_back();
  return store_.add_variable(sorted_values);
}

int Space::add_propagator(std::unique_ptr<Propagator> p) {
  const int id = static_cast<int>(props_.size());
  p->id_ = id;
  for (VarId v : p->scope()) {
    auto& w = watchers_[idx(v)];
    if (w.empty() || w.back() != id) w.push_back(id);
  }
  props_.push_back(std::move(p));
  in_queue_.push_back(0);
  return id;
}

void Space::eschema(int constraint, const Event& e, RuleSet& rules) const {
  const Propagator& p = propagator(constraint);
  if (default_eschemas_)
    p.default_eschema(rules);
  else
    p.eschema(e, store_, rules);
}

void Space::schedule(int id) {
  auto& q = in_queue_[static_cast<std::size_t>(id)];
  if (q) return;
  q = 1;
  queue_.push_back(id);
}

void Space::schedule_all() {
  for (std::size_t i = 0; i < props_.size(); ++i) schedule(static_cast<int>(i));
}

void Space::clear_queue() {
  for (int id : queue_) in_queue_[static_cast<std::size_t>(id)] = 0;
  queue_.clear();
}

void Space::on_event(const Event& e) {
  const int self = e.cause.kind == CauseKind::Constraint ? e.cause.ref : -1;
  for (int id : watchers_[idx(e.var)])
    if (id != self) schedule(id);
}

bool Space::propagate() {
  while (!queue_.empty()) {
    const int id = queue_.front();
    queue_.pop_front();
    in_queue_[static_cast<std::size_t>(id)] = 0;
    ++filter_calls_;
    if (!props_[static_cast<std::size_t>(id)]->filter(store_, Cause::constraint(id))) {
      clear_queue();
      return false;
    }
  }
  return true;
}

}  // namespace eser
