#include "eser/kernel.hpp"

#include <cassert>
#include <ostream>
#include <stdexcept>

namespace eser {

const char* to_string(EventType t) {
  switch (t) {
    case EventType::Rem: return "REM";
    case EventType::Asg: return "ASG";
    case EventType::Low: return "LOW";
    case EventType::Upp: return "UPP";
  }
  return "?";
}

std::ostream& operator<<(std::ostream& os, const Event& e) {
  os << to_string(e.type) << "(v" << idx(e.var) << ", ";
  switch (e.type) {
    case EventType::Rem: os << "x:" << e.value; break;
    case EventType::Asg: os << "a:" << e.value << ", lo_old:" << e.lo_old << ", up_old:" << e.up_old; break;
    case EventType::Low: os << "lo_old:" << e.lo_old << ", lo_new:" << e.lo_new; break;
    case EventType::Upp: os << "up_old:" << e.up_old << ", up_new:" << e.up_new; break;
  }
  static constexpr const char* kinds[] = {"C", "D", "R"};
  return os << ", " << kinds[static_cast<int>(e.cause.kind)] << e.cause.ref << ")";
}

// ---------------------------------------------------------------------------
// Domain

Domain::Domain(std::span<const int> sorted_values) {
  if (sorted_values.empty()) throw std::invalid_argument("empty domain");
  base_ = sorted_values.front();
  const long span = static_cast<long>(sorted_values.back()) - base_ + 1;
  if (span <= 0 || span > (1L << 26)) throw std::invalid_argument("domain range too large");
  dense_.resize(static_cast<std::size_t>(span));
  pos_.assign(static_cast<std::size_t>(span), -1);
  int front = 0;
  for (int v : sorted_values) {
    const auto off = static_cast<std::size_t>(v - base_);
    if (pos_[off] >= 0) continue;
    pos_[off] = front;
    dense_[static_cast<std::size_t>(front)] = v;
    ++front;
  }
  size_ = front;
  int back = front;
  for (long off = 0; off < span; ++off) {
    auto o = static_cast<std::size_t>(off);
    if (pos_[o] >= 0) continue;
    pos_[o] = back;
    dense_[static_cast<std::size_t>(back)] = base_ + static_cast<int>(off);
    ++back;
  }
  lb_ = sorted_values.front();
  ub_ = sorted_values.back();
}

std::vector<int> Domain::values() const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(size_));
  for_each([&](int v) { out.push_back(v); });
  return out;
}

bool operator==(const Domain& a, const Domain& b) {
  return a.size_ == b.size_ && a.lb_ == b.lb_ && a.ub_ == b.ub_ && a.values() == b.values();
}

void Domain::erase(int v) {
  const auto off = static_cast<std::size_t>(v - base_);
  const int p = pos_[off];
  const int last = size_ - 1;
  const int w = dense_[static_cast<std::size_t>(last)];
  dense_[static_cast<std::size_t>(p)] = w;
  pos_[static_cast<std::size_t>(w - base_)] = p;
  dense_[static_cast<std::size_t>(last)] = v;
  pos_[off] = last;
  --size_;
}

void Domain::restrict_to(int a) {
  const auto off = static_cast<std::size_t>(a - base_);
  const int p = pos_[off];
  const int w = dense_[0];
  dense_[static_cast<std::size_t>(p)] = w;
  pos_[static_cast<std::size_t>(w - base_)] = p;
  dense_[0] = a;
  pos_[off] = 0;
  size_ = 1;
  lb_ = ub_ = a;
}

void Domain::refresh_min() {
  while (!contains(lb_)) ++lb_;
}

void Domain::refresh_max() {
  while (!contains(ub_)) --ub_;
}

// ---------------------------------------------------------------------------
// Store

VarId Store::add_variable(std::span<const int> sorted_values) {
  assert(worlds_.empty());
  domains_.emplace_back(sorted_values);
  removed_at_.emplace_back(domains_.back().dense_.size(), kNever);
  stamps_.push_back(0);
  return var_id(domains_.size() - 1);
}

void Store::save(VarId v) {
  if (worlds_.empty()) return;
  auto& stamp = stamps_[idx(v)];
  if (stamp == worlds_.back().stamp) return;
  stamp = worlds_.back().stamp;
  trail_.push_back({v, domains_[idx(v)].save()});
}

Outcome Store::fail(VarId v, Cause cause, Event attempted) {
  attempted.var = v;
  attempted.cause = cause;
  failure_ = FailureContext{v, cause, events_.size(), attempted};
  return Outcome::Failure;
}

Outcome Store::record(VarId v, Cause cause, const Domain::Saved& before, int removed) {
  const Domain& d = domains_[idx(v)];
  Event e;
  e.var = v;
  e.cause = cause;
  e.lo_old = before.lb;
  e.up_old = before.ub;
  e.lo_new = d.lb_;
  e.up_new = d.ub_;
  if (d.size_ == 1) {
    e.type = EventType::Asg;
    e.value = d.lb_;
  } else if (d.lb_ != before.lb) {
    assert(d.ub_ == before.ub);
    e.type = EventType::Low;
  } else if (d.ub_ != before.ub) {
    e.type = EventType::Upp;
  } else {
    assert(before.size - d.size_ == 1);
    e.type = EventType::Rem;
    e.value = removed;
  }
  // The mutation moved exactly the removed values to dense_[size, before.size).
  auto& at = removed_at_[idx(v)];
  for (int i = d.size_; i < before.size; ++i)
    at[static_cast<std::size_t>(d.dense_[static_cast<std::size_t>(i)] - d.base_)] = events_.size();
  events_.push_back(e);
  if (listener_) listener_->on_event(events_.back());
  return Outcome::Changed;
}

std::size_t Store::removed_at(VarId v, int x) const {
  const Domain& d = domains_[idx(v)];
  const long off = static_cast<long>(x) - d.base_;
  if (off < 0 || off >= static_cast<long>(d.dense_.size())) return kNever;
  return removed_at_[idx(v)][static_cast<std::size_t>(off)];
}

Outcome Store::remove_value(VarId v, int x, Cause cause) {
  Domain& d = domains_[idx(v)];
  if (!d.contains(x)) return Outcome::Unchanged;
  if (d.size_ == 1)
    return fail(v, cause, Event{EventType::Rem, v, cause, x, d.lb_, d.lb_, d.ub_, d.ub_});
  save(v);
  const auto before = d.save();
  d.erase(x);
  if (x == before.lb) d.refresh_min();
  if (x == before.ub) d.refresh_max();
  return record(v, cause, before, x);
}

Outcome Store::update_lower(VarId v, int b, Cause cause) {
  Domain& d = domains_[idx(v)];
  if (b <= d.lb_) return Outcome::Unchanged;
  if (b > d.ub_) return fail(v, cause, Event{EventType::Low, v, cause, 0, d.lb_, b, d.ub_, d.ub_});
  save(v);
  const auto before = d.save();
  for (int x = before.lb; x < b; ++x)
    if (d.contains(x)) d.erase(x);
  d.lb_ = b;
  d.refresh_min();
  return record(v, cause, before, before.lb);
}

Outcome Store::update_upper(VarId v, int b, Cause cause) {
  Domain& d = domains_[idx(v)];
  if (b >= d.ub_) return Outcome::Unchanged;
  if (b < d.lb_) return fail(v, cause, Event{EventType::Upp, v, cause, 0, d.lb_, d.lb_, d.ub_, b});
  save(v);
  const auto before = d.save();
  for (int x = before.ub; x > b; --x)
    if (d.contains(x)) d.erase(x);
  d.ub_ = b;
  d.refresh_max();
  return record(v, cause, before, before.ub);
}

Outcome Store::instantiate(VarId v, int a, Cause cause) {
  Domain& d = domains_[idx(v)];
  if (!d.contains(a)) return fail(v, cause, Event{EventType::Asg, v, cause, a, d.lb_, a, d.ub_, a});
  if (d.size_ == 1) return Outcome::Unchanged;
  save(v);
  const auto before = d.save();
  d.restrict_to(a);
  return record(v, cause, before, a);
}

int Store::push_world() {
  worlds_.push_back({trail_.size(), events_.size(), next_stamp_++});
  return depth();
}

void Store::pop_world() {
  assert(!worlds_.empty() && "pop_world at depth 0");
  if (worlds_.empty()) throw std::logic_error("pop_world at depth 0");
  const World w = worlds_.back();
  worlds_.pop_back();
  while (trail_.size() > w.trail) {
    const TrailEntry& t = trail_.back();
    domains_[idx(t.var)].restore(t.saved);
    trail_.pop_back();
  }
  events_.resize(w.events);
  failure_.reset();
}

}  // namespace eser
