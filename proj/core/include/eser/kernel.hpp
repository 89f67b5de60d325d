#ifndef ESER_KERNEL_HPP
#define ESER_KERNEL_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace eser {

/// Dense variable identifier. Stable for the lifetime of a Store.
enum class VarId : std::int32_t {};

constexpr std::size_t idx(VarId v) { return static_cast<std::size_t>(v); }
constexpr VarId var_id(std::size_t i) { return static_cast<VarId>(i); }

enum class Outcome : std::uint8_t { Unchanged, Changed, Failure };

enum class CauseKind : std::uint8_t { Constraint, Decision, Refutation };

/// Origin of a domain change. `ref` is a constraint id, a decision position
/// on the live path, or a refutation record index, depending on `kind`.
struct Cause {
  CauseKind kind{CauseKind::Constraint};
  std::int32_t ref{-1};

  static constexpr Cause constraint(int id) { return {CauseKind::Constraint, id}; }
  static constexpr Cause decision(int position) { return {CauseKind::Decision, position}; }
  static constexpr Cause refutation(int record) { return {CauseKind::Refutation, record}; }

  friend constexpr bool operator==(const Cause&, const Cause&) = default;
};

enum class EventType : std::uint8_t { Rem, Asg, Low, Upp };

const char* to_string(EventType t);

/// One recorded domain change. Every event carries the bounds before and
/// after the change; `value` is the removed value for REM and the assigned
/// value for ASG.
struct Event {
  EventType type{EventType::Rem};
  VarId var{};
  Cause cause{};
  int value{0};
  int lo_old{0};
  int lo_new{0};
  int up_old{0};
  int up_new{0};

  friend bool operator==(const Event&, const Event&) = default;
};

std::ostream& operator<<(std::ostream& os, const Event& e);

/// Set when a mutation would have emptied a domain. `attempted` describes
/// the rejected change as if it had been recorded (REM of the last value,
/// LOW/UPP past the opposite bound, ASG of a missing value).
struct FailureContext {
  VarId var{};
  Cause cause{};
  std::size_t sigma_tail{0};
  Event attempted{};
};

/// Finite integer set as a sparse set over [base, base + span). Removed
/// values live past `size_` in `dense_`, so restoring a saved size restores
/// the set.
class Domain {
 public:
  explicit Domain(std::span<const int> sorted_values);

  bool contains(int v) const {
    const long off = static_cast<long>(v) - base_;
    return off >= 0 && off < static_cast<long>(pos_.size()) &&
           pos_[static_cast<std::size_t>(off)] < size_;
  }
  int min() const { return lb_; }
  int max() const { return ub_; }
  int size() const { return size_; }
  bool fixed() const { return size_ == 1; }

  /// Values in increasing order.
  std::vector<int> values() const;

  template <class F>
  void for_each(F&& f) const {
    for (int v = lb_; v <= ub_; ++v)
      if (contains(v)) f(v);
  }

  friend bool operator==(const Domain& a, const Domain& b);

 private:
  friend class Store;

  struct Saved {
    int size;
    int lb;
    int ub;
  };

  Saved save() const { return {size_, lb_, ub_}; }
  void restore(const Saved& s) {
    size_ = s.size;
    lb_ = s.lb;
    ub_ = s.ub;
  }
  void erase(int v);
  void restrict_to(int a);
  void refresh_min();
  void refresh_max();

  int base_{0};
  std::vector<int> dense_;
  std::vector<int> pos_;
  int size_{0};
  int lb_{0};
  int ub_{0};
};

class EventListener {
 public:
  virtual ~EventListener() = default;
  virtual void on_event(const Event& e) = 0;
};

/// Trailed variable store plus the chronological event list.
///
/// Mutations classify the resulting change into exactly one event of the
/// strongest applicable type (ASG over LOW/UPP over REM) and append it.
/// A mutation that would empty a domain leaves the domain untouched, records
/// nothing and sets the failure context instead.
class Store {
 public:
  Store() = default;
  Store(const Store&) = delete;
  Store& operator=(const Store&) = delete;

  VarId add_variable(std::span<const int> sorted_values);
  std::size_t num_vars() const { return domains_.size(); }
  const Domain& domain(VarId v) const { return domains_[idx(v)]; }

  Outcome remove_value(VarId v, int x, Cause cause);
  Outcome update_lower(VarId v, int b, Cause cause);
  Outcome update_upper(VarId v, int b, Cause cause);
  Outcome instantiate(VarId v, int a, Cause cause);

  int push_world();
  void pop_world();
  int depth() const { return static_cast<int>(worlds_.size()); }

  std::span<const Event> events() const { return events_; }
  std::size_t num_events() const { return events_.size(); }
  const Event& event(std::size_t i) const { return events_[i]; }

  static constexpr std::size_t kNever = static_cast<std::size_t>(-1);
  /// Index of the event that removed `x` from `v` on the current branch, or
  /// kNever. Only meaningful while `x` is absent from the domain.
  std::size_t removed_at(VarId v, int x) const;

  const std::optional<FailureContext>& failure() const { return failure_; }
  void clear_failure() { failure_.reset(); }

  void set_listener(EventListener* l) { listener_ = l; }

  class BackwardRange;
  /// Events [from..0], newest first. `from` must be below num_events().
  BackwardRange events_backward(std::size_t from) const;
  /// All live events, newest first.
  BackwardRange events_backward() const;

 private:
  struct TrailEntry {
    VarId var;
    Domain::Saved saved;
  };
  struct World {
    std::size_t trail;
    std::size_t events;
    std::uint64_t stamp;
  };

  void save(VarId v);
  Outcome fail(VarId v, Cause cause, Event attempted);
  Outcome record(VarId v, Cause cause, const Domain::Saved& before, int removed);

  std::vector<Domain> domains_;
  std::vector<std::vector<std::size_t>> removed_at_;  // by value offset
  std::vector<std::uint64_t> stamps_;
  std::vector<TrailEntry> trail_;
  std::vector<World> worlds_;
  std::uint64_t next_stamp_{1};
  std::vector<Event> events_;
  std::optional<FailureContext> failure_;
  EventListener* listener_{nullptr};
};

class Store::BackwardRange {
 public:
  struct Item {
    std::size_t index;
    const Event& event;
  };

  class iterator {
   public:
    iterator(const Event* base, std::size_t remaining) : base_(base), remaining_(remaining) {}
    Item operator*() const { return {remaining_ - 1, base_[remaining_ - 1]}; }
    iterator& operator++() {
      --remaining_;
      return *this;
    }
    bool operator==(const iterator& o) const { return remaining_ == o.remaining_; }

   private:
    const Event* base_;
    std::size_t remaining_;
  };

  BackwardRange(const Event* base, std::size_t count) : base_(base), count_(count) {}
  iterator begin() const { return {base_, count_}; }
  iterator end() const { return {base_, 0}; }
  std::size_t size() const { return count_; }
  bool empty() const { return count_ == 0; }

 private:
  const Event* base_;
  std::size_t count_;
};

inline Store::BackwardRange Store::events_backward(std::size_t from) const {
  return {events_.data(), from + 1};
}

inline Store::BackwardRange Store::events_backward() const {
  return {events_.data(), events_.size()};
}

}  // namespace eser

#endif  // ESER_KERNEL_HPP
