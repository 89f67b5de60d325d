#ifndef ESER_PROPAGATION_HPP
#define ESER_PROPAGATION_HPP

#include <deque>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "eser/kernel.hpp"
#include "eser/rules.hpp"

namespace eser {

/// A constraint's filtering procedure and its explanation schema.
class Propagator {
 public:
  explicit Propagator(std::vector<VarId> scope) : scope_(std::move(scope)) {}
  virtual ~Propagator() = default;

  int id() const { return id_; }
  std::span<const VarId> scope() const { return scope_; }

  /// Removes unsupported values through the store, using `self` as the
  /// cause, until the propagator's own fixpoint. Returns false on failure.
  virtual bool filter(Store& store, Cause self) = 0;

  /// Adds to `rules` the selection rules that point at the earlier events
  /// which entailed `e`. `e` is either an event this propagator produced or
  /// the attempted change of a failure it caused. Defaults to a DOM rule on
  /// every scope variable.
  virtual void eschema(const Event& e, const Store& store, RuleSet& rules) const;

  void default_eschema(RuleSet& rules) const;

  virtual std::string describe() const = 0;

 private:
  friend class Space;
  std::vector<VarId> scope_;
  int id_{-1};
};

/// Variables, propagators and the FIFO propagator queue.
///
/// Every recorded event wakes the propagators watching its variable, except
/// the one that caused it; a propagator sits in the queue at most once.
class Space final : private EventListener {
 public:
  Space() { store_.set_listener(this); }
  Space(const Space&) = delete;
  Space& operator=(const Space&) = delete;

  Store& store() { return store_; }
  const Store& store() const { return store_; }

  VarId add_variable(std::span<const int> sorted_values);
  int add_propagator(std::unique_ptr<Propagator> p);

  std::size_t num_propagators() const { return props_.size(); }
  const Propagator& propagator(int id) const { return *props_[static_cast<std::size_t>(id)]; }

  /// Use the DOM-on-every-scope-variable schema for every constraint.
  void set_default_eschemas(bool on) { default_eschemas_ = on; }
  bool default_eschemas() const { return default_eschemas_; }
  void eschema(int constraint, const Event& e, RuleSet& rules) const;

  void schedule(int id);
  void schedule_all();

  /// Runs queued propagators to a fixpoint. Returns false on failure, in
  /// which case the queue is emptied and the store's failure context is set.
  bool propagate();

  std::vector<int> queued() const { return {queue_.begin(), queue_.end()}; }
  void clear_queue();

  /// Propagator invocations since construction.
  std::uint64_t filter_calls() const { return filter_calls_; }

 private:
  void on_event(const Event& e) override;

  Store store_;
  std::vector<std::unique_ptr<Propagator>> props_;
  std::vector<std::vector<int>> watchers_;
  std::deque<int> queue_;
  std::vector<char> in_queue_;
  bool default_eschemas_{false};
  std::uint64_t filter_calls_{0};
};

}  // namespace eser

#endif  // ESER_PROPAGATION_HPP
