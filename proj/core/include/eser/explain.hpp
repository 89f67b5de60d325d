#ifndef ESER_EXPLAIN_HPP
#define ESER_EXPLAIN_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "eser/bitset.hpp"
#include "eser/propagation.hpp"
#include "eser/rules.hpp"

namespace eser {

/// Rules left over when a scan stopped early, and where it stopped: events
/// [0, scan_index) have not been visited yet.
struct Residual {
  RuleSet rules;
  std::size_t scan_index{0};

  friend bool operator==(const Residual&, const Residual&) = default;
};

/// Decisions (by path position) and constraints that cannot all hold
/// together with the negation of what they explain.
struct Explanation {
  BitSet decisions;
  BitSet constraints;
  std::optional<Residual> residual;

  bool complete() const { return !residual.has_value(); }
};

/// target |= source, rules included. Residual scan indices take the minimum.
void merge(Explanation& target, const Explanation& source);

/// Highest decision position in `e`, if any.
std::optional<int> deepest_decision(const Explanation& e);

/// `decisions=[...], constraints=[...], residual={...}`
std::string to_string(const Explanation& e);

enum class Dependency { Depends, Independent };

/// Test hook counting how often each event index is visited per scan call.
struct ScanProbe {
  std::vector<std::uint32_t> stamp;
  std::uint32_t call{0};
  std::uint64_t visits{0};
  std::uint64_t repeats{0};

  void begin(std::size_t num_events) {
    if (stamp.size() < num_events) stamp.resize(num_events, 0);
    ++call;
  }
  void visit(std::size_t i) {
    ++visits;
    if (stamp[i] == call) ++repeats;
    stamp[i] = call;
  }
};

/// Backward scan of the event list driven by selection rules.
///
/// Refutation causes are resolved through `refutations`, indexed by the
/// cause's record number.
class Explainer {
 public:
  Explainer(const Space& space, const std::vector<Explanation>& refutations)
      : space_(space), refutations_(refutations) {}

  /// Explains the failure in `f`. With `partial`, the scan stops at the first
  /// decision it selects and the remaining rules are kept as a residual.
  Explanation explain(const FailureContext& f, bool partial);

  /// Continues a partial explanation. With `until_position`, stops at the
  /// event of that decision and reports whether the explanation depends on
  /// it; without, scans to exhaustion. Throws std::logic_error when `e` has
  /// no residual.
  Dependency resume(Explanation& e, std::optional<int> until_position = std::nullopt);

  /// Event-list entries visited by all scans of this explainer.
  std::uint64_t visited() const { return visited_; }
  void set_probe(ScanProbe* probe) { probe_ = probe; }

 private:
  enum class Stop { Never, FirstDecision, AtPosition };
  struct Outcome {
    bool stopped;
    std::size_t index;
  };

  Outcome scan(Explanation& e, RuleSet& rules, std::size_t start, Stop mode, int position);
  void absorb_refutation(Explanation& e, RuleSet& rules, int record) const;

  const Space& space_;
  const std::vector<Explanation>& refutations_;
  std::uint64_t visited_{0};
  ScanProbe* probe_{nullptr};
};

}  // namespace eser

#endif  // ESER_EXPLAIN_HPP
