#ifndef ESER_SEARCH_HPP
#define ESER_SEARCH_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "eser/explain.hpp"
#include "eser/model.hpp"
#include "eser/propagation.hpp"

namespace eser {

enum class EngineKind { Std, Cbj, CbjI, Dbt };
enum class Branching { MinDom, Input };
enum class SearchGoal { First, All, Decide };
enum class Status { Sat, Unsat, Unknown };

const char* to_string(EngineKind k);
const char* to_string(Status s);
std::optional<EngineKind> parse_engine(std::string_view name);

struct Decision {
  VarId var{};
  int value{0};
  int position{0};
  std::uint64_t id{0};
  std::size_t event_index{0};  // index of the ASG event it produced
};

struct SearchStats {
  std::uint64_t nodes{0};
  std::uint64_t fails{0};
  std::uint64_t backjumps{0};
  std::uint64_t max_jump{0};
  std::uint64_t peak_depth{0};
  std::uint64_t solutions{0};
  double elapsed_ms{0};
  bool timed_out{false};
  // Instrumentation, not part of run reports.
  std::uint64_t events_visited{0};
  std::uint64_t explanations{0};
};

class FailureView;
using FailureObserver = std::function<void(const FailureView&)>;

struct SearchOptions {
  EngineKind engine{EngineKind::Std};
  Branching branching{Branching::MinDom};
  SearchGoal goal{SearchGoal::First};
  std::optional<std::int64_t> timeout_ms;
  std::optional<std::uint64_t> node_limit;
  bool default_eschemas{false};
  std::size_t keep_solutions{16};
  /// Called at every propagation failure, before the engine handles it.
  FailureObserver on_failure;
  /// Called at every backtrack target: (engine, failed depth, target position).
  std::function<void(int, int)> on_jump;
};

struct SearchResult {
  Status status{Status::Unknown};
  SearchStats stats;
  std::vector<std::vector<int>> solutions;  // first `keep_solutions` found
};

/// Depth-first search with 2-way decisions (var = min value, then its
/// refutation) and the selected failure-handling engine.
///
/// ALL-solutions enumeration is only supported by the STD engine; other
/// engines throw std::invalid_argument.
SearchResult solve(const Model& model, const SearchOptions& options = {});

/// Read-only window on the solver at a failure, for test oracles.
class FailureView {
 public:
  virtual ~FailureView() = default;
  virtual const FailureContext& context() const = 0;
  virtual std::span<const Decision> path() const = 0;
  virtual const Space& space() const = 0;
  /// Fresh explanation of the current failure; does not affect the search.
  virtual Explanation explain(bool partial, ScanProbe* probe = nullptr) const = 0;
  virtual Dependency resume(Explanation& e, std::optional<int> until_position = std::nullopt) const = 0;
};

}  // namespace eser

#endif  // ESER_SEARCH_HPP
