#ifndef ESER_BENCH_HPP
#define ESER_BENCH_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "eser/model.hpp"
#include "eser/report.hpp"
#include "eser/search.hpp"

namespace eser {

struct BenchInstance {
  std::string name;
  Model model;
};

/// Each input is a directory (every *.mod inside, sorted by name), a model
/// file, or a generator spec such as `queens:8`. Throws std::invalid_argument
/// for unreadable inputs and ParseError for malformed model files.
std::vector<BenchInstance> load_instances(const std::vector<std::string>& inputs);

struct BenchOptions {
  std::vector<EngineKind> engines;
  std::optional<std::int64_t> timeout_ms;
  Branching branching{Branching::MinDom};
  unsigned jobs{1};
};

/// Runs every (instance, engine) cell, first-solution search. Cells may run
/// on `jobs` threads; the result is ordered by instance, then engine.
std::vector<RunReport> run_bench(const std::vector<BenchInstance>& instances, const BenchOptions& options);

/// One line per engine (solved count, mean nodes) followed by the pairwise
/// speedup table over instances solved by both engines.
std::string bench_summary(const std::vector<RunReport>& reports, const std::vector<EngineKind>& engines);

}  // namespace eser

#endif  // ESER_BENCH_HPP
