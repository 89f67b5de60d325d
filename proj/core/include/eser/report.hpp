#ifndef ESER_REPORT_HPP
#define ESER_REPORT_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eser/search.hpp"

namespace eser {

/// Outcome of one (instance, engine) run. `solution` holds the first
/// solution in variable declaration order; the human and JSON formats
/// show it, CSV rows do not.
struct RunReport {
  std::string instance;
  std::string engine;
  Status status{Status::Unknown};
  SearchStats stats;
  std::optional<std::vector<int>> solution;

  bool operator==(const RunReport&) const;
};

RunReport make_report(std::string instance, EngineKind engine, const SearchResult& r);

/// Fixed CSV header, no trailing newline.
const std::string& csv_header();
std::string to_csv(const RunReport& r);
RunReport from_csv(std::string_view row);

std::string to_json(const RunReport& r);
RunReport from_json(std::string_view text);

std::string to_human(const RunReport& r, const Model* model = nullptr);

std::optional<Status> parse_status(std::string_view s);

}  // namespace eser

#endif  // ESER_REPORT_HPP
