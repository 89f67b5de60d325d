#include "eser/model.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string_view>

namespace eser {

const char* to_string(ConstraintKind k) {
  switch (k) {
    case ConstraintKind::EqOffset: return "eq";
    case ConstraintKind::NeqOffset: return "neq";
    case ConstraintKind::LeqOffset: return "leq";
    case ConstraintKind::LinearLeq: return "linear<=";
    case ConstraintKind::LinearEq: return "linear=";
    case ConstraintKind::AllDifferent: return "alldifferent";
    case ConstraintKind::Forbidden: return "forbid";
  }
  return "?";
}

int Model::add_var(std::string var_name, std::vector<int> values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  if (values.empty()) throw std::invalid_argument("empty domain for " + var_name);
  vars.push_back({std::move(var_name), std::move(values)});
  return static_cast<int>(vars.size()) - 1;
}

int Model::add_range(std::string var_name, int lo, int hi) {
  if (lo > hi) throw std::invalid_argument("empty range for " + var_name);
  std::vector<int> values(static_cast<std::size_t>(hi - lo + 1));
  std::iota(values.begin(), values.end(), lo);
  return add_var(std::move(var_name), std::move(values));
}

std::optional<int> Model::find_var(std::string_view var_name) const {
  for (std::size_t i = 0; i < vars.size(); ++i)
    if (vars[i].name == var_name) return static_cast<int>(i);
  return std::nullopt;
}

void Model::validate() const {
  const auto n = static_cast<int>(vars.size());
  for (const auto& v : vars)
    if (v.values.empty()) throw std::invalid_argument("empty domain for " + v.name);
  for (const auto& c : constraints) {
    for (int v : c.vars)
      if (v < 0 || v >= n) throw std::invalid_argument("constraint references unknown variable");
    switch (c.kind) {
      case ConstraintKind::EqOffset:
      case ConstraintKind::NeqOffset:
      case ConstraintKind::LeqOffset:
      case ConstraintKind::Forbidden:
        if (c.vars.size() != 2) throw std::invalid_argument("binary constraint needs two variables");
        break;
      case ConstraintKind::LinearLeq:
      case ConstraintKind::LinearEq:
        if (c.vars.empty() || c.vars.size() != c.coeffs.size())
          throw std::invalid_argument("linear: coefficient and variable lists differ in length");
        if (std::find(c.coeffs.begin(), c.coeffs.end(), 0) != c.coeffs.end())
          throw std::invalid_argument("linear: zero coefficient");
        break;
      case ConstraintKind::AllDifferent:
        if (c.vars.size() < 2) throw std::invalid_argument("alldifferent needs at least two variables");
        break;
    }
  }
}

bool satisfied(const ConstraintSpec& c, std::span<const int> a) {
  auto val = [&](std::size_t i) { return static_cast<long long>(a[static_cast<std::size_t>(c.vars[i])]); };
  switch (c.kind) {
    case ConstraintKind::EqOffset: return val(0) == val(1) + c.constant;
    case ConstraintKind::NeqOffset: return val(0) != val(1) + c.constant;
    case ConstraintKind::LeqOffset: return val(0) <= val(1) + c.constant;
    case ConstraintKind::LinearLeq:
    case ConstraintKind::LinearEq: {
      long long sum = 0;
      for (std::size_t i = 0; i < c.vars.size(); ++i) sum += c.coeffs[i] * val(i);
      return c.kind == ConstraintKind::LinearLeq ? sum <= c.constant : sum == c.constant;
    }
    case ConstraintKind::AllDifferent:
      for (std::size_t i = 0; i < c.vars.size(); ++i)
        for (std::size_t j = i + 1; j < c.vars.size(); ++j)
          if (val(i) == val(j)) return false;
      return true;
    case ConstraintKind::Forbidden:
      for (const auto& [x, y] : c.tuples)
        if (val(0) == x && val(1) == y) return false;
      return true;
  }
  return false;
}

bool satisfies(const Model& m, std::span<const int> a) {
  if (a.size() != m.vars.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!std::binary_search(m.vars[i].values.begin(), m.vars[i].values.end(), a[i])) return false;
  return std::all_of(m.constraints.begin(), m.constraints.end(), [&](const auto& c) { return satisfied(c, a); });
}

}  // namespace eser
