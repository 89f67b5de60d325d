#ifndef ESER_MODEL_HPP
#define ESER_MODEL_HPP

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace eser {

enum class ConstraintKind {
  EqOffset,      // x = y + c
  NeqOffset,     // x != y + c
  LeqOffset,     // x <= y + c
  LinearLeq,     // sum a_i * v_i <= b
  LinearEq,      // sum a_i * v_i = b
  AllDifferent,  // pairwise distinct
  Forbidden,     // (x, y) not in a list of tuples
};

const char* to_string(ConstraintKind k);

/// Solver-independent description of one constraint. Variables are indices
/// into Model::vars. `constant` is c for the offset kinds and b for linear.
struct ConstraintSpec {
  ConstraintKind kind{ConstraintKind::NeqOffset};
  std::vector<int> vars;
  std::vector<int> coeffs;
  int constant{0};
  std::vector<std::pair<int, int>> tuples;

  static ConstraintSpec eq(int x, int y, int c) { return {ConstraintKind::EqOffset, {x, y}, {}, c, {}}; }
  static ConstraintSpec neq(int x, int y, int c) { return {ConstraintKind::NeqOffset, {x, y}, {}, c, {}}; }
  static ConstraintSpec leq(int x, int y, int c) { return {ConstraintKind::LeqOffset, {x, y}, {}, c, {}}; }
  static ConstraintSpec linear_leq(std::vector<int> a, std::vector<int> v, int b) {
    return {ConstraintKind::LinearLeq, std::move(v), std::move(a), b, {}};
  }
  static ConstraintSpec linear_eq(std::vector<int> a, std::vector<int> v, int b) {
    return {ConstraintKind::LinearEq, std::move(v), std::move(a), b, {}};
  }
  static ConstraintSpec alldifferent(std::vector<int> v) {
    return {ConstraintKind::AllDifferent, std::move(v), {}, 0, {}};
  }
  static ConstraintSpec forbidden(int x, int y, std::vector<std::pair<int, int>> t) {
    return {ConstraintKind::Forbidden, {x, y}, {}, 0, std::move(t)};
  }

  friend bool operator==(const ConstraintSpec&, const ConstraintSpec&) = default;
};

struct VarDecl {
  std::string name;
  std::vector<int> values;  // sorted, unique, non-empty

  friend bool operator==(const VarDecl&, const VarDecl&) = default;
};

enum class Goal { Satisfy, All };

struct Model {
  std::string name;
  std::vector<VarDecl> vars;
  std::vector<ConstraintSpec> constraints;
  Goal goal{Goal::Satisfy};

  int add_var(std::string var_name, std::vector<int> values);
  int add_range(std::string var_name, int lo, int hi);
  std::optional<int> find_var(std::string_view var_name) const;

  /// Throws std::invalid_argument if a constraint is malformed.
  void validate() const;

  friend bool operator==(const Model& a, const Model& b) {
    return a.vars == b.vars && a.constraints == b.constraints && a.goal == b.goal;
  }
};

/// Evaluates one constraint on a full assignment, without propagation.
bool satisfied(const ConstraintSpec& c, std::span<const int> assignment);

/// True iff every value is in its declared domain and every constraint holds.
bool satisfies(const Model& m, std::span<const int> assignment);

}  // namespace eser

#endif  // ESER_MODEL_HPP
