#ifndef ESER_CONSTRAINTS_HPP
#define ESER_CONSTRAINTS_HPP

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eser/model.hpp"
#include "eser/propagation.hpp"

namespace eser {

/// Values removed by `e`, as the closed interval [first, second]; REM gives a
/// single value and ASG excludes the assigned value (callers check that).
std::pair<int, int> removed_interval(const Event& e);

/// x = y + c, arc consistent. E-schema: one removed-value rule per value the
/// event took out of x (shifted into y), DOM on the other side past a size cap.
class EqOffset final : public Propagator {
 public:
  EqOffset(VarId x, VarId y, int c) : Propagator({x, y}), x_(x), y_(y), c_(c) {}
  bool filter(Store& s, Cause self) override;
  void eschema(const Event& e, const Store& s, RuleSet& rules) const override;
  std::string describe() const override;

 private:
  VarId x_, y_;
  int c_;
};

/// x != y + c, arc consistent (acts once a side is fixed). E-schema: both
/// bound rules on the other variable, which select its assignment.
class NeqOffset final : public Propagator {
 public:
  NeqOffset(VarId x, VarId y, int c) : Propagator({x, y}), x_(x), y_(y), c_(c) {}
  bool filter(Store& s, Cause self) override;
  void eschema(const Event& e, const Store& s, RuleSet& rules) const override;
  std::string describe() const override;

 private:
  VarId x_, y_;
  int c_;
};

/// x <= y + c, bounds consistent. E-schema: x's upper bound comes from y's
/// upper bound, y's lower bound from x's lower bound.
class LeqOffset final : public Propagator {
 public:
  LeqOffset(VarId x, VarId y, int c) : Propagator({x, y}), x_(x), y_(y), c_(c) {}
  bool filter(Store& s, Cause self) override;
  void eschema(const Event& e, const Store& s, RuleSet& rules) const override;
  std::string describe() const override;

 private:
  VarId x_, y_;
  int c_;
};

struct LinearTerm {
  int coeff;
  VarId var;
};

/// sum a_i * v_i <= b (or = b), bounds consistent. Repeated variables are
/// merged and zero terms dropped.
class Linear final : public Propagator {
 public:
  Linear(std::vector<LinearTerm> terms, long long bound, bool equality);
  bool filter(Store& s, Cause self) override;
  void eschema(const Event& e, const Store& s, RuleSet& rules) const override;
  std::string describe() const override;

 private:
  static std::vector<VarId> scope_of(const std::vector<LinearTerm>& terms);
  // One bounds pass of sum <= bound over `terms`; nullopt on failure.
  std::optional<bool> tighten(Store& s, Cause self, const std::vector<LinearTerm>& terms, long long bound) const;

  std::vector<LinearTerm> terms_;
  std::vector<LinearTerm> negated_;
  long long bound_;
  bool equality_;
};

/// Pairwise distinct, forward checking: an assigned value is removed from
/// every other variable. E-schema: both bound rules on the variables
/// currently fixed to the removed value.
class AllDifferent final : public Propagator {
 public:
  explicit AllDifferent(std::vector<VarId> vars) : Propagator(vars), vars_(std::move(vars)) {}
  bool filter(Store& s, Cause self) override;
  void eschema(const Event& e, const Store& s, RuleSet& rules) const override;
  std::string describe() const override;

 private:
  std::vector<VarId> vars_;
};

/// (x, y) must avoid a list of tuples; arc consistent. E-schema: one
/// removed-value rule per lost support of every value the event removed.
class ForbiddenPairs final : public Propagator {
 public:
  ForbiddenPairs(const Store& s, VarId x, VarId y, std::vector<std::pair<int, int>> tuples);
  bool filter(Store& s, Cause self) override;
  void eschema(const Event& e, const Store& s, RuleSet& rules) const override;
  std::string describe() const override;

 private:
  bool forbidden(int a, int b) const;
  std::optional<bool> revise(Store& s, Cause self, bool on_x) const;

  VarId x_, y_;
  std::vector<std::pair<int, int>> tuples_;  // sorted
  std::vector<std::pair<int, int>> by_y_;    // sorted (b, a)
  std::vector<int> init_x_, init_y_;
};

std::unique_ptr<Propagator> make_propagator(const Store& s, const ConstraintSpec& c);

/// Builds a space with one variable per declaration (same index) and one
/// propagator per constraint (same id).
std::unique_ptr<Space> build_space(const Model& m, bool default_eschemas = false);

}  // namespace eser

#endif  // ESER_CONSTRAINTS_HPP
