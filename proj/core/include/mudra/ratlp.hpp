#pragma once

#include <span>
#include <string>
#include <variant>
#include <vector>

#include "mudra/rational.hpp"

// Exact linear programming over the rationals: a dense two-phase tableau
// simplex with Bland's rule. Sized for the tiny programs the efficiency
// checks build (tens of variables), not for general use.
namespace mudra::ratlp {

enum class Relation { LessEqual, Equal, GreaterEqual };
enum class Sense { Maximize, Minimize };

struct Constraint {
  std::vector<Rational> coefficients;
  Relation relation;
  Rational rhs;
};

class LinearProgram {
 public:
  /// Returns the new variable's index. Free variables may take any sign.
  std::size_t add_variable(std::string name, bool nonnegative = true);
  /// Coefficients shorter than the variable count are zero-padded.
  void add_constraint(std::vector<Rational> coefficients, Relation relation, Rational rhs);
  void set_objective(std::vector<Rational> coefficients, Sense sense);

  std::size_t variable_count() const { return names_.size(); }
  const std::vector<std::string>& variable_names() const { return names_; }
  bool nonnegative(std::size_t variable) const { return nonnegative_.at(variable); }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  const std::vector<Rational>& objective() const { return objective_; }
  Sense sense() const { return sense_; }

  /// Throws StructuralError when a coefficient vector is longer than the
  /// variable list.
  void require_well_formed() const;

 private:
  std::vector<std::string> names_;
  std::vector<bool> nonnegative_;
  std::vector<Constraint> constraints_;
  std::vector<Rational> objective_;
  Sense sense_ = Sense::Maximize;
};

struct Optimal {
  Rational value;
  std::vector<Rational> point;
};

/// `farkas` holds one multiplier per constraint: y >= 0 on <= rows, y <= 0
/// on >= rows, free on = rows, with y'A >= 0 on non-negative columns,
/// y'A = 0 on free columns and y'b < 0.
struct Infeasible {
  std::vector<Rational> farkas;
};

/// Every point + t * direction (t >= 0) is feasible and improves the
/// objective without bound.
struct Unbounded {
  std::vector<Rational> point;
  std::vector<Rational> direction;
};

using Solution = std::variant<Optimal, Infeasible, Unbounded>;

Solution solve(const LinearProgram& lp);

Rational evaluate_objective(const LinearProgram& lp, std::span<const Rational> point);

/// Exact substitution of `point` into every constraint and sign bound.
bool is_feasible_point(const LinearProgram& lp, std::span<const Rational> point);

bool certifies_infeasibility(const LinearProgram& lp, std::span<const Rational> farkas);

bool certifies_unboundedness(const LinearProgram& lp, std::span<const Rational> point,
                             std::span<const Rational> direction);

// -- convex hull membership ----------------------------------------------

struct InHull {
  std::vector<Rational> weights;
};
struct NotInHull {
  /// Farkas multipliers of `hull_program(target, generators)`.
  std::vector<Rational> farkas;
};
using HullMembership = std::variant<InHull, NotInHull>;

/// The feasibility program: weights >= 0, summing to 1 (row 0), reproducing
/// `target` coordinate by coordinate (rows 1..d).
LinearProgram hull_program(std::span<const Rational> target,
                           const std::vector<std::vector<Rational>>& generators);

/// Throws StructuralError when dimensions disagree.
HullMembership convex_membership(std::span<const Rational> target,
                                 const std::vector<std::vector<Rational>>& generators);

}  // namespace mudra::ratlp
