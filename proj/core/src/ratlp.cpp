#include "mudra/ratlp.hpp"

#include <optional>

#include "mudra/error.hpp"

namespace mudra::ratlp {

std::size_t LinearProgram::add_variable(std::string name, bool nonnegative) {
  names_.push_back(std::move(name));
  nonnegative_.push_back(nonnegative);
  return names_.size() - 1;
}

void LinearProgram::add_constraint(std::vector<Rational> coefficients, Relation relation,
                                   Rational rhs) {
  constraints_.push_back({std::move(coefficients), relation, std::move(rhs)});
}

void LinearProgram::set_objective(std::vector<Rational> coefficients, Sense sense) {
  objective_ = std::move(coefficients);
  sense_ = sense;
}

void LinearProgram::require_well_formed() const {
  if (objective_.size() > names_.size()) {
    throw StructuralError("objective has more coefficients than variables");
  }
  for (std::size_t r = 0; r < constraints_.size(); ++r) {
    if (constraints_[r].coefficients.size() > names_.size()) {
      throw StructuralError("constraint " + std::to_string(r) +
                            " has more coefficients than variables");
    }
  }
}

namespace {

const Rational& coefficient(const std::vector<Rational>& row, std::size_t j) {
  static const Rational zero;
  return j < row.size() ? row[j] : zero;
}

Rational dot(const std::vector<Rational>& row, std::span<const Rational> x) {
  Rational sum;
  for (std::size_t j = 0; j < row.size() && j < x.size(); ++j) {
    if (!row[j].is_zero()) sum += row[j] * x[j];
  }
  return sum;
}

// Dense tableau in the standard form  A x = b, x >= 0, b >= 0. Column layout:
// structural columns (free variables split in two), then one slack/surplus
// per inequality row, then one artificial per row.
class Tableau {
 public:
  explicit Tableau(const LinearProgram& lp) : lp_(lp) {
    const auto& cons = lp.constraints();
    rows_ = cons.size();

    for (std::size_t v = 0; v < lp.variable_count(); ++v) {
      positive_col_.push_back(columns_++);
      negative_col_.push_back(lp.nonnegative(v) ? kNone : columns_++);
    }
    slack_col_.assign(rows_, kNone);
    for (std::size_t r = 0; r < rows_; ++r) {
      if (cons[r].relation != Relation::Equal) slack_col_[r] = columns_++;
    }
    first_artificial_ = columns_;
    columns_ += rows_;

    cells_.assign(rows_, std::vector<Rational>(columns_ + 1));
    flipped_.assign(rows_, false);
    basis_.resize(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
      const Constraint& con = cons[r];
      flipped_[r] = con.rhs.sign() < 0;
      const Rational sign(flipped_[r] ? -1 : 1);
      for (std::size_t v = 0; v < lp.variable_count(); ++v) {
        const Rational& a = coefficient(con.coefficients, v);
        if (a.is_zero()) continue;
        cells_[r][positive_col_[v]] = sign * a;
        if (negative_col_[v] != kNone) cells_[r][negative_col_[v]] = -(sign * a);
      }
      if (slack_col_[r] != kNone) {
        const Rational s(con.relation == Relation::LessEqual ? 1 : -1);
        cells_[r][slack_col_[r]] = sign * s;
      }
      cells_[r][first_artificial_ + r] = Rational(1);
      cells_[r][columns_] = sign * con.rhs;
      basis_[r] = first_artificial_ + r;
    }
  }

  Solution run() {
    // Phase 1: minimise the sum of artificials.
    std::vector<Rational> phase1(columns_);
    for (std::size_t r = 0; r < rows_; ++r) phase1[first_artificial_ + r] = Rational(1);
    load_costs(phase1);
    if (iterate(/*allow_artificial=*/true)) {
      throw InternalError("phase 1 reported unbounded");
    }
    const Rational infeasibility = -reduced_[columns_];
    if (infeasibility.sign() > 0) return Infeasible{farkas_from_phase1()};

    drive_out_artificials();

    // Phase 2 always minimises; maximisation negates the costs.
    std::vector<Rational> phase2(columns_);
    const bool maximize = lp_.sense() == Sense::Maximize;
    for (std::size_t v = 0; v < lp_.variable_count(); ++v) {
      Rational c = coefficient(lp_.objective(), v);
      if (maximize) c = -c;
      phase2[positive_col_[v]] = c;
      if (negative_col_[v] != kNone) phase2[negative_col_[v]] = -c;
    }
    load_costs(phase2);
    if (auto entering = iterate(/*allow_artificial=*/false)) {
      return Unbounded{structural_point(), unbounded_direction(*entering)};
    }
    std::vector<Rational> point = structural_point();
    return Optimal{evaluate_objective(lp_, point), std::move(point)};
  }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  void load_costs(const std::vector<Rational>& costs) {
    costs_ = costs;
    reduced_.assign(columns_ + 1, Rational());
    for (std::size_t j = 0; j < columns_; ++j) reduced_[j] = costs[j];
    for (std::size_t r = 0; r < rows_; ++r) {
      const Rational& cb = costs[basis_[r]];
      if (cb.is_zero()) continue;
      for (std::size_t j = 0; j <= columns_; ++j) {
        if (!cells_[r][j].is_zero()) reduced_[j] -= cb * cells_[r][j];
      }
    }
  }

  void pivot(std::size_t row, std::size_t col) {
    const Rational inv = Rational(1) / cells_[row][col];
    for (auto& v : cells_[row]) {
      if (!v.is_zero()) v *= inv;
    }
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == row || cells_[r][col].is_zero()) continue;
      const Rational factor = cells_[r][col];
      for (std::size_t j = 0; j <= columns_; ++j) {
        if (!cells_[row][j].is_zero()) cells_[r][j] -= factor * cells_[row][j];
      }
    }
    if (!reduced_[col].is_zero()) {
      const Rational factor = reduced_[col];
      for (std::size_t j = 0; j <= columns_; ++j) {
        if (!cells_[row][j].is_zero()) reduced_[j] -= factor * cells_[row][j];
      }
    }
    basis_[row] = col;
  }

  // Bland's rule. Returns the entering column when the objective is
  // unbounded below, nullopt at optimality.
  std::optional<std::size_t> iterate(bool allow_artificial) {
    const std::size_t limit = allow_artificial ? columns_ : first_artificial_;
    for (;;) {
      std::size_t entering = kNone;
      for (std::size_t j = 0; j < limit; ++j) {
        if (reduced_[j].sign() < 0) {
          entering = j;
          break;
        }
      }
      if (entering == kNone) return std::nullopt;

      std::size_t leaving = kNone;
      Rational best;
      for (std::size_t r = 0; r < rows_; ++r) {
        if (cells_[r][entering].sign() <= 0) continue;
        Rational ratio = cells_[r][columns_] / cells_[r][entering];
        if (leaving == kNone || ratio < best ||
            (ratio == best && basis_[r] < basis_[leaving])) {
          leaving = r;
          best = std::move(ratio);
        }
      }
      if (leaving == kNone) return entering;
      pivot(leaving, entering);
    }
  }

  void drive_out_artificials() {
    for (std::size_t r = 0; r < rows_; ++r) {
      if (basis_[r] < first_artificial_) continue;
      for (std::size_t j = 0; j < first_artificial_; ++j) {
        if (!cells_[r][j].is_zero()) {
          pivot(r, j);
          break;
        }
      }
      // A row with no structural entry left is redundant; its artificial
      // stays basic at zero and never re-enters.
    }
  }

  // Simplex multipliers of phase 1 are 1 - (reduced cost of artificial r).
  // Their negation, mapped back through any row sign flips, is a Farkas ray.
  std::vector<Rational> farkas_from_phase1() const {
    std::vector<Rational> y(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
      Rational multiplier = Rational(1) - reduced_[first_artificial_ + r];
      y[r] = flipped_[r] ? multiplier : -multiplier;
    }
    return y;
  }

  std::vector<Rational> column_values() const {
    std::vector<Rational> x(columns_);
    for (std::size_t r = 0; r < rows_; ++r) x[basis_[r]] = cells_[r][columns_];
    return x;
  }

  std::vector<Rational> to_structural(const std::vector<Rational>& x) const {
    std::vector<Rational> out(lp_.variable_count());
    for (std::size_t v = 0; v < out.size(); ++v) {
      out[v] = x[positive_col_[v]];
      if (negative_col_[v] != kNone) out[v] -= x[negative_col_[v]];
    }
    return out;
  }

  std::vector<Rational> structural_point() const { return to_structural(column_values()); }

  std::vector<Rational> unbounded_direction(std::size_t entering) const {
    std::vector<Rational> d(columns_);
    d[entering] = Rational(1);
    for (std::size_t r = 0; r < rows_; ++r) d[basis_[r]] = -cells_[r][entering];
    return to_structural(d);
  }

  const LinearProgram& lp_;
  std::size_t rows_ = 0;
  std::size_t columns_ = 0;
  std::size_t first_artificial_ = 0;
  std::vector<std::size_t> positive_col_;
  std::vector<std::size_t> negative_col_;
  std::vector<std::size_t> slack_col_;
  std::vector<bool> flipped_;
  std::vector<std::vector<Rational>> cells_;
  std::vector<std::size_t> basis_;
  std::vector<Rational> costs_;
  std::vector<Rational> reduced_;
};

}  // namespace

Solution solve(const LinearProgram& lp) {
  lp.require_well_formed();
  Solution solution = Tableau(lp).run();
  // Every certificate is re-checked by exact substitution before it leaves.
  if (const auto* opt = std::get_if<Optimal>(&solution)) {
    if (!is_feasible_point(lp, opt->point)) throw InternalError("simplex optimum is infeasible");
  } else if (const auto* inf = std::get_if<Infeasible>(&solution)) {
    if (!certifies_infeasibility(lp, inf->farkas)) {
      throw InternalError("simplex produced an invalid Farkas certificate");
    }
  } else {
    const auto& unb = std::get<Unbounded>(solution);
    if (!certifies_unboundedness(lp, unb.point, unb.direction)) {
      throw InternalError("simplex produced an invalid unbounded ray");
    }
  }
  return solution;
}

Rational evaluate_objective(const LinearProgram& lp, std::span<const Rational> point) {
  return dot(lp.objective(), point);
}

bool is_feasible_point(const LinearProgram& lp, std::span<const Rational> point) {
  if (point.size() != lp.variable_count()) return false;
  for (std::size_t v = 0; v < point.size(); ++v) {
    if (lp.nonnegative(v) && point[v].sign() < 0) return false;
  }
  for (const Constraint& con : lp.constraints()) {
    const Rational lhs = dot(con.coefficients, point);
    switch (con.relation) {
      case Relation::LessEqual:
        if (lhs > con.rhs) return false;
        break;
      case Relation::Equal:
        if (lhs != con.rhs) return false;
        break;
      case Relation::GreaterEqual:
        if (lhs < con.rhs) return false;
        break;
    }
  }
  return true;
}

bool certifies_infeasibility(const LinearProgram& lp, std::span<const Rational> farkas) {
  const auto& cons = lp.constraints();
  if (farkas.size() != cons.size()) return false;
  Rational yb;
  for (std::size_t r = 0; r < cons.size(); ++r) {
    const int s = farkas[r].sign();
    if (cons[r].relation == Relation::LessEqual && s < 0) return false;
    if (cons[r].relation == Relation::GreaterEqual && s > 0) return false;
    yb += farkas[r] * cons[r].rhs;
  }
  if (yb.sign() >= 0) return false;
  for (std::size_t v = 0; v < lp.variable_count(); ++v) {
    Rational ya;
    for (std::size_t r = 0; r < cons.size(); ++r) {
      ya += farkas[r] * coefficient(cons[r].coefficients, v);
    }
    if (lp.nonnegative(v) ? ya.sign() < 0 : !ya.is_zero()) return false;
  }
  return true;
}

bool certifies_unboundedness(const LinearProgram& lp, std::span<const Rational> point,
                             std::span<const Rational> direction) {
  if (!is_feasible_point(lp, point) || direction.size() != lp.variable_count()) return false;
  for (std::size_t v = 0; v < direction.size(); ++v) {
    if (lp.nonnegative(v) && direction[v].sign() < 0) return false;
  }
  for (const Constraint& con : lp.constraints()) {
    const int s = dot(con.coefficients, direction).sign();
    if (con.relation == Relation::Equal && s != 0) return false;
    if (con.relation == Relation::LessEqual && s > 0) return false;
    if (con.relation == Relation::GreaterEqual && s < 0) return false;
  }
  const int gain = dot(lp.objective(), direction).sign();
  return lp.sense() == Sense::Maximize ? gain > 0 : gain < 0;
}

LinearProgram hull_program(std::span<const Rational> target,
                           const std::vector<std::vector<Rational>>& generators) {
  for (const auto& g : generators) {
    if (g.size() != target.size()) throw StructuralError("generator dimension mismatch");
  }
  LinearProgram lp;
  for (std::size_t k = 0; k < generators.size(); ++k) lp.add_variable("w" + std::to_string(k));
  lp.add_constraint(std::vector<Rational>(generators.size(), Rational(1)), Relation::Equal,
                    Rational(1));
  for (std::size_t d = 0; d < target.size(); ++d) {
    std::vector<Rational> row(generators.size());
    for (std::size_t k = 0; k < generators.size(); ++k) row[k] = generators[k][d];
    lp.add_constraint(std::move(row), Relation::Equal, target[d]);
  }
  lp.set_objective({}, Sense::Minimize);
  return lp;
}

HullMembership convex_membership(std::span<const Rational> target,
                                 const std::vector<std::vector<Rational>>& generators) {
  const LinearProgram lp = hull_program(target, generators);
  const Solution s = solve(lp);
  if (const auto* opt = std::get_if<Optimal>(&s)) return InHull{opt->point};
  if (const auto* inf = std::get_if<Infeasible>(&s)) return NotInHull{inf->farkas};
  throw InternalError("feasibility program reported unbounded");
}

}  // namespace mudra::ratlp
