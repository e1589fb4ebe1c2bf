#include "mudra/efficiency.hpp"

#include <algorithm>
#include <functional>

#include "mudra/error.hpp"
#include "mudra/order.hpp"
#include "mudra/ratlp.hpp"

namespace mudra {

namespace {

void require_strict_instance(const Instance& instance) {
  if (instance.relaxed()) throw StructuralError("axiom checks require m to be a multiple of n");
}

std::vector<Rational> row_sums(const RandomAssignment& p) {
  std::vector<Rational> out(p.agent_count());
  for (AgentIndex i = 0; i < p.agent_count(); ++i) {
    for (const Rational& v : p.row(i)) out[i] += v;
  }
  return out;
}

// q weakly dominates p for all agents and strictly for one.
bool dominates_rows(const RandomAssignment& q, const RandomAssignment& p,
                    const PreferenceProfile& profile) {
  bool strict = false;
  for (AgentIndex i = 0; i < profile.agent_count(); ++i) {
    switch (sd_compare(q.row(i), p.row(i), profile.order(i))) {
      case SdVerdict::FirstStrictlyDominates: strict = true; break;
      case SdVerdict::Equal: break;
      default: return false;
    }
  }
  return strict;
}

std::vector<std::vector<Rational>> flattened(const std::vector<DiscreteAssignment>& support) {
  std::vector<std::vector<Rational>> out;
  out.reserve(support.size());
  for (const auto& d : support) out.push_back(indicator_matrix(d).cells());
  return out;
}

}  // namespace

std::optional<DiscreteAssignment> perfect_assignment(const PreferenceProfile& profile) {
  const Instance& instance = profile.instance();
  require_strict_instance(instance);
  const auto c = static_cast<std::size_t>(instance.quota());
  constexpr AgentIndex kFree = static_cast<AgentIndex>(-1);
  std::vector<AgentIndex> owner(instance.object_count(), kFree);
  for (AgentIndex i = 0; i < profile.agent_count(); ++i) {
    for (std::size_t r = 0; r < c; ++r) {
      const ObjectIndex o = profile.order(i)[r];
      if (owner[o] != kFree) return std::nullopt;
      owner[o] = i;
    }
  }
  return DiscreteAssignment(instance, std::move(owner));
}

bool sd_dominates(const RandomAssignment& q, const RandomAssignment& p,
                  const PreferenceProfile& profile) {
  require_valid(q);
  require_valid(p);
  if (!(q.instance() == profile.instance()) || !(p.instance() == profile.instance())) {
    throw StructuralError("assignments and profile are over different instances");
  }
  return dominates_rows(q, p, profile);
}

EfficiencyVerdict is_sd_efficient_with_rows(const RandomAssignment& p,
                                            const PreferenceProfile& profile,
                                            std::span<const Rational> row_targets) {
  const std::size_t n = p.agent_count();
  const std::size_t m = p.object_count();
  if (!(p.instance() == profile.instance()) || row_targets.size() != n) {
    throw StructuralError("assignment, profile and row targets disagree in shape");
  }
  auto var = [m](AgentIndex i, ObjectIndex o) { return i * m + o; };

  ratlp::LinearProgram lp;
  for (AgentIndex i = 0; i < n; ++i) {
    for (ObjectIndex o = 0; o < m; ++o) {
      lp.add_variable("q[" + std::to_string(i) + "][" + std::to_string(o) + "]");
    }
  }
  for (ObjectIndex o = 0; o < m; ++o) {
    std::vector<Rational> row(n * m);
    for (AgentIndex i = 0; i < n; ++i) row[var(i, o)] = Rational(1);
    lp.add_constraint(std::move(row), ratlp::Relation::Equal, Rational(1));
  }
  for (AgentIndex i = 0; i < n; ++i) {
    std::vector<Rational> row(n * m);
    for (ObjectIndex o = 0; o < m; ++o) row[var(i, o)] = Rational(1);
    lp.add_constraint(std::move(row), ratlp::Relation::Equal, row_targets[i]);
  }
  // Prefix constraints for every proper prefix; the full prefix is the row sum.
  std::vector<Rational> objective(n * m);
  Rational baseline;
  for (AgentIndex i = 0; i < n; ++i) {
    const Order& order = profile.order(i);
    const std::vector<Rational> sums = prefix_sums(p.row(i), order);
    std::vector<Rational> row(n * m);
    for (std::size_t k = 0; k + 1 < m; ++k) {
      row[var(i, order[k])] = Rational(1);
      lp.add_constraint(row, ratlp::Relation::GreaterEqual, sums[k]);
      baseline += sums[k];
      // Object order[k] appears in prefixes k..m-2.
      objective[var(i, order[k])] += Rational(static_cast<long>(m - 1 - k));
    }
  }
  lp.set_objective(std::move(objective), ratlp::Sense::Maximize);

  const ratlp::Solution solution = ratlp::solve(lp);
  const auto* opt = std::get_if<ratlp::Optimal>(&solution);
  if (opt == nullptr) {
    throw InternalError("SD-efficiency program is not a bounded feasible polytope");
  }

  EfficiencyVerdict verdict;
  verdict.property = "sd-efficient";
  verdict.surplus = opt->value - baseline;
  if (verdict.surplus.sign() < 0) throw InternalError("negative SD surplus");
  verdict.holds = verdict.surplus.is_zero();
  if (!verdict.holds) {
    RandomAssignment q(p.instance());
    for (AgentIndex i = 0; i < n; ++i) {
      for (ObjectIndex o = 0; o < m; ++o) q.at(i, o) = opt->point[var(i, o)];
    }
    if (!dominates_rows(q, p, profile)) {
      throw InternalError("SD-efficiency certificate does not dominate");
    }
    verdict.dominator = std::move(q);
  }
  return verdict;
}

EfficiencyVerdict is_sd_efficient(const RandomAssignment& p, const PreferenceProfile& profile) {
  require_valid(p);
  const std::vector<Rational> targets(p.agent_count(), p.instance().row_target());
  return is_sd_efficient_with_rows(p, profile, targets);
}

Rational discrete_assignment_count(const Instance& instance, bool balanced) {
  const long n = static_cast<long>(instance.agent_count());
  const long m = static_cast<long>(instance.object_count());
  Rational count(1);
  if (!balanced) {
    for (long k = 0; k < m; ++k) count *= Rational(n);
    return count;
  }
  // Multinomial m! / (c!)^n.
  for (long k = 2; k <= m; ++k) count *= Rational(k);
  for (long a = 0; a < n; ++a) {
    for (long k = 2; k <= instance.quota(); ++k) count /= Rational(k);
  }
  return count;
}

std::vector<DiscreteAssignment> enumerate_discrete(const Instance& instance, bool balanced,
                                                   std::size_t cap) {
  if (balanced) require_strict_instance(instance);
  const Rational count = discrete_assignment_count(instance, balanced);
  if (count > Rational(static_cast<long>(cap))) {
    throw GuardError("enumerating " + count.str() + " discrete assignments exceeds cap " +
                     std::to_string(cap));
  }
  const std::size_t n = instance.agent_count();
  const std::size_t m = instance.object_count();
  const auto c = static_cast<std::size_t>(instance.quota());
  std::vector<DiscreteAssignment> out;
  std::vector<AgentIndex> owner(m);
  std::vector<std::size_t> load(n, 0);
  std::function<void(std::size_t)> fill = [&](std::size_t o) {
    if (o == m) {
      out.emplace_back(instance, owner);
      return;
    }
    for (AgentIndex a = 0; a < n; ++a) {
      if (balanced && load[a] == c) continue;
      owner[o] = a;
      ++load[a];
      fill(o + 1);
      --load[a];
    }
  };
  fill(0);
  return out;
}

std::vector<DiscreteAssignment> efficient_discrete_assignments(const PreferenceProfile& profile,
                                                               bool allow_unbalanced,
                                                               std::size_t cap) {
  require_strict_instance(profile.instance());
  std::vector<DiscreteAssignment> out;
  for (auto& d : enumerate_discrete(profile.instance(), !allow_unbalanced, cap)) {
    const RandomAssignment matrix = indicator_matrix(d);
    if (is_sd_efficient_with_rows(matrix, profile, row_sums(matrix)).holds) {
      out.push_back(std::move(d));
    }
  }
  return out;
}

EfficiencyVerdict is_ex_post_efficient(const RandomAssignment& p,
                                       const PreferenceProfile& profile,
                                       std::vector<DiscreteAssignment> efficient_support) {
  require_valid(p);
  EfficiencyVerdict verdict;
  verdict.property = "ex-post";
  const auto generators = flattened(efficient_support);
  const ratlp::HullMembership membership = ratlp::convex_membership(p.cells(), generators);
  if (const auto* in = std::get_if<ratlp::InHull>(&membership)) {
    verdict.holds = true;
    for (std::size_t k = 0; k < efficient_support.size(); ++k) {
      if (in->weights[k].sign() > 0) {
        verdict.decomposition.push_back({in->weights[k], efficient_support[k]});
      }
    }
  } else {
    verdict.holds = false;
    verdict.farkas = std::get<ratlp::NotInHull>(membership).farkas;
  }
  verdict.detail = std::to_string(efficient_support.size()) +
                   " SD-efficient discrete assignments in the support";
  verdict.support = std::move(efficient_support);
  (void)profile;
  return verdict;
}

EfficiencyVerdict is_ex_post_efficient(const RandomAssignment& p,
                                       const PreferenceProfile& profile, bool allow_unbalanced,
                                       std::size_t cap) {
  require_valid(p);
  return is_ex_post_efficient(p, profile,
                              efficient_discrete_assignments(profile, allow_unbalanced, cap));
}

namespace {

// Assigns every object to an agent with spare capacity along positive
// entries of `residual`; agents take exactly c objects each.
std::optional<std::vector<AgentIndex>> support_matching(const RandomAssignment& residual) {
  const std::size_t n = residual.agent_count();
  const std::size_t m = residual.object_count();
  const auto c = static_cast<std::size_t>(residual.instance().quota());
  constexpr AgentIndex kFree = static_cast<AgentIndex>(-1);
  std::vector<AgentIndex> owner(m, kFree);
  std::vector<std::vector<ObjectIndex>> held(n);

  std::function<bool(ObjectIndex, std::vector<bool>&)> augment =
      [&](ObjectIndex o, std::vector<bool>& visited) -> bool {
    for (AgentIndex i = 0; i < n; ++i) {
      if (visited[i] || residual.at(i, o).sign() <= 0) continue;
      visited[i] = true;
      if (held[i].size() < c) {
        owner[o] = i;
        held[i].push_back(o);
        return true;
      }
      for (ObjectIndex& other : held[i]) {
        if (augment(other, visited)) {
          // `other` moved to another agent; i takes o in its slot.
          other = o;
          owner[o] = i;
          return true;
        }
      }
    }
    return false;
  };

  for (ObjectIndex o = 0; o < m; ++o) {
    std::vector<bool> visited(n, false);
    if (!augment(o, visited)) return std::nullopt;
  }
  return owner;
}

}  // namespace

std::vector<LotteryTerm> decompose_lottery(const RandomAssignment& p) {
  require_valid(p);
  RandomAssignment residual = p;
  std::vector<LotteryTerm> terms;
  const std::size_t limit = p.agent_count() * p.object_count() + 1;
  while (std::any_of(residual.cells().begin(), residual.cells().end(),
                     [](const Rational& v) { return v.sign() > 0; })) {
    if (terms.size() == limit) throw InternalError("lottery decomposition did not terminate");
    const auto owner = support_matching(residual);
    if (!owner) throw InternalError("no balanced assignment on the residual support");
    Rational weight = residual.at((*owner)[0], 0);
    for (ObjectIndex o = 1; o < owner->size(); ++o) {
      weight = min(weight, residual.at((*owner)[o], o));
    }
    for (ObjectIndex o = 0; o < owner->size(); ++o) residual.at((*owner)[o], o) -= weight;
    terms.push_back({weight, DiscreteAssignment(p.instance(), *owner)});
  }

  RandomAssignment total(p.instance());
  for (const auto& term : terms) {
    for (ObjectIndex o = 0; o < p.object_count(); ++o) {
      total.at(term.assignment.owner(o), o) += term.weight;
    }
  }
  if (!(total == p)) throw InternalError("lottery decomposition does not sum to its input");
  return terms;
}

EfficiencyVerdict check_unanimity(const Rule& rule, const PreferenceProfile& profile) {
  EfficiencyVerdict verdict;
  verdict.property = "unanimity";
  verdict.perfect = perfect_assignment(profile);
  if (!verdict.perfect) {
    verdict.holds = true;
    verdict.detail = "no perfect assignment exists; holds vacuously";
    return verdict;
  }
  const RandomAssignment output = rule(profile);
  verdict.holds = output == discrete_to_random(*verdict.perfect);
  verdict.detail = verdict.holds ? "rule returns the perfect assignment"
                                 : "rule output differs from the perfect assignment";
  return verdict;
}

bool replay(const EfficiencyVerdict& verdict, const RandomAssignment& p,
            const PreferenceProfile& profile) {
  if (verdict.property == "sd-efficient") {
    if (verdict.holds) return is_sd_efficient(p, profile).holds;
    return verdict.dominator && validate_assignment(*verdict.dominator) &&
           sd_dominates(*verdict.dominator, p, profile);
  }
  if (verdict.property == "ex-post") {
    for (const auto& d : verdict.support) {
      const RandomAssignment matrix = indicator_matrix(d);
      if (!is_sd_efficient_with_rows(matrix, profile, row_sums(matrix)).holds) return false;
    }
    if (!verdict.holds) {
      const auto lp = ratlp::hull_program(p.cells(), flattened(verdict.support));
      return ratlp::certifies_infeasibility(lp, verdict.farkas);
    }
    RandomAssignment total(p.instance());
    Rational mass;
    for (const auto& term : verdict.decomposition) {
      if (term.weight.sign() <= 0) return false;
      mass += term.weight;
      for (ObjectIndex o = 0; o < p.object_count(); ++o) {
        total.at(term.assignment.owner(o), o) += term.weight;
      }
    }
    return mass == Rational(1) && total == p;
  }
  if (verdict.property == "unanimity" || verdict.property == "perfect") {
    const auto perfect = perfect_assignment(profile);
    if (!perfect) return verdict.property == "unanimity" ? verdict.holds : !verdict.holds;
    return verdict.holds == (p == discrete_to_random(*perfect));
  }
  throw StructuralError("unknown efficiency property '" + verdict.property + "'");
}

}  // namespace mudra
