#include "mudra/rules.hpp"

#include <algorithm>
#include <numeric>

#include "mudra/error.hpp"

namespace mudra {

DemandPolicy DemandPolicy::top_k(std::size_t k) {
  if (k == 0) throw StructuralError("demand policy needs k >= 1");
  return DemandPolicy(k);
}

std::vector<ObjectIndex> DemandPolicy::select(const Order& order,
                                              const std::vector<bool>& available,
                                              std::size_t remaining) const {
  const std::size_t want = std::min(k_, remaining);
  std::vector<ObjectIndex> out;
  out.reserve(want);
  for (ObjectIndex o : order) {
    if (out.size() == want) break;
    if (available[o]) out.push_back(o);
  }
  return out;
}

std::vector<Rational> EatingTrace::breakpoints() const {
  std::vector<Rational> out;
  out.reserve(phases.size());
  for (const auto& phase : phases) out.push_back(phase.end);
  return out;
}

EatingTrace simulate_eating(const PreferenceProfile& profile, const DemandPolicy& policy) {
  const Instance& instance = profile.instance();
  const std::size_t n = instance.agent_count();
  const std::size_t m = instance.object_count();

  EatingTrace trace{{}, RandomAssignment(instance)};
  std::vector<Rational> left(m, Rational(1));
  std::vector<bool> available(m, true);
  std::size_t remaining = m;
  Rational now;

  while (remaining > 0) {
    EatingPhase phase;
    phase.start = now;
    phase.eating.reserve(n);
    std::vector<std::size_t> eaters(m, 0);
    for (AgentIndex i = 0; i < n; ++i) {
      phase.eating.push_back(policy.select(profile.order(i), available, remaining));
      for (ObjectIndex o : phase.eating.back()) ++eaters[o];
    }

    std::optional<Rational> step;
    for (ObjectIndex o = 0; o < m; ++o) {
      if (eaters[o] == 0) continue;
      Rational until_empty = left[o] / Rational(static_cast<long>(eaters[o]));
      if (!step || until_empty < *step) step = std::move(until_empty);
    }
    if (!step) throw InternalError("eating stalled with objects remaining");

    for (AgentIndex i = 0; i < n; ++i) {
      for (ObjectIndex o : phase.eating[i]) trace.assignment.at(i, o) += *step;
    }
    for (ObjectIndex o = 0; o < m; ++o) {
      if (eaters[o] == 0) continue;
      left[o] -= *step * Rational(static_cast<long>(eaters[o]));
      if (left[o].is_zero()) {
        available[o] = false;
        --remaining;
      }
    }
    now += *step;
    phase.end = now;
    trace.phases.push_back(std::move(phase));
  }
  return trace;
}

std::size_t multi_unit_bite(const Instance& instance) {
  if (!instance.relaxed()) return static_cast<std::size_t>(instance.quota());
  const std::size_t n = instance.agent_count();
  return (instance.object_count() + n - 1) / n;
}

EatingTrace mps_trace(const PreferenceProfile& profile) {
  return simulate_eating(profile, DemandPolicy::top_k(multi_unit_bite(profile.instance())));
}

RandomAssignment mps(const PreferenceProfile& profile) {
  return mps_trace(profile).assignment;
}

EatingTrace ops_trace(const PreferenceProfile& profile) {
  return simulate_eating(profile, DemandPolicy::top_k(1));
}

RandomAssignment ops(const PreferenceProfile& profile) { return ops_trace(profile).assignment; }

RandomAssignment uniform(const Instance& instance) {
  RandomAssignment p(instance);
  const Rational share(1, static_cast<long>(instance.agent_count()));
  for (AgentIndex i = 0; i < instance.agent_count(); ++i) {
    for (ObjectIndex o = 0; o < instance.object_count(); ++o) p.at(i, o) = share;
  }
  return p;
}

DiscreteAssignment serial_dictator(const PreferenceProfile& profile, const Permutation& priority) {
  const Instance& instance = profile.instance();
  if (instance.relaxed()) throw StructuralError("serial dictatorship needs m = n * c");
  require_bijection(priority, instance.agent_count());
  const auto c = static_cast<std::size_t>(instance.quota());
  std::vector<AgentIndex> owner(instance.object_count());
  std::vector<bool> taken(instance.object_count(), false);
  for (AgentIndex agent : priority) {
    std::size_t picked = 0;
    for (ObjectIndex o : profile.order(agent)) {
      if (picked == c) break;
      if (taken[o]) continue;
      taken[o] = true;
      owner[o] = agent;
      ++picked;
    }
  }
  return DiscreteAssignment(instance, std::move(owner));
}

RandomAssignment random_priority(const PreferenceProfile& profile, std::size_t max_agents) {
  const Instance& instance = profile.instance();
  const std::size_t n = instance.agent_count();
  if (n > max_agents) {
    throw GuardError("exact RP infeasible: " + std::to_string(n) + " agents exceeds cap " +
                     std::to_string(max_agents));
  }
  // Integer counts first; one division at the end.
  std::vector<long> counts(n * instance.object_count(), 0);
  long orderings = 0;
  Permutation priority = identity_permutation(n);
  do {
    const DiscreteAssignment d = serial_dictator(profile, priority);
    for (ObjectIndex o = 0; o < instance.object_count(); ++o) {
      ++counts[d.owner(o) * instance.object_count() + o];
    }
    ++orderings;
  } while (std::next_permutation(priority.begin(), priority.end()));

  RandomAssignment p(instance);
  for (AgentIndex i = 0; i < n; ++i) {
    for (ObjectIndex o = 0; o < instance.object_count(); ++o) {
      p.at(i, o) = Rational(counts[i * instance.object_count() + o], orderings);
    }
  }
  return p;
}

const char* to_string(RuleKind kind) {
  switch (kind) {
    case RuleKind::Uniform: return "uniform";
    case RuleKind::Priority: return "priority";
    case RuleKind::RandomPriority: return "rp";
    case RuleKind::Ops: return "ops";
    case RuleKind::Mps: return "mps";
  }
  return "?";
}

std::optional<RuleKind> parse_rule_kind(std::string_view name) {
  for (RuleKind k : kAllRules) {
    if (name == to_string(k)) return k;
  }
  return std::nullopt;
}

Rule priority_rule(Permutation priority) {
  return Rule{"priority", [priority = std::move(priority)](const PreferenceProfile& profile) {
                return discrete_to_random(serial_dictator(profile, priority));
              }};
}

Rule make_rule(RuleKind kind) {
  switch (kind) {
    case RuleKind::Uniform:
      return Rule{"uniform", [](const PreferenceProfile& p) { return uniform(p.instance()); }};
    case RuleKind::Priority:
      return Rule{"priority", [](const PreferenceProfile& p) {
                    return discrete_to_random(
                        serial_dictator(p, identity_permutation(p.agent_count())));
                  }};
    case RuleKind::RandomPriority:
      return Rule{"rp", [](const PreferenceProfile& p) { return random_priority(p); }};
    case RuleKind::Ops:
      return Rule{"ops", [](const PreferenceProfile& p) { return ops(p); }};
    case RuleKind::Mps:
      return Rule{"mps", [](const PreferenceProfile& p) { return mps(p); }};
  }
  throw StructuralError("unknown rule kind");
}

}  // namespace mudra
