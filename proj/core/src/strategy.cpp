#include "mudra/strategy.hpp"

#include <algorithm>

#include "mudra/error.hpp"
#include "mudra/order.hpp"

namespace mudra {

const char* to_string(ManipulationKind kind) {
  switch (kind) {
    case ManipulationKind::StrictSd: return "strict-sd";
    case ManipulationKind::DlImprovement: return "dl-improvement";
    case ManipulationKind::NotWeaklyDominated: return "not-weakly-dominated";
  }
  return "?";
}

PreferenceProfile Manipulation::manipulated_profile() const {
  std::vector<Order> orders = truthful.orders();
  for (std::size_t k = 0; k < coalition.size(); ++k) orders[coalition[k]] = misreports[k];
  return PreferenceProfile(truthful.instance(), std::move(orders));
}

std::vector<Order> all_strict_orders(std::size_t object_count, std::size_t max_objects) {
  if (object_count > max_objects) {
    throw GuardError("enumerating orders over " + std::to_string(object_count) +
                     " objects exceeds guard " + std::to_string(max_objects));
  }
  std::vector<Order> out;
  Order order = identity_permutation(object_count);
  do {
    out.push_back(order);
  } while (std::next_permutation(order.begin(), order.end()));
  return out;
}

namespace {

bool qualifies(ManipulationKind kind, AllocationVector manipulated, AllocationVector truthful,
               const Order& true_order) {
  switch (kind) {
    case ManipulationKind::StrictSd:
      return sd_compare(manipulated, truthful, true_order) == SdVerdict::FirstStrictlyDominates;
    case ManipulationKind::DlImprovement:
      return dl_compare(manipulated, truthful, true_order) == DlVerdict::First;
    case ManipulationKind::NotWeaklyDominated:
      return !sd_weakly_prefers(truthful, manipulated, true_order);
  }
  return false;
}

void require_checkable(const PreferenceProfile& profile) {
  if (profile.instance().relaxed()) {
    throw StructuralError("axiom checks require m to be a multiple of n");
  }
}

std::optional<Manipulation> scan_individual(ManipulationKind kind, const Rule& rule,
                                            const PreferenceProfile& profile, AgentIndex agent,
                                            std::size_t max_objects) {
  require_checkable(profile);
  if (agent >= profile.agent_count()) throw StructuralError("agent index out of range");
  const RandomAssignment truth = rule(profile);
  const Order& true_order = profile.order(agent);
  for (Order& report : all_strict_orders(profile.instance().object_count(), max_objects)) {
    if (report == true_order) continue;
    const RandomAssignment lie = rule(profile.with_order(agent, report));
    if (!qualifies(kind, lie.row(agent), truth.row(agent), true_order)) continue;
    return Manipulation{kind,
                        {agent},
                        profile,
                        {std::move(report)},
                        {{truth.row(agent).begin(), truth.row(agent).end()}},
                        {{lie.row(agent).begin(), lie.row(agent).end()}}};
  }
  return std::nullopt;
}

}  // namespace

std::optional<Manipulation> find_weak_sd_manipulation(const Rule& rule,
                                                      const PreferenceProfile& profile,
                                                      AgentIndex agent, std::size_t max_objects) {
  return scan_individual(ManipulationKind::StrictSd, rule, profile, agent, max_objects);
}

std::optional<Manipulation> find_dl_manipulation(const Rule& rule,
                                                 const PreferenceProfile& profile,
                                                 AgentIndex agent, std::size_t max_objects) {
  return scan_individual(ManipulationKind::DlImprovement, rule, profile, agent, max_objects);
}

std::optional<Manipulation> find_sd_manipulation(const Rule& rule,
                                                 const PreferenceProfile& profile,
                                                 AgentIndex agent, std::size_t max_objects) {
  return scan_individual(ManipulationKind::NotWeaklyDominated, rule, profile, agent,
                         max_objects);
}

std::optional<Manipulation> find_group_manipulation(const Rule& rule,
                                                    const PreferenceProfile& profile,
                                                    const std::vector<AgentIndex>& coalition,
                                                    std::size_t joint_guard,
                                                    std::size_t max_objects) {
  require_checkable(profile);
  if (coalition.empty()) throw StructuralError("coalition is empty");
  std::vector<bool> member(profile.agent_count(), false);
  for (AgentIndex a : coalition) {
    if (a >= profile.agent_count() || member[a]) {
      throw StructuralError("coalition has an invalid or repeated agent");
    }
    member[a] = true;
  }
  const std::vector<Order> orders =
      all_strict_orders(profile.instance().object_count(), max_objects);
  Rational joint(1);
  for (std::size_t k = 0; k < coalition.size(); ++k) {
    joint *= Rational(static_cast<long>(orders.size()));
  }
  if (joint > Rational(static_cast<long>(joint_guard))) {
    throw GuardError("joint misreport space " + joint.str() + " exceeds guard " +
                     std::to_string(joint_guard));
  }

  const RandomAssignment truth = rule(profile);
  std::vector<std::size_t> digits(coalition.size(), 0);
  for (;;) {
    std::vector<Order> reports(coalition.size());
    std::vector<Order> all = profile.orders();
    bool any_lie = false;
    for (std::size_t k = 0; k < coalition.size(); ++k) {
      reports[k] = orders[digits[k]];
      any_lie = any_lie || reports[k] != profile.order(coalition[k]);
      all[coalition[k]] = reports[k];
    }
    if (any_lie) {
      const RandomAssignment lie = rule(PreferenceProfile(profile.instance(), std::move(all)));
      const bool everyone = std::all_of(coalition.begin(), coalition.end(), [&](AgentIndex a) {
        return qualifies(ManipulationKind::StrictSd, lie.row(a), truth.row(a),
                         profile.order(a));
      });
      if (everyone) {
        Manipulation found{ManipulationKind::StrictSd, coalition, profile, std::move(reports),
                           {}, {}};
        for (AgentIndex a : coalition) {
          found.truthful_rows.emplace_back(truth.row(a).begin(), truth.row(a).end());
          found.manipulated_rows.emplace_back(lie.row(a).begin(), lie.row(a).end());
        }
        return found;
      }
    }
    // Odometer with the first member most significant.
    std::size_t pos = coalition.size();
    while (pos > 0) {
      --pos;
      if (++digits[pos] < orders.size()) break;
      digits[pos] = 0;
      if (pos == 0) return std::nullopt;
    }
  }
}

std::optional<Manipulation> find_any_group_manipulation(const Rule& rule,
                                                        const PreferenceProfile& profile,
                                                        std::size_t max_size,
                                                        std::size_t joint_guard,
                                                        std::size_t max_objects) {
  const std::size_t n = profile.agent_count();
  for (std::size_t size = 1; size <= std::min(max_size, n); ++size) {
    // Lexicographic combinations of `size` agents.
    std::vector<AgentIndex> coalition(size);
    for (std::size_t k = 0; k < size; ++k) coalition[k] = k;
    for (;;) {
      if (auto found =
              find_group_manipulation(rule, profile, coalition, joint_guard, max_objects)) {
        return found;
      }
      std::size_t k = size;
      while (k > 0 && coalition[k - 1] == n - size + (k - 1)) --k;
      if (k == 0) break;
      ++coalition[k - 1];
      for (std::size_t t = k; t < size; ++t) coalition[t] = coalition[t - 1] + 1;
    }
  }
  return std::nullopt;
}

bool replay(const Manipulation& manipulation, const Rule& rule) {
  const auto& s = manipulation.coalition;
  if (s.empty() || manipulation.misreports.size() != s.size()) return false;
  const RandomAssignment truth = rule(manipulation.truthful);
  const RandomAssignment lie = rule(manipulation.manipulated_profile());
  for (std::size_t k = 0; k < s.size(); ++k) {
    const AgentIndex a = s[k];
    if (manipulation.truthful_rows.size() != s.size() ||
        manipulation.manipulated_rows.size() != s.size() ||
        !std::equal(truth.row(a).begin(), truth.row(a).end(),
                    manipulation.truthful_rows[k].begin(), manipulation.truthful_rows[k].end()) ||
        !std::equal(lie.row(a).begin(), lie.row(a).end(),
                    manipulation.manipulated_rows[k].begin(),
                    manipulation.manipulated_rows[k].end())) {
      return false;
    }
    if (!qualifies(manipulation.kind, lie.row(a), truth.row(a),
                   manipulation.truthful.order(a))) {
      return false;
    }
  }
  return true;
}

}  // namespace mudra
