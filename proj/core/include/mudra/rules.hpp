#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mudra/model.hpp"

namespace mudra {

/// Which objects an agent eats at a given moment: its `k` most preferred
/// objects that are still available, or all of them when fewer remain.
class DemandPolicy {
 public:
  static DemandPolicy top_k(std::size_t k);

  std::size_t k() const { return k_; }

  /// `available[o]` is true while object o is not fully eaten; `remaining`
  /// is the number of such objects.
  std::vector<ObjectIndex> select(const Order& order, const std::vector<bool>& available,
                                  std::size_t remaining) const;

 private:
  explicit DemandPolicy(std::size_t k) : k_(k) {}
  std::size_t k_;
};

/// One interval between consecutive breakpoints.
struct EatingPhase {
  Rational start;
  Rational end;
  /// Per agent, the objects eaten during the phase, most preferred first.
  std::vector<std::vector<ObjectIndex>> eating;
};

struct EatingTrace {
  std::vector<EatingPhase> phases;
  RandomAssignment assignment;

  std::vector<Rational> breakpoints() const;
};

/// Exact simultaneous eating at unit speed per object. Each phase ends when
/// the first currently-eaten object runs out.
EatingTrace simulate_eating(const PreferenceProfile& profile, const DemandPolicy& policy);

/// Eating set size used by MPS: c, or ceil(m/n) in relaxed mode.
std::size_t multi_unit_bite(const Instance& instance);

/// Multi-unit-eating probabilistic serial.
RandomAssignment mps(const PreferenceProfile& profile);
EatingTrace mps_trace(const PreferenceProfile& profile);

/// One-at-a-time probabilistic serial.
RandomAssignment ops(const PreferenceProfile& profile);
EatingTrace ops_trace(const PreferenceProfile& profile);

RandomAssignment uniform(const Instance& instance);

/// Agents pick in the order listed by `priority` (priority[0] picks first),
/// each taking their c best remaining objects.
DiscreteAssignment serial_dictator(const PreferenceProfile& profile, const Permutation& priority);

inline constexpr std::size_t kDefaultRandomPriorityCap = 8;

/// Exact average of serial dictatorship over all n! priority orders.
/// Throws GuardError when n exceeds `max_agents`.
RandomAssignment random_priority(const PreferenceProfile& profile,
                                 std::size_t max_agents = kDefaultRandomPriorityCap);

enum class RuleKind { Uniform, Priority, RandomPriority, Ops, Mps };

inline constexpr RuleKind kAllRules[] = {RuleKind::Uniform, RuleKind::Priority,
                                         RuleKind::RandomPriority, RuleKind::Ops, RuleKind::Mps};

/// CLI name: uniform, priority, rp, ops, mps.
const char* to_string(RuleKind kind);
std::optional<RuleKind> parse_rule_kind(std::string_view name);

/// A profile-to-assignment function with a display name.
struct Rule {
  std::string name;
  std::function<RandomAssignment(const PreferenceProfile&)> apply;

  RandomAssignment operator()(const PreferenceProfile& profile) const { return apply(profile); }
};

/// Priority uses the fixed order (agent 1, ..., agent n).
Rule make_rule(RuleKind kind);
Rule priority_rule(Permutation priority);

}  // namespace mudra
