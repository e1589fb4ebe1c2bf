#pragma once

#include <optional>
#include <vector>

#include "mudra/model.hpp"
#include "mudra/rules.hpp"

namespace mudra {

enum class ManipulationKind {
  /// Every member's manipulated row strictly SD-dominates its truthful row.
  StrictSd,
  /// The manipulated row wins under DL.
  DlImprovement,
  /// The truthful row fails to weakly SD-dominate the manipulated row.
  NotWeaklyDominated,
};

const char* to_string(ManipulationKind kind);

/// A profitable misreport. Rows are compared under the members' true orders.
struct Manipulation {
  ManipulationKind kind;
  std::vector<AgentIndex> coalition;
  PreferenceProfile truthful;
  /// Aligned with `coalition`.
  std::vector<Order> misreports;
  std::vector<std::vector<Rational>> truthful_rows;
  std::vector<std::vector<Rational>> manipulated_rows;

  PreferenceProfile manipulated_profile() const;
};

inline constexpr std::size_t kDefaultOrderGuard = 6;
inline constexpr std::size_t kDefaultJointGuard = 1'000'000;

/// All m! strict orders over 0..m-1 in lexicographic order.
/// Throws GuardError when m exceeds `max_objects`.
std::vector<Order> all_strict_orders(std::size_t object_count,
                                     std::size_t max_objects = kDefaultOrderGuard);

// The scanners try misreports in lexicographic order, skip the truthful
// order, and return the first witness.

std::optional<Manipulation> find_weak_sd_manipulation(const Rule& rule,
                                                      const PreferenceProfile& profile,
                                                      AgentIndex agent,
                                                      std::size_t max_objects = kDefaultOrderGuard);

std::optional<Manipulation> find_dl_manipulation(const Rule& rule,
                                                 const PreferenceProfile& profile,
                                                 AgentIndex agent,
                                                 std::size_t max_objects = kDefaultOrderGuard);

std::optional<Manipulation> find_sd_manipulation(const Rule& rule,
                                                 const PreferenceProfile& profile,
                                                 AgentIndex agent,
                                                 std::size_t max_objects = kDefaultOrderGuard);

/// Joint misreports of `coalition` (first member most significant) that make
/// every member strictly SD-better. Throws GuardError when (m!)^|S| exceeds
/// `joint_guard`.
std::optional<Manipulation> find_group_manipulation(const Rule& rule,
                                                    const PreferenceProfile& profile,
                                                    const std::vector<AgentIndex>& coalition,
                                                    std::size_t joint_guard = kDefaultJointGuard,
                                                    std::size_t max_objects = kDefaultOrderGuard);

/// Tries coalitions of size 1..max_size in size-then-lexicographic order.
std::optional<Manipulation> find_any_group_manipulation(
    const Rule& rule, const PreferenceProfile& profile, std::size_t max_size,
    std::size_t joint_guard = kDefaultJointGuard, std::size_t max_objects = kDefaultOrderGuard);

/// Recomputes both outcomes with `rule` and re-checks the dominance claim.
bool replay(const Manipulation& manipulation, const Rule& rule);

}  // namespace mudra
