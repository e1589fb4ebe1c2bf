#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mudra/model.hpp"
#include "mudra/rules.hpp"

namespace mudra {

struct LotteryTerm {
  Rational weight;
  DiscreteAssignment assignment;
};

/// Outcome of an efficiency check. Failure certificates: `dominator` for
/// SD-efficiency; `farkas` (against `support`) for ex-post. Successes carry
/// `decomposition` where one exists.
struct EfficiencyVerdict {
  std::string property;
  bool holds = false;
  std::optional<RandomAssignment> dominator;
  /// Total prefix-sum gain of `dominator` over the checked assignment.
  Rational surplus;
  /// Ex-post: the SD-efficient discrete assignments the check mixed over.
  std::vector<DiscreteAssignment> support;
  std::vector<LotteryTerm> decomposition;
  std::vector<Rational> farkas;
  /// Unanimity: the perfect assignment, when one exists.
  std::optional<DiscreteAssignment> perfect;
  std::string detail;
};

/// Every agent gets its top-c objects, if those sets are pairwise disjoint.
std::optional<DiscreteAssignment> perfect_assignment(const PreferenceProfile& profile);

/// q weakly SD-dominates p for every agent and strictly for at least one.
bool sd_dominates(const RandomAssignment& q, const RandomAssignment& p,
                  const PreferenceProfile& profile);

/// Exact LP test: maximise the total prefix-sum surplus over assignments q
/// that weakly dominate p agent by agent.
EfficiencyVerdict is_sd_efficient(const RandomAssignment& p, const PreferenceProfile& profile);

/// Same test with the row sums of q pinned to `row_targets` instead of c.
/// `p` may be an unbalanced 0/1 matrix.
EfficiencyVerdict is_sd_efficient_with_rows(const RandomAssignment& p,
                                            const PreferenceProfile& profile,
                                            std::span<const Rational> row_targets);

inline constexpr std::size_t kDefaultEnumerationCap = 1'000'000;

/// Balanced: all m!/(c!)^n assignments; otherwise all n^m owner maps.
/// Lexicographic in the owner vector. Throws GuardError above `cap`.
std::vector<DiscreteAssignment> enumerate_discrete(const Instance& instance, bool balanced,
                                                   std::size_t cap = kDefaultEnumerationCap);

/// Number of assignments `enumerate_discrete` would produce.
Rational discrete_assignment_count(const Instance& instance, bool balanced);

/// The SD-efficient members of `enumerate_discrete(profile.instance(), !allow_unbalanced)`.
/// Unbalanced members are tested against assignments with their own row sums.
std::vector<DiscreteAssignment> efficient_discrete_assignments(
    const PreferenceProfile& profile, bool allow_unbalanced,
    std::size_t cap = kDefaultEnumerationCap);

EfficiencyVerdict is_ex_post_efficient(const RandomAssignment& p,
                                       const PreferenceProfile& profile, bool allow_unbalanced,
                                       std::size_t cap = kDefaultEnumerationCap);

/// Variant taking a precomputed `efficient_discrete_assignments` result.
EfficiencyVerdict is_ex_post_efficient(const RandomAssignment& p,
                                       const PreferenceProfile& profile,
                                       std::vector<DiscreteAssignment> efficient_support);

/// Generalised Birkhoff-von Neumann: positive weights summing to 1 whose
/// weighted balanced discrete assignments add up to p exactly.
std::vector<LotteryTerm> decompose_lottery(const RandomAssignment& p);

/// Vacuously true when no perfect assignment exists.
EfficiencyVerdict check_unanimity(const Rule& rule, const PreferenceProfile& profile);

/// Re-verifies a verdict's certificate from scratch. True when the stored
/// certificate supports the stored verdict.
bool replay(const EfficiencyVerdict& verdict, const RandomAssignment& p,
            const PreferenceProfile& profile);

}  // namespace mudra
