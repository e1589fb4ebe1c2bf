#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "mudra/model.hpp"

namespace mudra {

inline constexpr std::size_t kDefaultProfileGuard = 1'000'000;

/// Guard value from the MUDRA_GUARD environment variable, or `fallback`.
std::size_t guard_from_environment(std::size_t fallback);

/// Every profile over a numbered instance (agent1.., o1..) with n agents and
/// quota c. Profile k has agent 1 as the most significant digit over the
/// lexicographic list of strict orders.
class ProfileDomain {
 public:
  /// Throws GuardError when (m!)^n exceeds `guard`.
  ProfileDomain(std::size_t agents, std::size_t quota, std::size_t guard = kDefaultProfileGuard);

  const Instance& instance() const { return instance_; }
  std::size_t size() const { return size_; }
  const std::vector<Order>& orders() const { return orders_; }

  PreferenceProfile at(std::size_t index) const;
  /// Inverse of `at`; throws StructuralError for a profile outside the domain.
  std::size_t index_of(const PreferenceProfile& profile) const;

 private:
  Instance instance_;
  std::vector<Order> orders_;
  std::map<Order, std::size_t> order_rank_;
  std::size_t size_;
};

/// All profiles for n agents, m objects, quota c (m must equal n * c).
std::vector<PreferenceProfile> enumerate_profiles(std::size_t agents, std::size_t objects,
                                                  std::size_t quota,
                                                  std::size_t guard = kDefaultProfileGuard);

/// Worker count: `requested`, or the hardware concurrency when 0.
std::size_t resolve_workers(std::size_t requested);

}  // namespace mudra
