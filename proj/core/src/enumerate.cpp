#include "mudra/enumerate.hpp"

#include <cstdlib>
#include <string>
#include <thread>

#include "mudra/error.hpp"
#include "mudra/strategy.hpp"

namespace mudra {

std::size_t guard_from_environment(std::size_t fallback) {
  const char* value = std::getenv("MUDRA_GUARD");
  if (value == nullptr || *value == '\0') return fallback;
  try {
    std::size_t used = 0;
    const unsigned long long parsed = std::stoull(value, &used);
    if (used != std::string(value).size()) throw std::invalid_argument(value);
    return static_cast<std::size_t>(parsed);
  } catch (const std::exception&) {
    throw InputError("MUDRA_GUARD", std::string("not a non-negative integer: '") + value + "'");
  }
}

ProfileDomain::ProfileDomain(std::size_t agents, std::size_t quota, std::size_t guard)
    : instance_(Instance::numbered(agents, quota)) {
  const std::size_t m = instance_.object_count();
  Rational count(1);
  Rational orders_per_agent(1);
  for (std::size_t k = 2; k <= m; ++k) orders_per_agent *= Rational(static_cast<long>(k));
  for (std::size_t a = 0; a < agents; ++a) count *= orders_per_agent;
  if (count > Rational(static_cast<long>(guard))) {
    throw GuardError("enumerating " + count.str() + " profiles exceeds guard " +
                     std::to_string(guard));
  }
  orders_ = all_strict_orders(m, m);
  for (std::size_t k = 0; k < orders_.size(); ++k) order_rank_.emplace(orders_[k], k);
  size_ = static_cast<std::size_t>(std::stoull(count.numerator()));
}

PreferenceProfile ProfileDomain::at(std::size_t index) const {
  if (index >= size_) throw StructuralError("profile index out of range");
  const std::size_t n = instance_.agent_count();
  std::vector<Order> chosen(n);
  for (std::size_t a = n; a > 0; --a) {
    chosen[a - 1] = orders_[index % orders_.size()];
    index /= orders_.size();
  }
  return PreferenceProfile(instance_, std::move(chosen));
}

std::size_t ProfileDomain::index_of(const PreferenceProfile& profile) const {
  if (!(profile.instance() == instance_)) {
    throw StructuralError("profile is outside the enumerated domain");
  }
  std::size_t index = 0;
  for (const Order& order : profile.orders()) {
    index = index * orders_.size() + order_rank_.at(order);
  }
  return index;
}

std::vector<PreferenceProfile> enumerate_profiles(std::size_t agents, std::size_t objects,
                                                  std::size_t quota, std::size_t guard) {
  if (agents == 0 || quota == 0 || objects != agents * quota) {
    throw StructuralError("profile enumeration needs m = n * c with n, c >= 1");
  }
  const ProfileDomain domain(agents, quota, guard);
  std::vector<PreferenceProfile> out;
  out.reserve(domain.size());
  for (std::size_t k = 0; k < domain.size(); ++k) out.push_back(domain.at(k));
  return out;
}

std::size_t resolve_workers(std::size_t requested) {
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace mudra
