#pragma once

#include <span>
#include <vector>

#include "mudra/model.hpp"

namespace mudra {

/// One agent's row of a random assignment.
using AllocationVector = std::span<const Rational>;

enum class SdVerdict { Equal, FirstStrictlyDominates, SecondStrictlyDominates, Incomparable };

enum class DlVerdict { First, Second, Equal };

/// Sum of `a` over every object weakly preferred to `object` under `order`.
/// Throws StructuralError if `object` does not appear in `order`.
Rational upper_contour_sum(AllocationVector a, const Order& order, ObjectIndex object);

/// Prefix sums of `a` taken along `order`; entry k covers the top k+1 objects.
std::vector<Rational> prefix_sums(AllocationVector a, const Order& order);

SdVerdict sd_compare(AllocationVector a, AllocationVector b, const Order& order);

/// Weak SD preference: Equal or FirstStrictlyDominates.
inline bool sd_weakly_prefers(AllocationVector a, AllocationVector b, const Order& order) {
  const SdVerdict v = sd_compare(a, b, order);
  return v == SdVerdict::Equal || v == SdVerdict::FirstStrictlyDominates;
}

inline bool sd_strictly_prefers(AllocationVector a, AllocationVector b, const Order& order) {
  return sd_compare(a, b, order) == SdVerdict::FirstStrictlyDominates;
}

/// Decides at the most preferred object where the amounts differ.
DlVerdict dl_compare(AllocationVector a, AllocationVector b, const Order& order);

const char* to_string(SdVerdict v);
const char* to_string(DlVerdict v);

}  // namespace mudra
