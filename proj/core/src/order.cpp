#include "mudra/order.hpp"

#include "mudra/error.hpp"

namespace mudra {

namespace {

void require_same_shape(AllocationVector a, AllocationVector b, const Order& order) {
  if (a.size() != b.size() || a.size() != order.size()) {
    throw StructuralError("allocation vectors and order differ in length");
  }
}

}  // namespace

Rational upper_contour_sum(AllocationVector a, const Order& order, ObjectIndex object) {
  if (a.size() != order.size()) throw StructuralError("allocation and order differ in length");
  Rational sum;
  for (ObjectIndex o : order) {
    sum += a[o];
    if (o == object) return sum;
  }
  throw StructuralError("object " + std::to_string(object) + " is not in the order");
}

std::vector<Rational> prefix_sums(AllocationVector a, const Order& order) {
  if (a.size() != order.size()) throw StructuralError("allocation and order differ in length");
  std::vector<Rational> out;
  out.reserve(order.size());
  Rational sum;
  for (ObjectIndex o : order) {
    sum += a[o];
    out.push_back(sum);
  }
  return out;
}

SdVerdict sd_compare(AllocationVector a, AllocationVector b, const Order& order) {
  require_same_shape(a, b, order);
  bool a_ahead = false;
  bool b_ahead = false;
  Rational sa;
  Rational sb;
  for (ObjectIndex o : order) {
    sa += a[o];
    sb += b[o];
    if (sa > sb) a_ahead = true;
    if (sb > sa) b_ahead = true;
  }
  if (a_ahead && b_ahead) return SdVerdict::Incomparable;
  if (a_ahead) return SdVerdict::FirstStrictlyDominates;
  if (b_ahead) return SdVerdict::SecondStrictlyDominates;
  // Identical prefix sums along a full order force identical vectors.
  return SdVerdict::Equal;
}

DlVerdict dl_compare(AllocationVector a, AllocationVector b, const Order& order) {
  require_same_shape(a, b, order);
  for (ObjectIndex o : order) {
    if (a[o] > b[o]) return DlVerdict::First;
    if (b[o] > a[o]) return DlVerdict::Second;
  }
  return DlVerdict::Equal;
}

const char* to_string(SdVerdict v) {
  switch (v) {
    case SdVerdict::Equal: return "equal";
    case SdVerdict::FirstStrictlyDominates: return "first-strictly-dominates";
    case SdVerdict::SecondStrictlyDominates: return "second-strictly-dominates";
    case SdVerdict::Incomparable: return "incomparable";
  }
  return "?";
}

const char* to_string(DlVerdict v) {
  switch (v) {
    case DlVerdict::First: return "first";
    case DlVerdict::Second: return "second";
    case DlVerdict::Equal: return "equal";
  }
  return "?";
}

}  // namespace mudra
