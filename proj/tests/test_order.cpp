#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "mudra/error.hpp"
#include "mudra/order.hpp"
#include "oracles.hpp"

using namespace mudra;
using namespace mudra::testing;

TEST_CASE("prefix sums and contour sums") {
  const auto a = qs({"7/8", "1/2", "1/4", "3/8"});
  const Order order{2, 1, 3, 0};
  CHECK(prefix_sums(a, order) == qs({"1/4", "3/4", "9/8", "2"}));
  CHECK(upper_contour_sum(a, order, 1) == Rational(3, 4));
  CHECK_THROWS(upper_contour_sum(a, order, 7));
}

TEST_CASE("sd comparison verdicts") {
  const Order order{0, 1, 2, 3};
  const auto p1 = qs({"1/2", "1/2", "1/2", "1/2"});
  const auto p2 = qs({"1/2", "1/2", "1/2", "1/2"});
  CHECK(sd_compare(p1, p2, order) == SdVerdict::Equal);
  const auto top = qs({"1", "1", "0", "0"});
  CHECK(sd_compare(top, p1, order) == SdVerdict::FirstStrictlyDominates);
  CHECK(sd_compare(p1, top, order) == SdVerdict::SecondStrictlyDominates);
  const auto x = qs({"1", "0", "0", "1"});
  const auto y = qs({"0", "1", "1", "0"});
  CHECK(sd_compare(x, y, order) == SdVerdict::Incomparable);
  const auto u = qs({"1", "0", "1", "0"});
  const auto v = qs({"1/2", "1", "0", "1/2"});
  CHECK(sd_compare(u, v, order) == SdVerdict::Incomparable);
  CHECK(std::string(to_string(SdVerdict::Incomparable)) != "");
}

TEST_CASE("sd preference implies dl preference") {
  const Order order{0, 1, 2, 3};
  const auto a = qs({"1/2", "1/2", "1/2", "1/2"});
  const auto b = qs({"1/2", "1/4", "3/4", "1/2"});
  CHECK(sd_strictly_prefers(a, b, order));
  CHECK(dl_compare(a, b, order) == DlVerdict::First);
  CHECK(dl_compare(b, a, order) == DlVerdict::Second);
  CHECK(dl_compare(a, a, order) == DlVerdict::Equal);
}

namespace {

std::vector<Rational> random_allocation(std::mt19937& rng, std::size_t m, int quota) {
  // Integer parts of a fixed total, so the vector sums to `quota`.
  const long denom = 12;
  std::vector<long> parts(m, 0);
  std::uniform_int_distribution<std::size_t> pick(0, m - 1);
  for (long k = 0; k < quota * denom; ++k) {
    std::size_t o = pick(rng);
    while (parts[o] == denom) o = pick(rng);
    ++parts[o];
  }
  std::vector<Rational> out;
  for (long p : parts) out.emplace_back(p, denom);
  return out;
}

}  // namespace

TEST_CASE("sd and dl agree with brute-force oracles on random allocations") {
  std::mt19937 rng(20240611);
  Order order{0, 1, 2, 3};
  for (int trial = 0; trial < 400; ++trial) {
    std::shuffle(order.begin(), order.end(), rng);
    const auto a = random_allocation(rng, 4, 2);
    const auto b = random_allocation(rng, 4, 2);
    const auto c = random_allocation(rng, 4, 2);
    const SdVerdict v = sd_compare(a, b, order);
    CHECK(sd_weakly_prefers(a, b, order) == oracle::sd_weak(a, b, order));
    CHECK(sd_strictly_prefers(a, b, order) == oracle::sd_strict(a, b, order));
    // Antisymmetry of the verdict.
    const SdVerdict w = sd_compare(b, a, order);
    if (v == SdVerdict::FirstStrictlyDominates) CHECK(w == SdVerdict::SecondStrictlyDominates);
    if (v == SdVerdict::Incomparable) CHECK(w == SdVerdict::Incomparable);
    if (v == SdVerdict::Equal) CHECK(w == SdVerdict::Equal);
    // DL is total and agrees with the oracle.
    CHECK((dl_compare(a, b, order) == DlVerdict::First) == oracle::dl_better(a, b, order));
    // SD strict improvement implies DL improvement.
    if (v == SdVerdict::FirstStrictlyDominates) CHECK(dl_compare(a, b, order) == DlVerdict::First);
    // DL transitivity.
    if (dl_compare(a, b, order) == DlVerdict::First && dl_compare(b, c, order) == DlVerdict::First) {
      CHECK(dl_compare(a, c, order) == DlVerdict::First);
    }
  }
}
