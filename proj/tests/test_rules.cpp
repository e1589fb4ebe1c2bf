#include "doctest.h"
#include "helpers.hpp"
#include "mudra/enumerate.hpp"
#include "mudra/error.hpp"
#include "mudra/order.hpp"
#include "mudra/reproduce.hpp"
#include "mudra/rules.hpp"
#include "oracles.hpp"

using namespace mudra;
using namespace mudra::testing;

TEST_CASE("mps timeline on the two-agent profile") {
  const auto profile = timeline_profile();
  const auto trace = mps_trace(profile);
  CHECK(trace.breakpoints() == qs({"1/2", "3/4", "7/8", "9/8"}));
  const Instance& inst = profile.instance();
  CHECK(trace.assignment ==
        matrix(inst, {{"7/8", "1/2", "1/4", "3/8"}, {"1/8", "1/2", "3/4", "5/8"}}));
  REQUIRE(trace.phases.size() == 4);
  CHECK(trace.phases[0].eating[0] == std::vector<ObjectIndex>{0, 1});
  CHECK(trace.phases[0].eating[1] == std::vector<ObjectIndex>{2, 1});
  // Only o4 is left in the last phase, so each agent eats one object.
  CHECK(trace.phases[3].eating[0] == std::vector<ObjectIndex>{3});
  CHECK(trace.phases[3].eating[1] == std::vector<ObjectIndex>{3});
  // The mistyped reference matrix is not an assignment at all.
  CHECK_FALSE(validate_assignment(
      matrix(inst, {{"3/4", "1/2", "1/4", "1/4"}, {"1/4", "1/2", "3/4", "3/4"}})));
}

TEST_CASE("ops and mps on the contested profile") {
  const auto profile = contested_profile();
  const Instance& inst = profile.instance();
  CHECK(ops(profile) == matrix(inst, {{"1", "0", "1/2", "1/2"}, {"0", "1", "1/2", "1/2"}}));
  const auto m = mps(profile);
  CHECK(validate_assignment(m));
  CHECK(m == matrix(inst, {{"3/4", "1/2", "1/4", "1/2"}, {"1/4", "1/2", "3/4", "1/2"}}));
}

TEST_CASE("mps gives all halves when tops are swapped pairwise") {
  const Instance inst = Instance::numbered(2, 2);
  const auto profile =
      profile_of(inst, {{"o1", "o2", "o3", "o4"}, {"o2", "o1", "o4", "o3"}});
  CHECK(mps(profile) == uniform(inst));
}

TEST_CASE("probabilistic serial on paired types") {
  const auto profile = paired_types_profile();
  const auto expected = matrix(profile.instance(), {{"1/2", "0", "1/4", "1/4"},
                                                    {"1/2", "0", "1/4", "1/4"},
                                                    {"0", "1/2", "1/4", "1/4"},
                                                    {"0", "1/2", "1/4", "1/4"}});
  CHECK(mps(profile) == expected);
  CHECK(ops(profile) == expected);
}

TEST_CASE("uniform, priority and random priority") {
  const auto profile = timeline_profile();
  const Instance& inst = profile.instance();
  CHECK(uniform(inst).at(1, 3) == Rational(1, 2));
  const auto first = serial_dictator(profile, {0, 1});
  CHECK(first.owners() == std::vector<AgentIndex>{0, 0, 1, 1});
  const auto second = serial_dictator(profile, {1, 0});
  CHECK(second.owners() == std::vector<AgentIndex>{0, 1, 1, 0});
  CHECK(random_priority(profile) ==
        matrix(inst, {{"1", "1/2", "0", "1/2"}, {"0", "1/2", "1", "1/2"}}));
  CHECK(make_rule(RuleKind::Priority)(profile) == discrete_to_random(first));
  CHECK(priority_rule({1, 0})(profile) == discrete_to_random(second));
  CHECK_THROWS_AS(serial_dictator(profile, {0, 0}), StructuralError);
}

TEST_CASE("random priority refuses large agent sets") {
  const Instance inst = Instance::numbered(9, 1);
  std::vector<Order> orders(9, identity_permutation(9));
  const PreferenceProfile profile(inst, orders);
  CHECK_THROWS_AS(random_priority(profile), GuardError);
  CHECK_NOTHROW(random_priority(PreferenceProfile(Instance::numbered(3, 1),
                                                  std::vector<Order>(3, identity_permutation(3)))));
}

TEST_CASE("rule names round trip") {
  for (RuleKind kind : kAllRules) {
    CHECK(parse_rule_kind(to_string(kind)) == kind);
    CHECK(make_rule(kind).name == to_string(kind));
  }
  CHECK_FALSE(parse_rule_kind("serial").has_value());
}

TEST_CASE("relaxed instances eat ceil(m/n) at a time") {
  const Instance inst({"a1", "a2"}, {"x", "y", "z"}, 2, BalanceMode::Relaxed);
  const PreferenceProfile profile(inst, {{0, 1, 2}, {0, 2, 1}});
  CHECK(multi_unit_bite(inst) == 2);
  const auto p = mps(profile);
  const std::vector<Rational> rows(2, Rational(3, 2));
  CHECK(validate_assignment(p, rows));
  CHECK_THROWS_AS(serial_dictator(profile, {0, 1}), StructuralError);
}

namespace {

RandomAssignment from_rows(const Instance& inst, const std::vector<std::vector<Rational>>& rows) {
  return RandomAssignment(inst, rows);
}

void cross_check_domain(std::size_t n, std::size_t c) {
  const ProfileDomain domain(n, c);
  const Instance& inst = domain.instance();
  const auto half = uniform(inst);
  for (std::size_t k = 0; k < domain.size(); ++k) {
    const auto profile = domain.at(k);
    const auto m = mps(profile);
    CHECK(m == from_rows(inst, oracle::eat(profile, c)));
    CHECK(ops(profile) == from_rows(inst, oracle::eat(profile, 1)));
    CHECK(random_priority(profile) == from_rows(inst, oracle::random_priority(profile)));
    CHECK(discrete_to_random(serial_dictator(profile, identity_permutation(n))) ==
          from_rows(inst, oracle::dictator(profile, identity_permutation(n))));
    if (c == 1) CHECK(m == ops(profile));
    for (AgentIndex i = 0; i < n; ++i) {
      // Each agent weakly SD-prefers its MPS share to the uniform share.
      CHECK(oracle::sd_weak(m.row(i), half.row(i), profile.order(i)));
      // An object outside the reported top c is never received in full.
      for (ObjectIndex o = 0; o < inst.object_count(); ++o) {
        if (m.at(i, o) == Rational(1)) CHECK(profile.rank(i, o) < c);
      }
    }
  }
}

}  // namespace

TEST_CASE("rules agree with the independent oracles on n=2, c=2") { cross_check_domain(2, 2); }

TEST_CASE("rules agree with the independent oracles on n=3, c=1") { cross_check_domain(3, 1); }

TEST_CASE("eating is deterministic") {
  const auto profile = contested_profile();
  CHECK(mps_trace(profile).breakpoints() == mps_trace(profile).breakpoints());
  CHECK(ops(profile) == ops(profile));
}
