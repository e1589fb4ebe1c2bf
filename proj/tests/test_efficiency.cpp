#include "doctest.h"
#include "helpers.hpp"
#include "mudra/efficiency.hpp"
#include "mudra/enumerate.hpp"
#include "mudra/error.hpp"
#include "mudra/ratlp.hpp"
#include "mudra/reproduce.hpp"
#include "mudra/rules.hpp"
#include "oracles.hpp"

using namespace mudra;
using namespace mudra::testing;

namespace {

PreferenceProfile disjoint_tops() {
  const Instance inst = Instance::numbered(2, 2);
  return profile_of(inst, {{"o1", "o2", "o3", "o4"}, {"o3", "o4", "o1", "o2"}});
}

PreferenceProfile swapped_pairs() {
  const Instance inst = Instance::numbered(2, 2);
  return profile_of(inst, {{"o1", "o2", "o3", "o4"}, {"o2", "o1", "o4", "o3"}});
}

}  // namespace

TEST_CASE("perfect assignments") {
  const auto perfect = perfect_assignment(disjoint_tops());
  REQUIRE(perfect.has_value());
  CHECK(perfect->owners() == std::vector<AgentIndex>{0, 0, 1, 1});
  CHECK_FALSE(perfect_assignment(contested_profile()).has_value());
  const auto v = is_sd_efficient(discrete_to_random(*perfect), disjoint_tops());
  CHECK(v.holds);
  CHECK(v.surplus.is_zero());
}

TEST_CASE("sd-efficiency of the OPS output on the contested profile") {
  const auto profile = contested_profile();
  const auto v = is_sd_efficient(ops(profile), profile);
  CHECK(v.holds);
  CHECK_FALSE(v.dominator.has_value());
  CHECK(replay(v, ops(profile), profile));
}

TEST_CASE("mps all-halves output is dominated") {
  const auto profile = swapped_pairs();
  const auto p = mps(profile);
  const auto v = is_sd_efficient(p, profile);
  CHECK_FALSE(v.holds);
  REQUIRE(v.dominator.has_value());
  CHECK(sd_dominates(*v.dominator, p, profile));
  CHECK(v.surplus.sign() > 0);
  CHECK(replay(v, p, profile));
  const auto q = matrix(profile.instance(), {{"1", "0", "1/2", "1/2"}, {"0", "1", "1/2", "1/2"}});
  CHECK(sd_dominates(q, p, profile));
  CHECK_FALSE(sd_dominates(p, p, profile));
}

TEST_CASE("sd-efficiency rejects invalid input") {
  const auto profile = swapped_pairs();
  const auto bad = matrix(profile.instance(), {{"1", "1", "1", "0"}, {"0", "0", "0", "1"}});
  CHECK_THROWS_AS(is_sd_efficient(bad, profile), StructuralError);
}

TEST_CASE("discrete enumeration") {
  const Instance inst = Instance::numbered(2, 2);
  const auto balanced = enumerate_discrete(inst, true);
  CHECK(balanced.size() == 6);
  CHECK(std::is_sorted(balanced.begin(), balanced.end()));
  CHECK(enumerate_discrete(inst, false).size() == 16);
  CHECK(enumerate_discrete(Instance::numbered(1, 3), true).size() == 1);
  CHECK(discrete_assignment_count(Instance::numbered(3, 2), true) == Rational(90));
  CHECK(discrete_assignment_count(inst, false) == Rational(16));
  CHECK_THROWS_AS(enumerate_discrete(inst, true, 5), GuardError);
}

TEST_CASE("ex-post efficiency") {
  const auto profile = timeline_profile();
  const auto m = mps(profile);
  const auto balanced = is_ex_post_efficient(m, profile, false);
  CHECK_FALSE(balanced.holds);
  CHECK(replay(balanced, m, profile));

  const auto rp = random_priority(profile);
  const auto v = is_ex_post_efficient(rp, profile, false);
  CHECK(v.holds);
  CHECK(replay(v, rp, profile));
  Rational total;
  for (const auto& term : v.decomposition) total += term.weight;
  CHECK(total == Rational(1));

  const auto tops = disjoint_tops();
  const auto perfect = discrete_to_random(*perfect_assignment(tops));
  const auto pv = is_ex_post_efficient(perfect, tops, false);
  CHECK(pv.holds);
  REQUIRE(pv.decomposition.size() == 1);
  CHECK(pv.decomposition[0].weight == Rational(1));
}

TEST_CASE("unbalanced ex-post support includes lopsided assignments") {
  const auto profile = timeline_profile();
  const auto support = efficient_discrete_assignments(profile, true);
  const Instance& inst = profile.instance();
  // Everything to one agent is trivially efficient given its bundle sizes.
  CHECK(std::find(support.begin(), support.end(), DiscreteAssignment(inst, {0, 0, 0, 0})) != support.end());
  CHECK(std::find(support.begin(), support.end(), DiscreteAssignment(inst, {1, 1, 1, 1})) != support.end());
  // Agent 1 holding o3 while agent 2 holds o1 is never efficient.
  for (const auto& d : support) CHECK_FALSE((d.owner(2) == 0 && d.owner(0) == 1));
}

TEST_CASE("lottery decomposition") {
  const auto half = uniform(Instance::numbered(2, 2));
  const auto terms = decompose_lottery(half);
  REQUIRE(terms.size() == 2);
  CHECK(terms[0].weight == Rational(1, 2));
  CHECK(terms[1].weight == Rational(1, 2));

  const auto contested = ops(contested_profile());
  const auto parts = decompose_lottery(contested);
  RandomAssignment sum(contested.instance());
  for (const auto& t : parts) {
    CHECK(t.assignment.balanced());
    const auto d = discrete_to_random(t.assignment);
    for (AgentIndex i = 0; i < 2; ++i) {
      for (ObjectIndex o = 0; o < 4; ++o) {
        if (d.at(i, o) == Rational(1)) CHECK(contested.at(i, o).sign() > 0);
        sum.at(i, o) += t.weight * d.at(i, o);
      }
    }
  }
  CHECK(sum == contested);

  const auto single = discrete_to_random(DiscreteAssignment(Instance::numbered(2, 2), {1, 0, 0, 1}));
  const auto one = decompose_lottery(single);
  REQUIRE(one.size() == 1);
  CHECK(one[0].weight == Rational(1));
}

TEST_CASE("decompositions re-sum exactly across a domain") {
  const ProfileDomain domain(3, 1);
  for (std::size_t k = 0; k < domain.size(); k += 7) {
    const auto profile = domain.at(k);
    for (const auto& p : {mps(profile), random_priority(profile)}) {
      RandomAssignment sum(p.instance());
      for (const auto& t : decompose_lottery(p)) {
        const auto d = discrete_to_random(t.assignment);
        for (std::size_t c = 0; c < p.cells().size(); ++c) {
          sum.at(c / 3, c % 3) += t.weight * d.cells()[c];
        }
      }
      CHECK(sum == p);
    }
  }
}

TEST_CASE("unanimity") {
  const auto tops = disjoint_tops();
  CHECK(check_unanimity(make_rule(RuleKind::Mps), tops).holds);
  const auto uni = check_unanimity(make_rule(RuleKind::Uniform), tops);
  CHECK_FALSE(uni.holds);
  CHECK(uni.perfect.has_value());
  CHECK(check_unanimity(make_rule(RuleKind::Uniform), contested_profile()).holds);
}

TEST_CASE("LP efficiency agrees with discrete dominance screening") {
  const ProfileDomain domain(2, 2);
  const auto all = enumerate_discrete(domain.instance(), true);
  for (std::size_t k = 0; k < domain.size(); ++k) {
    const auto profile = domain.at(k);
    for (const auto& d : all) {
      const auto p = discrete_to_random(d);
      CHECK(is_sd_efficient(p, profile).holds != oracle::discretely_dominated(p.rows(), profile));
    }
  }
}
