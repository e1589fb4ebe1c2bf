#include "doctest.h"
#include "helpers.hpp"
#include "mudra/error.hpp"
#include "mudra/model.hpp"

using namespace mudra;
using namespace mudra::testing;

TEST_CASE("instance validation") {
  CHECK_NOTHROW(Instance::numbered(2, 2));
  CHECK_THROWS_AS(Instance({"a1", "a2"}, {"x", "y", "z"}, 2), StructuralError);
  CHECK_THROWS_AS(Instance({"a1", "a1"}, {"x", "y"}, 1), StructuralError);
  CHECK_THROWS_AS(Instance({"a1", "a2"}, {"x", "x"}, 1), StructuralError);
  CHECK_THROWS_AS(Instance({"a1"}, {"x"}, 0), StructuralError);
  CHECK_THROWS_AS(Instance({}, {}, 1), StructuralError);
  const Instance relaxed({"a1", "a2"}, {"x", "y", "z"}, 2, BalanceMode::Relaxed);
  CHECK(relaxed.relaxed());
  CHECK(relaxed.row_target() == Rational(3, 2));
  const Instance inst = Instance::numbered(3, 1);
  CHECK(inst.agents()[2] == "agent3");
  CHECK(inst.objects()[0] == "o1");
  CHECK(inst.find_object("o3") == 2u);
  CHECK_FALSE(inst.find_agent("nobody").has_value());
}

TEST_CASE("orders and permutations") {
  CHECK_NOTHROW(require_strict_order({2, 0, 1}, 3));
  CHECK_THROWS_AS(require_strict_order({0, 0, 1}, 3), StructuralError);
  CHECK_THROWS_AS(require_strict_order({0, 1}, 3), StructuralError);
  CHECK_THROWS_AS(require_strict_order({0, 1, 3}, 3), StructuralError);
  CHECK_THROWS_AS(require_bijection({1, 1}, 2), StructuralError);
  const Permutation p{2, 0, 1};
  const Permutation inv = inverse(p);
  for (std::size_t k = 0; k < 3; ++k) CHECK(inv[p[k]] == k);
  CHECK(identity_permutation(3) == Permutation{0, 1, 2});
}

TEST_CASE("profile ranks and replacement") {
  const Instance inst = lettered(2, 2);
  const auto profile = profile_of(inst, {{"a", "b", "c", "d"}, {"b", "c", "a", "d"}});
  CHECK(profile.rank(1, *inst.find_object("a")) == 2);
  const auto changed = profile.with_order(0, named(inst, {"b", "a", "c", "d"}));
  CHECK(changed.order(0)[0] == 1);
  CHECK(changed.order(1) == profile.order(1));
  CHECK_THROWS_AS(PreferenceProfile(inst, {{0, 1, 2, 3}}), StructuralError);
  CHECK_THROWS_AS(PreferenceProfile(inst, {{0, 1, 2, 3}, {0, 1, 2, 2}}), StructuralError);
}

TEST_CASE("assignment validation reports the first violation") {
  const Instance inst = Instance::numbered(2, 2);
  CHECK(validate_assignment(matrix(inst, {{"1/2", "1/2", "1/2", "1/2"}, {"1/2", "1/2", "1/2", "1/2"}})));
  const auto negative = validate_assignment(matrix(inst, {{"-1/2", "1", "1", "1/2"}, {"3/2", "0", "0", "1/2"}}));
  CHECK_FALSE(negative);
  CHECK(std::holds_alternative<EntryOutOfRange>(*negative.violation));
  const auto column = validate_assignment(matrix(inst, {{"1", "1", "0", "0"}, {"1", "0", "1", "0"}}));
  CHECK(std::holds_alternative<ColumnSumMismatch>(*column.violation));
  // Column sums fine, row sums 7/4 and 9/4.
  const auto row = validate_assignment(matrix(inst, {{"3/4", "1/2", "1/4", "1/4"}, {"1/4", "1/2", "3/4", "3/4"}}));
  REQUIRE(std::holds_alternative<RowSumMismatch>(*row.violation));
  CHECK(std::get<RowSumMismatch>(*row.violation).sum == Rational(7, 4));
  CHECK_FALSE(row.describe(inst).empty());
  CHECK_THROWS_AS(require_valid(matrix(inst, {{"1", "1", "0", "0"}, {"1", "0", "1", "0"}})), StructuralError);
}

TEST_CASE("discrete assignments") {
  const Instance inst = Instance::numbered(2, 2);
  const DiscreteAssignment d(inst, {0, 1, 1, 0});
  CHECK(d.balanced());
  CHECK(d.bundle(0) == std::vector<ObjectIndex>{0, 3});
  const auto p = discrete_to_random(d);
  CHECK(p.at(0, 0) == Rational(1));
  CHECK(p.at(1, 0).is_zero());
  const DiscreteAssignment lopsided(inst, {0, 0, 0, 1});
  CHECK_FALSE(lopsided.balanced());
  CHECK_THROWS_AS(discrete_to_random(lopsided), StructuralError);
  CHECK(indicator_matrix(lopsided).at(0, 2) == Rational(1));
  CHECK_THROWS_AS(DiscreteAssignment(inst, {0, 2, 0, 1}), StructuralError);
}

TEST_CASE("relabelling forms a group action") {
  const Instance inst = Instance::numbered(3, 1);
  const auto p = matrix(inst, {{"1/2", "1/3", "1/6"}, {"1/4", "1/3", "5/12"}, {"1/4", "1/3", "5/12"}});
  const Permutation pi{1, 2, 0};
  const Permutation sigma{2, 0, 1};
  CHECK(permute_agents(permute_agents(p, pi), inverse(pi)) == p);
  CHECK(permute_objects(permute_objects(p, sigma), inverse(sigma)) == p);
  CHECK(permute_agents(p, identity_permutation(3)) == p);
  // Composition: applying pi then sigma equals applying sigma after pi as one map.
  Permutation composed(3);
  for (std::size_t k = 0; k < 3; ++k) composed[k] = pi[pi[k]];
  CHECK(permute_agents(permute_agents(p, pi), pi) == permute_agents(p, composed));
  // Agent i moves to row pi[i].
  CHECK(permute_agents(p, pi).at(1, 0) == p.at(0, 0));
  // Object o is renamed sigma[o].
  CHECK(permute_objects(p, sigma).at(0, 2) == p.at(0, 0));

  const auto profile = profile_of(lettered(3, 1), {{"a", "b", "c"}, {"b", "a", "c"}, {"c", "b", "a"}});
  const auto moved = permute_objects(profile, sigma);
  CHECK(moved.order(0)[0] == sigma[profile.order(0)[0]]);
  CHECK(permute_agents(permute_agents(profile, pi), inverse(pi)) == profile);
}
