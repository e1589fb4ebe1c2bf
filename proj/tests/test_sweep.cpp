#include <cstdlib>

#include "doctest.h"
#include "helpers.hpp"
#include "mudra/enumerate.hpp"
#include "mudra/error.hpp"
#include "mudra/parallel.hpp"
#include "mudra/reproduce.hpp"
#include "mudra/table1.hpp"

using namespace mudra;

TEST_CASE("profile domains index canonically") {
  const ProfileDomain domain(2, 2);
  CHECK(domain.size() == 576);
  CHECK(domain.orders().size() == 24);
  for (std::size_t k = 0; k < domain.size(); k += 13) CHECK(domain.index_of(domain.at(k)) == k);
  // Agent 1 is the most significant digit.
  CHECK(domain.at(1).order(0) == domain.at(0).order(0));
  CHECK(domain.at(24).order(0) != domain.at(0).order(0));
  CHECK(ProfileDomain(3, 1).size() == 216);
  CHECK_THROWS_AS(domain.at(576), StructuralError);
  CHECK_THROWS_AS(ProfileDomain(3, 2, 1000), GuardError);
  CHECK(enumerate_profiles(2, 2, 1).size() == 4);
  CHECK_THROWS_AS(enumerate_profiles(2, 3, 1), StructuralError);
}

TEST_CASE("guard from the environment") {
  ::setenv("MUDRA_GUARD", "12", 1);
  CHECK(guard_from_environment(5) == 12);
  ::setenv("MUDRA_GUARD", "lots", 1);
  CHECK_THROWS_AS(guard_from_environment(5), InputError);
  ::unsetenv("MUDRA_GUARD");
  CHECK(guard_from_environment(5) == 5);
}

TEST_CASE("parallel map keeps index order and propagates failures") {
  const auto squares = parallel_map(50, 4, [](std::size_t k) { return k * k; });
  for (std::size_t k = 0; k < 50; ++k) CHECK(squares[k] == k * k);
  CHECK_THROWS_AS(parallel_map(10, 3,
                               [](std::size_t k) -> int {
                                 if (k == 7) throw GuardError("seven");
                                 return 0;
                               }),
                  GuardError);
  CHECK(resolve_workers(3) == 3);
  CHECK(resolve_workers(0) >= 1);
}

TEST_CASE("property names round trip") {
  for (Property p : kAllProperties) CHECK(parse_property(to_string(p)) == p);
  CHECK_FALSE(parse_property("pareto").has_value());
  CHECK(expected_positive(RuleKind::Ops, Property::SdEfficiency));
  CHECK_FALSE(expected_positive(RuleKind::Mps, Property::ExPost));
}

TEST_CASE("small table sweep is deterministic and hierarchy-consistent") {
  Table1Config config;
  config.full_domains = {{2, 1}, {3, 1}};
  config.search_domains.clear();
  config.workers = 2;
  const auto first = table1_sweep(config);
  config.workers = 1;
  const auto second = table1_sweep(config);
  CHECK(to_json(first)["cells"] == to_json(second)["cells"]);
  CHECK(first.cells.size() == 50);
  for (const auto& h : first.hierarchy) {
    CHECK(h.cases > 0);
    CHECK(h.violations == 0);
  }
  for (const auto& cell : first.cells) {
    if (cell.observed == Observation::CounterexampleFound) CHECK(cell.certificate_verified);
  }
  CHECK_FALSE(render_table(first).empty());
}

TEST_CASE("guard refusals surface in the table") {
  Table1Config config;
  config.full_domains = {{3, 2}};
  config.search_domains.clear();
  config.guard = 100;
  const auto result = table1_sweep(config);
  CHECK(result.has_guard_refusal());
}

TEST_CASE("reproduction cases") {
  CHECK(reproduction_cases().size() == 7);
  CHECK_THROWS_AS(reproduce("nope"), InputError);
  for (const char* id : {"figure1", "pareto-decomp", "theorem1", "theorem2", "example1"}) {
    const auto report = reproduce(id);
    CAPTURE(id);
    CHECK(report.verdict);
    CHECK(report.exit_code == kExitOk);
    CHECK(to_json(report, false)["checks"].size() == report.checks.size());
  }
}
