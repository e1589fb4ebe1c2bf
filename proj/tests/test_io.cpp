#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "helpers.hpp"
#include "mudra/error.hpp"
#include "mudra/io.hpp"
#include "mudra/reproduce.hpp"
#include "mudra/rules.hpp"
#include "mudra/strategy.hpp"

using namespace mudra;
using namespace mudra::testing;
using mudra::io::Json;

namespace {

std::string error_path(const Json& doc) {
  try {
    io::profile_from_json(doc);
  } catch (const InputError& e) {
    return e.path();
  }
  return "<none>";
}

Json base_profile() {
  return Json::parse(R"({"objects":["o1","o2","o3","o4"],"quota":2,
    "preferences":{"agent1":["o1","o2","o3","o4"],"agent2":["o3","o2","o4","o1"]}})");
}

}  // namespace

TEST_CASE("profile round trip keeps agent order") {
  Json doc = Json::parse(R"({"objects":["x","y"],"quota":1,
    "preferences":{"zed":["y","x"],"amy":["x","y"]}})");
  const auto profile = io::profile_from_json(doc);
  CHECK(profile.instance().agents() == std::vector<std::string>{"zed", "amy"});
  CHECK(io::profile_from_json(io::to_json(profile)) == profile);
  CHECK(io::profile_from_json(base_profile()) == timeline_profile());
}

TEST_CASE("profile errors point at the offending field") {
  Json doc = base_profile();
  doc["preferences"]["agent1"][2] = "o9";
  CHECK(error_path(doc) == "/preferences/agent1/2");
  doc = base_profile();
  doc["preferences"]["agent2"][3] = "o2";
  CHECK(error_path(doc) == "/preferences/agent2/3");
  doc = base_profile();
  doc["preferences"]["agent2"].erase(0);
  CHECK(error_path(doc) == "/preferences/agent2");
  doc = base_profile();
  doc["quota"] = 3;
  CHECK(error_path(doc) == "/");
  doc = base_profile();
  doc["quota"] = "1/2";
  CHECK(error_path(doc) == "/quota");
  doc = base_profile();
  doc.erase("objects");
  CHECK(error_path(doc) == "/");
  doc = base_profile();
  doc["objects"][1] = "o1";
  CHECK(error_path(doc) == "/objects/1");
  CHECK(error_path(Json::array()) == "/");
}

TEST_CASE("relaxed profiles") {
  Json doc = Json::parse(R"({"objects":["x","y","z"],"quota":2,"relaxed":true,
    "preferences":{"a":["x","y","z"],"b":["z","y","x"]}})");
  const auto profile = io::profile_from_json(doc);
  CHECK(profile.instance().relaxed());
  CHECK(io::to_json(profile)["relaxed"] == true);
  CHECK(io::profile_from_json(io::to_json(profile)) == profile);
}

TEST_CASE("assignment round trip and errors") {
  const auto profile = timeline_profile();
  const auto p = mps(profile);
  const Json doc = io::to_json(p);
  CHECK(doc["matrix"]["agent1"]["o1"] == "7/8");
  CHECK(io::assignment_from_json(doc, profile.instance()) == p);
  Json ints = Json::parse(R"({"matrix":{"agent1":{"o1":1,"o2":1,"o3":0,"o4":0},
                                        "agent2":{"o1":0,"o2":0,"o3":"1","o4":"2/2"}}})");
  CHECK(io::assignment_from_json(ints, profile.instance()).at(1, 3) == Rational(1));
  Json bad = doc;
  bad["matrix"]["agent1"]["o2"] = "1/0";
  CHECK_THROWS_AS(io::assignment_from_json(bad, profile.instance()), InputError);
  bad = doc;
  bad["matrix"]["agent1"]["o2"] = 0.5;
  try {
    io::assignment_from_json(bad, profile.instance());
    FAIL("expected an input error");
  } catch (const InputError& e) {
    CHECK(e.path() == "/matrix/agent1/o2");
  }
}

TEST_CASE("certificates serialize") {
  const auto profile = contested_profile();
  const auto m = find_weak_sd_manipulation(make_rule(RuleKind::Ops), profile, 0);
  REQUIRE(m.has_value());
  const Json doc = io::to_json(*m);
  CHECK(doc["kind"] == "strict-sd");
  CHECK(doc["members"][0]["misreport"] == Json::parse(R"(["b","a","c","d"])"));
  CHECK(doc["members"][0]["manipulated_allocation"] == Json::parse(R"(["1","1/2","0","1/2"])"));
  const Json trace = io::to_json(mps_trace(timeline_profile()));
  CHECK(trace["breakpoints"] == Json::parse(R"(["1/2","3/4","7/8","9/8"])"));
}

TEST_CASE("file round trip") {
  const auto path = std::filesystem::temp_directory_path() / "mudra_io_test.json";
  io::write_file(path, base_profile());
  CHECK(io::read_file(path) == base_profile());
  std::filesystem::remove(path);
  CHECK_THROWS_AS(io::read_file(path), InputError);
  const auto garbage = std::filesystem::temp_directory_path() / "mudra_io_garbage.json";
  {
    std::ofstream out(garbage);
    out << "{not json";
  }
  CHECK_THROWS_AS(io::read_file(garbage), InputError);
  std::filesystem::remove(garbage);
}
