#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "mudra/efficiency.hpp"
#include "mudra/fairness.hpp"
#include "mudra/model.hpp"
#include "mudra/rules.hpp"
#include "mudra/strategy.hpp"

// JSON schemas. Profiles:
//   {"objects": ["o1", ...], "quota": c, "preferences": {"agent1": ["o1", ...], ...}}
// with an optional "relaxed": true for m not a multiple of n. Assignments:
//   {"matrix": {"agent1": {"o1": "7/8", ...}, ...}}
// Rationals are strings "p/q" or "k". Key order is preserved, so agent
// order in a file is the positional agent order.
namespace mudra::io {

using Json = nlohmann::ordered_json;

/// Throws InputError naming the JSON path of the first schema violation.
PreferenceProfile profile_from_json(const Json& doc);
Json to_json(const PreferenceProfile& profile);

RandomAssignment assignment_from_json(const Json& doc, const Instance& instance);
Json to_json(const RandomAssignment& p);

Rational rational_from_json(const Json& value, const std::string& path);
Json to_json(const Rational& r);

Json to_json(const DiscreteAssignment& d);
Json to_json(const EatingTrace& trace);
Json to_json(const EfficiencyVerdict& verdict, const Instance& instance);
Json to_json(const EnvyVerdict& verdict, const Instance& instance);
Json to_json(const Manipulation& manipulation);
Json order_to_json(const Order& order, const Instance& instance);

/// Reads and parses a file; parse failures become InputError.
Json read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const Json& doc);

/// Canonical text form: two-space indent, trailing newline.
std::string dump(const Json& doc);

}  // namespace mudra::io
