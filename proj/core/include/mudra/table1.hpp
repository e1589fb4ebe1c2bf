#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "mudra/enumerate.hpp"
#include "mudra/io.hpp"
#include "mudra/rules.hpp"

namespace mudra {

enum class Property {
  SdEfficiency,
  ExPost,
  Unanimity,
  SdEnvyFree,
  WeakSdEnvyFree,
  Anonymity,
  Neutrality,
  SdStrategyproof,
  DlStrategyproof,
  WeakSdStrategyproof,
};

inline constexpr std::array<Property, 10> kAllProperties = {
    Property::SdEfficiency,    Property::ExPost,          Property::Unanimity,
    Property::SdEnvyFree,      Property::WeakSdEnvyFree,  Property::Anonymity,
    Property::Neutrality,      Property::SdStrategyproof, Property::DlStrategyproof,
    Property::WeakSdStrategyproof};

/// sd-efficiency, ex-post, unanimity, sd-ef, weak-sd-ef, anonymity,
/// neutrality, sd-sp, dl-sp, weak-sd-sp.
const char* to_string(Property property);
std::optional<Property> parse_property(std::string_view name);

/// Sign recorded in the reference comparison table: true for '+'.
bool expected_positive(RuleKind rule, Property property);

enum class Observation { SupportedBySweep, CounterexampleFound, GuardRefused };
const char* to_string(Observation observation);

struct SweepDomain {
  std::size_t agents;
  std::size_t quota;

  std::size_t objects() const { return agents * quota; }
  std::string label() const;
};

struct TableCell {
  RuleKind rule;
  Property property;
  bool expected_positive;
  Observation observed;
  /// Domains scanned, in order, and the total profiles examined.
  std::vector<std::string> domains;
  std::size_t profiles_checked = 0;
  /// First counterexample in canonical order, when one was found.
  io::Json certificate;
  bool certificate_verified = false;
  /// A '+' with a counterexample, or a '-' with none after every domain.
  bool discrepancy = false;
  std::string note;
};

/// Counts of (rule, profile[, agent]) cases that break a known implication.
struct HierarchyCheck {
  std::string implication;
  std::size_t cases = 0;
  std::size_t violations = 0;
};

struct Table1Config {
  /// Fully swept for every cell; hierarchy checks run over these.
  std::vector<SweepDomain> full_domains = {{2, 2}, {3, 1}};
  /// Scanned in order, stopping at the first counterexample, for '-' cells
  /// that the full domains did not refute.
  std::vector<SweepDomain> search_domains = {{4, 1}};
  std::size_t workers = 0;
  std::size_t guard = kDefaultProfileGuard;
};

struct Table1Result {
  std::vector<TableCell> cells;
  std::vector<HierarchyCheck> hierarchy;
  /// Wall-clock seconds spent computing each rule over the full domains.
  std::vector<std::pair<RuleKind, double>> rule_seconds;

  bool has_discrepancy() const;
  bool has_guard_refusal() const;
  const TableCell& cell(RuleKind rule, Property property) const;
};

Table1Result table1_sweep(const Table1Config& config);

io::Json to_json(const Table1Result& result);

/// Plain-text table: one row per property, one column per rule.
std::string render_table(const Table1Result& result);

}  // namespace mudra
