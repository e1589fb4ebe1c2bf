#include "mudra/table1.hpp"

#include <chrono>
#include <functional>
#include <sstream>

#include "mudra/efficiency.hpp"
#include "mudra/error.hpp"
#include "mudra/fairness.hpp"
#include "mudra/parallel.hpp"
#include "mudra/strategy.hpp"

namespace mudra {

const char* to_string(Property property) {
  switch (property) {
    case Property::SdEfficiency: return "sd-efficiency";
    case Property::ExPost: return "ex-post";
    case Property::Unanimity: return "unanimity";
    case Property::SdEnvyFree: return "sd-ef";
    case Property::WeakSdEnvyFree: return "weak-sd-ef";
    case Property::Anonymity: return "anonymity";
    case Property::Neutrality: return "neutrality";
    case Property::SdStrategyproof: return "sd-sp";
    case Property::DlStrategyproof: return "dl-sp";
    case Property::WeakSdStrategyproof: return "weak-sd-sp";
  }
  return "?";
}

std::optional<Property> parse_property(std::string_view name) {
  for (Property p : kAllProperties) {
    if (name == to_string(p)) return p;
  }
  return std::nullopt;
}

bool expected_positive(RuleKind rule, Property property) {
  // Columns: uniform, priority, rp, ops, mps.
  static constexpr const char* kSigns[] = {
      "-+-+-",  // sd-efficiency
      "-+++-",  // ex-post
      "-++++",  // unanimity
      "+--++",  // sd-ef
      "+-+++",  // weak-sd-ef
      "+-+++",  // anonymity
      "+++++",  // neutrality
      "+++--",  // sd-sp
      "+++-+",  // dl-sp
      "+++-+",  // weak-sd-sp
  };
  return kSigns[static_cast<int>(property)][static_cast<int>(rule)] == '+';
}

const char* to_string(Observation observation) {
  switch (observation) {
    case Observation::SupportedBySweep: return "supported-by-sweep";
    case Observation::CounterexampleFound: return "counterexample-found";
    case Observation::GuardRefused: return "guard-refused";
  }
  return "?";
}

std::string SweepDomain::label() const {
  std::ostringstream os;
  os << "n=" << agents << ",m=" << objects() << ",c=" << quota;
  return os.str();
}

bool Table1Result::has_discrepancy() const {
  for (const auto& c : cells) {
    if (c.discrepancy) return true;
  }
  for (const auto& h : hierarchy) {
    if (h.violations > 0) return true;
  }
  return false;
}

bool Table1Result::has_guard_refusal() const {
  for (const auto& c : cells) {
    if (c.observed == Observation::GuardRefused) return true;
  }
  return false;
}

const TableCell& Table1Result::cell(RuleKind rule, Property property) const {
  for (const auto& c : cells) {
    if (c.rule == rule && c.property == property) return c;
  }
  throw StructuralError("no such table cell");
}

namespace {

using io::Json;

struct Finding {
  bool holds = true;
  bool verified = false;
  Json certificate;
};

struct RuleFindings {
  std::array<Finding, kAllProperties.size()> property;
  std::vector<bool> sd_sp;
  std::vector<bool> dl_sp;
  std::vector<bool> weak_sd_sp;
};

Json permutation_json(const Permutation& perm, const std::vector<std::string>& ids) {
  Json doc = Json::object();
  for (std::size_t k = 0; k < perm.size(); ++k) doc[ids[k]] = ids[perm[k]];
  return doc;
}

std::vector<Permutation> non_identity_permutations(std::size_t size) {
  std::vector<Permutation> out;
  Permutation p = identity_permutation(size);
  while (std::next_permutation(p.begin(), p.end())) out.push_back(p);
  return out;
}

// Checks one property for one (rule, profile). `rule` may be a cached view
// of `reference`; certificates are always replayed through `reference`.
class PropertyChecker {
 public:
  PropertyChecker(const Rule& rule, const Rule& reference, const PreferenceProfile& profile,
                  const RandomAssignment& output,
                  std::function<std::vector<DiscreteAssignment>()> support)
      : rule_(rule),
        reference_(reference),
        profile_(profile),
        output_(output),
        support_(std::move(support)) {}

  Finding check(Property property, std::vector<bool>* per_agent = nullptr) const {
    switch (property) {
      case Property::SdEfficiency: return sd_efficiency();
      case Property::ExPost: return ex_post();
      case Property::Unanimity: return unanimity();
      case Property::SdEnvyFree: return envy(false);
      case Property::WeakSdEnvyFree: return envy(true);
      case Property::Anonymity: return equivariance(true);
      case Property::Neutrality: return equivariance(false);
      case Property::SdStrategyproof:
        return incentives(ManipulationKind::NotWeaklyDominated, per_agent);
      case Property::DlStrategyproof:
        return incentives(ManipulationKind::DlImprovement, per_agent);
      case Property::WeakSdStrategyproof:
        return incentives(ManipulationKind::StrictSd, per_agent);
    }
    throw StructuralError("unknown property");
  }

 private:
  Json base() const {
    Json doc;
    doc["profile"] = io::to_json(profile_);
    doc["assignment"] = io::to_json(output_)["matrix"];
    return doc;
  }

  bool reference_agrees() const { return reference_(profile_) == output_; }

  Finding sd_efficiency() const {
    const EfficiencyVerdict v = is_sd_efficient(output_, profile_);
    if (v.holds) return {};
    Json doc = base();
    doc["verdict"] = io::to_json(v, profile_.instance());
    return {false, reference_agrees() && replay(v, output_, profile_), std::move(doc)};
  }

  Finding ex_post() const {
    const EfficiencyVerdict v = is_ex_post_efficient(output_, profile_, support_());
    if (v.holds) return {};
    Json doc = base();
    doc["verdict"] = io::to_json(v, profile_.instance());
    return {false, reference_agrees() && replay(v, output_, profile_), std::move(doc)};
  }

  Finding unanimity() const {
    const EfficiencyVerdict v = check_unanimity(rule_, profile_);
    if (v.holds) return {};
    Json doc = base();
    doc["verdict"] = io::to_json(v, profile_.instance());
    return {false, reference_agrees() && replay(v, output_, profile_), std::move(doc)};
  }

  Finding envy(bool weak) const {
    const EnvyVerdict v = weak ? is_weak_sd_envy_free(output_, profile_)
                               : is_sd_envy_free(output_, profile_);
    if (v.holds) return {};
    Json doc = base();
    doc["verdict"] = io::to_json(v, profile_.instance());
    return {false, reference_agrees() && replay(*v.certificate, output_, profile_, weak),
            std::move(doc)};
  }

  Finding equivariance(bool agents) const {
    const Instance& instance = profile_.instance();
    const std::size_t size = agents ? instance.agent_count() : instance.object_count();
    for (const Permutation& perm : non_identity_permutations(size)) {
      const EquivarianceVerdict v = agents ? check_anonymity(rule_, profile_, perm)
                                           : check_neutrality(rule_, profile_, perm);
      if (v.holds) continue;
      const EquivarianceVerdict again = agents ? check_anonymity(reference_, profile_, perm)
                                               : check_neutrality(reference_, profile_, perm);
      Json doc = base();
      doc[agents ? "agent_permutation" : "object_permutation"] =
          permutation_json(perm, agents ? instance.agents() : instance.objects());
      doc["relabelled_output"] = io::to_json(v.expected)["matrix"];
      doc["output_on_relabelled_profile"] = io::to_json(v.observed)["matrix"];
      return {false, !again.holds, std::move(doc)};
    }
    return {};
  }

  Finding incentives(ManipulationKind kind, std::vector<bool>* per_agent) const {
    Finding first;
    if (per_agent) per_agent->assign(profile_.agent_count(), true);
    for (AgentIndex a = 0; a < profile_.agent_count(); ++a) {
      std::optional<Manipulation> m;
      switch (kind) {
        case ManipulationKind::NotWeaklyDominated:
          m = find_sd_manipulation(rule_, profile_, a);
          break;
        case ManipulationKind::DlImprovement:
          m = find_dl_manipulation(rule_, profile_, a);
          break;
        case ManipulationKind::StrictSd:
          m = find_weak_sd_manipulation(rule_, profile_, a);
          break;
      }
      if (!m) continue;
      if (per_agent) (*per_agent)[a] = false;
      if (first.holds) {
        first = {false, replay(*m, reference_), io::to_json(*m)};
      }
      if (!per_agent) break;
    }
    return first;
  }

  const Rule& rule_;
  const Rule& reference_;
  const PreferenceProfile& profile_;
  const RandomAssignment& output_;
  std::function<std::vector<DiscreteAssignment>()> support_;
};

constexpr std::size_t kRuleCount = std::size(kAllRules);

struct DomainOutcome {
  SweepDomain domain;
  std::size_t profiles = 0;
  // [rule][property]: first failure in canonical order.
  std::array<std::array<std::optional<Finding>, kAllProperties.size()>, kRuleCount> first;
  std::vector<HierarchyCheck> hierarchy;
  std::array<double, kRuleCount> seconds{};
  bool refused = false;
  std::string refusal;
};

std::vector<HierarchyCheck> empty_hierarchy() {
  return {{"sd-efficiency => ex-post"},  {"ex-post => unanimity"},
          {"sd-efficiency => unanimity"}, {"sd-ef => weak-sd-ef"},
          {"sd-sp => weak-sd-sp"},        {"dl-sp => weak-sd-sp"}};
}

void tally(std::vector<HierarchyCheck>& checks, const RuleFindings& f) {
  auto holds = [&](Property p) { return f.property[static_cast<int>(p)].holds; };
  auto imply = [](HierarchyCheck& c, bool premise, bool conclusion) {
    if (!premise) return;
    ++c.cases;
    if (!conclusion) ++c.violations;
  };
  imply(checks[0], holds(Property::SdEfficiency), holds(Property::ExPost));
  imply(checks[1], holds(Property::ExPost), holds(Property::Unanimity));
  imply(checks[2], holds(Property::SdEfficiency), holds(Property::Unanimity));
  imply(checks[3], holds(Property::SdEnvyFree), holds(Property::WeakSdEnvyFree));
  for (std::size_t a = 0; a < f.weak_sd_sp.size(); ++a) {
    imply(checks[4], f.sd_sp[a], f.weak_sd_sp[a]);
    imply(checks[5], f.dl_sp[a], f.weak_sd_sp[a]);
  }
}

DomainOutcome sweep_full(const SweepDomain& sweep, std::size_t guard, std::size_t workers) {
  DomainOutcome outcome{sweep};
  outcome.hierarchy = empty_hierarchy();
  std::optional<ProfileDomain> domain;
  try {
    domain.emplace(sweep.agents, sweep.quota, guard);
  } catch (const GuardError& e) {
    outcome.refused = true;
    outcome.refusal = e.what();
    return outcome;
  }
  outcome.profiles = domain->size();

  std::vector<Rule> reference;
  std::array<std::vector<RandomAssignment>, kRuleCount> outputs;
  for (std::size_t r = 0; r < kRuleCount; ++r) {
    reference.push_back(make_rule(kAllRules[r]));
    const auto start = std::chrono::steady_clock::now();
    outputs[r] = parallel_map(domain->size(), workers,
                              [&](std::size_t k) { return reference[r](domain->at(k)); });
    outcome.seconds[r] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  std::vector<Rule> cached;
  for (std::size_t r = 0; r < kRuleCount; ++r) {
    cached.push_back(Rule{reference[r].name, [&, r](const PreferenceProfile& profile) {
                            return outputs[r][domain->index_of(profile)];
                          }});
  }

  const auto per_profile = parallel_map(domain->size(), workers, [&](std::size_t k) {
    const PreferenceProfile profile = domain->at(k);
    std::optional<std::vector<DiscreteAssignment>> support;
    auto support_fn = [&] {
      if (!support) support = efficient_discrete_assignments(profile, false);
      return *support;
    };
    std::vector<RuleFindings> findings(kRuleCount);
    for (std::size_t r = 0; r < kRuleCount; ++r) {
      const PropertyChecker checker(cached[r], reference[r], profile, outputs[r][k], support_fn);
      for (Property p : kAllProperties) {
        std::vector<bool>* per_agent = nullptr;
        if (p == Property::SdStrategyproof) per_agent = &findings[r].sd_sp;
        if (p == Property::DlStrategyproof) per_agent = &findings[r].dl_sp;
        if (p == Property::WeakSdStrategyproof) per_agent = &findings[r].weak_sd_sp;
        findings[r].property[static_cast<int>(p)] = checker.check(p, per_agent);
      }
    }
    return findings;
  });

  for (const auto& findings : per_profile) {
    for (std::size_t r = 0; r < kRuleCount; ++r) {
      tally(outcome.hierarchy, findings[r]);
      for (std::size_t p = 0; p < kAllProperties.size(); ++p) {
        const Finding& f = findings[r].property[p];
        if (!f.holds && !outcome.first[r][p]) outcome.first[r][p] = f;
      }
    }
  }
  return outcome;
}

struct SearchOutcome {
  std::size_t profiles = 0;
  std::optional<Finding> counterexample;
  bool refused = false;
  std::string refusal;
};

// Canonical-order scan for the first profile violating `property`. Blocks
// are evaluated in parallel and reduced in index order.
SearchOutcome search(const SweepDomain& sweep, RuleKind kind, Property property,
                     std::size_t guard, std::size_t workers) {
  SearchOutcome outcome;
  std::optional<ProfileDomain> domain;
  try {
    domain.emplace(sweep.agents, sweep.quota, guard);
  } catch (const GuardError& e) {
    outcome.refused = true;
    outcome.refusal = e.what();
    return outcome;
  }
  const Rule rule = make_rule(kind);
  const std::size_t block = 64 * std::max<std::size_t>(1, workers);
  for (std::size_t begin = 0; begin < domain->size(); begin += block) {
    const std::size_t count = std::min(block, domain->size() - begin);
    const auto found = parallel_map(count, workers, [&](std::size_t k) {
      const PreferenceProfile profile = domain->at(begin + k);
      const RandomAssignment output = rule(profile);
      const PropertyChecker checker(rule, rule, profile, output, [&] {
        return efficient_discrete_assignments(profile, false);
      });
      return checker.check(property);
    });
    for (std::size_t k = 0; k < count; ++k) {
      ++outcome.profiles;
      if (!found[k].holds) {
        outcome.counterexample = found[k];
        return outcome;
      }
    }
  }
  return outcome;
}

}  // namespace

Table1Result table1_sweep(const Table1Config& config) {
  const std::size_t workers = resolve_workers(config.workers);
  std::vector<DomainOutcome> full;
  for (const auto& d : config.full_domains) full.push_back(sweep_full(d, config.guard, workers));

  Table1Result result;
  for (std::size_t r = 0; r < kRuleCount; ++r) {
    double seconds = 0;
    for (const auto& f : full) seconds += f.seconds[r];
    result.rule_seconds.emplace_back(kAllRules[r], seconds);
  }
  result.hierarchy = empty_hierarchy();
  for (const auto& f : full) {
    for (std::size_t h = 0; h < result.hierarchy.size(); ++h) {
      result.hierarchy[h].cases += f.hierarchy[h].cases;
      result.hierarchy[h].violations += f.hierarchy[h].violations;
    }
  }

  for (Property property : kAllProperties) {
    for (std::size_t r = 0; r < kRuleCount; ++r) {
      const RuleKind kind = kAllRules[r];
      TableCell cell{kind, property, expected_positive(kind, property),
                     Observation::SupportedBySweep};
      bool refused = false;
      for (const auto& f : full) {
        cell.domains.push_back(f.domain.label());
        if (f.refused) {
          refused = true;
          cell.note += f.refusal + "; ";
          continue;
        }
        cell.profiles_checked += f.profiles;
        const auto& hit = f.first[r][static_cast<int>(property)];
        if (hit && cell.observed != Observation::CounterexampleFound) {
          cell.observed = Observation::CounterexampleFound;
          cell.certificate = hit->certificate;
          cell.certificate["domain"] = f.domain.label();
          cell.certificate_verified = hit->verified;
        }
      }
      if (!cell.expected_positive && cell.observed != Observation::CounterexampleFound) {
        for (const auto& d : config.search_domains) {
          cell.domains.push_back(d.label() + " (search)");
          const SearchOutcome s = search(d, kind, property, config.guard, workers);
          if (s.refused) {
            refused = true;
            cell.note += s.refusal + "; ";
            continue;
          }
          cell.profiles_checked += s.profiles;
          if (s.counterexample) {
            cell.observed = Observation::CounterexampleFound;
            cell.certificate = s.counterexample->certificate;
            cell.certificate["domain"] = d.label();
            cell.certificate_verified = s.counterexample->verified;
            break;
          }
        }
      }
      if (cell.observed == Observation::CounterexampleFound) {
        cell.discrepancy = cell.expected_positive || !cell.certificate_verified;
        if (!cell.certificate_verified) cell.note += "certificate failed replay; ";
      } else if (refused) {
        cell.observed = Observation::GuardRefused;
      } else {
        cell.discrepancy = !cell.expected_positive;
        if (cell.expected_positive) cell.note += "no counterexample on the full sweep (evidence, not proof)";
      }
      if (cell.discrepancy && cell.expected_positive) {
        cell.note += "counterexample contradicts the expected '+'";
      } else if (cell.discrepancy) {
        cell.note += "expected '-' but every swept profile satisfied the property";
      }
      result.cells.push_back(std::move(cell));
    }
  }
  return result;
}

Json to_json(const Table1Result& result) {
  Json cells = Json::array();
  for (const auto& c : result.cells) {
    Json cell;
    cell["rule"] = to_string(c.rule);
    cell["property"] = to_string(c.property);
    cell["expected"] = c.expected_positive ? "+" : "-";
    cell["observed"] = to_string(c.observed);
    cell["domains"] = c.domains;
    cell["profiles_checked"] = c.profiles_checked;
    cell["discrepancy"] = c.discrepancy;
    if (c.observed == Observation::CounterexampleFound) {
      cell["certificate_verified"] = c.certificate_verified;
      cell["certificate"] = c.certificate;
    }
    if (!c.note.empty()) cell["note"] = c.note;
    cells.push_back(std::move(cell));
  }
  Json hierarchy = Json::array();
  for (const auto& h : result.hierarchy) {
    hierarchy.push_back(
        {{"implication", h.implication}, {"cases", h.cases}, {"violations", h.violations}});
  }
  Json timing = Json::object();
  for (const auto& [rule, seconds] : result.rule_seconds) timing[to_string(rule)] = seconds;
  return {{"cells", cells}, {"hierarchy", hierarchy}, {"rule_seconds", timing}};
}

std::string render_table(const Table1Result& result) {
  std::ostringstream os;
  os << "property      ";
  for (RuleKind k : kAllRules) {
    std::string name = to_string(k);
    name.resize(10, ' ');
    os << name;
  }
  os << "\n";
  for (Property p : kAllProperties) {
    std::string name = to_string(p);
    name.resize(14, ' ');
    os << name;
    for (RuleKind k : kAllRules) {
      const TableCell& c = result.cell(k, p);
      std::string mark;
      mark += c.expected_positive ? '+' : '-';
      switch (c.observed) {
        case Observation::SupportedBySweep: mark += " ok"; break;
        case Observation::CounterexampleFound: mark += " cex"; break;
        case Observation::GuardRefused: mark += " guard"; break;
      }
      if (c.discrepancy) mark += "!";
      mark.resize(10, ' ');
      os << mark;
    }
    os << "\n";
  }
  for (const auto& h : result.hierarchy) {
    os << h.implication << ": " << h.cases << " cases, " << h.violations << " violations\n";
  }
  return os.str();
}

}  // namespace mudra
