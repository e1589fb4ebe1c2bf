// mudra: command-line front end for computing random assignments and
// checking them against efficiency, fairness and incentive axioms.

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mudra/efficiency.hpp"
#include "mudra/enumerate.hpp"
#include "mudra/error.hpp"
#include "mudra/fairness.hpp"
#include "mudra/io.hpp"
#include "mudra/reproduce.hpp"
#include "mudra/rules.hpp"
#include "mudra/strategy.hpp"
#include "mudra/table1.hpp"

namespace {

using mudra::io::Json;

struct GlobalOptions {
  bool json = false;
  std::size_t guard = 0;  // 0: default or MUDRA_GUARD
  std::size_t workers = 0;
};

std::size_t effective_guard(const GlobalOptions& g, std::size_t fallback) {
  if (g.guard > 0) return g.guard;
  return mudra::guard_from_environment(fallback);
}

std::vector<std::string> split_ids(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::size_t agent_by_id(const mudra::Instance& instance, const std::string& id) {
  if (auto a = instance.find_agent(id)) return *a;
  throw mudra::InputError("", "unknown agent '" + id + "'");
}

// The k-th listed id is the new label of the k-th id in instance order.
mudra::Permutation permutation_from_ids(const std::vector<std::string>& known,
                                        const std::vector<std::string>& listed) {
  if (listed.size() != known.size()) {
    throw mudra::InputError("--permutation", "must list every id exactly once");
  }
  mudra::Permutation perm;
  for (const auto& id : listed) {
    const auto it = std::find(known.begin(), known.end(), id);
    if (it == known.end()) throw mudra::InputError("--permutation", "unknown id '" + id + "'");
    perm.push_back(static_cast<std::size_t>(it - known.begin()));
  }
  try {
    mudra::require_bijection(perm, known.size());
  } catch (const mudra::StructuralError& e) {
    throw mudra::InputError("--permutation", e.what());
  }
  return perm;
}

mudra::RuleKind rule_kind(const std::string& name) {
  if (auto k = mudra::parse_rule_kind(name)) return *k;
  throw mudra::InputError("--rule", "unknown rule '" + name + "'");
}

std::string matrix_table(const mudra::RandomAssignment& p) {
  std::ostringstream os;
  const auto& inst = p.instance();
  os << "        ";
  for (const auto& o : inst.objects()) os << o << "\t";
  os << "\n";
  for (std::size_t i = 0; i < p.agent_count(); ++i) {
    os << inst.agents()[i] << "\t";
    for (std::size_t o = 0; o < p.object_count(); ++o) os << p.at(i, o) << "\t";
    os << "\n";
  }
  return os.str();
}

void emit(const GlobalOptions& g, const Json& doc, const std::string& human) {
  if (g.json) {
    std::cout << mudra::io::dump(doc);
  } else {
    std::cout << human;
  }
}

// -- compute ----------------------------------------------------------------

struct ComputeOptions {
  std::string rule;
  std::string profile;
  std::string permutation;
  bool trace = false;
};

int run_compute(const GlobalOptions& g, const ComputeOptions& o) {
  const auto profile = mudra::io::profile_from_json(mudra::io::read_file(o.profile));
  const mudra::RuleKind kind = rule_kind(o.rule);
  Json doc;
  std::optional<mudra::EatingTrace> trace;
  std::optional<mudra::RandomAssignment> result;
  switch (kind) {
    case mudra::RuleKind::Mps: trace = mudra::mps_trace(profile); break;
    case mudra::RuleKind::Ops: trace = mudra::ops_trace(profile); break;
    case mudra::RuleKind::Priority: {
      mudra::Permutation order = mudra::identity_permutation(profile.agent_count());
      if (!o.permutation.empty()) {
        order.clear();
        const auto ids = split_ids(o.permutation);
        for (const auto& id : ids) order.push_back(agent_by_id(profile.instance(), id));
        try {
          mudra::require_bijection(order, profile.agent_count());
        } catch (const mudra::StructuralError& e) {
          throw mudra::InputError("--permutation", e.what());
        }
      }
      const auto d = mudra::serial_dictator(profile, order);
      doc["bundles"] = mudra::io::to_json(d);
      result = mudra::discrete_to_random(d);
      break;
    }
    case mudra::RuleKind::RandomPriority:
      result = mudra::random_priority(profile, effective_guard(g, mudra::kDefaultRandomPriorityCap));
      break;
    case mudra::RuleKind::Uniform: result = mudra::uniform(profile.instance()); break;
  }
  if (trace) result = trace->assignment;
  doc["rule"] = o.rule;
  doc["matrix"] = mudra::io::to_json(*result)["matrix"];
  std::string human = matrix_table(*result);
  if (o.trace && trace) {
    doc["trace"] = mudra::io::to_json(*trace);
    std::ostringstream os;
    for (const auto& phase : trace->phases) {
      os << "[" << phase.start << ", " << phase.end << "]";
      for (std::size_t i = 0; i < phase.eating.size(); ++i) {
        os << "  " << profile.instance().agents()[i] << ":{";
        for (std::size_t k = 0; k < phase.eating[i].size(); ++k) {
          os << (k ? "," : "") << profile.instance().objects()[phase.eating[i][k]];
        }
        os << "}";
      }
      os << "\n";
    }
    human = os.str() + human;
  }
  emit(g, doc, human);
  return mudra::kExitOk;
}

// -- check ------------------------------------------------------------------

struct CheckOptions {
  std::string property;
  std::string profile;
  std::string assignment;
  std::string rule;
  std::string permutation;
  bool allow_unbalanced = false;
};

int run_check(const GlobalOptions& g, const CheckOptions& o) {
  const auto profile = mudra::io::profile_from_json(mudra::io::read_file(o.profile));
  const auto& instance = profile.instance();
  auto load_assignment = [&] {
    if (o.assignment.empty()) {
      throw mudra::InputError("--assignment", "required for property '" + o.property + "'");
    }
    return mudra::io::assignment_from_json(mudra::io::read_file(o.assignment), instance);
  };
  auto load_rule = [&] {
    if (o.rule.empty()) throw mudra::InputError("--rule", "required for '" + o.property + "'");
    return mudra::make_rule(rule_kind(o.rule));
  };

  mudra::VerificationReport report;
  report.command = "check --property " + o.property;
  report.property = o.property;
  report.domain = {{"profile", mudra::io::to_json(profile)}};
  Json verdict_json;
  bool holds = false;
  const std::size_t cap = effective_guard(g, mudra::kDefaultEnumerationCap);

  if (o.property == "sd-efficient") {
    const auto p = load_assignment();
    const auto v = mudra::is_sd_efficient(p, profile);
    holds = v.holds;
    verdict_json = mudra::io::to_json(v, instance);
  } else if (o.property == "ex-post") {
    const auto p = load_assignment();
    const auto v = mudra::is_ex_post_efficient(p, profile, o.allow_unbalanced, cap);
    holds = v.holds;
    verdict_json = mudra::io::to_json(v, instance);
  } else if (o.property == "perfect") {
    const auto p = load_assignment();
    mudra::require_valid(p);
    const auto perfect = mudra::perfect_assignment(profile);
    holds = perfect && p == mudra::discrete_to_random(*perfect);
    verdict_json = {{"property", "perfect"}, {"holds", holds}};
    if (perfect) verdict_json["perfect"] = mudra::io::to_json(*perfect);
  } else if (o.property == "unanimity") {
    mudra::EfficiencyVerdict v;
    if (!o.rule.empty()) {
      v = mudra::check_unanimity(load_rule(), profile);
    } else {
      const auto p = load_assignment();
      const mudra::Rule fixed{"assignment", [p](const mudra::PreferenceProfile&) { return p; }};
      v = mudra::check_unanimity(fixed, profile);
    }
    holds = v.holds;
    verdict_json = mudra::io::to_json(v, instance);
  } else if (o.property == "sd-ef" || o.property == "weak-sd-ef") {
    const auto p = load_assignment();
    const auto v = o.property == "sd-ef" ? mudra::is_sd_envy_free(p, profile)
                                         : mudra::is_weak_sd_envy_free(p, profile);
    holds = v.holds;
    verdict_json = mudra::io::to_json(v, instance);
  } else if (o.property == "anonymity" || o.property == "neutrality") {
    const bool agents = o.property == "anonymity";
    const mudra::Rule rule = load_rule();
    const auto& ids = agents ? instance.agents() : instance.objects();
    std::vector<mudra::Permutation> perms;
    if (!o.permutation.empty()) {
      perms.push_back(permutation_from_ids(ids, split_ids(o.permutation)));
    } else {
      mudra::Permutation p = mudra::identity_permutation(ids.size());
      do perms.push_back(p);
      while (std::next_permutation(p.begin(), p.end()));
    }
    holds = true;
    verdict_json = {{"property", o.property}, {"permutations_checked", perms.size()}};
    for (const auto& perm : perms) {
      const auto v = agents ? mudra::check_anonymity(rule, profile, perm)
                            : mudra::check_neutrality(rule, profile, perm);
      if (v.holds) continue;
      holds = false;
      Json mapping = Json::object();
      for (std::size_t k = 0; k < perm.size(); ++k) mapping[ids[k]] = ids[perm[k]];
      verdict_json["permutation"] = mapping;
      verdict_json["relabelled_output"] = mudra::io::to_json(v.expected)["matrix"];
      verdict_json["output_on_relabelled_profile"] = mudra::io::to_json(v.observed)["matrix"];
      break;
    }
    verdict_json["holds"] = holds;
  } else {
    throw mudra::InputError("--property", "unknown property '" + o.property + "'");
  }

  report.verdict = holds;
  report.exit_code = holds ? mudra::kExitOk : mudra::kExitDiscrepancy;
  report.certificates.push_back(verdict_json);
  emit(g, mudra::to_json(report),
       o.property + ": " + (holds ? "holds" : "fails") + "\n" + verdict_json.dump(2) + "\n");
  return report.exit_code;
}

// -- manipulate -------------------------------------------------------------

struct ManipulateOptions {
  std::string rule;
  std::string profile;
  std::string agent;
  std::string coalition;
  std::string kind;
};

int run_manipulate(const GlobalOptions& g, const ManipulateOptions& o) {
  const auto profile = mudra::io::profile_from_json(mudra::io::read_file(o.profile));
  const mudra::Rule rule = mudra::make_rule(rule_kind(o.rule));
  std::optional<mudra::Manipulation> found;
  const std::size_t guard = effective_guard(g, mudra::kDefaultJointGuard);
  if (o.kind == "group") {
    if (o.coalition.empty()) {
      found = mudra::find_any_group_manipulation(rule, profile, profile.agent_count(), guard);
    } else {
      std::vector<mudra::AgentIndex> members;
      for (const auto& id : split_ids(o.coalition)) members.push_back(agent_by_id(profile.instance(), id));
      found = mudra::find_group_manipulation(rule, profile, members, guard);
    }
  } else {
    std::vector<mudra::AgentIndex> agents;
    if (!o.agent.empty()) {
      agents.push_back(agent_by_id(profile.instance(), o.agent));
    } else {
      for (mudra::AgentIndex a = 0; a < profile.agent_count(); ++a) agents.push_back(a);
    }
    for (auto a : agents) {
      if (o.kind == "sd") {
        found = mudra::find_sd_manipulation(rule, profile, a);
      } else if (o.kind == "weak-sd") {
        found = mudra::find_weak_sd_manipulation(rule, profile, a);
      } else if (o.kind == "dl") {
        found = mudra::find_dl_manipulation(rule, profile, a);
      } else {
        throw mudra::InputError("--kind", "unknown kind '" + o.kind + "'");
      }
      if (found) break;
    }
  }
  if (!found) {
    emit(g, Json("none"), "none\n");
    return mudra::kExitOk;
  }
  const Json doc = mudra::io::to_json(*found);
  emit(g, doc, doc.dump(2) + "\n");
  return mudra::kExitDiscrepancy;
}

// -- enumerate --------------------------------------------------------------

struct EnumerateOptions {
  std::size_t agents = 2;
  std::size_t objects = 4;
  std::size_t quota = 2;
  std::string what = "profiles";
  bool unbalanced = false;
  bool count_only = false;
};

int run_enumerate(const GlobalOptions& g, const EnumerateOptions& o) {
  Json items = Json::array();
  std::size_t count = 0;
  if (o.what == "profiles") {
    const auto profiles = mudra::enumerate_profiles(o.agents, o.objects, o.quota,
                                                    effective_guard(g, mudra::kDefaultProfileGuard));
    count = profiles.size();
    if (!o.count_only) {
      for (const auto& p : profiles) items.push_back(mudra::io::to_json(p));
    }
  } else if (o.what == "discrete") {
    if (o.objects != o.agents * o.quota) {
      throw mudra::InputError("--objects", "must equal agents x quota");
    }
    const auto instance = mudra::Instance::numbered(o.agents, o.quota);
    const auto all = mudra::enumerate_discrete(instance, !o.unbalanced,
                                               effective_guard(g, mudra::kDefaultEnumerationCap));
    count = all.size();
    if (!o.count_only) {
      for (const auto& d : all) items.push_back(mudra::io::to_json(d));
    }
  } else if (o.what == "orders") {
    const auto orders = mudra::all_strict_orders(o.objects);
    const auto instance = mudra::Instance(std::vector<std::string>{"agent1"},
                                          mudra::Instance::numbered(1, o.objects).objects(),
                                          static_cast<int>(o.objects));
    count = orders.size();
    if (!o.count_only) {
      for (const auto& order : orders) items.push_back(mudra::io::order_to_json(order, instance));
    }
  } else {
    throw mudra::InputError("--what", "expected profiles, discrete or orders");
  }
  Json doc = {{"what", o.what}, {"count", count}};
  if (!o.count_only) doc["items"] = items;
  std::string human = std::to_string(count) + " " + o.what + "\n";
  if (!o.count_only) {
    for (const auto& item : items) human += item.dump() + "\n";
  }
  emit(g, doc, human);
  return mudra::kExitOk;
}

// -- reproduce / table1 -----------------------------------------------------

mudra::Table1Config table_config(const GlobalOptions& g, bool no_search) {
  mudra::Table1Config config;
  config.workers = g.workers;
  config.guard = effective_guard(g, mudra::kDefaultProfileGuard);
  if (no_search) config.search_domains.clear();
  return config;
}

int run_reproduce(const GlobalOptions& g, const std::string& id, bool no_search) {
  const auto report = mudra::reproduce(id, table_config(g, no_search));
  emit(g, mudra::to_json(report), mudra::render(report));
  return report.exit_code;
}

int run_table1(const GlobalOptions& g, bool no_search) {
  const auto result = mudra::table1_sweep(table_config(g, no_search));
  emit(g, mudra::to_json(result), mudra::render_table(result));
  if (result.has_discrepancy()) return mudra::kExitDiscrepancy;
  if (result.has_guard_refusal()) return mudra::kExitGuardRefusal;
  return mudra::kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random assignment rules and axiom checks in exact arithmetic"};
  app.require_subcommand(1);
  app.fallthrough();
  GlobalOptions g;
  app.add_flag("--json", g.json, "Emit JSON instead of human-readable tables");
  app.add_option("--guard", g.guard, "Cap on enumeration sizes (overrides MUDRA_GUARD)");
  app.add_option("--workers", g.workers, "Worker threads for sweeps (0 = all cores)");

  ComputeOptions compute;
  auto* c = app.add_subcommand("compute", "Apply an assignment rule to a profile");
  c->add_option("--rule", compute.rule, "uniform|priority|rp|ops|mps")->required();
  c->add_option("--profile", compute.profile, "Profile JSON file")->required();
  c->add_option("--permutation", compute.permutation, "Priority order for 'priority', e.g. agent2,agent1");
  c->add_flag("--trace", compute.trace, "Include the eating trace for ops/mps");

  CheckOptions check;
  auto* k = app.add_subcommand("check", "Check an assignment or rule against a property");
  k->add_option("--property", check.property,
                "sd-efficient|ex-post|unanimity|perfect|sd-ef|weak-sd-ef|anonymity|neutrality")
      ->required();
  k->add_option("--profile", check.profile, "Profile JSON file")->required();
  k->add_option("--assignment", check.assignment, "Assignment JSON file");
  k->add_option("--rule", check.rule, "Rule for unanimity, anonymity and neutrality");
  k->add_option("--permutation", check.permutation, "Relabelling as comma-separated ids");
  k->add_flag("--allow-unbalanced", check.allow_unbalanced,
              "Ex-post: mix over unbalanced discrete assignments too");

  ManipulateOptions manipulate;
  auto* m = app.add_subcommand("manipulate", "Search for a profitable misreport");
  m->add_option("--rule", manipulate.rule, "uniform|priority|rp|ops|mps")->required();
  m->add_option("--profile", manipulate.profile, "Profile JSON file")->required();
  m->add_option("--agent", manipulate.agent, "Agent id (default: every agent in turn)");
  m->add_option("--coalition", manipulate.coalition, "Comma-separated agent ids for --kind group");
  m->add_option("--kind", manipulate.kind, "sd|weak-sd|dl|group")->required();

  std::string case_id;
  bool reproduce_no_search = false;
  auto* r = app.add_subcommand("reproduce", "Run a scripted reference case");
  r->add_option("case", case_id, "figure1|expost|pareto-decomp|theorem1|theorem2|example1|table1")
      ->required();
  r->add_flag("--no-search", reproduce_no_search, "table1: skip the n=m=4 search domain");

  bool table_no_search = false;
  auto* t = app.add_subcommand("table1", "Sweep every rule x property cell of the comparison table");
  t->add_flag("--no-search", table_no_search, "Skip the n=m=4 search domain");

  EnumerateOptions enumerate;
  auto* e = app.add_subcommand("enumerate", "List profiles, discrete assignments or orders");
  e->add_option("--agents", enumerate.agents, "Number of agents");
  e->add_option("--objects", enumerate.objects, "Number of objects");
  e->add_option("--quota", enumerate.quota, "Objects per agent");
  e->add_option("--what", enumerate.what, "profiles|discrete|orders");
  e->add_flag("--unbalanced", enumerate.unbalanced, "discrete: include unbalanced assignments");
  e->add_flag("--count", enumerate.count_only, "Print only the count");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : mudra::kExitInputError;
  }

  try {
    if (*c) return run_compute(g, compute);
    if (*k) return run_check(g, check);
    if (*m) return run_manipulate(g, manipulate);
    if (*r) return run_reproduce(g, case_id, reproduce_no_search);
    if (*t) return run_table1(g, table_no_search);
    if (*e) return run_enumerate(g, enumerate);
  } catch (const mudra::GuardError& err) {
    std::cerr << "guard refusal: " << err.what() << "\n";
    return mudra::kExitGuardRefusal;
  } catch (const mudra::InputError& err) {
    std::cerr << "input error: " << err.what() << "\n";
    return mudra::kExitInputError;
  } catch (const mudra::StructuralError& err) {
    std::cerr << "input error: " << err.what() << "\n";
    return mudra::kExitInputError;
  } catch (const mudra::Error& err) {
    std::cerr << "internal error: " << err.what() << "\n";
    return mudra::kExitDiscrepancy;
  }
  return mudra::kExitOk;
}
