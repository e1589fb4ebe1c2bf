#include "mudra/io.hpp"

#include <fstream>
#include <sstream>
#include <unordered_set>

#include "mudra/error.hpp"

namespace mudra::io {

namespace {

std::string child(const std::string& path, const std::string& key) { return path + "/" + key; }
std::string child(const std::string& path, std::size_t index) {
  return path + "/" + std::to_string(index);
}

const Json& require_key(const Json& doc, const std::string& path, const char* key) {
  if (!doc.is_object()) throw InputError(path.empty() ? "/" : path, "expected an object");
  const auto it = doc.find(key);
  if (it == doc.end()) throw InputError(path.empty() ? "/" : path, std::string("missing '") + key + "'");
  return *it;
}

std::vector<std::string> string_list(const Json& value, const std::string& path) {
  if (!value.is_array()) throw InputError(path, "expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t k = 0; k < value.size(); ++k) {
    if (!value[k].is_string()) throw InputError(child(path, k), "expected a string");
    out.push_back(value[k].get<std::string>());
  }
  return out;
}

int quota_from_json(const Json& value, const std::string& path) {
  Rational q = rational_from_json(value, path);
  if (!q.is_integer() || q.sign() <= 0) throw InputError(path, "quota must be a positive integer");
  return std::stoi(q.numerator());
}

}  // namespace

Rational rational_from_json(const Json& value, const std::string& path) {
  if (value.is_number_integer()) return Rational(value.get<long>());
  if (value.is_string()) {
    try {
      return Rational::parse(value.get<std::string>());
    } catch (const InputError& e) {
      throw InputError(path, e.what());
    }
  }
  throw InputError(path, "expected a rational string \"p/q\" or an integer");
}

Json to_json(const Rational& r) { return r.str(); }

PreferenceProfile profile_from_json(const Json& doc) {
  const auto objects = string_list(require_key(doc, "", "objects"), "/objects");
  {
    std::unordered_set<std::string> seen;
    for (std::size_t k = 0; k < objects.size(); ++k) {
      if (!seen.insert(objects[k]).second) {
        throw InputError(child("/objects", k), "duplicate object '" + objects[k] + "'");
      }
    }
  }
  const int quota = quota_from_json(require_key(doc, "", "quota"), "/quota");
  bool relaxed = false;
  if (const auto it = doc.find("relaxed"); it != doc.end()) {
    if (!it->is_boolean()) throw InputError("/relaxed", "expected a boolean");
    relaxed = it->get<bool>();
  }
  const Json& prefs = require_key(doc, "", "preferences");
  if (!prefs.is_object() || prefs.empty()) {
    throw InputError("/preferences", "expected a non-empty object of agent orders");
  }
  std::vector<std::string> agents;
  for (const auto& [agent, list] : prefs.items()) agents.push_back(agent);

  std::optional<Instance> instance;
  try {
    instance.emplace(agents, objects, quota, relaxed ? BalanceMode::Relaxed : BalanceMode::Strict);
  } catch (const StructuralError& e) {
    throw InputError("/", e.what());
  }

  std::vector<Order> orders;
  for (const auto& [agent, list] : prefs.items()) {
    const std::string path = child("/preferences", agent);
    const auto ids = string_list(list, path);
    if (ids.size() != objects.size()) {
      throw InputError(path, "order must list all " + std::to_string(objects.size()) + " objects");
    }
    Order order;
    std::vector<bool> seen(objects.size(), false);
    for (std::size_t k = 0; k < ids.size(); ++k) {
      const auto o = instance->find_object(ids[k]);
      if (!o) throw InputError(child(path, k), "unknown object '" + ids[k] + "'");
      if (seen[*o]) throw InputError(child(path, k), "object '" + ids[k] + "' listed twice");
      seen[*o] = true;
      order.push_back(*o);
    }
    orders.push_back(std::move(order));
  }
  return PreferenceProfile(*instance, std::move(orders));
}

Json order_to_json(const Order& order, const Instance& instance) {
  Json list = Json::array();
  for (ObjectIndex o : order) list.push_back(instance.objects()[o]);
  return list;
}

Json to_json(const PreferenceProfile& profile) {
  const Instance& instance = profile.instance();
  Json doc;
  doc["objects"] = instance.objects();
  doc["quota"] = instance.quota();
  if (instance.relaxed()) doc["relaxed"] = true;
  Json prefs = Json::object();
  for (AgentIndex i = 0; i < profile.agent_count(); ++i) {
    prefs[instance.agents()[i]] = order_to_json(profile.order(i), instance);
  }
  doc["preferences"] = std::move(prefs);
  return doc;
}

RandomAssignment assignment_from_json(const Json& doc, const Instance& instance) {
  const Json& matrix = require_key(doc, "", "matrix");
  if (!matrix.is_object()) throw InputError("/matrix", "expected an object keyed by agent");
  if (matrix.size() != instance.agent_count()) {
    throw InputError("/matrix", "expected rows for " + std::to_string(instance.agent_count()) +
                                    " agents");
  }
  RandomAssignment p(instance);
  for (const auto& [agent, row] : matrix.items()) {
    const std::string path = child("/matrix", agent);
    const auto i = instance.find_agent(agent);
    if (!i) throw InputError(path, "unknown agent '" + agent + "'");
    if (!row.is_object() || row.size() != instance.object_count()) {
      throw InputError(path, "expected an entry for each of " +
                                 std::to_string(instance.object_count()) + " objects");
    }
    for (const auto& [object, value] : row.items()) {
      const auto o = instance.find_object(object);
      if (!o) throw InputError(child(path, object), "unknown object '" + object + "'");
      p.at(*i, *o) = rational_from_json(value, child(path, object));
    }
  }
  return p;
}

Json to_json(const RandomAssignment& p) {
  const Instance& instance = p.instance();
  Json matrix = Json::object();
  for (AgentIndex i = 0; i < p.agent_count(); ++i) {
    Json row = Json::object();
    for (ObjectIndex o = 0; o < p.object_count(); ++o) {
      row[instance.objects()[o]] = p.at(i, o).str();
    }
    matrix[instance.agents()[i]] = std::move(row);
  }
  Json doc;
  doc["matrix"] = std::move(matrix);
  return doc;
}

Json to_json(const DiscreteAssignment& d) {
  const Instance& instance = d.instance();
  Json doc = Json::object();
  for (AgentIndex i = 0; i < instance.agent_count(); ++i) {
    doc[instance.agents()[i]] = order_to_json(d.bundle(i), instance);
  }
  return doc;
}

Json to_json(const EatingTrace& trace) {
  const Instance& instance = trace.assignment.instance();
  Json phases = Json::array();
  for (const auto& phase : trace.phases) {
    Json eating = Json::object();
    for (AgentIndex i = 0; i < phase.eating.size(); ++i) {
      eating[instance.agents()[i]] = order_to_json(phase.eating[i], instance);
    }
    phases.push_back({{"start", phase.start.str()}, {"end", phase.end.str()}, {"eating", eating}});
  }
  Json breakpoints = Json::array();
  for (const auto& b : trace.breakpoints()) breakpoints.push_back(b.str());
  return {{"phases", phases}, {"breakpoints", breakpoints}};
}

Json to_json(const EfficiencyVerdict& verdict, const Instance& instance) {
  Json doc;
  doc["property"] = verdict.property;
  doc["holds"] = verdict.holds;
  if (verdict.dominator) {
    doc["dominator"] = to_json(*verdict.dominator)["matrix"];
    doc["surplus"] = verdict.surplus.str();
  }
  if (!verdict.decomposition.empty()) {
    Json terms = Json::array();
    for (const auto& term : verdict.decomposition) {
      terms.push_back({{"weight", term.weight.str()}, {"assignment", to_json(term.assignment)}});
    }
    doc["decomposition"] = std::move(terms);
  }
  if (!verdict.support.empty() || verdict.property == "ex-post") {
    Json support = Json::array();
    for (const auto& d : verdict.support) support.push_back(to_json(d));
    doc["support"] = std::move(support);
  }
  if (!verdict.farkas.empty()) {
    Json farkas = Json::array();
    for (const auto& y : verdict.farkas) farkas.push_back(y.str());
    doc["farkas"] = std::move(farkas);
  }
  if (verdict.perfect) doc["perfect"] = to_json(*verdict.perfect);
  if (!verdict.detail.empty()) doc["detail"] = verdict.detail;
  (void)instance;
  return doc;
}

Json to_json(const EnvyVerdict& verdict, const Instance& instance) {
  Json doc;
  doc["holds"] = verdict.holds;
  if (verdict.certificate) {
    const auto& c = *verdict.certificate;
    Json cert;
    cert["envious"] = instance.agents()[c.envious];
    cert["envied"] = instance.agents()[c.envied];
    if (c.violated_prefix) cert["violated_prefix"] = instance.objects()[*c.violated_prefix];
    Json own = Json::array();
    Json other = Json::array();
    for (const auto& v : c.own_prefix_sums) own.push_back(v.str());
    for (const auto& v : c.envied_prefix_sums) other.push_back(v.str());
    cert["own_prefix_sums"] = std::move(own);
    cert["envied_prefix_sums"] = std::move(other);
    cert["sd_verdict"] = to_string(c.verdict);
    doc["certificate"] = std::move(cert);
  }
  return doc;
}

Json to_json(const Manipulation& m) {
  const Instance& instance = m.truthful.instance();
  Json doc;
  doc["kind"] = to_string(m.kind);
  Json coalition = Json::array();
  Json members = Json::array();
  for (std::size_t k = 0; k < m.coalition.size(); ++k) {
    const AgentIndex a = m.coalition[k];
    coalition.push_back(instance.agents()[a]);
    Json truthful = Json::array();
    Json manipulated = Json::array();
    for (const auto& v : m.truthful_rows[k]) truthful.push_back(v.str());
    for (const auto& v : m.manipulated_rows[k]) manipulated.push_back(v.str());
    members.push_back({{"agent", instance.agents()[a]},
                       {"true_order", order_to_json(m.truthful.order(a), instance)},
                       {"misreport", order_to_json(m.misreports[k], instance)},
                       {"truthful_allocation", truthful},
                       {"manipulated_allocation", manipulated}});
  }
  doc["coalition"] = std::move(coalition);
  doc["members"] = std::move(members);
  doc["profile"] = to_json(m.truthful);
  return doc;
}

Json read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path.string(), "cannot open file");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(path.string(), std::string("invalid JSON: ") + e.what());
  }
}

void write_file(const std::filesystem::path& path, const Json& doc) {
  std::ofstream out(path);
  if (!out) throw InputError(path.string(), "cannot write file");
  out << dump(doc);
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

}  // namespace mudra::io
