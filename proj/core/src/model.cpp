#include "mudra/model.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

#include "mudra/error.hpp"

namespace mudra {

namespace {

void require_distinct(const std::vector<std::string>& ids, const char* what) {
  std::unordered_set<std::string> seen;
  for (const auto& id : ids) {
    if (id.empty()) throw StructuralError(std::string("empty ") + what + " id");
    if (!seen.insert(id).second) {
      throw StructuralError(std::string("duplicate ") + what + " id '" + id + "'");
    }
  }
}

}  // namespace

Instance::Instance(std::vector<std::string> agents, std::vector<std::string> objects, int quota,
                   BalanceMode mode)
    : agents_(std::move(agents)), objects_(std::move(objects)), quota_(quota), mode_(mode) {
  if (agents_.empty()) throw StructuralError("instance needs at least one agent");
  if (objects_.empty()) throw StructuralError("instance needs at least one object");
  if (quota_ < 1) throw StructuralError("quota must be positive");
  require_distinct(agents_, "agent");
  require_distinct(objects_, "object");
  if (mode_ == BalanceMode::Strict &&
      objects_.size() != agents_.size() * static_cast<std::size_t>(quota_)) {
    std::ostringstream os;
    os << "object count " << objects_.size() << " != agents " << agents_.size() << " x quota "
       << quota_;
    throw StructuralError(os.str());
  }
}

Instance Instance::numbered(std::size_t agents, std::size_t quota) {
  std::vector<std::string> a;
  std::vector<std::string> o;
  for (std::size_t i = 0; i < agents; ++i) a.push_back("agent" + std::to_string(i + 1));
  for (std::size_t j = 0; j < agents * quota; ++j) o.push_back("o" + std::to_string(j + 1));
  return Instance(std::move(a), std::move(o), static_cast<int>(quota));
}

std::optional<AgentIndex> Instance::find_agent(std::string_view id) const {
  const auto it = std::find(agents_.begin(), agents_.end(), id);
  if (it == agents_.end()) return std::nullopt;
  return static_cast<AgentIndex>(it - agents_.begin());
}

std::optional<ObjectIndex> Instance::find_object(std::string_view id) const {
  const auto it = std::find(objects_.begin(), objects_.end(), id);
  if (it == objects_.end()) return std::nullopt;
  return static_cast<ObjectIndex>(it - objects_.begin());
}

Rational Instance::row_target() const {
  if (mode_ == BalanceMode::Relaxed) {
    return Rational(static_cast<long>(objects_.size()), static_cast<long>(agents_.size()));
  }
  return Rational(quota_);
}

void require_strict_order(const Order& order, std::size_t object_count) {
  if (order.size() != object_count) {
    throw StructuralError("order has " + std::to_string(order.size()) + " entries, expected " +
                          std::to_string(object_count));
  }
  std::vector<bool> seen(object_count, false);
  for (ObjectIndex o : order) {
    if (o >= object_count || seen[o]) throw StructuralError("order is not a permutation");
    seen[o] = true;
  }
}

void require_bijection(const Permutation& perm, std::size_t size) {
  if (perm.size() != size) throw StructuralError("permutation has wrong size");
  std::vector<bool> seen(size, false);
  for (std::size_t v : perm) {
    if (v >= size || seen[v]) throw StructuralError("permutation is not a bijection");
    seen[v] = true;
  }
}

Permutation inverse(const Permutation& perm) {
  require_bijection(perm, perm.size());
  Permutation inv(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) inv[perm[i]] = i;
  return inv;
}

Permutation identity_permutation(std::size_t size) {
  Permutation p(size);
  for (std::size_t i = 0; i < size; ++i) p[i] = i;
  return p;
}

// -- PreferenceProfile ----------------------------------------------------

PreferenceProfile::PreferenceProfile(Instance instance, std::vector<Order> orders)
    : instance_(std::move(instance)), orders_(std::move(orders)) {
  if (orders_.size() != instance_.agent_count()) {
    throw StructuralError("profile has " + std::to_string(orders_.size()) +
                          " orders for " + std::to_string(instance_.agent_count()) + " agents");
  }
  const std::size_t m = instance_.object_count();
  ranks_.assign(orders_.size(), std::vector<std::size_t>(m));
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    require_strict_order(orders_[i], m);
    for (std::size_t r = 0; r < m; ++r) ranks_[i][orders_[i][r]] = r;
  }
}

PreferenceProfile PreferenceProfile::with_order(AgentIndex agent, Order order) const {
  auto orders = orders_;
  orders.at(agent) = std::move(order);
  return PreferenceProfile(instance_, std::move(orders));
}

// -- RandomAssignment -----------------------------------------------------

RandomAssignment::RandomAssignment(Instance instance)
    : instance_(std::move(instance)),
      cells_(instance_.agent_count() * instance_.object_count()) {}

RandomAssignment::RandomAssignment(Instance instance,
                                   const std::vector<std::vector<Rational>>& rows)
    : RandomAssignment(std::move(instance)) {
  if (rows.size() != agent_count()) throw StructuralError("matrix row count mismatch");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != object_count()) throw StructuralError("matrix column count mismatch");
    std::copy(rows[i].begin(), rows[i].end(), cells_.begin() + i * object_count());
  }
}

std::vector<std::vector<Rational>> RandomAssignment::rows() const {
  std::vector<std::vector<Rational>> out;
  for (std::size_t i = 0; i < agent_count(); ++i) out.emplace_back(row(i).begin(), row(i).end());
  return out;
}

// -- DiscreteAssignment ---------------------------------------------------

DiscreteAssignment::DiscreteAssignment(Instance instance, std::vector<AgentIndex> owner)
    : instance_(std::move(instance)), owner_(std::move(owner)) {
  if (owner_.size() != instance_.object_count()) {
    throw StructuralError("discrete assignment must give every object an owner");
  }
  for (AgentIndex a : owner_) {
    if (a >= instance_.agent_count()) throw StructuralError("owner out of range");
  }
}

std::vector<ObjectIndex> DiscreteAssignment::bundle(AgentIndex agent) const {
  std::vector<ObjectIndex> out;
  for (ObjectIndex o = 0; o < owner_.size(); ++o) {
    if (owner_[o] == agent) out.push_back(o);
  }
  return out;
}

bool DiscreteAssignment::balanced() const {
  if (instance_.relaxed()) return false;
  std::vector<int> counts(instance_.agent_count(), 0);
  for (AgentIndex a : owner_) ++counts[a];
  return std::all_of(counts.begin(), counts.end(),
                     [&](int k) { return k == instance_.quota(); });
}

// -- feasibility ----------------------------------------------------------

std::string Validity::describe(const Instance& instance) const {
  if (!violation) return "valid";
  std::ostringstream os;
  std::visit(
      [&](const auto& v) {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, EntryOutOfRange>) {
          os << "entry (" << instance.agents()[v.agent] << ", " << instance.objects()[v.object]
             << ") = " << v.value << " outside [0,1]";
        } else if constexpr (std::is_same_v<V, ColumnSumMismatch>) {
          os << "column " << instance.objects()[v.object] << " sums to " << v.sum << ", not 1";
        } else {
          os << "row " << instance.agents()[v.agent] << " sums to " << v.sum << ", not "
             << v.expected;
        }
      },
      *violation);
  return os.str();
}

Validity validate_assignment(const RandomAssignment& p, std::span<const Rational> row_targets) {
  const std::size_t n = p.agent_count();
  const std::size_t m = p.object_count();
  if (row_targets.size() != n) throw StructuralError("row target count mismatch");
  const Rational one(1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t o = 0; o < m; ++o) {
      const Rational& v = p.at(i, o);
      if (v.sign() < 0 || v > one) return {EntryOutOfRange{i, o, v}};
    }
  }
  for (std::size_t o = 0; o < m; ++o) {
    Rational sum;
    for (std::size_t i = 0; i < n; ++i) sum += p.at(i, o);
    if (sum != one) return {ColumnSumMismatch{o, sum}};
  }
  for (std::size_t i = 0; i < n; ++i) {
    Rational sum;
    for (const Rational& v : p.row(i)) sum += v;
    if (sum != row_targets[i]) return {RowSumMismatch{i, sum, row_targets[i]}};
  }
  return {};
}

Validity validate_assignment(const RandomAssignment& p) {
  const std::vector<Rational> targets(p.agent_count(), p.instance().row_target());
  return validate_assignment(p, targets);
}

void require_valid(const RandomAssignment& p) {
  if (p.instance().relaxed()) {
    throw StructuralError("axiom checks require m to be a multiple of n");
  }
  const Validity v = validate_assignment(p);
  if (!v) throw StructuralError("infeasible assignment: " + v.describe(p.instance()));
}

RandomAssignment indicator_matrix(const DiscreteAssignment& d) {
  RandomAssignment p(d.instance());
  for (ObjectIndex o = 0; o < d.owners().size(); ++o) p.at(d.owner(o), o) = Rational(1);
  return p;
}

RandomAssignment discrete_to_random(const DiscreteAssignment& d) {
  if (!d.balanced()) throw StructuralError("discrete assignment is unbalanced");
  return indicator_matrix(d);
}

// -- relabeling -----------------------------------------------------------

PreferenceProfile permute_agents(const PreferenceProfile& profile, const Permutation& pi) {
  require_bijection(pi, profile.agent_count());
  std::vector<Order> orders(profile.agent_count());
  for (std::size_t i = 0; i < pi.size(); ++i) orders[pi[i]] = profile.order(i);
  return PreferenceProfile(profile.instance(), std::move(orders));
}

RandomAssignment permute_agents(const RandomAssignment& p, const Permutation& pi) {
  require_bijection(pi, p.agent_count());
  RandomAssignment out(p.instance());
  for (std::size_t i = 0; i < pi.size(); ++i) {
    for (std::size_t o = 0; o < p.object_count(); ++o) out.at(pi[i], o) = p.at(i, o);
  }
  return out;
}

PreferenceProfile permute_objects(const PreferenceProfile& profile, const Permutation& sigma) {
  require_bijection(sigma, profile.instance().object_count());
  std::vector<Order> orders = profile.orders();
  for (auto& order : orders) {
    for (auto& o : order) o = sigma[o];
  }
  return PreferenceProfile(profile.instance(), std::move(orders));
}

RandomAssignment permute_objects(const RandomAssignment& p, const Permutation& sigma) {
  require_bijection(sigma, p.object_count());
  RandomAssignment out(p.instance());
  for (std::size_t i = 0; i < p.agent_count(); ++i) {
    for (std::size_t o = 0; o < p.object_count(); ++o) out.at(i, sigma[o]) = p.at(i, o);
  }
  return out;
}

}  // namespace mudra
