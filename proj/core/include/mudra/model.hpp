#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "mudra/rational.hpp"

namespace mudra {

using AgentIndex = std::size_t;
using ObjectIndex = std::size_t;

/// A strict total order over objects, most preferred first.
using Order = std::vector<ObjectIndex>;

/// A bijection on positional indices: index i maps to perm[i].
using Permutation = std::vector<std::size_t>;

/// Whether m must be a multiple of n. Only the eating rules accept
/// `Relaxed`; every axiom checker rejects it.
enum class BalanceMode { Strict, Relaxed };

/// Agents, objects and the per-agent quota c. Ids are opaque strings; all
/// computation is positional.
class Instance {
 public:
  /// Throws StructuralError when ids are empty or duplicated, quota < 1, or
  /// (strict mode) m != n * quota.
  Instance(std::vector<std::string> agents, std::vector<std::string> objects, int quota,
           BalanceMode mode = BalanceMode::Strict);

  /// Instance with ids agent1..agentN and o1..oM and m = n * quota.
  static Instance numbered(std::size_t agents, std::size_t quota);

  std::size_t agent_count() const { return agents_.size(); }
  std::size_t object_count() const { return objects_.size(); }
  int quota() const { return quota_; }
  bool relaxed() const { return mode_ == BalanceMode::Relaxed; }
  BalanceMode mode() const { return mode_; }

  const std::vector<std::string>& agents() const { return agents_; }
  const std::vector<std::string>& objects() const { return objects_; }
  std::optional<AgentIndex> find_agent(std::string_view id) const;
  std::optional<ObjectIndex> find_object(std::string_view id) const;

  /// Required row sum: c, or m/n in relaxed mode.
  Rational row_target() const;

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  std::vector<std::string> agents_;
  std::vector<std::string> objects_;
  int quota_;
  BalanceMode mode_;
};

/// Throws StructuralError if `order` is not a permutation of 0..m-1.
void require_strict_order(const Order& order, std::size_t object_count);

/// Throws StructuralError if `perm` is not a bijection on 0..size-1.
void require_bijection(const Permutation& perm, std::size_t size);

Permutation inverse(const Permutation& perm);
Permutation identity_permutation(std::size_t size);

class PreferenceProfile {
 public:
  PreferenceProfile(Instance instance, std::vector<Order> orders);

  const Instance& instance() const { return instance_; }
  std::size_t agent_count() const { return orders_.size(); }
  const std::vector<Order>& orders() const { return orders_; }
  const Order& order(AgentIndex agent) const { return orders_.at(agent); }
  /// 0 for the agent's favourite object.
  std::size_t rank(AgentIndex agent, ObjectIndex object) const {
    return ranks_[agent][object];
  }

  /// Same instance, with `agent` reporting `order` instead.
  PreferenceProfile with_order(AgentIndex agent, Order order) const;

  friend bool operator==(const PreferenceProfile& a, const PreferenceProfile& b) {
    return a.instance_ == b.instance_ && a.orders_ == b.orders_;
  }

 private:
  Instance instance_;
  std::vector<Order> orders_;
  std::vector<std::vector<std::size_t>> ranks_;
};

/// An n x m matrix of probabilities indexed [agent][object]. Construction
/// only checks dimensions; `validate_assignment` checks feasibility.
class RandomAssignment {
 public:
  explicit RandomAssignment(Instance instance);
  /// Throws StructuralError when the grid is not n x m.
  RandomAssignment(Instance instance, const std::vector<std::vector<Rational>>& rows);

  const Instance& instance() const { return instance_; }
  std::size_t agent_count() const { return instance_.agent_count(); }
  std::size_t object_count() const { return instance_.object_count(); }

  const Rational& at(AgentIndex agent, ObjectIndex object) const {
    return cells_[agent * object_count() + object];
  }
  Rational& at(AgentIndex agent, ObjectIndex object) {
    return cells_[agent * object_count() + object];
  }
  std::span<const Rational> row(AgentIndex agent) const {
    return {cells_.data() + agent * object_count(), object_count()};
  }
  /// Row-major copy of every cell.
  const std::vector<Rational>& cells() const { return cells_; }
  std::vector<std::vector<Rational>> rows() const;

  friend bool operator==(const RandomAssignment& a, const RandomAssignment& b) {
    return a.instance_ == b.instance_ && a.cells_ == b.cells_;
  }

 private:
  Instance instance_;
  std::vector<Rational> cells_;
};

/// A deterministic allocation: each object has exactly one owner. Balanced
/// when every agent owns exactly c objects.
class DiscreteAssignment {
 public:
  /// Throws StructuralError on size mismatch or out-of-range owners.
  DiscreteAssignment(Instance instance, std::vector<AgentIndex> owner);

  const Instance& instance() const { return instance_; }
  const std::vector<AgentIndex>& owners() const { return owner_; }
  AgentIndex owner(ObjectIndex object) const { return owner_.at(object); }
  std::vector<ObjectIndex> bundle(AgentIndex agent) const;
  bool balanced() const;

  friend bool operator==(const DiscreteAssignment& a, const DiscreteAssignment& b) {
    return a.instance_ == b.instance_ && a.owner_ == b.owner_;
  }
  friend bool operator<(const DiscreteAssignment& a, const DiscreteAssignment& b) {
    return a.owner_ < b.owner_;
  }

 private:
  Instance instance_;
  std::vector<AgentIndex> owner_;
};

// -- feasibility ----------------------------------------------------------

struct EntryOutOfRange {
  AgentIndex agent;
  ObjectIndex object;
  Rational value;
};
struct ColumnSumMismatch {
  ObjectIndex object;
  Rational sum;
};
struct RowSumMismatch {
  AgentIndex agent;
  Rational sum;
  Rational expected;
};

/// Result of `validate_assignment`: empty on success, otherwise the first
/// violated constraint in the order entries, columns, rows.
struct Validity {
  std::optional<std::variant<EntryOutOfRange, ColumnSumMismatch, RowSumMismatch>> violation;

  explicit operator bool() const { return !violation.has_value(); }
  std::string describe(const Instance& instance) const;
};

Validity validate_assignment(const RandomAssignment& p);

/// Same as validate_assignment with explicit row targets (one per agent);
/// used for unbalanced discrete assignments.
Validity validate_assignment(const RandomAssignment& p, std::span<const Rational> row_targets);

/// Throws StructuralError for a relaxed instance, or one whose matrix is
/// infeasible. Checkers call this on entry.
void require_valid(const RandomAssignment& p);

/// 0/1 matrix with a 1 at (owner(o), o). Throws StructuralError when `d` is
/// unbalanced.
RandomAssignment discrete_to_random(const DiscreteAssignment& d);

/// Same 0/1 matrix but without the balance requirement; the result may
/// violate row sums.
RandomAssignment indicator_matrix(const DiscreteAssignment& d);

// -- relabeling -----------------------------------------------------------

/// Agent i's data moves to position pi[i].
PreferenceProfile permute_agents(const PreferenceProfile& profile, const Permutation& pi);
RandomAssignment permute_agents(const RandomAssignment& p, const Permutation& pi);

/// Object o is renamed to sigma[o] everywhere.
PreferenceProfile permute_objects(const PreferenceProfile& profile, const Permutation& sigma);
RandomAssignment permute_objects(const RandomAssignment& p, const Permutation& sigma);

}  // namespace mudra
