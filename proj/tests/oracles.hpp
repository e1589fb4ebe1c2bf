#pragma once

// Straightforward reimplementations used to cross-check the library. They
// share the data types but none of the algorithms.

#include <algorithm>
#include <numeric>
#include <vector>

#include "mudra/model.hpp"
#include "mudra/rational.hpp"

namespace mudra::oracle {

// Probability of the upper contour set of `object`, summed by scanning every
// object and comparing ranks.
inline Rational contour(std::span<const Rational> a, const Order& order, ObjectIndex object) {
  std::vector<std::size_t> rank(order.size());
  for (std::size_t r = 0; r < order.size(); ++r) rank[order[r]] = r;
  Rational sum;
  for (ObjectIndex x = 0; x < a.size(); ++x) {
    if (rank[x] <= rank[object]) sum += a[x];
  }
  return sum;
}

inline bool sd_weak(std::span<const Rational> a, std::span<const Rational> b, const Order& order) {
  for (ObjectIndex o = 0; o < a.size(); ++o) {
    if (contour(a, order, o) < contour(b, order, o)) return false;
  }
  return true;
}

inline bool sd_strict(std::span<const Rational> a, std::span<const Rational> b, const Order& order) {
  return sd_weak(a, b, order) && !sd_weak(b, a, order);
}

inline bool dl_better(std::span<const Rational> a, std::span<const Rational> b, const Order& order) {
  for (ObjectIndex o : order) {
    if (a[o] != b[o]) return a[o] > b[o];
  }
  return false;
}

// Every agent takes its `bite` most preferred objects with positive supply
// (fewer once fewer remain) at unit speed. Time advances over a fixed grid of
// width 1/grid, clipped whenever some object runs out inside a cell.
inline std::vector<std::vector<Rational>> eat(const PreferenceProfile& profile, std::size_t bite,
                                              long grid = 64) {
  const std::size_t n = profile.agent_count();
  const std::size_t m = profile.instance().object_count();
  std::vector<Rational> supply(m, Rational(1));
  std::vector<std::vector<Rational>> got(n, std::vector<Rational>(m));
  const Rational cell(1, grid);
  Rational t;
  Rational next_grid = cell;
  for (;;) {
    std::size_t alive = 0;
    for (const auto& s : supply) alive += s.sign() > 0 ? 1 : 0;
    if (alive == 0) break;
    const std::size_t k = std::min(bite, alive);
    std::vector<std::vector<ObjectIndex>> menu(n);
    std::vector<long> eaters(m, 0);
    for (std::size_t i = 0; i < n; ++i) {
      for (ObjectIndex o : profile.order(i)) {
        if (menu[i].size() == k) break;
        if (supply[o].sign() > 0) {
          menu[i].push_back(o);
          ++eaters[o];
        }
      }
    }
    Rational step = next_grid - t;
    for (ObjectIndex o = 0; o < m; ++o) {
      if (eaters[o] > 0) step = min(step, supply[o] / Rational(eaters[o]));
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (ObjectIndex o : menu[i]) got[i][o] += step;
    }
    for (ObjectIndex o = 0; o < m; ++o) {
      if (eaters[o] > 0) supply[o] -= step * Rational(eaters[o]);
    }
    t += step;
    if (t == next_grid) next_grid += cell;
  }
  return got;
}

// Agent priority[0] picks its c favourites first, and so on.
inline std::vector<std::vector<Rational>> dictator(const PreferenceProfile& profile,
                                                   const std::vector<std::size_t>& priority) {
  const std::size_t m = profile.instance().object_count();
  const std::size_t c = static_cast<std::size_t>(profile.instance().quota());
  std::vector<bool> taken(m, false);
  std::vector<std::vector<Rational>> out(profile.agent_count(), std::vector<Rational>(m));
  for (std::size_t agent : priority) {
    std::size_t picked = 0;
    for (ObjectIndex o : profile.order(agent)) {
      if (picked == c) break;
      if (!taken[o]) {
        taken[o] = true;
        out[agent][o] = 1;
        ++picked;
      }
    }
  }
  return out;
}

inline std::vector<std::vector<Rational>> random_priority(const PreferenceProfile& profile) {
  const std::size_t n = profile.agent_count();
  const std::size_t m = profile.instance().object_count();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<Rational>> sum(n, std::vector<Rational>(m));
  long count = 0;
  do {
    const auto d = dictator(profile, perm);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t o = 0; o < m; ++o) sum[i][o] += d[i][o];
    }
    ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  for (auto& row : sum) {
    for (auto& x : row) x /= Rational(count);
  }
  return sum;
}

// Balanced owner maps, generated by brute force over n^m and filtered.
inline std::vector<std::vector<std::vector<Rational>>> balanced_discrete(std::size_t n, std::size_t c) {
  const std::size_t m = n * c;
  std::vector<std::vector<std::vector<Rational>>> out;
  std::vector<std::size_t> owner(m, 0);
  for (;;) {
    std::vector<std::size_t> load(n, 0);
    for (auto a : owner) ++load[a];
    if (std::all_of(load.begin(), load.end(), [&](std::size_t l) { return l == c; })) {
      std::vector<std::vector<Rational>> rows(n, std::vector<Rational>(m));
      for (std::size_t o = 0; o < m; ++o) rows[owner[o]][o] = 1;
      out.push_back(rows);
    }
    std::size_t k = m;
    while (k > 0 && ++owner[k - 1] == n) owner[--k] = 0;
    if (k == 0) break;
  }
  return out;
}

// True when some other balanced discrete assignment SD-dominates `rows`.
inline bool discretely_dominated(const std::vector<std::vector<Rational>>& rows,
                                 const PreferenceProfile& profile) {
  const std::size_t n = profile.agent_count();
  const auto all = balanced_discrete(n, static_cast<std::size_t>(profile.instance().quota()));
  for (const auto& other : all) {
    bool weak = true;
    bool strict = false;
    for (std::size_t i = 0; i < n && weak; ++i) {
      weak = sd_weak(other[i], rows[i], profile.order(i));
      strict = strict || (weak && !sd_weak(rows[i], other[i], profile.order(i)));
    }
    if (weak && strict) return true;
  }
  return false;
}

}  // namespace mudra::oracle
