#include "group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

namespace opdf {

bool FiniteGroup::is_abelian() const {
  for (int s = 0; s < order; ++s)
    for (int t = s + 1; t < order; ++t)
      if (op(s, t) != op(t, s)) return false;
  return true;
}

namespace {

void derive_identity_and_inverses(FiniteGroup& g) {
  const int m = g.order;
  int identity = -1;
  for (int e = 0; e < m; ++e) {
    bool ok = true;
    for (int s = 0; s < m && ok; ++s)
      ok = g.op(e, s) == s && g.op(s, e) == s;
    if (ok) { identity = e; break; }
  }
  if (identity < 0) fail_validation("group axiom violation: no identity element");
  g.identity = identity;
  g.inv.assign(m, -1);
  for (int s = 0; s < m; ++s) {
    for (int t = 0; t < m; ++t) {
      if (g.op(s, t) == identity && g.op(t, s) == identity) { g.inv[s] = t; break; }
    }
    if (g.inv[s] < 0) {
      std::ostringstream os;
      os << "group axiom violation: element " << s << " has no inverse";
      fail_validation(os.str());
    }
  }
}

void check_associativity_exhaustive(const FiniteGroup& g) {
  const int m = g.order;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c)
        if (g.op(g.op(a, b), c) != g.op(a, g.op(b, c))) {
          std::ostringstream os;
          os << "group axiom violation: associativity fails at (" << a << "," << b << "," << c << ")";
          fail_validation(os.str());
        }
}

void check_associativity_sampled(const FiniteGroup& g) {
  const int m = g.order;
  std::mt19937_64 rng(0x5eed);
  std::uniform_int_distribution<int> pick(0, m - 1);
  for (int i = 0; i < 200000; ++i) {
    const int a = pick(rng), b = pick(rng), c = pick(rng);
    if (g.op(g.op(a, b), c) != g.op(a, g.op(b, c))) {
      std::ostringstream os;
      os << "group axiom violation: associativity fails at (" << a << "," << b << "," << c << ")";
      fail_validation(os.str());
    }
  }
}

}  // namespace

FiniteGroup make_cyclic(int n) {
  if (n < 1) fail_validation("make_cyclic: order must be at least 1");
  FiniteGroup g;
  g.order = n;
  g.mul.resize(static_cast<std::size_t>(n) * n);
  g.inv.resize(n);
  for (int i = 0; i < n; ++i) {
    g.inv[i] = (n - i) % n;
    for (int j = 0; j < n; ++j) g.mul[static_cast<std::size_t>(i) * n + j] = (i + j) % n;
  }
  g.identity = 0;
  g.labels.reserve(n);
  for (int i = 0; i < n; ++i) g.labels.push_back(std::to_string(i));
  return g;
}

FiniteGroup make_dihedral(int n) {
  if (n < 1) fail_validation("make_dihedral: order parameter must be at least 1");
  const int m = 2 * n;
  FiniteGroup g;
  g.order = m;
  g.mul.resize(static_cast<std::size_t>(m) * m);
  g.inv.resize(m);
  // Element a*n + k encodes s^a r^k with the relation r s = s r^{-1}.
  auto idx = [n](int a, int k) { return a * n + ((k % n) + n) % n; };
  for (int a1 = 0; a1 < 2; ++a1)
    for (int k1 = 0; k1 < n; ++k1)
      for (int a2 = 0; a2 < 2; ++a2)
        for (int k2 = 0; k2 < n; ++k2) {
          const int lhs = idx(a1, k1), rhs = idx(a2, k2);
          const int out = (a2 == 0) ? idx(a1, k1 + k2) : idx(a1 ^ 1, k2 - k1);
          g.mul[static_cast<std::size_t>(lhs) * m + rhs] = out;
        }
  g.identity = 0;
  for (int a = 0; a < 2; ++a)
    for (int k = 0; k < n; ++k)
      g.inv[idx(a, k)] = (a == 0) ? idx(0, -k) : idx(1, k);
  g.labels.resize(m);
  for (int k = 0; k < n; ++k) {
    g.labels[k] = (k == 0) ? "e" : ("r^" + std::to_string(k));
    g.labels[n + k] = (k == 0) ? "s" : ("s r^" + std::to_string(k));
  }
  return g;
}

std::vector<int> perm_unrank(int n, long long index) {
  std::vector<int> pool(n);
  std::iota(pool.begin(), pool.end(), 0);
  std::vector<long long> fact(n, 1);
  for (int i = 1; i < n; ++i) fact[i] = fact[i - 1] * i;
  std::vector<int> perm;
  perm.reserve(n);
  for (int i = n - 1; i >= 0; --i) {
    const long long f = fact[i];
    const int pos = static_cast<int>(index / f);
    index %= f;
    perm.push_back(pool[pos]);
    pool.erase(pool.begin() + pos);
  }
  return perm;
}

FiniteGroup make_symmetric(int n) {
  if (n < 1) fail_validation("make_symmetric: n must be at least 1");
  if (n > 8) fail_validation("make_symmetric: n > 8 exceeds the table size guard");
  long long m = 1;
  for (int i = 2; i <= n; ++i) m *= i;
  std::vector<std::vector<int>> perms;
  perms.reserve(static_cast<std::size_t>(m));
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  std::map<std::vector<int>, int> index_of;
  for (int i = 0; i < static_cast<int>(perms.size()); ++i) index_of[perms[i]] = i;

  FiniteGroup g;
  g.order = static_cast<int>(m);
  g.mul.resize(static_cast<std::size_t>(m) * m);
  g.inv.resize(g.order);
  std::vector<int> comp(n), invp(n);
  for (int i = 0; i < g.order; ++i) {
    const auto& sigma = perms[i];
    for (int k = 0; k < n; ++k) invp[sigma[k]] = k;
    g.inv[i] = index_of[invp];
    for (int j = 0; j < g.order; ++j) {
      const auto& tau = perms[j];
      for (int k = 0; k < n; ++k) comp[k] = sigma[tau[k]];  // sigma after tau
      g.mul[static_cast<std::size_t>(i) * g.order + j] = index_of[comp];
    }
  }
  g.identity = 0;
  return g;
}

FiniteGroup make_product(const FiniteGroup& a, const FiniteGroup& b) {
  FiniteGroup g;
  g.order = a.order * b.order;
  const int m = g.order;
  g.mul.resize(static_cast<std::size_t>(m) * m);
  g.inv.resize(m);
  auto idx = [&](int x, int y) { return x * b.order + y; };
  for (int x1 = 0; x1 < a.order; ++x1)
    for (int y1 = 0; y1 < b.order; ++y1) {
      const int lhs = idx(x1, y1);
      g.inv[lhs] = idx(a.inverse(x1), b.inverse(y1));
      for (int x2 = 0; x2 < a.order; ++x2)
        for (int y2 = 0; y2 < b.order; ++y2)
          g.mul[static_cast<std::size_t>(lhs) * m + idx(x2, y2)] = idx(a.op(x1, x2), b.op(y1, y2));
    }
  g.identity = idx(a.identity, b.identity);
  g.fully_validated = a.fully_validated && b.fully_validated;
  return g;
}

FiniteGroup make_from_table(const std::vector<std::vector<int>>& table) {
  const int m = static_cast<int>(table.size());
  if (m == 0) fail_validation("make_from_table: empty table");
  FiniteGroup g;
  g.order = m;
  g.mul.resize(static_cast<std::size_t>(m) * m);
  for (int i = 0; i < m; ++i) {
    if (static_cast<int>(table[i].size()) != m)
      fail_validation("make_from_table: table is not square");
    for (int j = 0; j < m; ++j) {
      const int v = table[i][j];
      if (v < 0 || v >= m) {
        std::ostringstream os;
        os << "make_from_table: entry (" << i << "," << j << ") = " << v << " out of range";
        fail_validation(os.str());
      }
      g.mul[static_cast<std::size_t>(i) * m + j] = v;
    }
  }
  derive_identity_and_inverses(g);
  if (m <= 256) {
    check_associativity_exhaustive(g);
    g.fully_validated = true;
  } else {
    check_associativity_sampled(g);
    g.fully_validated = false;
  }
  return g;
}

void validate_group_exhaustive(const FiniteGroup& g) {
  const int m = g.order;
  for (int s = 0; s < m; ++s) {
    if (g.op(g.identity, s) != s || g.op(s, g.identity) != s)
      fail_validation("identity axiom fails");
    if (g.op(s, g.inverse(s)) != g.identity || g.op(g.inverse(s), s) != g.identity)
      fail_validation("inverse axiom fails");
  }
  check_associativity_exhaustive(g);
}

int element_power(const FiniteGroup& g, int s, long long k) {
  int base = s;
  if (k < 0) {
    base = g.inverse(s);
    k = -k;
  }
  int acc = g.identity;
  for (long long i = 0; i < k; ++i) acc = g.op(acc, base);
  return acc;
}

int element_order(const FiniteGroup& g, int s) {
  int acc = s;
  int k = 1;
  while (acc != g.identity) {
    acc = g.op(acc, s);
    ++k;
    if (k > g.order) fail_consistency("element_order: order exceeds group order");
  }
  return k;
}

std::vector<int> closure(const FiniteGroup& g, std::vector<int> gens) {
  for (int x : gens)
    if (x < 0 || x >= g.order) fail_validation("closure: generator index out of range");
  std::vector<char> seen(g.order, 0);
  std::vector<int> queue;
  seen[g.identity] = 1;
  queue.push_back(g.identity);
  for (int x : gens)
    if (!seen[x]) { seen[x] = 1; queue.push_back(x); }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int x = queue[head];
    for (int gen : gens) {
      const int y = g.op(x, gen);
      if (!seen[y]) { seen[y] = 1; queue.push_back(y); }
    }
  }
  std::vector<int> out;
  for (int i = 0; i < g.order; ++i)
    if (seen[i]) out.push_back(i);
  return out;
}

std::vector<int> commutator_subgroup(const FiniteGroup& g) {
  std::set<int> gens;
  for (int s = 0; s < g.order; ++s)
    for (int t = 0; t < g.order; ++t)
      gens.insert(g.op(g.op(s, t), g.op(g.inverse(s), g.inverse(t))));
  return closure(g, std::vector<int>(gens.begin(), gens.end()));
}

std::vector<int> power_subgroup(const FiniteGroup& g, int n) {
  if (n < 1) fail_validation("power_subgroup: n must be at least 1");
  std::set<int> gens;
  for (int s = 0; s < g.order; ++s)
    for (int t = 0; t < g.order; ++t) {
      const int w1 = element_power(g, s, -(n - 1));
      const int w2 = element_power(g, g.op(t, s), n - 1);
      const int w3 = element_power(g, t, -(n - 1));
      gens.insert(g.op(g.op(w1, w2), w3));
    }
  return closure(g, std::vector<int>(gens.begin(), gens.end()));
}

FiniteGroup restrict_to(const FiniteGroup& g, const std::vector<int>& elements) {
  const int m = static_cast<int>(elements.size());
  std::vector<int> position(g.order, -1);
  for (int i = 0; i < m; ++i) {
    if (elements[i] < 0 || elements[i] >= g.order)
      fail_validation("restrict_to: element index out of range");
    position[elements[i]] = i;
  }
  FiniteGroup h;
  h.order = m;
  h.mul.resize(static_cast<std::size_t>(m) * m);
  h.inv.resize(m);
  for (int i = 0; i < m; ++i) {
    const int si = elements[i];
    if (position[g.inverse(si)] < 0)
      fail_validation("restrict_to: set is not closed under inverses");
    h.inv[i] = position[g.inverse(si)];
    for (int j = 0; j < m; ++j) {
      const int p = g.op(si, elements[j]);
      if (position[p] < 0) fail_validation("restrict_to: set is not closed under the operation");
      h.mul[static_cast<std::size_t>(i) * m + j] = position[p];
    }
  }
  if (position[g.identity] < 0) fail_validation("restrict_to: set does not contain the identity");
  h.identity = position[g.identity];
  h.fully_validated = g.fully_validated;
  if (!g.labels.empty()) {
    h.labels.reserve(m);
    for (int e : elements) h.labels.push_back(g.labels[e]);
  }
  return h;
}

MorphismReport validate_morphism(const GroupMorphism& phi) {
  MorphismReport report;
  if (static_cast<int>(phi.map.size()) != phi.source.order)
    fail_validation("morphism map must cover every source element");
  for (int v : phi.map)
    if (v < 0 || v >= phi.target.order) fail_validation("morphism map value out of range");
  report.homomorphism = true;
  for (int s = 0; s < phi.source.order && report.homomorphism; ++s)
    for (int t = 0; t < phi.source.order; ++t)
      if (phi.map[phi.source.op(s, t)] != phi.target.op(phi.map[s], phi.map[t])) {
        report.homomorphism = false;
        report.witness = std::make_pair(s, t);
        break;
      }
  std::set<int> image(phi.map.begin(), phi.map.end());
  report.injective = static_cast<int>(image.size()) == phi.source.order;
  report.surjective = static_cast<int>(image.size()) == phi.target.order;
  return report;
}

namespace {

bool extend_isomorphism(const FiniteGroup& g, const FiniteGroup& h, std::vector<int>& map,
                        std::vector<char>& used, int next) {
  if (next == g.order) return true;
  if (map[next] >= 0) return extend_isomorphism(g, h, map, used, next + 1);
  for (int candidate = 0; candidate < h.order; ++candidate) {
    if (used[candidate]) continue;
    if (element_order(g, next) != element_order(h, candidate)) continue;
    map[next] = candidate;
    used[candidate] = 1;
    bool consistent = true;
    for (int s = 0; s < g.order && consistent; ++s) {
      if (map[s] < 0) continue;
      const int p1 = g.op(next, s), p2 = g.op(s, next);
      const int q1 = h.op(candidate, map[s]), q2 = h.op(map[s], candidate);
      if (map[p1] >= 0 && map[p1] != q1) consistent = false;
      if (map[p2] >= 0 && map[p2] != q2) consistent = false;
    }
    // Pairs whose product only now received an image.
    for (int s = 0; s < g.order && consistent; ++s) {
      if (map[s] < 0) continue;
      for (int t = 0; t < g.order; ++t) {
        if (map[t] < 0) continue;
        if (g.op(s, t) == next && h.op(map[s], map[t]) != candidate) {
          consistent = false;
          break;
        }
      }
    }
    if (consistent && extend_isomorphism(g, h, map, used, next + 1)) return true;
    map[next] = -1;
    used[candidate] = 0;
  }
  return false;
}

}  // namespace

std::optional<std::vector<int>> find_isomorphism(const FiniteGroup& g, const FiniteGroup& h) {
  if (g.order != h.order) return std::nullopt;
  std::vector<int> map(g.order, -1);
  std::vector<char> used(h.order, 0);
  map[g.identity] = h.identity;
  used[h.identity] = 1;
  if (!extend_isomorphism(g, h, map, used, 0)) return std::nullopt;
  GroupMorphism phi{g, h, map};
  if (!validate_morphism(phi).isomorphism()) return std::nullopt;
  return map;
}

}  // namespace opdf
