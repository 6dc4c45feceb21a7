#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "dpalpha/errors.hpp"
#include "dpalpha/int_matrix.hpp"
#include "dpalpha/perm.hpp"
#include "dpalpha/perm_group.hpp"

namespace dpa {

// Divisor class in the blow-up basis (H, E_1, ..., E_{9-d}); the intersection
// form is diag(+1, -1, ..., -1).
using PicVector = std::vector<long>;

inline void check_degree(int d) {
  if (d < 1 || d > 7)
    throw DomainError("unsupported degree " + std::to_string(d) + " (supported: 1..7)");
}

inline long pairing(const PicVector& u, const PicVector& v) {
  if (u.size() != v.size()) throw DomainError("pairing: dimension mismatch");
  long s = u[0] * v[0];
  for (size_t i = 1; i < u.size(); ++i) s -= u[i] * v[i];
  return s;
}

// -K = 3H - E_1 - ... - E_{9-d}
inline PicVector anticanonical(int d) {
  check_degree(d);
  PicVector k(10 - d, -1);
  k[0] = 3;
  return k;
}

inline int line_count(int d) {
  static constexpr int counts[] = {240, 56, 27, 16, 10, 6, 3};
  check_degree(d);
  return counts[d - 1];
}

struct LineConfiguration {
  int degree = 0;
  std::vector<PicVector> lines;        // lexicographically sorted
  std::vector<std::vector<int>> gram;  // pairwise intersection numbers
};

namespace detail {

// Enumerate v with sum v_i = target_sum, sum v_i^2 = target_sq via recursion
// with Cauchy-Schwarz pruning.
inline void line_search(std::vector<long>& v, size_t pos, long rem_sum, long rem_sq,
                        std::vector<PicVector>& out) {
  size_t m = v.size() - pos;
  if (m == 0) {
    if (rem_sum == 0 && rem_sq == 0) out.push_back(v);
    return;
  }
  if (rem_sq < 0 || rem_sum * rem_sum > rem_sq * static_cast<long>(m)) return;
  long b = static_cast<long>(std::sqrt(static_cast<double>(rem_sq))) + 1;
  for (long x = -b; x <= b; ++x) {
    if (x * x > rem_sq) continue;
    v[pos] = x;
    line_search(v, pos + 1, rem_sum - x, rem_sq - x * x, out);
  }
  v[pos] = 0;
}

}  // namespace detail

// All integer classes with <v,v> = -1 and <v,-K> = 1, lexicographically
// ordered, plus their intersection matrix.
inline LineConfiguration enumerate_lines(int d) {
  check_degree(d);
  int r = 9 - d;
  std::vector<PicVector> lines;
  // <v,-K> = 3a + sum_i v_i = 1 and <v,v> = a^2 - sum v_i^2 = -1
  for (long a = -6; a <= 6; ++a) {
    std::vector<long> v(static_cast<size_t>(r) + 1);
    v[0] = a;
    std::vector<PicVector> found;
    detail::line_search(v, 1, 1 - 3 * a, a * a + 1, found);
    for (auto& f : found) lines.push_back(std::move(f));
  }
  std::sort(lines.begin(), lines.end());
  LineConfiguration cfg;
  cfg.degree = d;
  cfg.lines = std::move(lines);
  int n = static_cast<int>(cfg.lines.size());
  cfg.gram.assign(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      cfg.gram[i][j] = static_cast<int>(pairing(cfg.lines[i], cfg.lines[j]));
  return cfg;
}

// Permutation of the line list induced by a linear map of Pic given as a
// function on vectors.  Throws if the image is not a line.
template <typename MapFn>
Perm line_permutation(const LineConfiguration& cfg, MapFn&& map) {
  std::vector<int> img(cfg.lines.size());
  for (size_t i = 0; i < cfg.lines.size(); ++i) {
    PicVector w = map(cfg.lines[i]);
    auto it = std::lower_bound(cfg.lines.begin(), cfg.lines.end(), w);
    if (it == cfg.lines.end() || *it != w)
      throw DomainError("line_permutation: map does not preserve the line set");
    img[i] = static_cast<int>(it - cfg.lines.begin());
  }
  return Perm(std::move(img));
}

// Reflection in a (-2)-class: v -> v + <v,root> * root.
inline Perm reflection_action(const LineConfiguration& cfg, const PicVector& root) {
  if (pairing(root, root) != -2) throw DomainError("reflection_action: root must have self-intersection -2");
  return line_permutation(cfg, [&](const PicVector& v) {
    PicVector w = v;
    long c = pairing(v, root);
    for (size_t i = 0; i < w.size(); ++i) w[i] += c * root[i];
    return w;
  });
}

// Permutation of lines induced by permuting the blown-up points E_1..E_{9-d}.
// sigma acts on {0..8-d}.
inline Perm point_permutation_action(const LineConfiguration& cfg, const Perm& sigma) {
  if (sigma.degree() != 9 - cfg.degree)
    throw DomainError("point_permutation_action: permutation degree must be 9-d");
  return line_permutation(cfg, [&](const PicVector& v) {
    PicVector w(v.size());
    w[0] = v[0];
    for (int i = 0; i < sigma.degree(); ++i) w[1 + sigma(i)] = v[1 + i];
    return w;
  });
}

struct WeylAction {
  int degree = 0;
  std::vector<Perm> generators;  // one per simple root, acting on the lines
};

// Simple-root reflections E_i - E_{i+1} (1 <= i <= 8-d) and H - E_1 - E_2 - E_3
// as permutations of the line list.
inline WeylAction weyl_generators(int d) {
  check_degree(d);
  LineConfiguration cfg = enumerate_lines(d);
  int r = 9 - d;
  WeylAction w;
  w.degree = d;
  for (int i = 1; i < r; ++i) {
    PicVector root(static_cast<size_t>(r) + 1, 0);
    root[i] = 1;
    root[i + 1] = -1;
    w.generators.push_back(reflection_action(cfg, root));
  }
  if (r >= 3) {
    PicVector root(static_cast<size_t>(r) + 1, 0);
    root[0] = 1;
    root[1] = root[2] = root[3] = -1;
    w.generators.push_back(reflection_action(cfg, root));
  }
  return w;
}

inline PermGroup weyl_group(int d) {
  auto wa = weyl_generators(d);
  return PermGroup::from_generators(wa.generators, line_count(d));
}

// Recovers the intersection matrix from the Weyl group alone: pairs of lines
// with intersection number i form a single orbit of size N_d * N_{d,i} / 2.
// For d in {1,2} two of those orbit sizes coincide and the assignment is
// fixed by the rank-(10-d) test.
inline std::vector<std::vector<int>> reconstruct_gram_from_group(const PermGroup& w, int d) {
  check_degree(d);
  if (d > 5)
    throw DomainError("reconstruct_gram_from_group: requires the transitive pair action (d <= 5)");
  int n = line_count(d);
  if (w.degree() != n) throw DomainError("reconstruct_gram_from_group: group degree mismatch");

  // expected per-line intersection profile from the line configuration
  LineConfiguration cfg = enumerate_lines(d);
  std::map<int, long> expected;  // value -> orbit size N_d*N_{d,i}/2
  for (int j = 1; j < n; ++j) expected[cfg.gram[0][j]]++;
  for (auto& [val, cnt] : expected) cnt = cnt * n / 2;

  // orbits of W on unordered pairs
  auto pair_id = [n](int i, int j) { return i * n + j; };
  std::vector<int> comp(static_cast<size_t>(n) * n, -1);
  std::vector<std::vector<std::pair<int, int>>> orbits;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (comp[pair_id(i, j)] >= 0) continue;
      int id = static_cast<int>(orbits.size());
      std::vector<std::pair<int, int>> orb{{i, j}};
      comp[pair_id(i, j)] = id;
      for (size_t k = 0; k < orb.size(); ++k)
        for (const auto& g : w.generators()) {
          int a = g(orb[k].first), b = g(orb[k].second);
          if (a > b) std::swap(a, b);
          if (comp[pair_id(a, b)] < 0) {
            comp[pair_id(a, b)] = id;
            orb.emplace_back(a, b);
          }
        }
      orbits.push_back(std::move(orb));
    }

  // match orbit sizes to expected sizes; collect ambiguous groups
  std::map<long, std::vector<int>> orbits_by_size, values_by_size;
  for (size_t k = 0; k < orbits.size(); ++k)
    orbits_by_size[static_cast<long>(orbits[k].size())].push_back(static_cast<int>(k));
  for (const auto& [val, sz] : expected) values_by_size[sz].push_back(val);

  auto build = [&](const std::map<int, int>& orbit_value) {
    std::vector<std::vector<int>> gram(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i) gram[i][i] = -1;
    for (const auto& [k, val] : orbit_value)
      for (const auto& [i, j] : orbits[k]) gram[i][j] = gram[j][i] = val;
    return gram;
  };

  std::map<int, int> assignment;  // orbit index -> intersection value
  std::vector<std::pair<std::vector<int>, std::vector<int>>> ambiguous;
  for (const auto& [sz, oids] : orbits_by_size) {
    auto it = values_by_size.find(sz);
    if (it == values_by_size.end() || it->second.size() != oids.size())
      throw DomainError("reconstruct_gram_from_group: orbit sizes inconsistent with a Weyl action");
    if (oids.size() == 1) {
      assignment[oids[0]] = it->second[0];
    } else if (oids.size() == 2) {
      ambiguous.emplace_back(oids, it->second);
    } else {
      throw DomainError("reconstruct_gram_from_group: more than two equal orbit sizes");
    }
  }
  if (ambiguous.empty()) {
    auto gram = build(assignment);
    if (rank(IntMatrix::from_rows([&] {
          std::vector<std::vector<mpz_class>> rows(n, std::vector<mpz_class>(n));
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) rows[i][j] = gram[i][j];
          return rows;
        }())) != 10 - d)
      throw DomainError("reconstruct_gram_from_group: reconstructed matrix has wrong rank");
    return gram;
  }
  if (ambiguous.size() > 1)
    throw DomainError("reconstruct_gram_from_group: multiple ambiguous size groups");
  for (int flip = 0; flip < 2; ++flip) {
    auto trial = assignment;
    trial[ambiguous[0].first[0]] = ambiguous[0].second[flip];
    trial[ambiguous[0].first[1]] = ambiguous[0].second[1 - flip];
    auto gram = build(trial);
    std::vector<std::vector<mpz_class>> rows(n, std::vector<mpz_class>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) rows[i][j] = gram[i][j];
    if (rank(IntMatrix::from_rows(rows)) == 10 - d) return gram;
  }
  throw DomainError("reconstruct_gram_from_group: no rank-consistent assignment");
}

}  // namespace dpa
