#pragma once

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dpalpha/errors.hpp"
#include "dpalpha/geometry.hpp"
#include "dpalpha/int_matrix.hpp"
#include "dpalpha/perm_group.hpp"
#include "dpalpha/polytope.hpp"

namespace dpa {

enum class SymmetryMode { kAuto, kOff };

struct AlphaResult {
  int degree = 0;
  mpz_class subgroup_order = 1;
  std::string key;
  mpz_class class_size = 1;
  std::vector<int> orbit_structure;
  int rho = 0;
  Rat alpha = 0;
  std::string label;                   // cubic case label, degree 3 only
  std::string rho_maximal_parent;      // empty when the class is itself retained
  long children = 0;
  double millis = 0.0;
  std::optional<HPolytope> polytope;   // populated on request
};

// Sum of line classes over each orbit of the action on the lines.
inline std::vector<PicVector> orbit_sums(const PermGroup& g, const LineConfiguration& cfg) {
  int n = static_cast<int>(cfg.lines.size());
  if (g.degree() != n) throw DomainError("orbit_sums: group degree must equal the line count");
  std::vector<PicVector> sums;
  for (const auto& orbit : g.orbits()) {
    PicVector s(cfg.lines[0].size(), 0);
    for (int i : orbit)
      for (size_t j = 0; j < s.size(); ++j) s[j] += cfg.lines[i][j];
    sums.push_back(std::move(s));
  }
  return sums;
}

// The action is a valid Galois action iff it preserves all intersection numbers.
inline bool preserves_intersections(const PermGroup& g, const LineConfiguration& cfg) {
  int n = static_cast<int>(cfg.lines.size());
  if (g.degree() != n) return false;
  for (const auto& p : g.generators())
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j)
        if (cfg.gram[p(i)][p(j)] != cfg.gram[i][j]) return false;
  return true;
}

inline int invariant_rank(const PermGroup& g, const LineConfiguration& cfg) {
  auto sums = orbit_sums(g, cfg);
  std::vector<std::vector<mpz_class>> rows;
  for (const auto& s : sums) rows.emplace_back(s.begin(), s.end());
  return rank(IntMatrix::from_rows(rows));
}

inline Rat alpha_singular(const Rat& alpha, long singularity_weyl_order) {
  if (singularity_weyl_order < 1)
    throw DomainError("alpha_singular: the Weyl group order must be positive");
  Rat r = alpha / singularity_weyl_order;
  r.canonicalize();
  return r;
}

namespace detail {

// Auto-policy: chamber reduction pays off only on large systems.
inline bool engage_symmetry(const HPolytope& p) {
  if (p.rows.size() < 40) return false;
  for (const auto& b : symmetric_blocks(p))
    if (b.size() >= 2) return true;
  return false;
}

}  // namespace detail

inline AlphaResult alpha_for_subgroup(const PermGroup& g, const LineConfiguration& cfg,
                                      SymmetryMode symmetry = SymmetryMode::kAuto,
                                      bool emit_polytope = false) {
  auto t0 = std::chrono::steady_clock::now();
  if (!preserves_intersections(g, cfg))
    throw DomainError("invalid Galois action: the group does not preserve the intersection numbers");
  int d = cfg.degree;
  AlphaResult res;
  res.degree = d;
  res.subgroup_order = g.order();
  res.orbit_structure = g.orbit_structure();

  auto sums = orbit_sums(g, cfg);
  std::vector<std::vector<mpz_class>> sum_rows;
  for (const auto& s : sums) sum_rows.emplace_back(s.begin(), s.end());
  res.rho = rank(IntMatrix::from_rows(sum_rows));

  auto basis = saturation_basis(sum_rows);
  if (static_cast<int>(basis.size()) != res.rho)
    throw InternalError("saturated basis rank mismatch");
  if (maximal_minor_gcd(basis) != 1)
    throw InternalError("saturated basis is not primitive (index > 1)");

  HPolytope p;
  p.dim = res.rho;
  for (const auto& s : sum_rows) {
    auto w = coordinates_in_basis(s, basis);
    std::vector<Rat> row(res.rho + 1);
    row[0] = 0;
    for (int j = 0; j < res.rho; ++j) row[j + 1] = Rat(w[j]);
    p.rows.push_back(std::move(row));
  }
  {
    auto ac = anticanonical(d);
    std::vector<mpz_class> acz(ac.begin(), ac.end());
    auto k = coordinates_in_basis(acz, basis);
    std::vector<Rat> row(res.rho + 1);
    row[0] = 1;
    for (int j = 0; j < res.rho; ++j) row[j + 1] = Rat(-k[j]);
    p.rows.push_back(std::move(row));
  }

  if (dimension(p) != res.rho)
    throw InternalError("alpha polytope dimension differs from the invariant rank");

  std::optional<SymmetrySpec> sym;
  if (symmetry == SymmetryMode::kAuto && detail::engage_symmetry(p)) sym = detect_symmetry(p);
  res.alpha = Rat(res.rho) * volume(p, sym);
  res.alpha.canonicalize();
  res.key = canonical_key(g);
  if (emit_polytope) res.polytope = p;
  res.millis =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

inline AlphaResult alpha_for_subgroup(const PermGroup& g, int d,
                                      SymmetryMode symmetry = SymmetryMode::kAuto,
                                      bool emit_polytope = false) {
  return alpha_for_subgroup(g, enumerate_lines(d), symmetry, emit_polytope);
}

// Keeps, per invariant rank, only classes not contained in a conjugate of a
// larger retained class with the same rank.  Order of descent: subgroup order
// descending, canonical key ascending.  Dropped records point at their parent.
inline std::vector<SubgroupClassRecord> rho_maximal_reduce(std::vector<SubgroupClassRecord>& classes,
                                                           const PermGroup& w) {
  for (auto& c : classes)
    if (c.rho < 0) throw DomainError("rho_maximal_reduce: records must carry rho");
  std::vector<size_t> order(classes.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    if (classes[a].representative.order() != classes[b].representative.order())
      return classes[a].representative.order() > classes[b].representative.order();
    return classes[a].key < classes[b].key;
  });
  std::vector<size_t> retained;
  for (size_t i : order) {
    bool absorbed = false;
    for (size_t r : retained) {
      if (classes[r].rho != classes[i].rho) continue;
      if (contained_in_conjugate(w, classes[i].representative, classes[r].representative)) {
        classes[i].rho_maximal_parent = classes[r].key;
        classes[r].children += 1;
        absorbed = true;
        break;
      }
    }
    if (!absorbed) {
      classes[i].rho_maximal_parent.reset();
      retained.push_back(i);
    }
  }
  std::sort(retained.begin(), retained.end());
  std::vector<SubgroupClassRecord> out;
  for (size_t i : retained) out.push_back(classes[i]);
  return out;
}

namespace detail {

struct CubicCase {
  const char* label;
  int rho;
  const char* alpha;
  std::vector<int> structure;  // of the maximal representative
};

inline const std::vector<CubicCase>& cubic_table() {
  static const std::vector<CubicCase> t = {
      {"I", 1, "1", {27}},
      {"II.i", 2, "1", {1, 10, 16}},
      {"II.ii", 2, "4/3", {6, 6, 15}},
      {"II.iii", 2, "2", {3, 3, 6, 6, 9}},
      {"II.iv", 2, "3/2", {2, 5, 10, 10}},
      {"III.i", 3, "1/2", {1, 1, 1, 8, 8, 8}},
      {"III.ii", 3, "1", {3, 3, 3, 3, 3, 3, 9}},
      {"III.iii", 3, "1", {1, 2, 2, 3, 3, 4, 6, 6}},
      {"III.iv", 3, "5/6", {1, 2, 2, 4, 4, 6, 8}},
      {"III.v", 3, "17/24", {1, 1, 5, 5, 5, 10}},
      {"IV.i", 4, "5/18", {1, 1, 1, 1, 1, 4, 4, 4, 4, 6}},
      {"IV.ii", 4, "7/18", {1, 1, 1, 2, 2, 2, 2, 2, 2, 4, 4, 4}},
      {"IV.iii", 4, "3/8", {1, 1, 1, 2, 2, 2, 3, 3, 3, 3, 6}},
      {"V.i", 5, "1/8", {1, 1, 1, 1, 1, 1, 1, 2, 2, 2, 2, 2, 2, 2, 2, 4}},
      {"V.ii", 5, "5/48", {1, 1, 1, 1, 1, 1, 1, 1, 1, 3, 3, 3, 3, 3, 3}},
      {"VI", 6, "1/30", {1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 2, 2, 2, 2, 2, 2}},
      {"VII", 7, "1/120", std::vector<int>(27, 1)},
  };
  return t;
}

// Can `have` be split into `want`, i.e. is `want` obtainable from `have` by
// partitioning entries?  Each entry of `have` must split into entries of
// `want`; standard multiset backtracking.
inline bool splittable_into(std::vector<int> have, std::vector<int> want) {
  // total sizes always match (both sum to 27) — match largest `have` first
  std::sort(have.rbegin(), have.rend());
  std::sort(want.rbegin(), want.rend());
  std::function<bool(size_t, std::vector<int>&)> go = [&](size_t hi, std::vector<int>& remaining) {
    if (hi == have.size()) return remaining.empty();
    int target = have[hi];
    // choose a sub-multiset of `remaining` summing to target
    std::function<bool(int, size_t, std::vector<char>&)> pick = [&](int left, size_t from,
                                                                    std::vector<char>& used) {
      if (left == 0) {
        std::vector<int> rest;
        for (size_t k = 0; k < remaining.size(); ++k)
          if (!used[k]) rest.push_back(remaining[k]);
        return go(hi + 1, rest);
      }
      for (size_t k = from; k < remaining.size(); ++k) {
        if (used[k] || remaining[k] > left) continue;
        if (k > from && remaining[k] == remaining[k - 1] && !used[k - 1]) continue;
        used[k] = 1;
        if (pick(left - remaining[k], k + 1, used)) return true;
        used[k] = 0;
      }
      return false;
    };
    std::vector<char> used(remaining.size(), 0);
    return pick(target, 0, used);
  };
  std::vector<int> rem = want;
  return go(0, rem);
}

}  // namespace detail

// Case label (Picard-rank case plus sub-case) of a cubic-surface action.
inline std::string classify_cubic(const PermGroup& g, const LineConfiguration& cfg) {
  if (cfg.degree != 3) throw DomainError("classify_cubic: degree must be 3");
  if (!preserves_intersections(g, cfg))
    throw DomainError("invalid Galois action: the group does not preserve the intersection numbers");
  int rho = invariant_rank(g, cfg);
  auto structure = g.orbit_structure();
  int fixed = static_cast<int>(std::count(structure.begin(), structure.end(), 1));
  std::vector<std::string> hits;
  for (const auto& c : detail::cubic_table()) {
    if (c.rho != rho) continue;
    int cfixed = static_cast<int>(std::count(c.structure.begin(), c.structure.end(), 1));
    if (fixed != cfixed) continue;
    if (!detail::splittable_into(c.structure, structure)) continue;
    hits.push_back(c.label);
  }
  if (hits.size() == 2 && ((hits[0] == "II.ii" && hits[1] == "II.iii") ||
                           (hits[0] == "II.iii" && hits[1] == "II.ii"))) {
    // a size-6 orbit of pairwise skew lines forces the double-six case
    bool skew_six = false;
    for (const auto& orbit : g.orbits()) {
      if (orbit.size() != 6) continue;
      bool skew = true;
      for (size_t a = 0; a < orbit.size() && skew; ++a)
        for (size_t b = a + 1; b < orbit.size() && skew; ++b)
          if (cfg.gram[orbit[a]][orbit[b]] != 0) skew = false;
      if (skew) skew_six = true;
    }
    return skew_six ? "II.ii" : "II.iii";
  }
  if (hits.size() != 1)
    throw ClassificationError("cubic classification matched " + std::to_string(hits.size()) +
                              " cases for rank " + std::to_string(rho));
  return hits[0];
}

inline std::string classify_cubic(const PermGroup& g) {
  return classify_cubic(g, enumerate_lines(3));
}

enum class RunMode { kAllClasses, kRhoMaximalOnly, kSupplied };

// Complete table for one degree.  kAllClasses / kRhoMaximalOnly enumerate
// subgroup classes of the full symmetry group; kSupplied takes explicit groups.
inline std::vector<AlphaResult> run_degree(int d, RunMode mode,
                                           const std::vector<PermGroup>& supplied = {},
                                           SymmetryMode symmetry = SymmetryMode::kAuto,
                                           unsigned long enumeration_bound = 10000,
                                           bool emit_polytope = false) {
  LineConfiguration cfg = enumerate_lines(d);
  std::vector<AlphaResult> out;
  if (mode == RunMode::kSupplied) {
    for (const auto& g : supplied) {
      auto r = alpha_for_subgroup(g, cfg, symmetry, emit_polytope);
      if (d == 3) r.label = classify_cubic(g, cfg);
      out.push_back(std::move(r));
    }
  } else {
    PermGroup w = weyl_group(d);
    if (w.order() > enumeration_bound)
      throw CapacityError("symmetry group of degree-" + std::to_string(d) + " surfaces has order " +
                          w.order().get_str() + ", beyond the enumeration bound " +
                          std::to_string(enumeration_bound) +
                          " (raise the bound to opt in, or supply generators)");
    auto classes = subgroup_classes(w, SubgroupStrategy::kExhaustive, enumeration_bound);
    for (auto& c : classes) c.rho = invariant_rank(c.representative, cfg);
    std::vector<const SubgroupClassRecord*> wanted;
    std::vector<SubgroupClassRecord> retained;
    if (mode == RunMode::kRhoMaximalOnly) {
      retained = rho_maximal_reduce(classes, w);
      for (const auto& c : retained) wanted.push_back(&c);
    } else {
      for (const auto& c : classes) wanted.push_back(&c);
    }
    for (const auto* c : wanted) {
      auto r = alpha_for_subgroup(c->representative, cfg, symmetry, emit_polytope);
      if (d == 3) r.label = classify_cubic(c->representative, cfg);
      r.key = c->key;
      r.class_size = c->class_size;
      r.children = c->children;
      r.rho_maximal_parent = c->rho_maximal_parent.value_or("");
      out.push_back(std::move(r));
    }
  }
  std::sort(out.begin(), out.end(), [](const AlphaResult& a, const AlphaResult& b) {
    if (a.rho != b.rho) return a.rho < b.rho;
    if (a.alpha != b.alpha) return a.alpha > b.alpha;
    return a.key < b.key;
  });
  return out;
}

}  // namespace dpa
