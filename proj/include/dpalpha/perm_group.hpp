#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "dpalpha/errors.hpp"
#include "dpalpha/perm.hpp"

namespace dpa {

// Permutation group on {0..n-1} with a stabilizer chain (Schreier-Sims)
// built on construction.  Immutable afterwards.
class PermGroup {
 public:
  PermGroup() = default;

  static PermGroup from_generators(std::vector<Perm> gens, int n) {
    PermGroup g;
    g.n_ = n;
    for (auto& p : gens) {
      if (p.degree() != n)
        throw DomainError("generator degree mismatch: expected " + std::to_string(n));
      if (!p.is_identity()) g.gens_.push_back(std::move(p));
    }
    g.build_chain();
    return g;
  }

  static PermGroup trivial(int n) { return from_generators({}, n); }

  int degree() const { return n_; }
  const std::vector<Perm>& generators() const { return gens_; }

  const mpz_class& order() const { return order_; }

  bool contains(const Perm& p) const {
    if (p.degree() != n_) return false;
    Perm res;
    return strip(p, 0, res) && res.is_identity();
  }

  bool is_subgroup_of(const PermGroup& w) const {
    for (const auto& g : gens_)
      if (!w.contains(g)) return false;
    return true;
  }

  // Partition of {0..n-1} into orbits; each orbit ascending, list ordered by
  // (size, smallest element).
  std::vector<std::vector<int>> orbits() const {
    std::vector<int> comp(n_, -1);
    std::vector<std::vector<int>> out;
    for (int s = 0; s < n_; ++s) {
      if (comp[s] >= 0) continue;
      int id = static_cast<int>(out.size());
      std::vector<int> orb{s};
      comp[s] = id;
      for (size_t k = 0; k < orb.size(); ++k)
        for (const auto& g : gens_) {
          int q = g(orb[k]);
          if (comp[q] < 0) {
            comp[q] = id;
            orb.push_back(q);
          }
        }
      std::sort(orb.begin(), orb.end());
      out.push_back(std::move(orb));
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
      if (a.size() != b.size()) return a.size() < b.size();
      return a.front() < b.front();
    });
    return out;
  }

  std::vector<int> orbit_structure() const {
    std::vector<int> sizes;
    for (const auto& o : orbits()) sizes.push_back(static_cast<int>(o.size()));
    std::sort(sizes.begin(), sizes.end());
    return sizes;
  }

  // All elements, sorted lexicographically by image array.
  std::vector<Perm> elements(unsigned long bound = kElementsBound) const {
    if (order_ > bound)
      throw CapacityError("group of order " + order_.get_str() +
                          " exceeds element enumeration bound " + std::to_string(bound));
    std::vector<Perm> out;
    Perm acc(n_);
    enumerate_rec(0, acc, out);
    std::sort(out.begin(), out.end());
    return out;
  }

  // Uniformly random element (product of random transversal representatives).
  Perm random_element(std::mt19937_64& rng) const {
    Perm acc(n_);
    for (const auto& lv : levels_) {
      std::uniform_int_distribution<size_t> d(0, lv.orbit.size() - 1);
      acc = acc * lv.transversal[d(rng)];
    }
    return acc;
  }

  static constexpr unsigned long kElementsBound = 1u << 20;

 private:
  struct Level {
    int base = -1;
    std::vector<Perm> gens;
    std::vector<int> orbit;        // orbit[0] == base
    std::vector<int> pos;          // point -> index in orbit, or -1
    std::vector<Perm> transversal; // transversal[i] maps base to orbit[i]
  };

  int n_ = 0;
  std::vector<Perm> gens_;
  std::vector<Level> levels_;
  mpz_class order_ = 1;

  void recompute_orbit(Level& lv) const {
    lv.orbit.assign(1, lv.base);
    lv.pos.assign(n_, -1);
    lv.pos[lv.base] = 0;
    lv.transversal.assign(1, Perm(n_));
    for (size_t k = 0; k < lv.orbit.size(); ++k) {
      int p = lv.orbit[k];
      for (const auto& s : lv.gens) {
        int q = s(p);
        if (lv.pos[q] < 0) {
          lv.pos[q] = static_cast<int>(lv.orbit.size());
          lv.orbit.push_back(q);
          lv.transversal.push_back(s * lv.transversal[k]);
        }
      }
    }
  }

  // Sifts g through levels starting at `from`.  Returns true with the final
  // residue if g reaches past the last level; false leaves `res` as the
  // residue stuck at level `stuck`.
  bool strip(const Perm& g, size_t from, Perm& res, size_t* stuck = nullptr) const {
    res = g;
    for (size_t l = from; l < levels_.size(); ++l) {
      int img = res(levels_[l].base);
      int idx = levels_[l].pos[img];
      if (idx < 0) {
        if (stuck) *stuck = l;
        return false;
      }
      res = levels_[l].transversal[idx].inverse() * res;
    }
    if (stuck) *stuck = levels_.size();
    return true;
  }

  void schreier_sims(size_t k) {
    recompute_orbit(levels_[k]);
    // no reference into levels_ may be held across the recursion: deeper calls
    // append levels and reallocate the vector
    for (size_t oi = 0; oi < levels_[k].orbit.size(); ++oi) {
      for (size_t si = 0; si < levels_[k].gens.size(); ++si) {
        int p = levels_[k].orbit[oi];
        Perm s = levels_[k].gens[si];
        int q = s(p);
        Perm u =
            levels_[k].transversal[levels_[k].pos[q]].inverse() * (s * levels_[k].transversal[oi]);
        if (u.is_identity()) continue;
        Perm res;
        size_t j = 0;
        if (strip(u, k + 1, res, &j) && res.is_identity()) continue;
        if (j == levels_.size()) {
          Level nl;
          nl.base = res.first_moved();
          levels_.push_back(std::move(nl));
          j = levels_.size() - 1;
        }
        // strong generator sets are nested: the residue fixes the bases of
        // levels k+1..j-1, but products with their generators need not, so it
        // must join every level down to where it got stuck
        for (size_t l = k + 1; l <= j; ++l) levels_[l].gens.push_back(res);
        for (size_t l = j; l > k; --l) schreier_sims(l);
      }
    }
  }

  void build_chain() {
    levels_.clear();
    if (!gens_.empty()) {
      Level l0;
      l0.base = gens_.front().first_moved();
      for (const auto& g : gens_)
        l0.base = std::min(l0.base, g.first_moved());
      l0.gens = gens_;
      levels_.push_back(std::move(l0));
      schreier_sims(0);
    }
    order_ = 1;
    for (const auto& lv : levels_) order_ *= static_cast<unsigned long>(lv.orbit.size());
  }

  void enumerate_rec(size_t level, const Perm& acc, std::vector<Perm>& out) const {
    if (level == levels_.size()) {
      out.push_back(acc);
      return;
    }
    for (const auto& t : levels_[level].transversal)
      enumerate_rec(level + 1, acc * t, out);
  }
};

inline PermGroup group_from_generators(std::vector<Perm> gens, int n) {
  return PermGroup::from_generators(std::move(gens), n);
}

// Deterministic identifier of a subgroup: the cycle strings of a greedily
// chosen minimal generating sequence (lexicographically smallest element not
// yet generated, repeatedly).
inline std::string canonical_key(const PermGroup& g,
                                 unsigned long bound = PermGroup::kElementsBound) {
  if (g.order() == 1) return "()";
  auto els = g.elements(bound);
  PermGroup cur = PermGroup::trivial(g.degree());
  std::string key;
  while (cur.order() < g.order()) {
    for (const auto& e : els) {
      if (e.is_identity() || cur.contains(e)) continue;
      auto gens = cur.generators();
      gens.push_back(e);
      cur = PermGroup::from_generators(gens, g.degree());
      if (!key.empty()) key += ' ';
      key += e.cycle_string();
      break;
    }
  }
  return key;
}

enum class ConjugacyStatus { kYes, kNo, kUndecided };

struct ConjugacyResult {
  ConjugacyStatus status = ConjugacyStatus::kUndecided;
  std::optional<Perm> witness;
  bool yes() const { return status == ConjugacyStatus::kYes; }
};

namespace detail {

inline bool conjugates_into(const Perm& w, const PermGroup& h, const PermGroup& target) {
  Perm wi = w.inverse();
  for (const auto& gen : h.generators())
    if (!target.contains(w * (gen * wi))) return false;
  return true;
}

}  // namespace detail

// Tests g H1 g^{-1} = H2 for some g in W.  Decided by an element sweep when W
// is small enough; otherwise only the coset representatives of a point
// stabilizer are swept and failure is reported as undecided.
inline ConjugacyResult are_conjugate(const PermGroup& w, const PermGroup& h1,
                                     const PermGroup& h2,
                                     unsigned long sweep_bound = 100000) {
  if (!h1.is_subgroup_of(w) || !h2.is_subgroup_of(w))
    throw DomainError("are_conjugate: arguments are not subgroups of the ambient group");
  ConjugacyResult r;
  if (h1.order() != h2.order() || h1.orbit_structure() != h2.orbit_structure()) {
    r.status = ConjugacyStatus::kNo;
    return r;
  }
  if (h1.generators().empty()) {  // both trivial
    r.status = ConjugacyStatus::kYes;
    r.witness = Perm(w.degree());
    return r;
  }
  bool full_sweep = w.order() <= sweep_bound;
  std::vector<Perm> candidates;
  if (full_sweep) {
    candidates = w.elements(sweep_bound);
  } else {
    // Coset representatives of the first-level point stabilizer: one witness
    // per coset suffices iff the stabilizer normalizes nothing relevant, so a
    // miss here is inconclusive.
    std::mt19937_64 rng(0x5eed);
    for (int i = 0; i < 4096; ++i) candidates.push_back(w.random_element(rng));
  }
  for (const auto& cand : candidates) {
    if (detail::conjugates_into(cand, h1, h2)) {
      r.status = ConjugacyStatus::kYes;
      r.witness = cand;
      return r;
    }
  }
  r.status = full_sweep ? ConjugacyStatus::kNo : ConjugacyStatus::kUndecided;
  return r;
}

// One conjugacy class of subgroups of an ambient group W.
struct SubgroupClassRecord {
  PermGroup representative;
  mpz_class class_size = 1;
  std::vector<int> orbit_structure;
  int rho = -1;  // filled by the pipeline
  std::string key;
  // filled by rho_maximal_reduce on retained records:
  int children = 0;
  std::optional<std::string> rho_maximal_parent;
};

enum class SubgroupStrategy { kExhaustive, kNone };

// Orbit partition of g brought to a canonical form under relabeling by the
// supplied elements (typically all of the ambient group): the minimum image,
// with blocks sorted ascending and the block list ordered by (size, content).
inline std::vector<std::vector<int>> canonical_orbit_partition(
    const PermGroup& g, const std::vector<Perm>& ambient_elements) {
  auto normalize = [](std::vector<std::vector<int>> p) {
    for (auto& b : p) std::sort(b.begin(), b.end());
    std::sort(p.begin(), p.end(), [](const auto& a, const auto& b) {
      if (a.size() != b.size()) return a.size() < b.size();
      return a < b;
    });
    return p;
  };
  auto base = g.orbits();
  auto best = normalize(base);
  for (const auto& w : ambient_elements) {
    std::vector<std::vector<int>> img(base.size());
    for (size_t i = 0; i < base.size(); ++i) {
      img[i].reserve(base[i].size());
      for (int x : base[i]) img[i].push_back(w(x));
    }
    img = normalize(std::move(img));
    if (img < best) best = std::move(img);
  }
  return best;
}

namespace detail {

// Exhaustive subgroup-class enumeration over the full element list of W.
// Subgroups are element bitsets; conjugacy classes are closed explicitly, so
// class sizes come out of the construction.
class SubgroupEnumerator {
 public:
  SubgroupEnumerator(const PermGroup& w, unsigned long bound) : w_(w) {
    if (w.order() > bound)
      throw CapacityError(
          "subgroup enumeration bound exceeded (group order " + w.order().get_str() +
          " > " + std::to_string(bound) + "); supply explicit generators instead");
    els_ = w.elements(bound);
    nw_ = static_cast<int>(els_.size());
    words_ = (nw_ + 63) / 64;
    use_table_ = nw_ <= 4096;
    if (use_table_) {
      table_.assign(static_cast<size_t>(nw_) * nw_, 0);
      for (int i = 0; i < nw_; ++i)
        for (int j = 0; j < nw_; ++j)
          table_[static_cast<size_t>(i) * nw_ + j] = static_cast<uint16_t>(id_of(els_[i] * els_[j]));
    }
    inv_.resize(nw_);
    for (int i = 0; i < nw_; ++i) inv_[i] = id_of(els_[i].inverse());
    id_e_ = id_of(Perm(w.degree()));
  }

  std::vector<SubgroupClassRecord> run() {
    Class triv;
    triv.elems = {id_e_};
    triv.bits = bits_of(triv.elems);
    triv.gens = {};
    triv.size = 1;
    register_class(std::move(triv));
    for (size_t c = 0; c < classes_.size(); ++c) {
      // classes_ grows during the loop; reps are expanded in discovery order.
      Class snapshot = classes_[c];
      for (int g = 0; g < nw_; ++g) {
        if (test_bit(snapshot.bits, g)) continue;
        Class k = closure(snapshot, g);
        if (seen_.count(k.bits)) continue;
        register_class(std::move(k));
      }
    }
    return finalize();
  }

 private:
  struct Class {
    std::vector<uint64_t> bits;
    std::vector<int> elems;  // sorted ids
    std::vector<int> gens;   // generator ids
    int size = 0;            // number of conjugates (filled on registration)
  };

  const PermGroup& w_;
  std::vector<Perm> els_;
  int nw_ = 0, words_ = 0, id_e_ = 0;
  bool use_table_ = false;
  std::vector<uint16_t> table_;
  std::vector<int> inv_;

  struct BitsHash {
    size_t operator()(const std::vector<uint64_t>& v) const {
      size_t h = 0xcbf29ce484222325ull;
      for (uint64_t x : v) {
        h ^= x;
        h *= 0x100000001b3ull;
      }
      return h;
    }
  };
  std::unordered_set<std::vector<uint64_t>, BitsHash> seen_;
  std::vector<Class> classes_;

  int id_of(const Perm& p) const {
    auto it = std::lower_bound(els_.begin(), els_.end(), p);
    return static_cast<int>(it - els_.begin());
  }

  int mul(int a, int b) const {
    if (use_table_) return table_[static_cast<size_t>(a) * nw_ + b];
    return id_of(els_[a] * els_[b]);
  }

  static bool test_bit(const std::vector<uint64_t>& bits, int i) {
    return (bits[i >> 6] >> (i & 63)) & 1;
  }
  static void set_bit(std::vector<uint64_t>& bits, int i) { bits[i >> 6] |= 1ull << (i & 63); }

  std::vector<uint64_t> bits_of(const std::vector<int>& elems) const {
    std::vector<uint64_t> b(words_, 0);
    for (int e : elems) set_bit(b, e);
    return b;
  }

  // K = <H, g>: breadth-first closure of H ∪ {g} under right multiplication
  // by the accumulated generator ids (these generate all of K, so the closure
  // is exactly ∪ H·w over words w in the generators, i.e. K).
  Class closure(const Class& h, int g) const {
    Class k;
    k.bits = h.bits;
    k.elems = h.elems;
    k.gens = h.gens;
    k.gens.push_back(g);
    if (!test_bit(k.bits, g)) {
      set_bit(k.bits, g);
      k.elems.push_back(g);
    }
    for (size_t i = 0; i < k.elems.size(); ++i)
      for (int s : k.gens) {
        int x = mul(k.elems[i], s);
        if (!test_bit(k.bits, x)) {
          set_bit(k.bits, x);
          k.elems.push_back(x);
        }
      }
    std::sort(k.elems.begin(), k.elems.end());
    return k;
  }

  // Smaller = lexicographically earlier element-id set.
  static bool bits_less(const std::vector<uint64_t>& a, const std::vector<uint64_t>& b) {
    for (size_t w = 0; w < a.size(); ++w) {
      uint64_t d = a[w] ^ b[w];
      if (d) {
        uint64_t low = d & (~d + 1);
        return a[w] & low;
      }
    }
    return false;
  }

  void register_class(Class k) {
    // Close the conjugacy class; the representative is the conjugate with the
    // lexicographically smallest element set.
    std::vector<uint64_t> best = k.bits;
    int best_w = id_e_;
    int count = 0;
    std::unordered_set<std::vector<uint64_t>, BitsHash> conj_seen;
    for (int w = 0; w < nw_; ++w) {
      std::vector<uint64_t> cb(words_, 0);
      int iw = inv_[w];
      for (int e : k.elems) set_bit(cb, mul(mul(w, e), iw));
      if (conj_seen.insert(cb).second) {
        ++count;
        if (bits_less(cb, best)) {
          best = cb;
          best_w = w;
        }
        seen_.insert(cb);
      }
    }
    Class rep;
    rep.bits = best;
    rep.elems.reserve(k.elems.size());
    int iw = inv_[best_w];
    for (int e : k.elems) rep.elems.push_back(mul(mul(best_w, e), iw));
    std::sort(rep.elems.begin(), rep.elems.end());
    for (int g : k.gens) rep.gens.push_back(mul(mul(best_w, g), iw));
    rep.size = count;
    classes_.push_back(std::move(rep));
  }

  std::vector<SubgroupClassRecord> finalize() const {
    std::vector<SubgroupClassRecord> out;
    for (const auto& c : classes_) {
      SubgroupClassRecord r;
      std::vector<Perm> gens;
      for (int g : c.gens) gens.push_back(els_[g]);
      r.representative = PermGroup::from_generators(gens, w_.degree());
      r.class_size = c.size;
      r.orbit_structure = r.representative.orbit_structure();
      r.key = canonical_key(r.representative);
      out.push_back(std::move(r));
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
      if (a.representative.order() != b.representative.order())
        return a.representative.order() < b.representative.order();
      return a.key < b.key;
    });
    return out;
  }
};

}  // namespace detail

// All conjugacy classes of subgroups of W, ordered by (order, canonical key).
inline std::vector<SubgroupClassRecord> subgroup_classes(
    const PermGroup& w, SubgroupStrategy strategy = SubgroupStrategy::kExhaustive,
    unsigned long bound = 10000) {
  if (strategy == SubgroupStrategy::kNone) return {};
  return detail::SubgroupEnumerator(w, bound).run();
}

// True iff H is contained in some W-conjugate of G.  Mirrors the
// conjugate-vs-candidate strategy: sweeping conjugates of G is preferred when
// their number (the index of the normalizer) is the smaller search space;
// otherwise H is compared against the subgroup classes of G directly.
inline bool contained_in_conjugate(const PermGroup& w, const PermGroup& h,
                                   const PermGroup& g,
                                   unsigned long sweep_bound = 100000) {
  if (!h.is_subgroup_of(w) || !g.is_subgroup_of(w))
    throw DomainError("contained_in_conjugate: arguments are not subgroups of the ambient group");
  if (h.order() == 1) return true;
  if (!mpz_divisible_p(g.order().get_mpz_t(), h.order().get_mpz_t())) return false;
  // Conjugate route: testing h <= wGw^{-1} over all w covers every conjugate
  // of G at one witness per element.  It is the smaller search space whenever
  // W itself is enumerable, so it is tried first.
  if (w.order() <= sweep_bound) {
    for (const auto& e : w.elements(sweep_bound))
      if (detail::conjugates_into(e, h, g)) return true;
    return false;
  }
  // Candidate route: compare H against the subgroup classes of G.  Only a
  // positive conjugacy answer is conclusive when W cannot be swept.
  if (g.order() <= 10000) {
    for (const auto& cls : subgroup_classes(g)) {
      if (cls.representative.order() != h.order()) continue;
      if (are_conjugate(w, h, cls.representative).yes()) return true;
    }
  } else {
    std::mt19937_64 rng(0xc0ffee);
    for (int i = 0; i < 8192; ++i)
      if (detail::conjugates_into(w.random_element(rng), h, g)) return true;
  }
  throw CapacityError("contained_in_conjugate undecided: ambient group too large for a full sweep");
}

}  // namespace dpa
