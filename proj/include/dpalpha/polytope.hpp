#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "dpalpha/errors.hpp"
#include "dpalpha/int_matrix.hpp"
#include "dpalpha/perm.hpp"

namespace dpa {

using Rat = mpq_class;

inline Rat rat_from_string(const std::string& s) {
  Rat r;
  if (r.set_str(s, 10) != 0) throw ParseError("invalid rational: '" + s + "'");
  if (r.get_den() == 0) throw ParseError("zero denominator in rational: '" + s + "'");
  r.canonicalize();
  return r;
}

inline std::string rat_to_string(const Rat& r) { return r.get_str(); }

// a_0 + a_1 x_1 + ... + a_n x_n >= 0 per row; same row convention as
// polymake-style INEQUALITIES input.
struct HPolytope {
  int dim = 0;
  std::vector<std::vector<Rat>> rows;  // each of length dim+1
};

struct VPolytope {
  int dim = 0;
  std::vector<std::vector<Rat>> vertices;       // lexicographically sorted
  std::vector<std::vector<uint64_t>> incidence; // tight input rows per vertex
};

// Coordinate permutations mapping the inequality set to itself.
struct SymmetrySpec {
  std::vector<Perm> generators;
};

namespace bits {

inline void set(std::vector<uint64_t>& b, int i) { b[i >> 6] |= 1ull << (i & 63); }
inline bool test(const std::vector<uint64_t>& b, int i) { return (b[i >> 6] >> (i & 63)) & 1; }
inline int popcount(const std::vector<uint64_t>& b) {
  int c = 0;
  for (uint64_t w : b) c += __builtin_popcountll(w);
  return c;
}
inline std::vector<uint64_t> and_(const std::vector<uint64_t>& a, const std::vector<uint64_t>& b) {
  std::vector<uint64_t> r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] & b[i];
  return r;
}
inline bool subset(const std::vector<uint64_t>& a, const std::vector<uint64_t>& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] & ~b[i]) return false;
  return true;
}
inline bool any(const std::vector<uint64_t>& b) {
  for (uint64_t w : b)
    if (w) return true;
  return false;
}
inline int lowest(const std::vector<uint64_t>& b) {
  for (size_t i = 0; i < b.size(); ++i)
    if (b[i]) return static_cast<int>(i * 64 + __builtin_ctzll(b[i]));
  return -1;
}
inline int highest(const std::vector<uint64_t>& b) {
  for (size_t i = b.size(); i-- > 0;)
    if (b[i]) return static_cast<int>(i * 64 + 63 - __builtin_clzll(b[i]));
  return -1;
}

struct Hash {
  size_t operator()(const std::vector<uint64_t>& v) const {
    size_t h = 0xcbf29ce484222325ull;
    for (uint64_t x : v) {
      h ^= x;
      h *= 0x100000001b3ull;
    }
    return h;
  }
};

}  // namespace bits

namespace detail {

inline std::vector<mpz_class> primitive(std::vector<mpz_class> v) {
  mpz_class g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  if (g > 1)
    for (auto& x : v) x /= g;
  return v;
}

// Clears denominators and divides by the content; sign is preserved.
inline std::vector<mpz_class> normalize_row(const std::vector<Rat>& row) {
  mpz_class l = 1;
  for (const auto& x : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den().get_mpz_t());
  std::vector<mpz_class> out(row.size());
  for (size_t i = 0; i < row.size(); ++i) out[i] = mpz_class(row[i].get_num() * (l / row[i].get_den()));
  return primitive(std::move(out));
}

inline mpz_class dot(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) {
  mpz_class s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

constexpr uint64_t kPrime = 2305843009213693951ull;  // 2^61 - 1

inline uint64_t mulmod(uint64_t a, uint64_t b) {
  return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % kPrime);
}

inline uint64_t modval(const mpz_class& x) {
  return mpz_fdiv_ui(x.get_mpz_t(), static_cast<unsigned long>(kPrime));
}

inline uint64_t powmod(uint64_t a, uint64_t e) {
  uint64_t r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a);
    a = mulmod(a, a);
    e >>= 1;
  }
  return r;
}

// Rank of a set of vectors modulo 2^61-1; a lower bound for the true rank.
inline int rank_mod_p(std::vector<std::vector<uint64_t>> m) {
  int rows = static_cast<int>(m.size());
  if (rows == 0) return 0;
  int cols = static_cast<int>(m[0].size());
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (m[i][c] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(m[piv], m[r]);
    uint64_t inv = powmod(m[r][c], kPrime - 2);
    for (int i = r + 1; i < rows; ++i) {
      if (m[i][c] == 0) continue;
      uint64_t f = mulmod(m[i][c], inv);
      for (int j = c; j < cols; ++j) {
        uint64_t sub = mulmod(f, m[r][j]);
        m[i][j] = (m[i][j] >= sub) ? m[i][j] - sub : m[i][j] + kPrime - sub;
      }
    }
    ++r;
  }
  return r;
}

struct DDRay {
  std::vector<mpz_class> vec;
  std::vector<uint64_t> tight;
};

struct DDCone {
  std::vector<std::vector<mpz_class>> lineality;
  std::vector<DDRay> rays;
  std::vector<std::vector<mpz_class>> processed;  // in processing order
};

// Double description on the homogenization cone {(x0,x) : x0 >= 0, rows >= 0}.
// Unique rows are inserted in lexicographic order after the x0 >= 0 row.
inline DDCone double_description(const HPolytope& p) {
  int d = p.dim + 1;
  std::set<std::vector<mpz_class>> unique_rows;
  for (const auto& row : p.rows) {
    if (static_cast<int>(row.size()) != d)
      throw DomainError("HPolytope row length must be dim+1");
    auto nr = normalize_row(row);
    bool zero = true;
    for (const auto& x : nr)
      if (x != 0) zero = false;
    if (!zero) unique_rows.insert(std::move(nr));
  }
  std::vector<std::vector<mpz_class>> rows;
  {
    std::vector<mpz_class> x0(d, 0);
    x0[0] = 1;
    unique_rows.erase(x0);
    rows.push_back(std::move(x0));
  }
  for (const auto& r : unique_rows) rows.push_back(r);
  int m = static_cast<int>(rows.size());
  int words = (m + 63) / 64;
  std::vector<std::vector<uint64_t>> rows_mod(m, std::vector<uint64_t>(d));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < d; ++j) rows_mod[i][j] = modval(rows[i][j]);

  DDCone cone;
  cone.processed = rows;
  for (int i = 0; i < d; ++i) {
    std::vector<mpz_class> e(d, 0);
    e[i] = 1;
    cone.lineality.push_back(std::move(e));
  }

  auto exact_rank = [&](const std::vector<int>& idx) {
    std::vector<std::vector<mpz_class>> sub;
    for (int i : idx) sub.push_back(rows[i]);
    return rank(IntMatrix::from_rows(sub));
  };

  for (int t = 0; t < m; ++t) {
    const auto& a = rows[t];
    // lineality first
    int hit = -1;
    std::vector<mpz_class> lv;
    for (size_t i = 0; i < cone.lineality.size(); ++i) {
      if (dot(a, cone.lineality[i]) != 0) {
        hit = static_cast<int>(i);
        break;
      }
    }
    if (hit >= 0) {
      std::vector<mpz_class> lstar = cone.lineality[hit];
      cone.lineality.erase(cone.lineality.begin() + hit);
      mpz_class al = dot(a, lstar);
      if (al < 0) {
        for (auto& x : lstar) x = -x;
        al = -al;
      }
      for (auto& l : cone.lineality) {
        mpz_class c = dot(a, l);
        if (c != 0) {
          for (int j = 0; j < d; ++j) l[j] = al * l[j] - c * lstar[j];
          l = primitive(std::move(l));
        }
      }
      for (auto& r : cone.rays) {
        mpz_class c = dot(a, r.vec);
        if (c != 0) {
          for (int j = 0; j < d; ++j) r.vec[j] = al * r.vec[j] - c * lstar[j];
          r.vec = primitive(std::move(r.vec));
        }
        bits::set(r.tight, t);
      }
      DDRay nr;
      nr.vec = std::move(lstar);
      nr.tight.assign(words, 0);
      for (int b = 0; b < t; ++b) bits::set(nr.tight, b);
      cone.rays.push_back(std::move(nr));
      continue;
    }
    // partition rays by sign
    std::vector<DDRay> keep, neg;
    std::vector<mpz_class> pos_val, neg_val;
    std::vector<size_t> pos_idx;
    for (auto& r : cone.rays) {
      mpz_class s = dot(a, r.vec);
      if (s == 0) {
        bits::set(r.tight, t);
        keep.push_back(std::move(r));
      } else if (s > 0) {
        pos_idx.push_back(keep.size());
        pos_val.push_back(s);
        keep.push_back(std::move(r));
      } else {
        neg_val.push_back(s);
        neg.push_back(std::move(r));
      }
    }
    std::vector<DDRay> created;
    if (!neg.empty() && !pos_idx.empty()) {
      int need = (d - static_cast<int>(cone.lineality.size())) - 2;
      for (size_t pi = 0; pi < pos_idx.size(); ++pi) {
        const DDRay& rp = keep[pos_idx[pi]];
        for (size_t ni = 0; ni < neg.size(); ++ni) {
          const DDRay& rn = neg[ni];
          auto common = bits::and_(rp.tight, rn.tight);
          if (bits::popcount(common) < need) continue;
          // adjacency: rank of the common tight rows must be exactly need
          std::vector<int> idx;
          std::vector<std::vector<uint64_t>> sub_mod;
          for (int b = 0; b < t; ++b)
            if (bits::test(common, b)) {
              idx.push_back(b);
              sub_mod.push_back(rows_mod[b]);
            }
          int rk = rank_mod_p(sub_mod);
          if (rk < need && exact_rank(idx) != need) continue;
          DDRay nr;
          nr.vec.resize(d);
          for (int j = 0; j < d; ++j) nr.vec[j] = pos_val[pi] * rn.vec[j] - neg_val[ni] * rp.vec[j];
          nr.vec = primitive(std::move(nr.vec));
          nr.tight = common;
          bits::set(nr.tight, t);
          created.push_back(std::move(nr));
        }
      }
    }
    for (auto& nr : created) keep.push_back(std::move(nr));
    cone.rays = std::move(keep);
  }
  return cone;
}

}  // namespace detail

// Exact vertex set of a bounded polytope, canonically ordered, with tight-row
// incidence against the original inequality list.
inline VPolytope vertex_enumeration(const HPolytope& p) {
  auto cone = detail::double_description(p);
  std::vector<std::vector<Rat>> vertices;
  for (const auto& r : cone.rays) {
    if (r.vec[0] > 0) {
      std::vector<Rat> v(p.dim);
      for (int j = 0; j < p.dim; ++j) {
        v[j] = Rat(r.vec[j + 1], r.vec[0]);
        v[j].canonicalize();
      }
      vertices.push_back(std::move(v));
    }
  }
  if (vertices.empty()) throw EmptyPolytopeError("polytope is empty");
  auto describe_ray = [&](const std::vector<mpz_class>& v) {
    std::string s = "(";
    for (int j = 1; j <= p.dim; ++j) {
      if (j > 1) s += ",";
      s += v[j].get_str();
    }
    return s + ")";
  };
  if (!cone.lineality.empty())
    throw UnboundedError("polyhedron is unbounded along line " + describe_ray(cone.lineality[0]));
  for (const auto& r : cone.rays)
    if (r.vec[0] == 0)
      throw UnboundedError("polyhedron is unbounded along ray " + describe_ray(r.vec));
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());

  VPolytope out;
  out.dim = p.dim;
  out.vertices = std::move(vertices);
  int m = static_cast<int>(p.rows.size());
  int words = (m + 63) / 64;
  for (const auto& v : out.vertices) {
    std::vector<uint64_t> inc(words, 0);
    for (int i = 0; i < m; ++i) {
      Rat s = p.rows[i][0];
      for (int j = 0; j < p.dim; ++j) s += p.rows[i][j + 1] * v[j];
      if (s == 0) bits::set(inc, i);
    }
    out.incidence.push_back(std::move(inc));
  }
  return out;
}

// Affine dimension of the solution set.
inline int dimension(const HPolytope& p) {
  auto cone = detail::double_description(p);
  bool nonempty = false;
  for (const auto& r : cone.rays)
    if (r.vec[0] > 0) nonempty = true;
  if (!nonempty) throw EmptyPolytopeError("polytope is empty");
  std::vector<std::vector<mpz_class>> span = cone.lineality;
  for (const auto& r : cone.rays) span.push_back(r.vec);
  return rank(IntMatrix::from_rows(span)) - 1;
}

enum class TriangulationPivot { kLexMin, kLexMax };

namespace detail {

// Pulling triangulation of the face lattice; faces are vertex bitsets and
// results are memoized, so shared faces are triangulated once.
class Triangulator {
 public:
  Triangulator(const VPolytope& v, int num_rows, TriangulationPivot pivot)
      : v_(v), pivot_(pivot) {
    vwords_ = (static_cast<int>(v.vertices.size()) + 63) / 64;
    row_verts_.assign(num_rows, std::vector<uint64_t>(vwords_, 0));
    for (size_t i = 0; i < v.incidence.size(); ++i)
      for (int r = 0; r < num_rows; ++r)
        if (bits::test(v.incidence[i], r)) bits::set(row_verts_[r], static_cast<int>(i));
  }

  const std::vector<std::vector<int>>& triangulate(const std::vector<uint64_t>& face) {
    auto it = memo_.find(face);
    if (it != memo_.end()) return it->second;
    std::vector<std::vector<int>> result;
    if (bits::popcount(face) == 1) {
      result.push_back({bits::lowest(face)});
    } else {
      int apex = (pivot_ == TriangulationPivot::kLexMin) ? bits::lowest(face) : bits::highest(face);
      for (const auto& facet : facets_of(face)) {
        if (bits::test(facet, apex)) continue;
        for (const auto& tail : triangulate(facet)) {
          std::vector<int> simplex;
          simplex.reserve(tail.size() + 1);
          simplex.push_back(apex);
          simplex.insert(simplex.end(), tail.begin(), tail.end());
          result.push_back(std::move(simplex));
        }
      }
      if (result.empty()) throw InternalError("triangulation: face with no usable facets");
    }
    return memo_.emplace(face, std::move(result)).first->second;
  }

  std::vector<std::vector<uint64_t>> facets_of(const std::vector<uint64_t>& face) const {
    std::unordered_set<std::vector<uint64_t>, bits::Hash> cands;
    for (const auto& rv : row_verts_) {
      auto c = bits::and_(face, rv);
      if (!bits::any(c) || c == face) continue;
      cands.insert(std::move(c));
    }
    std::vector<std::vector<uint64_t>> list(cands.begin(), cands.end());
    std::vector<std::vector<uint64_t>> maximal;
    for (size_t i = 0; i < list.size(); ++i) {
      bool dominated = false;
      for (size_t j = 0; j < list.size() && !dominated; ++j)
        if (i != j && bits::subset(list[i], list[j])) dominated = true;
      if (!dominated) maximal.push_back(list[i]);
    }
    std::sort(maximal.begin(), maximal.end());
    return maximal;
  }

 private:
  const VPolytope& v_;
  TriangulationPivot pivot_;
  int vwords_;
  std::vector<std::vector<uint64_t>> row_verts_;
  std::unordered_map<std::vector<uint64_t>, std::vector<std::vector<int>>, bits::Hash> memo_;
};

inline Rat simplex_volume_det(const VPolytope& v, const std::vector<int>& simplex) {
  int n = v.dim;
  // rows v_i - v_0, cleared to integers; det scaled back by the denominators
  IntMatrix m(n, n);
  Rat denom = 1;
  for (int i = 0; i < n; ++i) {
    std::vector<Rat> row(n);
    mpz_class l = 1;
    for (int j = 0; j < n; ++j) {
      row[j] = v.vertices[simplex[i + 1]][j] - v.vertices[simplex[0]][j];
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), row[j].get_den().get_mpz_t());
    }
    for (int j = 0; j < n; ++j) m(i, j) = mpz_class(row[j].get_num() * (l / row[j].get_den()));
    denom *= Rat(l);
  }
  mpz_class det = determinant(std::move(m));
  Rat r = Rat(det) / denom;
  r.canonicalize();
  return abs(r);
}

inline int affine_rank(const std::vector<std::vector<Rat>>& pts) {
  if (pts.size() <= 1) return 0;
  std::vector<std::vector<mpz_class>> rows;
  for (size_t i = 1; i < pts.size(); ++i) {
    std::vector<Rat> diff(pts[i].size());
    for (size_t j = 0; j < pts[i].size(); ++j) diff[j] = pts[i][j] - pts[0][j];
    rows.push_back(normalize_row(diff));
  }
  return rank(IntMatrix::from_rows(rows));
}

inline Rat factorial(int n) {
  Rat f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

inline Rat volume_triangulated(const HPolytope& p, TriangulationPivot pivot) {
  VPolytope v = vertex_enumeration(p);
  if (affine_rank(v.vertices) != p.dim)
    throw DimensionError("volume: polytope is not full-dimensional in its ambient space");
  Triangulator tri(v, static_cast<int>(p.rows.size()), pivot);
  int vwords = (static_cast<int>(v.vertices.size()) + 63) / 64;
  std::vector<uint64_t> all(vwords, 0);
  for (size_t i = 0; i < v.vertices.size(); ++i) bits::set(all, static_cast<int>(i));
  Rat total = 0;
  for (const auto& simplex : tri.triangulate(all)) total += simplex_volume_det(v, simplex);
  total /= factorial(p.dim);
  total.canonicalize();
  return total;
}

}  // namespace detail

// Symmetric coordinate blocks: maximal sets of coordinates on which every
// transposition maps the inequality set to itself.
inline std::vector<std::vector<int>> symmetric_blocks(const HPolytope& p) {
  std::set<std::vector<mpz_class>> rowset;
  for (const auto& r : p.rows) rowset.insert(detail::normalize_row(r));
  auto swap_ok = [&](int i, int j) {
    for (const auto& r : rowset) {
      auto s = r;
      std::swap(s[i + 1], s[j + 1]);
      if (!rowset.count(s)) return false;
    }
    return true;
  };
  std::vector<int> parent(p.dim);
  for (int i = 0; i < p.dim; ++i) parent[i] = i;
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (int i = 0; i < p.dim; ++i)
    for (int j = i + 1; j < p.dim; ++j)
      if (find(i) != find(j) && swap_ok(i, j)) parent[find(j)] = find(i);
  std::map<int, std::vector<int>> groups;
  for (int i = 0; i < p.dim; ++i) groups[find(i)].push_back(i);
  std::vector<std::vector<int>> blocks;
  for (auto& [root, members] : groups)
    if (members.size() > 1) blocks.push_back(members);
  // transpositions within a merged block may pair through intermediaries;
  // validate every pair, splitting is not attempted
  for (const auto& b : blocks)
    for (size_t i = 0; i < b.size(); ++i)
      for (size_t j = i + 1; j < b.size(); ++j)
        if (!swap_ok(b[i], b[j]))
          throw DomainError("symmetric_blocks: coordinate block is not fully symmetric");
  return blocks;
}

inline SymmetrySpec detect_symmetry(const HPolytope& p) {
  SymmetrySpec s;
  for (const auto& b : symmetric_blocks(p))
    for (size_t k = 0; k + 1 < b.size(); ++k) {
      std::vector<int> img(p.dim);
      for (int i = 0; i < p.dim; ++i) img[i] = i;
      std::swap(img[b[k]], img[b[k + 1]]);
      s.generators.push_back(Perm(std::move(img)));
    }
  return s;
}

namespace detail {

// Restriction of P to the fundamental chamber x_{b_1} <= ... <= x_{b_k} of
// each symmetric block, with rows made redundant by the chamber dropped.
inline std::pair<HPolytope, Rat> chamber_restriction(const HPolytope& p,
                                                     const std::vector<std::vector<int>>& blocks) {
  std::vector<char> in_block(p.dim, 0);
  std::vector<int> block_of(p.dim, -1);
  std::vector<std::vector<int>> sorted_blocks = blocks;
  for (size_t b = 0; b < sorted_blocks.size(); ++b) {
    std::sort(sorted_blocks[b].begin(), sorted_blocks[b].end());
    for (int i : sorted_blocks[b]) {
      in_block[i] = 1;
      block_of[i] = static_cast<int>(b);
    }
  }
  // c x >= 0 on the chamber cone iff c vanishes off the blocks and within each
  // block has zero sum and nonnegative suffix sums
  auto chamber_nonneg = [&](const std::vector<Rat>& c) {
    for (int i = 0; i < p.dim; ++i)
      if (!in_block[i] && c[i] != 0) return false;
    for (const auto& blk : sorted_blocks) {
      Rat sum = 0;
      for (int i : blk) sum += c[i];
      if (sum != 0) return false;
      Rat suffix = 0;
      for (size_t k = blk.size(); k-- > 1;) {
        suffix += c[blk[k]];
        if (suffix < 0) return false;
      }
    }
    return true;
  };
  // dedup rows first
  std::vector<std::vector<Rat>> rows;
  {
    std::set<std::vector<mpz_class>> seen;
    for (const auto& r : p.rows)
      if (seen.insert(normalize_row(r)).second) rows.push_back(r);
  }
  std::vector<char> drop(rows.size(), 0);
  for (size_t a = 0; a < rows.size(); ++a) {
    for (size_t b = 0; b < rows.size() && !drop[a]; ++b) {
      if (a == b || drop[b]) continue;
      if (rows[a][0] < rows[b][0]) continue;
      std::vector<Rat> c(p.dim);
      for (int j = 0; j < p.dim; ++j) c[j] = rows[a][j + 1] - rows[b][j + 1];
      if (chamber_nonneg(c)) drop[a] = 1;
    }
  }
  HPolytope out;
  out.dim = p.dim;
  for (size_t a = 0; a < rows.size(); ++a)
    if (!drop[a]) out.rows.push_back(rows[a]);
  Rat multiplier = 1;
  for (const auto& blk : sorted_blocks) {
    multiplier *= factorial(static_cast<int>(blk.size()));
    for (size_t k = 0; k + 1 < blk.size(); ++k) {
      std::vector<Rat> row(p.dim + 1, 0);
      row[blk[k] + 1] = -1;
      row[blk[k + 1] + 1] = 1;
      out.rows.push_back(std::move(row));
    }
  }
  return {std::move(out), multiplier};
}

}  // namespace detail

// Exact Euclidean volume.  With a symmetry spec the volume of the fundamental
// chamber is computed and scaled by the chamber count.
inline Rat volume(const HPolytope& p, const std::optional<SymmetrySpec>& sym = std::nullopt,
                  TriangulationPivot pivot = TriangulationPivot::kLexMin) {
  if (!sym || sym->generators.empty()) return detail::volume_triangulated(p, pivot);
  // validate the generators and derive the symmetric blocks they act on
  std::set<std::vector<mpz_class>> rowset;
  for (const auto& r : p.rows) rowset.insert(detail::normalize_row(r));
  std::vector<char> moved(p.dim, 0);
  for (const auto& g : sym->generators) {
    if (g.degree() != p.dim) throw DomainError("SymmetrySpec: generator degree must equal dim");
    for (const auto& r : rowset) {
      std::vector<mpz_class> s(r.size());
      s[0] = r[0];
      for (int i = 0; i < p.dim; ++i) s[g(i) + 1] = r[i + 1];
      if (!rowset.count(s))
        throw DomainError("SymmetrySpec: generator does not preserve the inequality set");
    }
    for (int i = 0; i < p.dim; ++i)
      if (g(i) != i) moved[i] = 1;
  }
  auto blocks = symmetric_blocks(p);
  std::vector<std::vector<int>> used;
  for (auto& b : blocks) {
    bool touch = false;
    for (int i : b)
      if (moved[i]) touch = true;
    if (touch) used.push_back(b);
  }
  if (used.empty()) return detail::volume_triangulated(p, pivot);
  auto [restricted, multiplier] = detail::chamber_restriction(p, used);
  Rat v = detail::volume_triangulated(restricted, pivot) * multiplier;
  v.canonicalize();
  return v;
}

struct MonteCarloEstimate {
  double estimate = 0.0;
  double stderr_ = 0.0;
};

// Rejection sampling inside the bounding box; deterministic for a fixed seed.
inline MonteCarloEstimate monte_carlo_volume(const HPolytope& p, long samples, uint64_t seed) {
  VPolytope v = vertex_enumeration(p);
  if (detail::affine_rank(v.vertices) != p.dim)
    throw DimensionError("monte_carlo_volume: polytope is not full-dimensional");
  std::vector<double> lo(p.dim, 0.0), hi(p.dim, 0.0);
  for (int j = 0; j < p.dim; ++j) {
    lo[j] = hi[j] = v.vertices[0][j].get_d();
    for (const auto& vert : v.vertices) {
      lo[j] = std::min(lo[j], vert[j].get_d());
      hi[j] = std::max(hi[j], vert[j].get_d());
    }
  }
  std::vector<std::vector<double>> rows(p.rows.size(), std::vector<double>(p.dim + 1));
  for (size_t i = 0; i < p.rows.size(); ++i)
    for (int j = 0; j <= p.dim; ++j) rows[i][j] = p.rows[i][j].get_d();
  double box = 1.0;
  for (int j = 0; j < p.dim; ++j) box *= (hi[j] - lo[j]);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  long hits = 0;
  std::vector<double> x(p.dim);
  for (long s = 0; s < samples; ++s) {
    for (int j = 0; j < p.dim; ++j) x[j] = lo[j] + (hi[j] - lo[j]) * unif(rng);
    bool inside = true;
    for (const auto& row : rows) {
      double val = row[0];
      for (int j = 0; j < p.dim; ++j) val += row[j + 1] * x[j];
      if (val < 0) {
        inside = false;
        break;
      }
    }
    if (inside) ++hits;
  }
  double phat = static_cast<double>(hits) / static_cast<double>(samples);
  MonteCarloEstimate e;
  e.estimate = box * phat;
  e.stderr_ = box * std::sqrt(phat * (1.0 - phat) / static_cast<double>(samples));
  return e;
}

}  // namespace dpa
