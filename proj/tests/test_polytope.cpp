#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "dpalpha/polytope.hpp"

using namespace dpa;

namespace {

HPolytope box(int n) {
  HPolytope p;
  p.dim = n;
  for (int i = 0; i < n; ++i) {
    std::vector<Rat> lo(n + 1, 0), hi(n + 1, 0);
    lo[i + 1] = 1;
    hi[0] = 1;
    hi[i + 1] = -1;
    p.rows.push_back(lo);
    p.rows.push_back(hi);
  }
  return p;
}

HPolytope simplex(int n) {
  HPolytope p;
  p.dim = n;
  for (int i = 0; i < n; ++i) {
    std::vector<Rat> r(n + 1, 0);
    r[i + 1] = 1;
    p.rows.push_back(r);
  }
  std::vector<Rat> cap(n + 1, -1);
  cap[0] = 1;
  p.rows.push_back(cap);
  return p;
}

}  // namespace

TEST_CASE("cube and simplex") {
  for (int n = 1; n <= 5; ++n) {
    auto c = box(n);
    CHECK(dimension(c) == n);
    CHECK(vertex_enumeration(c).vertices.size() == (1u << n));
    CHECK(volume(c) == 1);
    auto s = simplex(n);
    CHECK(vertex_enumeration(s).vertices.size() == static_cast<size_t>(n) + 1);
    Rat nf = 1;
    for (int i = 2; i <= n; ++i) nf *= i;
    CHECK(volume(s) == Rat(1) / nf);
  }
}

TEST_CASE("cross polytope") {
  int n = 3;
  HPolytope p;
  p.dim = n;
  for (int mask = 0; mask < 8; ++mask) {
    std::vector<Rat> r(n + 1, 0);
    r[0] = 1;
    for (int i = 0; i < n; ++i) r[i + 1] = (mask >> i) & 1 ? -1 : 1;
    p.rows.push_back(r);
  }
  auto v = vertex_enumeration(p);
  CHECK(v.vertices.size() == 6);
  CHECK(volume(p) == Rat(4, 3));
}

TEST_CASE("exact rational vertices and incidence") {
  // triangle with a non-integral vertex
  HPolytope p;
  p.dim = 2;
  p.rows = {{0, 1, 0}, {0, 0, 1}, {1, -3, -2}};  // x>=0, y>=0, 3x+2y<=1
  auto v = vertex_enumeration(p);
  REQUIRE(v.vertices.size() == 3);
  CHECK(v.vertices[0] == std::vector<Rat>{0, 0});
  CHECK(v.vertices[1] == std::vector<Rat>{0, Rat(1, 2)});
  CHECK(v.vertices[2] == std::vector<Rat>{Rat(1, 3), 0});
  // each vertex is tight on exactly two of the three rows
  for (const auto& inc : v.incidence) CHECK(bits::popcount(inc) == 2);
  CHECK(volume(p) == Rat(1, 12));
}

TEST_CASE("degenerate inputs") {
  SECTION("unbounded") {
    HPolytope p;
    p.dim = 2;
    p.rows = {{0, 1, 0}, {0, 0, 1}};
    CHECK_THROWS_AS(vertex_enumeration(p), UnboundedError);
  }
  SECTION("empty") {
    HPolytope p;
    p.dim = 1;
    p.rows = {{-1, 1}, {0, -1}};  // x>=1 and x<=0
    CHECK_THROWS_AS(vertex_enumeration(p), EmptyPolytopeError);
    CHECK_THROWS_AS(dimension(p), EmptyPolytopeError);
  }
  SECTION("lower-dimensional") {
    HPolytope p;
    p.dim = 2;
    p.rows = {{0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {1, 0, -1}};  // segment x=0, 0<=y<=1
    CHECK(dimension(p) == 1);
    CHECK_THROWS_AS(volume(p), DimensionError);
  }
  SECTION("single point") {
    HPolytope p;
    p.dim = 2;
    p.rows = {{0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
    CHECK(dimension(p) == 0);
    CHECK(vertex_enumeration(p).vertices.size() == 1);
  }
}

TEST_CASE("triangulation pivots agree") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> coef(-4, 4);
  int done = 0;
  while (done < 12) {
    int n = 2 + static_cast<int>(rng() % 3);
    auto p = box(n);
    for (int extra = 0; extra < n; ++extra) {
      std::vector<Rat> r(n + 1, 0);
      r[0] = 1 + static_cast<int>(rng() % 3);
      for (int i = 1; i <= n; ++i) r[i] = coef(rng);
      p.rows.push_back(r);
    }
    Rat a = volume(p, std::nullopt, TriangulationPivot::kLexMin);
    Rat b = volume(p, std::nullopt, TriangulationPivot::kLexMax);
    CHECK(a == b);
    CHECK(a > 0);
    ++done;
  }
}

TEST_CASE("unimodular coordinate changes preserve volume") {
  std::mt19937_64 rng(19);
  auto base = simplex(3);
  base.rows.push_back({1, -1, -1, 0});
  Rat expected = volume(base);
  for (int t = 0; t < 20; ++t) {
    // random unimodular U as a product of elementary row operations;
    // substituting x -> U x maps each row a to (a0, a^T U)
    int n = 3;
    std::vector<std::vector<long>> u(n, std::vector<long>(n, 0));
    for (int i = 0; i < n; ++i) u[i][i] = 1;
    for (int step = 0; step < 6; ++step) {
      int i = static_cast<int>(rng() % n), j = static_cast<int>(rng() % n);
      if (i == j) continue;
      long c = static_cast<long>(rng() % 5) - 2;
      for (int k = 0; k < n; ++k) u[i][k] += c * u[j][k];
    }
    HPolytope q = base;
    for (auto& row : q.rows) {
      std::vector<Rat> nr(n + 1, 0);
      nr[0] = row[0];
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) nr[j + 1] += row[i + 1] * u[i][j];
      row = nr;
    }
    CHECK(volume(q) == expected);
  }
}

TEST_CASE("symmetric block detection and chamber volume") {
  auto p = box(4);
  auto blocks = symmetric_blocks(p);
  REQUIRE(blocks.size() == 1);
  CHECK(blocks[0] == std::vector<int>{0, 1, 2, 3});
  auto sym = detect_symmetry(p);
  CHECK(sym.generators.size() == 3);
  CHECK(volume(p, sym) == 1);

  // breaking the symmetry in one coordinate shrinks the block
  auto q = box(4);
  q.rows.push_back({Rat(1, 2), -1, 0, 0, 0});  // x1 <= 1/2
  auto qb = symmetric_blocks(q);
  REQUIRE(qb.size() == 1);
  CHECK(qb[0] == std::vector<int>{1, 2, 3});
  auto qs = detect_symmetry(q);
  CHECK(volume(q, qs) == volume(q));
  CHECK(volume(q) == Rat(1, 2));

  SECTION("invalid symmetry spec is rejected") {
    SymmetrySpec bad;
    bad.generators.push_back(Perm::from_cycle_string("(1,2)", 4));
    CHECK_THROWS_AS(volume(q, bad), DomainError);
  }
}

TEST_CASE("monte carlo volume") {
  auto cube = box(3);
  auto e = monte_carlo_volume(cube, 2000, 42);
  CHECK(e.estimate == 1.0);  // the bounding box is the cube itself
  auto s = simplex(3);
  auto es = monte_carlo_volume(s, 40000, 42);
  double exact = 1.0 / 6.0;
  CHECK(std::abs(es.estimate - exact) <= 4.0 * es.stderr_);
  CHECK(es.stderr_ > 0);
}

TEST_CASE("rational parsing") {
  CHECK(rat_from_string("3/4") == Rat(3, 4));
  CHECK(rat_from_string("-7") == -7);
  CHECK(rat_to_string(rat_from_string("22/4")) == "11/2");
  CHECK_THROWS_AS(rat_from_string("a/b"), ParseError);
}
