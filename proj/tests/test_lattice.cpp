#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "dpalpha/int_matrix.hpp"

using namespace dpa;

namespace {

IntMatrix random_matrix(std::mt19937_64& rng, int r, int c, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  IntMatrix m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = d(rng);
  return m;
}

mpz_class cofactor_det(const IntMatrix& m) {
  int n = m.rows();
  if (n == 1) return m(0, 0);
  mpz_class det = 0;
  for (int j = 0; j < n; ++j) {
    IntMatrix sub(n - 1, n - 1);
    for (int i = 1; i < n; ++i)
      for (int k = 0, kk = 0; k < n; ++k)
        if (k != j) sub(i - 1, kk++) = m(i, k);
    mpz_class c = m(0, j) * cofactor_det(sub);
    if (j % 2) det -= c; else det += c;
  }
  return det;
}

}  // namespace

TEST_CASE("rank and determinant on fixed matrices") {
  IntMatrix m = IntMatrix::from_rows({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}});
  CHECK(rank(m) == 2);
  CHECK(determinant(m) == 0);
  IntMatrix id = IntMatrix::identity(5);
  CHECK(rank(id) == 5);
  CHECK(determinant(id) == 1);
  IntMatrix v = IntMatrix::from_rows({{2, 0}, {7, 3}});
  CHECK(determinant(v) == 6);
  CHECK(rank(IntMatrix::from_rows({{0, 0, 0}})) == 0);
}

TEST_CASE("Bareiss determinant matches cofactor expansion") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 40; ++t) {
    int n = 1 + static_cast<int>(rng() % 5);
    auto m = random_matrix(rng, n, n, -9, 9);
    CHECK(determinant(m) == cofactor_det(m));
  }
}

TEST_CASE("hermite form properties") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 30; ++t) {
    int r = 1 + static_cast<int>(rng() % 4);
    int c = 1 + static_cast<int>(rng() % 4);
    auto m = random_matrix(rng, r, c, -8, 8);
    auto hf = hermite_form(m);
    // H = U * M with U unimodular
    CHECK(hf.u * m == hf.h);
    if (r == hf.u.rows()) {
      mpz_class du = determinant(hf.u);
      CHECK((du == 1 || du == -1));
    }
    // pivots are positive and entries above them reduced
    int prev_col = -1;
    for (int i = 0; i < hf.h.rows(); ++i) {
      int piv = -1;
      for (int j = 0; j < c; ++j)
        if (hf.h(i, j) != 0) { piv = j; break; }
      if (piv < 0) continue;
      CHECK(piv > prev_col);
      prev_col = piv;
      CHECK(hf.h(i, piv) > 0);
      for (int k = 0; k < i; ++k) {
        CHECK(hf.h(k, piv) >= 0);
        CHECK(hf.h(k, piv) < hf.h(i, piv));
      }
    }
  }
}

TEST_CASE("kernel vectors annihilate the matrix") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 30; ++t) {
    int r = 1 + static_cast<int>(rng() % 4);
    int c = 1 + static_cast<int>(rng() % 5);
    auto m = random_matrix(rng, r, c, -6, 6);
    auto k = kernel(m);
    CHECK(k.rows() == m.cols() - rank(m));
    for (int i = 0; i < k.rows(); ++i)
      for (int j = 0; j < m.rows(); ++j) {
        mpz_class s = 0;
        for (int x = 0; x < m.cols(); ++x) s += m(j, x) * k(i, x);
        CHECK(s == 0);
      }
    if (k.rows() > 0) CHECK(rank(k) == k.rows());
  }
}

TEST_CASE("saturation basis") {
  SECTION("scaled standard lattice") {
    auto b = saturation_basis({{2, 0}, {0, 2}});
    REQUIRE(b.size() == 2);
    CHECK(maximal_minor_gcd(b) == 1);
    auto c = coordinates_in_basis({2, 0}, b);
    CHECK(c.size() == 2);
  }
  SECTION("index-two sublattice of a plane") {
    std::vector<std::vector<mpz_class>> vecs = {{1, 1, 0}, {1, -1, 0}};
    auto b = saturation_basis(vecs);
    REQUIRE(b.size() == 2);
    CHECK(maximal_minor_gcd(b) == 1);
    // (0,1,0) lies in the saturation
    auto c = coordinates_in_basis({0, 1, 0}, b);
    std::vector<mpz_class> back(3, 0);
    for (size_t i = 0; i < b.size(); ++i)
      for (int j = 0; j < 3; ++j) back[j] += c[i] * b[i][j];
    CHECK(back == std::vector<mpz_class>({0, 1, 0}));
  }
  SECTION("full-rank input stays the standard lattice") {
    auto b = saturation_basis({{3, 1}, {1, 1}});
    REQUIRE(b.size() == 2);
    CHECK(maximal_minor_gcd(b) == 1);
  }
  SECTION("errors") {
    CHECK_THROWS_AS(saturation_basis({}), DomainError);
    CHECK_THROWS_AS(saturation_basis({{0, 0}}), DomainError);
  }
}

TEST_CASE("coordinates in basis") {
  std::vector<std::vector<mpz_class>> basis = {{1, 0, 1}, {0, 1, 1}};
  auto c = coordinates_in_basis({2, 3, 5}, basis);
  REQUIRE(c.size() == 2);
  CHECK(c[0] == 2);
  CHECK(c[1] == 3);
  CHECK_THROWS_AS(coordinates_in_basis({1, 0, 0}, basis), DomainError);
}

TEST_CASE("saturation of random lattices has index one") {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<int> d(-5, 5);
  for (int t = 0; t < 25; ++t) {
    int r = 1 + static_cast<int>(rng() % 3);
    int c = r + static_cast<int>(rng() % 3);
    std::vector<std::vector<mpz_class>> vecs(r, std::vector<mpz_class>(c));
    bool zero = true;
    for (auto& row : vecs)
      for (auto& x : row) {
        x = d(rng);
        if (x != 0) zero = false;
      }
    if (zero) continue;
    auto b = saturation_basis(vecs);
    CHECK(maximal_minor_gcd(b) == 1);
    // every input vector has integral coordinates in the saturated basis
    for (const auto& v : vecs) CHECK_NOTHROW(coordinates_in_basis(v, b));
  }
}
