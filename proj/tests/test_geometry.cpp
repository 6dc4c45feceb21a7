#include <catch2/catch_amalgamated.hpp>

#include <map>

#include "dpalpha/geometry.hpp"

using namespace dpa;

TEST_CASE("line counts for all degrees") {
  const std::map<int, int> expected = {{1, 240}, {2, 56}, {3, 27}, {4, 16},
                                       {5, 10},  {6, 6},  {7, 3}};
  for (auto [d, n] : expected) {
    auto cfg = enumerate_lines(d);
    CHECK(static_cast<int>(cfg.lines.size()) == n);
    CHECK(line_count(d) == n);
  }
  CHECK_THROWS_AS(enumerate_lines(0), DomainError);
  CHECK_THROWS_AS(enumerate_lines(8), DomainError);
}

TEST_CASE("lines have the defining intersection numbers") {
  for (int d = 1; d <= 7; ++d) {
    auto cfg = enumerate_lines(d);
    auto k = anticanonical(d);
    CHECK(pairing(k, k) == d);
    for (const auto& v : cfg.lines) {
      CHECK(pairing(v, v) == -1);
      CHECK(pairing(v, k) == 1);
    }
  }
}

TEST_CASE("intersection profiles") {
  // for each line, the number of other lines at each intersection value
  const std::map<int, std::vector<long>> profile = {
      {4, {10, 5, 0, 0}}, {3, {16, 10, 0, 0}}, {2, {27, 27, 1, 0}}, {1, {56, 126, 56, 1}}};
  for (const auto& [d, expected] : profile) {
    auto cfg = enumerate_lines(d);
    int n = static_cast<int>(cfg.lines.size());
    for (int i = 0; i < n; ++i) {
      std::vector<long> counts(4, 0);
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        int v = cfg.gram[i][j];
        REQUIRE(v >= 0);
        REQUIRE(v <= 3);
        counts[v]++;
      }
      CHECK(counts == expected);
    }
  }
}

TEST_CASE("sum of all lines is proportional to the anticanonical class") {
  for (int d = 1; d <= 6; ++d) {
    auto cfg = enumerate_lines(d);
    int n = static_cast<int>(cfg.lines.size());
    REQUIRE(n % d == 0);
    PicVector sum(cfg.lines[0].size(), 0);
    for (const auto& v : cfg.lines)
      for (size_t j = 0; j < sum.size(); ++j) sum[j] += v[j];
    auto k = anticanonical(d);
    for (size_t j = 0; j < sum.size(); ++j) CHECK(sum[j] == (n / d) * k[j]);
  }
}

TEST_CASE("symmetry group orders") {
  CHECK(weyl_group(7).order() == 2);
  CHECK(weyl_group(6).order() == 12);
  CHECK(weyl_group(5).order() == 120);
  CHECK(weyl_group(4).order() == 1920);
  CHECK(weyl_group(3).order() == 51840);
  CHECK(weyl_group(2).order() == 2903040);
  CHECK(weyl_group(1).order() == 696729600);
}

TEST_CASE("generators preserve the intersection matrix") {
  for (int d = 1; d <= 7; ++d) {
    auto cfg = enumerate_lines(d);
    int n = static_cast<int>(cfg.lines.size());
    for (const auto& g : weyl_generators(d).generators)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) CHECK(cfg.gram[g(i)][g(j)] == cfg.gram[i][j]);
  }
}

TEST_CASE("reflection action") {
  auto cfg = enumerate_lines(3);
  std::vector<long> root{0, 1, -1, 0, 0, 0, 0};
  auto s = reflection_action(cfg, root);
  CHECK(s.order() == 2);
  // swapping E1 and E2 fixes 15 lines
  int fixed = 0;
  for (int i = 0; i < 27; ++i)
    if (s(i) == i) ++fixed;
  CHECK(fixed == 15);
  std::vector<long> not_root{0, 1, 0, 0, 0, 0, 0};
  CHECK_THROWS_AS(reflection_action(cfg, not_root), DomainError);
}

TEST_CASE("point permutation action") {
  auto cfg = enumerate_lines(3);
  auto rot = point_permutation_action(cfg, Perm::from_cycle_string("(1,2,3,4,5,6)", 6));
  CHECK(rot.order() == 6);
  auto g = PermGroup::from_generators({rot}, 27);
  // orbits: the six E_i, the six conics, and the fifteen L_ij in orbits 6+6+3
  CHECK(g.orbit_structure() == std::vector<int>{3, 6, 6, 6, 6});
  CHECK_THROWS_AS(point_permutation_action(cfg, Perm::from_cycle_string("(1,2)", 5)), DomainError);
}

TEST_CASE("line permutation rejects non-lines") {
  auto cfg = enumerate_lines(4);
  CHECK_THROWS_AS(line_permutation(cfg, [](const PicVector& v) {
                    PicVector w = v;
                    w[0] += 1;
                    return w;
                  }),
                  DomainError);
}

TEST_CASE("gram reconstruction from the abstract action") {
  for (int d = 3; d <= 5; ++d) {
    auto cfg = enumerate_lines(d);
    auto w = weyl_group(d);
    CHECK(reconstruct_gram_from_group(w, d) == cfg.gram);
  }
  CHECK_THROWS_AS(reconstruct_gram_from_group(weyl_group(5), 6), DomainError);
}
