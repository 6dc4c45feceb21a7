#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>

#include "dpalpha/geometry.hpp"
#include "dpalpha/perm.hpp"
#include "dpalpha/perm_group.hpp"

using namespace dpa;

TEST_CASE("permutation basics") {
  Perm p = Perm::from_cycle_string("(1,2,3)(4,5)", 6);
  CHECK(p(0) == 1);
  CHECK(p(2) == 0);
  CHECK(p(3) == 4);
  CHECK(p(5) == 5);
  CHECK(p.order() == 6);
  CHECK(p.cycle_string() == "(1,2,3)(4,5)");
  CHECK((p * p.inverse()).is_identity());
  CHECK(Perm(4).cycle_string() == "()");
  CHECK(Perm::from_cycle_string("()", 4).is_identity());

  Perm a = Perm::from_cycle_string("(1,2)", 3);
  Perm b = Perm::from_cycle_string("(2,3)", 3);
  // composition applies the right factor first: a*b = (1,2,3)
  CHECK((a * b)(1) == 2);
  CHECK((a * b)(2) == 0);
  CHECK((a * b)(0) == 1);
  CHECK((a * b).cycle_string() == "(1,2,3)");
}

TEST_CASE("cycle string parse errors") {
  CHECK_THROWS_AS(Perm::from_cycle_string("(1,2", 4), ParseError);
  CHECK_THROWS_AS(Perm::from_cycle_string("(1,2)(2,3)", 4), ParseError);
  CHECK_THROWS_AS(Perm::from_cycle_string("(0,1)", 4), ParseError);
  CHECK_THROWS_AS(Perm::from_cycle_string("(1,5)", 4), ParseError);
  CHECK_THROWS_AS(Perm::from_cycle_string("(1,x)", 4), ParseError);
}

TEST_CASE("group orders via stabilizer chain") {
  auto S = [](int n) {
    std::vector<Perm> gens{Perm::from_cycle_string("(1,2)", n)};
    std::string cyc = "(";
    for (int i = 1; i <= n; ++i) cyc += std::to_string(i) + (i < n ? "," : ")");
    gens.push_back(Perm::from_cycle_string(cyc, n));
    return PermGroup::from_generators(gens, n);
  };
  CHECK(S(5).order() == 120);
  CHECK(S(8).order() == 40320);
  CHECK(PermGroup::trivial(7).order() == 1);
  auto c6 = PermGroup::from_generators({Perm::from_cycle_string("(1,2,3,4,5,6)", 6)}, 6);
  CHECK(c6.order() == 6);
  CHECK(c6.elements().size() == 6);

  auto s5 = S(5);
  std::mt19937_64 rng(7);
  for (int i = 0; i < 50; ++i) CHECK(s5.contains(s5.random_element(rng)));
  CHECK_FALSE(s5.contains(Perm::from_cycle_string("(1,2)", 6)));

  auto els = s5.elements();
  CHECK(els.size() == 120);
  CHECK(std::is_sorted(els.begin(), els.end()));
  // every pairwise product stays inside
  for (int i = 0; i < 120; i += 17)
    for (int j = 0; j < 120; j += 13) CHECK(s5.contains(els[i] * els[j]));
}

TEST_CASE("element enumeration respects the capacity bound") {
  auto w = weyl_group(1);
  CHECK(w.order() == 696729600);
  CHECK_THROWS_AS(w.elements(), CapacityError);
}

TEST_CASE("orbits and orbit structure") {
  auto g = PermGroup::from_generators(
      {Perm::from_cycle_string("(1,2,3)", 7), Perm::from_cycle_string("(5,6)", 7)}, 7);
  CHECK(g.orbit_structure() == std::vector<int>{1, 1, 2, 3});
  auto orbits = g.orbits();
  REQUIRE(orbits.size() == 4);
  CHECK(orbits[2] == std::vector<int>{4, 5});
  CHECK(orbits[3] == std::vector<int>{0, 1, 2});
}

TEST_CASE("canonical keys identify conjugacy classes") {
  int n = 6;
  auto h1 = PermGroup::from_generators({Perm::from_cycle_string("(1,2)", n)}, n);
  auto h2 = PermGroup::from_generators({Perm::from_cycle_string("(3,5)", n)}, n);
  CHECK(canonical_key(h1) == "(1,2)");
  // keys are deterministic but conjugate groups on different points differ
  CHECK(canonical_key(h2) == "(3,5)");
  CHECK(canonical_key(PermGroup::trivial(n)) == "()");
}

TEST_CASE("conjugacy of subgroups") {
  int n = 5;
  auto S5 = PermGroup::from_generators(
      {Perm::from_cycle_string("(1,2)", n), Perm::from_cycle_string("(1,2,3,4,5)", n)}, n);
  auto h1 = PermGroup::from_generators({Perm::from_cycle_string("(1,2)", n)}, n);
  auto h2 = PermGroup::from_generators({Perm::from_cycle_string("(4,5)", n)}, n);
  auto h3 = PermGroup::from_generators({Perm::from_cycle_string("(1,2)(3,4)", n)}, n);
  CHECK(are_conjugate(S5, h1, h2).yes());
  CHECK(are_conjugate(S5, h1, h3).status == ConjugacyStatus::kNo);

  // the two conjugacy classes of Klein four-groups in S4
  int m = 4;
  auto S4 = PermGroup::from_generators(
      {Perm::from_cycle_string("(1,2)", m), Perm::from_cycle_string("(1,2,3,4)", m)}, m);
  auto v_normal = PermGroup::from_generators(
      {Perm::from_cycle_string("(1,2)(3,4)", m), Perm::from_cycle_string("(1,3)(2,4)", m)}, m);
  auto v_point = PermGroup::from_generators(
      {Perm::from_cycle_string("(1,2)", m), Perm::from_cycle_string("(3,4)", m)}, m);
  CHECK(v_normal.order() == 4);
  CHECK(v_point.order() == 4);
  CHECK(are_conjugate(S4, v_normal, v_point).status == ConjugacyStatus::kNo);
  CHECK(contained_in_conjugate(S4, v_normal, S4));
  CHECK_FALSE(contained_in_conjugate(S4, S4, v_normal));
}

namespace {

// Independent subgroup census: plain breadth-first closure over element sets,
// no multiplication table, no stabilizer chains.  Returns every subgroup of
// the group generated by `gens` as a sorted element list.
std::set<std::vector<Perm>> brute_force_subgroups(const PermGroup& w) {
  auto els = w.elements();
  auto close = [&](std::vector<Perm> seed) {
    std::set<Perm> s(seed.begin(), seed.end());
    s.insert(Perm(w.degree()));
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<Perm> cur(s.begin(), s.end());
      for (const auto& a : cur)
        for (const auto& b : cur)
          if (s.insert(a * b).second) grew = true;
    }
    return std::vector<Perm>(s.begin(), s.end());
  };
  std::set<std::vector<Perm>> found;
  found.insert(close({}));
  bool expanded = true;
  while (expanded) {
    expanded = false;
    std::vector<std::vector<Perm>> cur(found.begin(), found.end());
    for (const auto& h : cur)
      for (const auto& e : els) {
        auto seed = h;
        seed.push_back(e);
        if (found.insert(close(seed)).second) expanded = true;
      }
  }
  return found;
}

}  // namespace

TEST_CASE("subgroup class enumeration against a brute-force census") {
  // degree-5 surface symmetry group: order 120 on the 10 lines
  auto w = weyl_group(5);
  REQUIRE(w.order() == 120);
  auto classes = subgroup_classes(w);
  CHECK(classes.size() == 19);
  mpz_class total = 0;
  for (const auto& c : classes) total += c.class_size;

  auto census = brute_force_subgroups(w);
  CHECK(total == census.size());
  CHECK(census.size() == 156);

  // group the census into conjugacy classes independently and compare the
  // (order, class size) profile
  auto els = w.elements();
  std::map<std::pair<size_t, size_t>, int> census_profile;
  std::set<std::vector<Perm>> unseen = census;
  while (!unseen.empty()) {
    auto h = *unseen.begin();
    std::set<std::vector<Perm>> cls;
    for (const auto& g : els) {
      auto gi = g.inverse();
      std::vector<Perm> img;
      for (const auto& x : h) img.push_back(g * x * gi);
      std::sort(img.begin(), img.end());
      cls.insert(std::move(img));
    }
    for (const auto& c : cls) unseen.erase(c);
    census_profile[{h.size(), cls.size()}]++;
  }
  std::map<std::pair<size_t, size_t>, int> fast_profile;
  for (const auto& c : classes)
    fast_profile[{c.representative.order().get_ui(), c.class_size.get_ui()}]++;
  CHECK(census_profile == fast_profile);
}

TEST_CASE("subgroup classes of small symmetric groups") {
  auto S4 = PermGroup::from_generators(
      {Perm::from_cycle_string("(1,2)", 4), Perm::from_cycle_string("(1,2,3,4)", 4)}, 4);
  auto classes = subgroup_classes(S4);
  CHECK(classes.size() == 11);
  mpz_class total = 0;
  for (const auto& c : classes) total += c.class_size;
  CHECK(total == 30);
  // every representative is a genuine subgroup of S4
  for (const auto& c : classes) CHECK(c.representative.is_subgroup_of(S4));
}

TEST_CASE("canonical orbit partitions are conjugation invariant") {
  auto w = weyl_group(5);
  auto els = w.elements();
  auto h = PermGroup::from_generators({els[37]}, w.degree());
  std::mt19937_64 rng(11);
  for (int i = 0; i < 5; ++i) {
    auto g = w.random_element(rng);
    auto gi = g.inverse();
    std::vector<Perm> conj;
    for (const auto& x : h.generators()) conj.push_back(g * x * gi);
    auto hc = PermGroup::from_generators(conj, w.degree());
    CHECK(canonical_orbit_partition(h, els) == canonical_orbit_partition(hc, els));
  }
}
