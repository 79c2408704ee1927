#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "isotypy/groups.hpp"

using namespace iso;

namespace {

Automorphism random_automorphism(const AbelianPGroup& g, std::mt19937& rng) {
  for (;;) {
    long a = rng() % g.pn(), b = rng() % g.pn();
    long c = rng() % g.pm(), d = rng() % g.pm();
    try {
      return Automorphism(g, a, b, c, d);
    } catch (const GroupError&) {
      continue;
    }
  }
}

// all subgroups by closing every pair of elements (rank <= 2 means pairs
// are enough)
std::set<PSubgroup> brute_force_subgroups(const AbelianPGroup& g) {
  std::set<PSubgroup> out;
  auto all = g.all_elements();
  for (PElem v : all)
    for (PElem w : all) out.insert(span(g, {v, w}));
  return out;
}

}  // namespace

TEST_CASE("basic arithmetic helpers") {
  CHECK(pow_long(3, 4) == 81);
  CHECK(is_prime(2));
  CHECK(is_prime(97));
  CHECK(!is_prime(91));
  CHECK(unit_order(2, 9) == 6);
  CHECK(unit_order(8, 9) == 2);
  CHECK(unit_order(7, 25) == 4);
  CHECK_THROWS(unit_order(3, 9));
}

TEST_CASE("group construction and canonical form") {
  CHECK_THROWS_AS(AbelianPGroup(2, 1, 1), GroupError);
  CHECK_THROWS_AS(AbelianPGroup(4, 1, 1), GroupError);
  CHECK_THROWS_AS(AbelianPGroup(3, 0, 0), GroupError);
  AbelianPGroup g(3, 1, 2);  // direct construction keeps the given roles
  CHECK(g.n == 1);
  CHECK(g.m == 2);
  AbelianPGroup c = AbelianPGroup::canonical(3, 1, 2);
  CHECK(c.n == 2);
  CHECK(c.m == 1);
  CHECK(g.order() == 27);
  CHECK(g.elem_order(g.reduce(0, 1)) == 9);
  CHECK(g.elem_order(g.reduce(1, 3)) == 3);
}

TEST_CASE("automorphisms respect the divisibility constraints") {
  AbelianPGroup g(3, 2, 1);  // C9 x C3
  CHECK_THROWS_AS(Automorphism(g, 1, 1, 0, 1), GroupError);  // 3 must divide b
  CHECK_NOTHROW(Automorphism(g, 1, 3, 0, 1));
  CHECK_THROWS_AS(Automorphism(g, 1, 0, 0, 3), GroupError);  // det = 0 mod 3
  AbelianPGroup h(3, 1, 2);  // C3 x C9: constraint moves to c
  CHECK_THROWS_AS(Automorphism(h, 1, 0, 1, 1), GroupError);
  CHECK_NOTHROW(Automorphism(h, 1, 0, 3, 1));

  Automorphism f(g, 2, 0, 0, 2);
  CHECK(f.order() == 6);  // order of 2 mod 9
  CHECK(f.apply({4, 2}) == PElem{8, 1});
  CHECK(f.compose(f.inverse()).is_identity());

  std::mt19937 rng(7);
  for (int t = 0; t < 30; ++t) {
    Automorphism u = random_automorphism(g, rng);
    Automorphism v = random_automorphism(g, rng);
    PElem x{static_cast<long>(rng() % 9), static_cast<long>(rng() % 3)};
    CHECK(u.compose(v).apply(x) == u.apply(v.apply(x)));
  }
}

TEST_CASE("subgroup lattice enumeration matches brute force") {
  AbelianPGroup g33(3, 1, 1);
  auto l33 = subgroup_lattice(g33);
  CHECK(l33.size() == 6);

  AbelianPGroup g9(3, 2, 0);
  CHECK(subgroup_lattice(g9).size() == 3);

  AbelianPGroup g93(3, 2, 1);
  auto l93 = subgroup_lattice(g93);
  CHECK(l93.size() == 10);

  for (const AbelianPGroup& g : {g33, g93, AbelianPGroup(5, 1, 1)}) {
    auto listed = subgroup_lattice(g);
    std::set<PSubgroup> expect = brute_force_subgroups(g);
    std::set<PSubgroup> got(listed.begin(), listed.end());
    CHECK(got.size() == listed.size());  // duplicate-free
    CHECK(got == expect);
  }
}

TEST_CASE("subgroup basis yields an internal direct sum") {
  AbelianPGroup g(3, 2, 1);
  for (const PSubgroup& h : subgroup_lattice(g)) {
    auto basis = subgroup_basis(g, h);
    if (h.order() == 1) {
      CHECK(basis.empty());
      continue;
    }
    PSubgroup sp = span(g, basis);
    CHECK(sp == h);
    if (basis.size() == 2) {
      long o1 = g.elem_order(basis[0]), o2 = g.elem_order(basis[1]);
      CHECK(o1 >= o2);
      CHECK(o1 * o2 == h.order());
    }
  }
}

TEST_CASE("centralizers and normalizers of subgroups in the acting group") {
  AbelianPGroup g(3, 1, 1);
  ActionGroup e(g, {Automorphism(g, 2, 0, 0, 1), Automorphism(g, 1, 0, 0, 2)});
  CHECK(e.order() == 4);
  CHECK(e.is_abelian());

  PSubgroup trivial = span(g, {});
  CHECK(centralizer_in_E(e, trivial).size() == 4);

  PSubgroup p2 = span(g, {{0, 1}});
  CHECK(centralizer_in_E(e, p2).size() == 2);  // the first factor only
  for (const Automorphism& f : centralizer_in_E(e, p2)) CHECK(f.d == 1);

  PSubgroup diag = span(g, {{1, 1}});
  CHECK(centralizer_in_E(e, diag).size() == 1);
  // only the diagonal automorphisms stabilize the diagonal line setwise
  CHECK(normalizer_in_E(e, diag).size() == 2);
}

TEST_CASE("frattini projection is injective on p-prime subgroups") {
  AbelianPGroup g(5, 2, 1);  // C25 x C5
  ActionGroup f(g, {Automorphism(g, 7, 0, 0, 1), Automorphism(g, 1, 0, 0, 2)});
  CHECK(f.order() == 16);
  CHECK(frattini_restriction_injective(g, f));

  AbelianPGroup g93(3, 2, 1);
  Automorphism d22(g93, 2, 0, 0, 2);
  Automorphism pr = frattini_project(g93, d22);
  CHECK(pr.a == 2);
  CHECK(pr.d == 2);
  CHECK_THROWS_AS(frattini_quotient(AbelianPGroup(3, 2, 0)), GroupError);
}

TEST_CASE("diagonal product actions decompose as given") {
  AbelianPGroup g(3, 1, 1);
  ActionGroup f(g, {Automorphism(g, 2, 0, 0, 1), Automorphism(g, 1, 0, 0, 2)});
  Decomposition dec = decompose_action(g, f);
  CHECK(validate_decomposition(g, f, dec));
  CHECK(span(g, dec.d1_gens).order() * span(g, dec.d2_gens).order() == 9);

  AbelianPGroup g55(5, 1, 1);
  ActionGroup f55(g55,
                  {Automorphism(g55, 2, 0, 0, 1), Automorphism(g55, 1, 0, 0, 2)});
  Decomposition d55 = decompose_action(g55, f55);
  CHECK(validate_decomposition(g55, f55, d55));
  CHECK(ActionGroup(g55, d55.f1_gens).order() == 4);
  CHECK(ActionGroup(g55, d55.f2_gens).order() == 4);
}

TEST_CASE("decomposition recovers conjugated diagonal actions") {
  struct Setup {
    long p;
    int n, m;
    long u1, u2;
  };
  // (group, diagonal units of equal p'-order)
  std::vector<Setup> setups = {
      {3, 1, 1, 2, 2},   // C3 x C3, order 2
      {3, 2, 1, 8, 2},   // C9 x C3, order 2
      {3, 2, 2, 8, 8},   // C9 x C9, order 2
      {5, 2, 1, 7, 2},   // C25 x C5, order 4
      {5, 1, 1, 2, 2},   // C5 x C5, order 4
  };
  std::mt19937 rng(20240817);
  for (const Setup& s : setups) {
    AbelianPGroup g(s.p, s.n, s.m);
    Automorphism base1(g, s.u1, 0, 0, 1);
    Automorphism base2(g, 1, 0, 0, s.u2);
    for (int trial = 0; trial < 50; ++trial) {
      Automorphism t = random_automorphism(g, rng);
      Automorphism ti = t.inverse();
      ActionGroup f(g, {t.compose(base1).compose(ti),
                        t.compose(base2).compose(ti)});
      Decomposition dec = decompose_action(g, f);
      CHECK(validate_decomposition(g, f, dec));
    }
  }
}

TEST_CASE("decomposition rejects malformed actions with named errors") {
  AbelianPGroup g(3, 1, 1);

  auto code = [](auto&& fn) -> std::string {
    try {
      fn();
    } catch (const GroupError& e) {
      return e.code;
    }
    return "";
  };

  CHECK(code([&] {
          AbelianPGroup cyc(3, 2, 0);
          ActionGroup f(cyc, {Automorphism(cyc, 2, 0, 0, 1)});
          decompose_action(cyc, f);
        }) == "rank-1-input");

  CHECK(code([&] {
          ActionGroup f(g, {Automorphism(g, 0, 1, 1, 0),
                            Automorphism(g, 2, 0, 0, 1)});
          decompose_action(g, f);
        }) == "F-not-abelian");

  CHECK(code([&] {
          ActionGroup f(g, {Automorphism(g, 1, 1, 0, 1)});
          decompose_action(g, f);
        }) == "F-not-p-prime");

  CHECK(code([&] {
          ActionGroup f(g, {Automorphism(g, 2, 0, 0, 2)});
          decompose_action(g, f);
        }) == "F-not-square");
}
