#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "isotypy/localmodel.hpp"

using namespace iso;

namespace {

std::vector<NElem> all_elements(const LocalBlockModel& mod) {
  std::vector<NElem> out;
  out.reserve(mod.order());
  for (long code = 0; code < mod.order(); ++code) out.push_back(mod.decode(code));
  return out;
}

// elements of C_N(Q) for Q ≤ P
std::vector<NElem> centralizer_elements(const LocalBlockModel& mod,
                                        const PSubgroup& q) {
  std::vector<NElem> out;
  for (const NElem& g : all_elements(mod)) {
    bool central = true;
    for (PElem v : q.elems) {
      NElem qe = mod.reduce(v.x, v.y, 0, 0, 0);
      if (!(mod.conj(qe, g) == qe)) {
        central = false;
        break;
      }
    }
    if (central) out.push_back(g);
  }
  return out;
}

Cyclotomic inner_product(const LocalBlockModel& mod,
                         const std::vector<Cyclotomic>& f,
                         const std::vector<Cyclotomic>& h) {
  Cyclotomic s;
  for (std::size_t idx = 0; idx < f.size(); ++idx)
    s += f[idx] * h[idx].conjugate();
  return Rational(1, static_cast<long>(f.size())) * s;
}

}  // namespace

TEST_CASE("model construction validates its inputs") {
  CHECK_THROWS_AS(LocalBlockModel::build(3, 1, 1, 4), GroupError);  // 4 ∤ 2
  CHECK_THROWS_AS(LocalBlockModel::build(3, 1, 1, 1), GroupError);
  CHECK_THROWS_AS(LocalBlockModel::build(2, 1, 1, 2), GroupError);
  CHECK_THROWS_AS(LocalBlockModel::build(9, 1, 1, 2), GroupError);
  CHECK_THROWS_AS(LocalBlockModel::build(3, 1, 0, 2), GroupError);
  // explicit units must have exact order l
  CHECK_THROWS_AS(LocalBlockModel::build(5, 1, 1, 2, 2), GroupError);
  CHECK_NOTHROW(LocalBlockModel::build(5, 1, 1, 2, 4, 4));

  LocalBlockModel m312 = LocalBlockModel::build(3, 1, 1, 2);
  CHECK(m312.a1 == 2);
  CHECK(m312.a2 == 2);
  CHECK(m312.order() == 72);

  LocalBlockModel m5124 = LocalBlockModel::build(5, 1, 2, 4);
  CHECK(m5124.a1 == 2);
  CHECK(m5124.a2 == 7);  // smallest unit of order 4 mod 25
  CHECK(unit_order(m5124.a2, 25) == 4);
}

TEST_CASE("group law is associative with correct inverses") {
  for (auto [p, n, m, l] : std::vector<std::tuple<long, int, int, long>>{
           {3, 1, 1, 2}, {3, 1, 2, 2}, {5, 1, 1, 4}}) {
    LocalBlockModel mod = LocalBlockModel::build(p, n, m, l);
    std::mt19937 rng(42);
    for (int t = 0; t < 200; ++t) {
      NElem a = mod.decode(static_cast<long>(rng() % mod.order()));
      NElem b = mod.decode(static_cast<long>(rng() % mod.order()));
      NElem c = mod.decode(static_cast<long>(rng() % mod.order()));
      CHECK(mod.mul(mod.mul(a, b), c) == mod.mul(a, mod.mul(b, c)));
      CHECK(mod.mul(a, mod.inv(a)) == mod.id());
      CHECK(mod.decode(mod.encode(a)) == a);
    }
  }
}

TEST_CASE("commutator structure of the extension part") {
  LocalBlockModel mod = LocalBlockModel::build(5, 1, 1, 4);
  NElem e1 = mod.reduce(0, 0, 1, 0, 0);
  NElem e2 = mod.reduce(0, 0, 0, 1, 0);
  NElem z = mod.reduce(0, 0, 0, 0, 1);
  // z is central of order l
  CHECK(mod.elem_order(z) == 4);
  for (const NElem& g : {e1, e2, mod.reduce(1, 0, 0, 0, 0)})
    CHECK(mod.mul(z, g) == mod.mul(g, z));
  // e2 e1 e2^{-1} = e1 z^{-1}
  CHECK(mod.conj(e1, e2) == mod.mul(e1, mod.inv(z)));
  // e1 acts on the first coordinate only
  NElem x = mod.reduce(1, 1, 0, 0, 0);
  CHECK(mod.conj(x, e1) == mod.reduce(mod.a1, 1, 0, 0, 0));
  CHECK(mod.conj(x, e2) == mod.reduce(1, mod.a2, 0, 0, 0));
}

TEST_CASE("character degree counts match the closed formulas") {
  LocalBlockModel m312 = LocalBlockModel::build(3, 1, 1, 2);
  CHECK(m312.count_degrees_formula() == std::pair<long, long>{5, 1});
  CHECK(m312.irr_labels().size() == 6);

  LocalBlockModel m5124 = LocalBlockModel::build(5, 1, 2, 4);
  CHECK(m5124.count_degrees_formula() == std::pair<long, long>{29, 6});
  CHECK(m5124.count_degrees_enumerated() == std::pair<long, long>{29, 6});

  CHECK(LocalBlockModel::build(7, 1, 1, 3).count_degrees_formula() ==
        std::pair<long, long>{13, 4});
  CHECK(LocalBlockModel::build(3, 2, 1, 2).count_degrees_formula() ==
        std::pair<long, long>{11, 4});

  // formula = enumeration and sum-of-squares identity across a sweep
  for (long p : {3L, 5L, 7L}) {
    for (int n = 1; n <= 2; ++n)
      for (int m = 1; m <= 2; ++m)
        for (long l = 2; l < p; ++l) {
          if ((p - 1) % l != 0) continue;
          LocalBlockModel mod = LocalBlockModel::build(p, n, m, l);
          CHECK(mod.count_degrees_formula() == mod.count_degrees_enumerated());
          long sq = 0;
          for (const IrrLabel& lb : mod.irr_labels())
            sq += mod.degree(lb) * mod.degree(lb);
          CHECK(sq == l * l * mod.pn * mod.pm);
        }
  }
}

TEST_CASE("character tables are orthonormal") {
  for (auto [p, n, m, l] : std::vector<std::tuple<long, int, int, long>>{
           {3, 1, 1, 2}, {3, 1, 2, 2}, {5, 1, 1, 2}}) {
    LocalBlockModel mod = LocalBlockModel::build(p, n, m, l);
    auto labels = mod.irr_labels();
    auto elems = all_elements(mod);
    std::vector<std::vector<Cyclotomic>> table(labels.size());
    for (std::size_t idx = 0; idx < labels.size(); ++idx) {
      table[idx].reserve(elems.size());
      for (const NElem& g : elems) table[idx].push_back(mod.value(labels[idx], g));
      // degree is the value at the identity
      CHECK(table[idx][0].as_integer().value() == mod.degree(labels[idx]));
    }
    for (std::size_t a = 0; a < labels.size(); ++a)
      for (std::size_t b = a; b < labels.size(); ++b) {
        Cyclotomic ip = inner_product(mod, table[a], table[b]);
        CHECK(ip == Cyclotomic(a == b ? 1L : 0L));
      }
  }
}

TEST_CASE("character values are constant on conjugacy classes") {
  LocalBlockModel mod = LocalBlockModel::build(3, 1, 2, 2);
  auto labels = mod.irr_labels();
  std::mt19937 rng(11);
  auto elems = all_elements(mod);
  for (int t = 0; t < 60; ++t) {
    NElem g = elems[rng() % elems.size()];
    NElem h = elems[rng() % elems.size()];
    NElem cg = mod.conj(g, h);
    for (const IrrLabel& lb : labels) CHECK(mod.value(lb, g) == mod.value(lb, cg));
  }
}

TEST_CASE("p-part decomposition splits every element") {
  LocalBlockModel mod = LocalBlockModel::build(3, 1, 2, 2);
  for (const NElem& g : all_elements(mod)) {
    NElem gp = mod.p_part(g);
    NElem gq = mod.p_prime_part(g);
    CHECK(mod.mul(gp, gq) == g);
    CHECK(mod.mul(gp, gq) == mod.mul(gq, gp));
    CHECK(mod.is_p_element(gp));
    CHECK(mod.is_p_prime_element(gq));
  }
}

TEST_CASE("p-prime classes of the model match brute force") {
  for (auto [p, n, m, l] : std::vector<std::tuple<long, int, int, long>>{
           {3, 1, 1, 2}, {3, 1, 2, 2}}) {
    LocalBlockModel mod = LocalBlockModel::build(p, n, m, l);
    auto reps = mod.pprime_class_reps();
    auto elems = all_elements(mod);

    // every p'-element lies in the N-class of exactly one representative
    long covered = 0;
    for (const NElem& rep : reps) {
      long count = 0;
      for (const NElem& g : elems) {
        if (!mod.is_p_prime_element(g)) continue;
        for (const NElem& h : elems)
          if (mod.conj(g, h) == rep) {
            ++count;
            break;
          }
      }
      CHECK(count == mod.pprime_class_size(rep));
      covered += count;
    }
    long total = 0;
    for (const NElem& g : elems)
      if (mod.is_p_prime_element(g)) ++total;
    CHECK(covered == total);
  }
}

TEST_CASE("case classification of centralizer quotients") {
  LocalBlockModel mod = LocalBlockModel::build(3, 1, 1, 2);
  AbelianPGroup pg = mod.pgroup();
  CHECK(classify_case(mod, span(pg, {})) == CaseTag::Case2);
  CHECK(classify_case(mod, span(pg, {{0, 1}})) == CaseTag::Case31);
  CHECK(classify_case(mod, span(pg, {{1, 0}})) == CaseTag::Case31);
  CHECK(classify_case(mod, span(pg, {{1, 1}})) == CaseTag::Case1);

  LocalBlockModel big = LocalBlockModel::build(3, 1, 2, 2);
  AbelianPGroup pg2 = big.pgroup();
  CHECK(classify_case(big, span(pg2, {{0, 3}})) == CaseTag::Case32);
  CHECK(classify_case(big, span(pg2, {{0, 1}})) == CaseTag::Case31);
  CHECK(classify_case(big, span(pg2, {{1, 0}})) == CaseTag::Case31);
  CHECK(classify_case(big, span(pg2, {{1, 3}})) == CaseTag::Case1);
}

TEST_CASE("quotient label sets have the expected shapes") {
  LocalBlockModel mod = LocalBlockModel::build(3, 1, 1, 2);
  AbelianPGroup pg = mod.pgroup();

  QuotientModel q31 = quotient_model(mod, span(pg, {{0, 1}}));
  CHECK(q31.tag == CaseTag::Case31);
  CHECK(q31.label_count() == 3);  // tau0, tau1, ind
  CHECK(q31.mreps.size() == 1);
  CHECK(q31.degree(q31.tau_index(0, 0)) == 1);
  CHECK(q31.degree(q31.ind_index(0, 0)) == 2);

  QuotientModel q1 = quotient_model(mod, span(pg, {{1, 1}}));
  CHECK(q1.tag == CaseTag::Case1);
  CHECK(q1.ann.size() == 3);

  LocalBlockModel big = LocalBlockModel::build(3, 1, 2, 2);
  AbelianPGroup pg2 = big.pgroup();
  QuotientModel q32 = quotient_model(big, span(pg2, {{0, 3}}));
  CHECK(q32.tag == CaseTag::Case32);
  CHECK(q32.pbar == 3);
  CHECK(q32.label_count() == 9);  // (l + |M|) * pbar = 3 * 3
  CHECK(q32.mreps.size() == 1);

  // mirrored axis: Q inside the first coordinate
  QuotientModel q32m = quotient_model(big, span(pg2, {{1, 0}}));
  CHECK(q32m.axis == 1);
  CHECK(q32m.tag == CaseTag::Case31);
  CHECK(q32m.mreps.size() == 4);  // (9-1)/2 orbit representatives

  // orbit representative counts on the acting side
  QuotientModel q5 = quotient_model(LocalBlockModel::build(5, 1, 1, 2),
                                    span(AbelianPGroup(5, 1, 1), {{0, 1}}));
  CHECK(q5.mreps.size() == 2);
}

TEST_CASE("full block of the centralizer is orthonormal and complete") {
  LocalBlockModel big = LocalBlockModel::build(3, 1, 2, 2);
  AbelianPGroup pg2 = big.pgroup();
  PSubgroup q = span(pg2, {{0, 3}});
  QuotientModel qm = quotient_model(big, q);
  auto elems = centralizer_elements(big, q);
  CHECK(elems.size() == 108);  // p^{n+m} * l^2

  long count = qm.full_label_count();
  CHECK(count == 27);
  std::vector<std::vector<Cyclotomic>> table(count);
  long sq = 0;
  for (long idx = 0; idx < count; ++idx) {
    for (const NElem& g : elems) table[idx].push_back(qm.full_value(idx, g));
    long deg = static_cast<long>(table[idx][0].as_integer().value().get_si());
    sq += deg * deg;
  }
  CHECK(sq == elems.size() / (big.l * big.l) * big.l);  // |C| * l / l^2
  for (long a = 0; a < count; ++a)
    for (long b = a; b < count; ++b)
      CHECK(inner_product(big, table[a], table[b]) ==
            Cyclotomic(a == b ? 1L : 0L));
}

TEST_CASE("quotient label actions agree with concrete conjugation") {
  // Case 3.2 on both axes
  for (auto [n, m, qgen] : std::vector<std::tuple<int, int, PElem>>{
           {1, 2, {0, 3}}, {2, 1, {3, 0}}}) {
    LocalBlockModel big = LocalBlockModel::build(3, n, m, 2);
    AbelianPGroup pg = big.pgroup();
    PSubgroup q = span(pg, {qgen});
    QuotientModel qm = quotient_model(big, q);
    REQUIRE(qm.tag == CaseTag::Case32);
    auto elems = centralizer_elements(big, q);
    auto perm = qm.acting_gen_perm();
    NElem gen = qm.axis == 2 ? big.reduce(0, 0, 0, 1, 0)
                             : big.reduce(0, 0, 1, 0, 0);
    for (long idx = 0; idx < qm.label_count(); ++idx)
      for (const NElem& g : elems) {
        // chi^gen(g) = chi(gen g gen^{-1})
        CHECK(qm.barred_value(idx, big.conj(g, gen)) ==
              qm.barred_value(perm[idx], g));
      }

    // star action: multiplication by the generating character of the
    // residual factor
    auto star = qm.star_gen_perm();
    for (long idx = 0; idx < qm.label_count(); ++idx)
      for (const NElem& g : elems) {
        long resid = qm.axis == 2 ? g.y : g.x;
        Cyclotomic zeta = Cyclotomic::root_of_unity(qm.pbar, resid);
        CHECK(qm.barred_value(idx, g) * zeta ==
              qm.barred_value(star[idx], g));
      }
  }
}

TEST_CASE("case 1 labels are the characters annihilating Q") {
  LocalBlockModel mod = LocalBlockModel::build(3, 1, 1, 2);
  AbelianPGroup pg = mod.pgroup();
  PSubgroup q = span(pg, {{1, 1}});
  QuotientModel qm = quotient_model(mod, q);
  REQUIRE(qm.tag == CaseTag::Case1);
  // (c, d) with c + d ≡ 0 mod 3
  std::vector<std::pair<long, long>> expect = {{0, 0}, {1, 2}, {2, 1}};
  CHECK(qm.ann == expect);
  auto perms = qm.case1_action_perms();
  // N_E(Q) is the diagonal subgroup of E, of order l = 2
  CHECK(perms.size() == 1);
  for (const auto& perm : perms) {
    // each is a permutation fixing the principal label
    CHECK(perm[0] == 0);
    std::set<long> seen(perm.begin(), perm.end());
    CHECK(seen.size() == perm.size());
  }
}
