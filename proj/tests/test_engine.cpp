#include <catch2/catch_amalgamated.hpp>

#include "isotypy/engine.hpp"

using namespace iso;

namespace {

ExtensionProblem self_problem(const QuotientModel& qm) {
  ExtensionProblem pr;
  pr.qm = qm;
  pr.gside = GSide::self(qm);
  pr.delta0 = self_delta0(qm);
  return pr;
}

bool is_identity_result(const ExtensionResult& r) {
  if (!r.ok) return false;
  for (long i = 0; i < r.bij.size(); ++i)
    if (r.bij.perm[i] != i || r.bij.sign[i] != 1) return false;
  return true;
}

QuotientModel qm_case2() {
  LocalBlockModel mod = LocalBlockModel::build(3, 1, 1, 2);
  return quotient_model(mod, span(mod.pgroup(), {}));
}
QuotientModel qm_case1() {
  LocalBlockModel mod = LocalBlockModel::build(3, 1, 1, 2);
  return quotient_model(mod, span(mod.pgroup(), {{1, 1}}));
}
QuotientModel qm_case311() {
  LocalBlockModel mod = LocalBlockModel::build(3, 1, 1, 2);
  return quotient_model(mod, span(mod.pgroup(), {{0, 1}}));
}
QuotientModel qm_case312() {
  LocalBlockModel mod = LocalBlockModel::build(5, 1, 1, 2);
  return quotient_model(mod, span(mod.pgroup(), {{0, 1}}));
}
QuotientModel qm_case32() {
  LocalBlockModel mod = LocalBlockModel::build(3, 1, 2, 2);
  return quotient_model(mod, span(mod.pgroup(), {{0, 3}}));
}

}  // namespace

TEST_CASE("self-instances extend to the identity in every case") {
  for (const QuotientModel& qm :
       {qm_case2(), qm_case1(), qm_case311(), qm_case312(), qm_case32()}) {
    ExtensionResult r = extend(self_problem(qm));
    INFO(case_name(qm.tag) << ": " << r.error << " / " << r.detail);
    CHECK(is_identity_result(r));
    CHECK(r.delta == 1);
  }
}

TEST_CASE("globally negated self-instances recover the sign") {
  for (const QuotientModel& qm :
       {qm_case2(), qm_case1(), qm_case311(), qm_case312(), qm_case32()}) {
    ExtensionProblem pr = self_problem(qm);
    for (ZVec& col : pr.delta0)
      for (mpz_class& v : col) v = -v;
    ExtensionResult r = extend(pr);
    INFO(case_name(qm.tag) << ": " << r.error << " / " << r.detail);
    REQUIRE(r.ok);
    for (long i = 0; i < r.bij.size(); ++i) {
      CHECK(r.bij.perm[i] == i);
      CHECK(r.bij.sign[i] == -1);
    }
  }
}

TEST_CASE("integer constraint report on the trivial-subgroup case") {
  ExtensionResult r = extend_case2(self_problem(qm_case2()));
  REQUIRE(r.ok);
  CHECK(r.a_before == std::vector<long>{0, 1});
  CHECK(r.a_after == std::vector<long>{0});
}

TEST_CASE("the borderline overlap pattern is excluded by strictness") {
  // replace the image of the mixed vector by the a = 1 solution of the
  // norm equality; this is still an isometric restriction but admits no
  // extension
  ExtensionProblem pr = self_problem(qm_case2());
  const QuotientModel& qm = pr.qm;
  long psi1 = -1;
  for (long i = 0; i < qm.label_count(); ++i)
    if (qm.degree(i) == qm.model.l && psi1 < 0) psi1 = i;
  ZVec w(qm.label_count(), 0);
  for (long i = 0; i < qm.label_count(); ++i)
    if (qm.degree(i) == qm.model.l) w[i] = (i == psi1) ? 1 - qm.model.l : 1;
  pr.delta0.back() = w;
  ExtensionResult r = extend_case2(pr);
  CHECK(!r.ok);
  CHECK(r.error == "integer-constraint");
}

TEST_CASE("mismatched signs between the degree families are rejected") {
  // a = 0 but the single degree-l^2 character enters with the opposite
  // sign: the degree functional no longer vanishes on the mixed image
  ExtensionProblem pr = self_problem(qm_case2());
  const QuotientModel& qm = pr.qm;
  long psi1 = -1, psi2 = -1;
  for (long i = 0; i < qm.label_count(); ++i) {
    if (qm.degree(i) == qm.model.l && psi1 < 0) psi1 = i;
    if (qm.degree(i) == qm.model.l * qm.model.l && psi2 < 0) psi2 = i;
  }
  ZVec w(qm.label_count(), 0);
  w[psi1] = -qm.model.l;
  w[psi2] = -1;
  pr.delta0.back() = w;
  ExtensionResult r = extend_case2(pr);
  CHECK(!r.ok);
  CHECK(r.error == "sign-clash");
}

TEST_CASE("negative controls are rejected with the named constraint") {
  // no regular orbit on the target side
  {
    ExtensionProblem pr = self_problem(qm_case311());
    std::vector<long> id(pr.gside.count);
    for (long i = 0; i < pr.gside.count; ++i) id[i] = i;
    pr.gside.e_action[0] = id;
    ExtensionResult r = extend_case31(pr);
    CHECK(!r.ok);
    CHECK(r.error == "no-regular-E2-orbit");
  }
  // twist action with fixed points
  {
    ExtensionProblem pr = self_problem(qm_case32());
    std::vector<long> id(pr.gside.count);
    for (long i = 0; i < pr.gside.count; ++i) id[i] = i;
    pr.gside.star_action = id;
    ExtensionResult r = extend_case32(pr);
    CHECK(!r.ok);
    CHECK(r.error == "star-freeness-violation");
  }
  // non-isometric restriction data
  for (const QuotientModel& qm :
       {qm_case2(), qm_case1(), qm_case311(), qm_case32()}) {
    ExtensionProblem pr = self_problem(qm);
    pr.delta0[0][0] += 3;
    ExtensionResult r = extend(pr);
    INFO(case_name(qm.tag));
    CHECK(!r.ok);
    CHECK(r.error == "not-an-isometry");
  }
  // undeclared flags
  {
    ExtensionProblem pr = self_problem(qm_case311());
    pr.gside.regular_orbit = false;
    CHECK(extend(pr).error == "no-regular-E2-orbit");
  }
  {
    ExtensionProblem pr = self_problem(qm_case32());
    pr.gside.free_star = false;
    CHECK(extend(pr).error == "star-freeness-violation");
  }
  {
    ExtensionProblem pr = self_problem(qm_case32());
    pr.gside.star_action.clear();
    CHECK(extend(pr).error == "missing-star-action");
  }
}

TEST_CASE("seeded scrambles extend and restrict back to the input") {
  for (const QuotientModel& qm :
       {qm_case2(), qm_case1(), qm_case311(), qm_case312(), qm_case32()}) {
    for (unsigned long seed = 1; seed <= 12; ++seed) {
      ExtensionProblem pr = scrambled_problem(qm, seed);
      ExtensionResult r = extend(pr);
      INFO(case_name(qm.tag) << " seed " << seed << ": " << r.error << " / "
                             << r.detail);
      REQUIRE(r.ok);
      // the engine self-verifies; re-check the restriction independently
      LatticeIsometry restr =
          restrict_to_sublattice(r.ext, lzero_basis(qm));
      CHECK(restr.cols == pr.delta0);
      CHECK(verify_isometry(r.ext).pass);
    }
  }
}

TEST_CASE("scrambles of further quotient shapes also extend") {
  // case 3.1 with four induced labels, and the axis-1 twist case
  LocalBlockModel mod = LocalBlockModel::build(3, 1, 2, 2);
  QuotientModel big31 = quotient_model(mod, span(mod.pgroup(), {{1, 0}}));
  REQUIRE(big31.tag == CaseTag::Case31);
  LocalBlockModel mod2 = LocalBlockModel::build(3, 2, 2, 2);
  QuotientModel ax1 = quotient_model(mod2, span(mod2.pgroup(), {{3, 0}}));
  REQUIRE(ax1.tag == CaseTag::Case32);
  for (const QuotientModel& qm : {big31, ax1})
    for (unsigned long seed = 1; seed <= 6; ++seed) {
      ExtensionResult r = extend(scrambled_problem(qm, seed));
      INFO(case_name(qm.tag) << " seed " << seed << ": " << r.error);
      CHECK(r.ok);
    }
}
