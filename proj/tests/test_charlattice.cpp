#include <catch2/catch_amalgamated.hpp>

#include "isotypy/charlattice.hpp"

using namespace iso;

namespace {

bool cf_equal(const CF& a, const CF& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!(a[i] == b[i])) return false;
  return true;
}

bool cf_zero(const CF& a) {
  for (const Cyclotomic& v : a)
    if (!v.is_zero()) return false;
  return true;
}

ZVec unit_vec(long n, long i, long s = 1) {
  ZVec v(n, 0);
  v[i] = s;
  return v;
}

// case-3 quotient of the C3 x C9 model by the order-3 subgroup of P2
QuotientModel small_case3() {
  LocalBlockModel mod = LocalBlockModel::build(3, 1, 2, 2);
  return quotient_model(mod, span(mod.pgroup(), {{0, 3}}));
}

}  // namespace

TEST_CASE("inner products of block characters on concrete hosts") {
  // rank of the sublattice basis vectors and their pairwise inner products,
  // computed from honest class-function sums over the host group
  LocalBlockModel mod = LocalBlockModel::build(3, 1, 1, 2);
  Host h = Host::whole(mod);
  QuotientModel qm = quotient_model(mod, span(mod.pgroup(), {}));
  long count = qm.label_count();
  REQUIRE(count == 6);

  long psi1 = -1, psi1p = -1, psi2 = -1;
  for (long i = 0; i < count; ++i) {
    if (qm.degree(i) == 2) (psi1 < 0 ? psi1 : psi1p) = i;
    if (qm.degree(i) == 4 && psi2 < 0) psi2 = i;
  }
  REQUIRE(psi1 >= 0);
  REQUIRE(psi1p >= 0);
  REQUIRE(psi2 >= 0);

  auto cf = [&](const ZVec& v) { return lattice_cf(h, qm, v); };
  ZVec d11 = unit_vec(count, psi1);
  d11[psi1p] = -1;  // psi1 - psi1'
  ZVec mu = unit_vec(count, psi2);
  mu[psi1] = -2;  // psi2 - l psi1

  CHECK(inner_product(h, cf(d11), cf(d11)) == Cyclotomic(2L));
  CHECK(inner_product(h, cf(mu), cf(d11)) == Cyclotomic(-2L));
  CHECK(inner_product(h, cf(mu), cf(mu)) == Cyclotomic(5L));  // 1 + l^2

  // two degree-l^2 characters exist in the C3 x C9 model
  LocalBlockModel big = LocalBlockModel::build(3, 1, 2, 2);
  Host hb = Host::whole(big);
  QuotientModel qb = quotient_model(big, span(big.pgroup(), {}));
  long n2 = qb.label_count();
  std::vector<long> deg4;
  long first_l = -1;
  for (long i = 0; i < n2; ++i) {
    if (qb.degree(i) == 4) deg4.push_back(i);
    if (qb.degree(i) == 2 && first_l < 0) first_l = i;
  }
  REQUIRE(deg4.size() == 4);
  ZVec mu2 = unit_vec(n2, deg4[0]);
  mu2[first_l] = -2;
  ZVec d22 = unit_vec(n2, deg4[0]);
  d22[deg4[1]] = -1;  // psi2 - psi2'
  CHECK(inner_product(hb, lattice_cf(hb, qb, mu2), lattice_cf(hb, qb, d22)) ==
        Cyclotomic(1L));

  // case 3: <Ind(xi) - sum_t tau_t, same> = 1 + l on the centralizer host
  QuotientModel q3 = small_case3();
  Host h3 = Host::centralizer(q3.model, q3.q);
  REQUIRE(h3.size() == 108);
  ZVec v(q3.label_count(), 0);
  v[q3.ind_index(0, 0)] = 1;
  for (long t = 0; t < q3.model.l; ++t) v[q3.tau_index(t, 0)] = -1;
  CHECK(inner_product(h3, lattice_cf(h3, q3, v), lattice_cf(h3, q3, v)) ==
        Cyclotomic(3L));

  // the barred labels themselves are orthonormal on the host
  for (long i = 0; i < q3.label_count(); ++i)
    for (long j = 0; j <= i; ++j) {
      Cyclotomic ip =
          inner_product(h3, lattice_cf(h3, q3, unit_vec(q3.label_count(), i)),
                        lattice_cf(h3, q3, unit_vec(q3.label_count(), j)));
      CHECK(ip == (i == j ? Cyclotomic(1L) : Cyclotomic(0L)));
    }
}

TEST_CASE("restriction to the identity section kills the sublattice basis") {
  std::vector<QuotientModel> qms;
  {
    LocalBlockModel mod = LocalBlockModel::build(3, 1, 1, 2);
    qms.push_back(quotient_model(mod, span(mod.pgroup(), {})));
  }
  qms.push_back(small_case3());
  for (const QuotientModel& qm : qms) {
    Host h = Host::centralizer(qm.model, qm.q);
    for (const ZVec& row : lzero_basis(qm)) {
      CF f = lattice_cf(h, qm, row);
      Host c1 = h.sub_centralizer(qm.model.id());
      CHECK(cf_zero(d_u(h, c1, qm.model.id(), f)));
    }
  }
}

TEST_CASE("section maps reconstruct every block character") {
  // sum over p-section representatives u of e^u(d^u(eta)) recovers eta
  struct Params {
    long p;
    int n, m;
    long l;
  };
  for (Params pr : {Params{3, 1, 1, 2}, Params{3, 1, 2, 2}}) {
    LocalBlockModel mod = LocalBlockModel::build(pr.p, pr.n, pr.m, pr.l);
    AbelianPGroup pg = mod.pgroup();
    for (const PSubgroup& q : subgroup_lattice(pg)) {
      QuotientModel qm = quotient_model(mod, q);
      Host h = Host::centralizer(mod, q);
      auto fs = centralizer_in_E(mod.e_group(), q);
      std::vector<PElem> reps = orbit_reps_on_P(mod, fs);

      // the reps contain Q itself (its points are fixed by every f in fs)
      for (PElem v : q.elems)
        CHECK(std::find(reps.begin(), reps.end(), v) != reps.end());

      std::vector<Host> subs;
      std::vector<SectionMap> maps;
      std::vector<NElem> us;
      for (PElem v : reps) {
        NElem u = mod.reduce(v.x, v.y, 0, 0, 0);
        Host ch = h.sub_centralizer(u);
        maps.push_back(SectionMap::build(h, ch, u));
        subs.push_back(std::move(ch));
        us.push_back(u);
      }
      for (long idx = 0; idx < qm.full_label_count(); ++idx) {
        CF eta = full_label_cf(h, qm, idx);
        CF sum(h.size());
        for (std::size_t r = 0; r < us.size(); ++r) {
          CF part = maps[r].apply(d_u(h, subs[r], us[r], eta));
          for (long i = 0; i < h.size(); ++i) sum[i] += part[i];
        }
        CHECK(cf_equal(sum, eta));
      }
    }
  }
}

TEST_CASE("twist by p-group characters") {
  QuotientModel qm = small_case3();
  Host h = Host::centralizer(qm.model, qm.q);
  long count = qm.label_count();

  auto cf = [&](long i) { return lattice_cf(h, qm, unit_vec(count, i)); };

  // the trivial twist is the identity
  auto one = [](PElem) { return Cyclotomic(1L); };
  for (long i = 0; i < count; ++i) CHECK(cf_equal(star(h, one, cf(i)), cf(i)));

  // the generator of the characters of the residual p-group permutes the
  // barred labels as advertised, and twice applied matches the square
  long stride = qm.pm_e / qm.pbar;
  auto zeta = [&](PElem v) {
    long coord = qm.axis == 2 ? v.y : v.x;
    return LocalBlockModel::rou(qm.pm_e, stride * coord);
  };
  std::vector<long> sp = qm.star_gen_perm();
  for (long i = 0; i < count; ++i) {
    CF once = star(h, zeta, cf(i));
    CHECK(cf_equal(once, cf(sp[i])));
    CHECK(cf_equal(star(h, zeta, once), cf(sp[sp[i]])));
  }

  // twisting by a linear character is an isometry
  for (long i = 0; i < count; ++i)
    for (long j = 0; j < count; ++j)
      CHECK(inner_product(h, star(h, zeta, cf(i)), star(h, zeta, cf(j))) ==
            inner_product(h, cf(i), cf(j)));
}

TEST_CASE("distinguished sublattice bases are certified against the kernel") {
  // Q = 1 in the C3 x C3 model
  {
    LocalBlockModel mod = LocalBlockModel::build(3, 1, 1, 2);
    QuotientModel qm = quotient_model(mod, span(mod.pgroup(), {}));
    ZMat basis = lzero_basis(qm);
    CHECK(static_cast<long>(basis.size()) == 5);
    CHECK(lattice_rank(basis) == 5);
    CHECK(certify_lzero_basis(qm));
  }
  // case 3.2 quotient of C3 x C9 by C3 <= P2
  {
    QuotientModel qm = small_case3();
    ZMat basis = lzero_basis(qm);
    CHECK(static_cast<long>(basis.size()) == 7);  // 1*3 + 2*2
    CHECK(lattice_rank(basis) == 7);
    CHECK(certify_lzero_basis(qm));
  }
  // case 3.1 quotients: full axis subgroups on either side
  {
    LocalBlockModel mod = LocalBlockModel::build(3, 1, 2, 2);
    QuotientModel q2 = quotient_model(mod, span(mod.pgroup(), {{0, 1}}));
    CHECK(q2.tag == CaseTag::Case31);
    CHECK(static_cast<long>(lzero_basis(q2).size()) == 1);
    CHECK(certify_lzero_basis(q2));
    QuotientModel q1 = quotient_model(mod, span(mod.pgroup(), {{1, 0}}));
    CHECK(q1.tag == CaseTag::Case31);
    CHECK(static_cast<long>(lzero_basis(q1).size()) == 4);
    CHECK(certify_lzero_basis(q1));
  }
  {
    LocalBlockModel mod = LocalBlockModel::build(5, 1, 1, 2);
    QuotientModel qm = quotient_model(mod, span(mod.pgroup(), {{0, 1}}));
    CHECK(qm.tag == CaseTag::Case31);
    CHECK(static_cast<long>(lzero_basis(qm).size()) == 2);
    CHECK(certify_lzero_basis(qm));
  }
  // case 1: diagonal subgroup of the C3 x C3 model
  {
    LocalBlockModel mod = LocalBlockModel::build(3, 1, 1, 2);
    QuotientModel qm = quotient_model(mod, span(mod.pgroup(), {{1, 1}}));
    CHECK(qm.tag == CaseTag::Case1);
    CHECK(static_cast<long>(lzero_basis(qm).size()) == 2);
    CHECK(certify_lzero_basis(qm));
  }
}

TEST_CASE("kernel rank reflects the single modular constraint") {
  // the block has one simple module, so d^1 has rank 1 on the labels and
  // the sublattice has corank 1
  for (auto [p, n, m, l] :
       {std::tuple<long, int, int, long>{3, 1, 1, 2}, {5, 1, 1, 4},
        {3, 2, 1, 2}}) {
    LocalBlockModel mod = LocalBlockModel::build(p, n, m, l);
    QuotientModel qm = quotient_model(mod, span(mod.pgroup(), {}));
    ZMat kernel = lzero_kernel_basis(qm);
    CHECK(static_cast<long>(kernel.size()) == qm.label_count() - 1);
  }
}
