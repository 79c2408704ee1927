#pragma once

// The local model group N = (P1 x P2) ⋊ Ẽ, where Ẽ is the Heisenberg-type
// group of order l^3 generated by e1, e2 with central commutator z, and
// e1, e2 act on the cyclic factors P1, P2 through units a1, a2 of order l.
// This header provides the group arithmetic, the irreducible characters of
// the block selected by a faithful central character θ of <z>, the p'-class
// layer (p'-classes of N biject with conjugacy classes of Ẽ), and the
// label-level description of the centralizer quotients C_N(Q)/Q for Q ≤ P.

#include <cstdint>
#include <optional>

#include "cyclotomic.hpp"
#include "groups.hpp"

namespace iso {

// (x, y) ∈ P1 x P2, (i, j, k) the exponents of e1, e2, z.
struct NElem {
  long x = 0, y = 0;
  long i = 0, j = 0, k = 0;
  friend bool operator==(const NElem&, const NElem&) = default;
  friend auto operator<=>(const NElem&, const NElem&) = default;
};

// Character label families of the block of N:
//   Heis  — the unique character with P in its kernel, degree l
//   Left  — induced from a nontrivial character of P1, degree l
//   Right — induced from a nontrivial character of P2, degree l
//   Outer — both coordinates nontrivial, degree l^2
enum class Fam : int { Heis = 0, Left = 1, Right = 2, Outer = 3 };

struct IrrLabel {
  Fam fam = Fam::Heis;
  long c = 0;    // orbit-minimal character exponent on P1 (Left/Outer)
  long d = 0;    // orbit-minimal character exponent on P2 (Right/Outer)
  long psi = 0;  // exponent of the extra linear character (Left/Right)
  friend bool operator==(const IrrLabel&, const IrrLabel&) = default;
  friend auto operator<=>(const IrrLabel&, const IrrLabel&) = default;
};

class LocalBlockModel {
 public:
  long p;
  int n, m;
  long l;
  long pn, pm;
  long a1, a2;

  static LocalBlockModel build(long p, int n, int m, long l,
                               std::optional<long> a1 = std::nullopt,
                               std::optional<long> a2 = std::nullopt) {
    if (!is_prime(p) || p == 2)
      throw GroupError("bad-prime", "p must be an odd prime");
    if (n < 1 || m < 1)
      throw GroupError("bad-exponents", "need n >= 1 and m >= 1");
    if (l <= 1) throw GroupError("bad-l", "l must exceed 1");
    if ((p - 1) % l != 0) throw GroupError("bad-l", "l does not divide p-1");
    LocalBlockModel mod;
    mod.p = p;
    mod.n = n;
    mod.m = m;
    mod.l = l;
    mod.pn = pow_long(p, n);
    mod.pm = pow_long(p, m);
    mod.a1 = a1 ? *a1 : smallest_unit_of_order(mod.pn, l);
    mod.a2 = a2 ? *a2 : smallest_unit_of_order(mod.pm, l);
    if (std::gcd(mod.a1, mod.pn) != 1 || unit_order(mod.a1, mod.pn) != l)
      throw GroupError("bad-unit-order", "a1 must have order l mod p^n");
    if (std::gcd(mod.a2, mod.pm) != 1 || unit_order(mod.a2, mod.pm) != l)
      throw GroupError("bad-unit-order", "a2 must have order l mod p^m");
    mod.a1pow.resize(l);
    mod.a2pow.resize(l);
    mod.a1pow[0] = 1 % mod.pn;
    mod.a2pow[0] = 1 % mod.pm;
    for (long t = 1; t < l; ++t) {
      mod.a1pow[t] = mod.a1pow[t - 1] * mod.a1 % mod.pn;
      mod.a2pow[t] = mod.a2pow[t - 1] * mod.a2 % mod.pm;
    }
    return mod;
  }

  static long smallest_unit_of_order(long mod, long l) {
    for (long u = 2; u < mod; ++u) {
      if (std::gcd(u, mod) != 1) continue;
      if (unit_order(u, mod) == l) return u;
    }
    throw GroupError("bad-unit-order", "no unit of the requested order");
  }

  long order() const { return pn * pm * l * l * l; }

  AbelianPGroup pgroup() const { return AbelianPGroup(p, n, m); }

  // ---- group arithmetic -------------------------------------------------

  NElem reduce(long x, long y, long i, long j, long k) const {
    auto md = [](long v, long mo) {
      v %= mo;
      return v < 0 ? v + mo : v;
    };
    return {md(x, pn), md(y, pm), md(i, l), md(j, l), md(k, l)};
  }

  NElem id() const { return {}; }

  // action of the Ẽ-part (i, j) on P
  PElem act(long i, long j, PElem u) const {
    return {a1pow[((i % l) + l) % l] * u.x % pn,
            a2pow[((j % l) + l) % l] * u.y % pm};
  }

  NElem mul(const NElem& a, const NElem& b) const {
    PElem u = act(a.i, a.j, {b.x, b.y});
    return reduce(a.x + u.x, a.y + u.y, a.i + b.i, a.j + b.j,
                  a.k + b.k - a.j * b.i);
  }

  NElem inv(const NElem& a) const {
    // Ẽ-part inverse: (i,j,k)^{-1} = (-i, -j, -k - j i)
    NElem e = reduce(0, 0, -a.i, -a.j, -a.k - a.j * a.i);
    PElem u = act(e.i, e.j, {a.x, a.y});
    return reduce(-u.x, -u.y, e.i, e.j, e.k);
  }

  NElem conj(const NElem& g, const NElem& h) const {  // h g h^{-1}
    return mul(mul(h, g), inv(h));
  }

  NElem power(NElem g, long e) const {
    NElem r = id();
    NElem base = g;
    if (e < 0) {
      base = inv(base);
      e = -e;
    }
    while (e > 0) {
      if (e & 1) r = mul(r, base);
      base = mul(base, base);
      e >>= 1;
    }
    return r;
  }

  long elem_order(const NElem& g) const {
    long o = 1;
    NElem v = g;
    while (!(v == id())) {
      v = mul(v, g);
      ++o;
    }
    return o;
  }

  NElem p_part(const NElem& g) const {
    long o = elem_order(g);
    long q = o;
    while (q % p == 0) q /= p;
    long pa = o / q;
    if (pa == 1) return id();
    if (q == 1) return g;
    // exponent ≡ 1 mod pa, ≡ 0 mod q
    long qinv = 1;
    while ((q * qinv) % pa != 1 % pa) ++qinv;
    return power(g, q * qinv);
  }

  NElem p_prime_part(const NElem& g) const { return mul(g, inv(p_part(g))); }

  bool is_p_element(const NElem& g) const {
    long o = elem_order(g);
    while (o % p == 0) o /= p;
    return o == 1;
  }

  bool is_p_prime_element(const NElem& g) const {
    return elem_order(g) % p != 0;
  }

  long encode(const NElem& g) const {
    return g.x + pn * (g.y + pm * (g.i + l * (g.j + l * g.k)));
  }
  NElem decode(long code) const {
    NElem g;
    g.x = code % pn;
    code /= pn;
    g.y = code % pm;
    code /= pm;
    g.i = code % l;
    code /= l;
    g.j = code % l;
    g.k = code / l;
    return g;
  }

  // E = <diag(a1,1), diag(1,a2)> acting on P
  ActionGroup e_group() const {
    AbelianPGroup pg = pgroup();
    return ActionGroup(pg, {Automorphism(pg, a1, 0, 0, 1),
                            Automorphism(pg, 1, 0, 0, a2)});
  }

  // ---- irreducible characters of the θ-block ----------------------------

  std::vector<long> left_orbit_reps() const { return orbit_reps(pn, a1pow); }
  std::vector<long> right_orbit_reps() const { return orbit_reps(pm, a2pow); }

  std::vector<std::pair<long, long>> outer_orbit_reps() const {
    std::vector<std::pair<long, long>> out;
    for (long c = 1; c < pn; ++c)
      for (long d = 1; d < pm; ++d) {
        std::pair<long, long> mn{c, d};
        for (long s = 0; s < l; ++s)
          for (long t = 0; t < l; ++t) {
            std::pair<long, long> im{c * a1pow[s] % pn, d * a2pow[t] % pm};
            if (im < mn) mn = im;
          }
        if (mn == std::make_pair(c, d)) out.push_back(mn);
      }
    return out;
  }

  std::vector<IrrLabel> irr_labels() const {
    std::vector<IrrLabel> out;
    out.push_back({Fam::Heis, 0, 0, 0});
    for (long c : left_orbit_reps())
      for (long t = 0; t < l; ++t) out.push_back({Fam::Left, c, 0, t});
    for (long d : right_orbit_reps())
      for (long t = 0; t < l; ++t) out.push_back({Fam::Right, 0, d, t});
    for (auto [c, d] : outer_orbit_reps()) out.push_back({Fam::Outer, c, d, 0});
    return out;
  }

  long degree(const IrrLabel& lb) const {
    return lb.fam == Fam::Outer ? l * l : l;
  }

  std::string label_name(const IrrLabel& lb) const {
    switch (lb.fam) {
      case Fam::Heis:
        return "heis";
      case Fam::Left:
        return "L(" + std::to_string(lb.c) + ";" + std::to_string(lb.psi) + ")";
      case Fam::Right:
        return "R(" + std::to_string(lb.d) + ";" + std::to_string(lb.psi) + ")";
      case Fam::Outer:
        return "O(" + std::to_string(lb.c) + "," + std::to_string(lb.d) + ")";
    }
    return "?";
  }

  // ζ_m^k, dropped to conductor 1 when trivial so that values stay at the
  // smallest useful conductor
  static Cyclotomic rou(long m, long k) {
    k %= m;
    if (k == 0) return Cyclotomic(1L);
    return Cyclotomic::root_of_unity(m, k);
  }

  // Exact character value at an arbitrary element, via the induction
  // formula over coset representatives of the inertia subgroup.
  Cyclotomic value(const IrrLabel& lb, const NElem& g) const {
    Cyclotomic v;
    switch (lb.fam) {
      case Fam::Heis:
        if (g.i != 0 || g.j != 0) return Cyclotomic(0L);
        return Rational(l) * rou(l, g.k);
      case Fam::Left: {
        if (g.i != 0) return Cyclotomic(0L);
        for (long t = 0; t < l; ++t) {
          NElem r = reduce(0, 0, t, 0, 0);
          NElem h = mul(mul(inv(r), g), r);
          v += rou(pn, lb.c * h.x) * rou(l, lb.psi * h.j + h.k);
        }
        return v;
      }
      case Fam::Right: {
        if (g.j != 0) return Cyclotomic(0L);
        for (long t = 0; t < l; ++t) {
          NElem r = reduce(0, 0, 0, t, 0);
          NElem h = mul(mul(inv(r), g), r);
          v += rou(pm, lb.d * h.y) * rou(l, lb.psi * h.i + h.k);
        }
        return v;
      }
      case Fam::Outer: {
        if (g.i != 0 || g.j != 0) return Cyclotomic(0L);
        for (long s = 0; s < l; ++s)
          for (long t = 0; t < l; ++t) {
            NElem r = mul(reduce(0, 0, s, 0, 0), reduce(0, 0, 0, t, 0));
            NElem h = mul(mul(inv(r), g), r);
            v += rou(pn, lb.c * h.x) * rou(pm, lb.d * h.y) * rou(l, h.k);
          }
        return v;
      }
    }
    return v;
  }

  // (count of degree l, count of degree l^2) by the closed formulas
  std::pair<long, long> count_degrees_formula() const {
    return {pn + pm - 1, (pn - 1) * (pm - 1) / (l * l)};
  }

  // the same counts recomputed from the enumerated labels
  std::pair<long, long> count_degrees_enumerated() const {
    long cl = 0, cl2 = 0;
    for (const IrrLabel& lb : irr_labels())
      (degree(lb) == l ? cl : cl2) += 1;
    return {cl, cl2};
  }

  // ---- p'-class layer ---------------------------------------------------
  // Every p'-element of N is conjugate to an element of Ẽ, and N-fusion on
  // Ẽ coincides with Ẽ-fusion, so the p'-classes of N are indexed by the
  // conjugacy classes of Ẽ.

  // representatives (minimal code) of the conjugacy classes of Ẽ
  std::vector<NElem> pprime_class_reps() const {
    std::vector<NElem> reps;
    for (long i = 0; i < l; ++i)
      for (long j = 0; j < l; ++j)
        for (long k = 0; k < l; ++k) {
          NElem g = reduce(0, 0, i, j, k);
          bool minimal = true;
          for (long i2 = 0; i2 < l && minimal; ++i2)
            for (long j2 = 0; j2 < l && minimal; ++j2)
              for (long k2 = 0; k2 < l && minimal; ++k2) {
                NElem h = reduce(0, 0, i2, j2, k2);
                NElem cg = conj(g, h);
                if (encode(cg) < encode(g)) minimal = false;
              }
          if (minimal) reps.push_back(g);
        }
    return reps;
  }

  // size of the N-conjugacy class of a representative in Ẽ
  long pprime_class_size(const NElem& e) const {
    long cp = (e.i == 0 ? pn : 1) * (e.j == 0 ? pm : 1);
    long ce = 0;
    for (long i = 0; i < l; ++i)
      for (long j = 0; j < l; ++j)
        for (long k = 0; k < l; ++k) {
          NElem h = reduce(0, 0, i, j, k);
          if (mul(h, e) == mul(e, h)) ++ce;
        }
    return order() / (cp * ce);
  }

 private:
  LocalBlockModel() = default;

  static std::vector<long> orbit_reps(long mod, const std::vector<long>& pw) {
    std::vector<long> out;
    for (long c = 1; c < mod; ++c) {
      long mn = c;
      for (long t : pw) mn = std::min(mn, c * t % mod);
      if (mn == c) out.push_back(c);
    }
    return out;
  }

  std::vector<long> a1pow, a2pow;
};

// ---------------------------------------------------------------------------
// Centralizer quotients C_N(Q)/Q for Q ≤ P, at the level of character labels.

enum class CaseTag { Case1, Case2, Case31, Case32 };

inline const char* case_name(CaseTag t) {
  switch (t) {
    case CaseTag::Case1:
      return "case1";
    case CaseTag::Case2:
      return "case2";
    case CaseTag::Case31:
      return "case31";
    case CaseTag::Case32:
      return "case32";
  }
  return "?";
}

// Label data for the block of C̄ = C_N(Q)/Q, plus the full (uncollapsed)
// block of C_N(Q) needed for integrality checks of assembled maps.
//
// Case 2 (Q = 1): labels are the model's IrrLabel list.
// Case 3 (1 ≠ Q ≤ P2, or mirrored Q ≤ P1): after normalizing the axis so
// that the acting factor is "P1 ⋊ Ẽ1" with parameters (pn_e, a1_e) and the
// residual factor has order pm_e with unit a2_e, the block of C_N(Q) is
//   { tau_t ⊗ ζ_w : t < l, w < pm_e } ∪ { Ind(ξ_c) ⊗ ζ_w : c ∈ M, w < pm_e }
// and the barred labels are those with ζ_w trivial on Q, i.e. w a multiple
// of pm_e / pbar where pbar = |P2/Q| (resp. |P1/Q|).
// Case 1 (C_E(Q) = 1): the block of C_N(Q) = P x Z is Irr(P) ⊗ θ; the
// barred labels are the characters of P trivial on Q.
class QuotientModel {
 public:
  LocalBlockModel model;
  PSubgroup q;  // subgroup of P, elements as PElem
  CaseTag tag = CaseTag::Case2;
  int axis = 0;  // Case 3: 2 when Q ≤ P2, 1 when Q ≤ P1

  // Case-3 axis-normalized parameters
  long pn_e = 0, pm_e = 0, a1_e = 0, a2_e = 0;
  long pbar = 1;              // |residual p-group of C̄|
  std::vector<long> mreps;    // Case 3: Ẽ1-orbit representatives ξ_c
  long tau_shift = 0;         // Case 3: t-shift of tau under the acting gen

  // Case 2 label list
  std::vector<IrrLabel> irr;

  // Case 1 annihilator labels (characters of P trivial on Q)
  std::vector<std::pair<long, long>> ann;

  // ---- barred label indexing -------------------------------------------

  long label_count() const {
    switch (tag) {
      case CaseTag::Case2:
        return static_cast<long>(irr.size());
      case CaseTag::Case1:
        return static_cast<long>(ann.size());
      default:
        return (model.l + static_cast<long>(mreps.size())) * pbar;
    }
  }

  // Case 3 layout: tau block first (t major, z minor), then ind block.
  long tau_index(long t, long z) const { return t * pbar + z; }
  long ind_index(long qi, long z) const {
    return model.l * pbar + qi * pbar + z;
  }
  bool is_tau(long idx) const { return idx < model.l * pbar; }
  long tau_t(long idx) const { return idx / pbar; }
  long ind_q(long idx) const { return (idx - model.l * pbar) / pbar; }
  long zeta_z(long idx) const { return idx % pbar; }

  long degree(long idx) const {
    switch (tag) {
      case CaseTag::Case2:
        return model.degree(irr[idx]);
      case CaseTag::Case1:
        return 1;
      default:
        return is_tau(idx) ? 1 : model.l;
    }
  }

  std::string label_name(long idx) const {
    switch (tag) {
      case CaseTag::Case2:
        return model.label_name(irr[idx]);
      case CaseTag::Case1:
        return "chi(" + std::to_string(ann[idx].first) + "," +
               std::to_string(ann[idx].second) + ")";
      default: {
        std::string base =
            is_tau(idx) ? "tau" + std::to_string(tau_t(idx))
                        : "ind(" + std::to_string(mreps[ind_q(idx)]) + ")";
        long z = zeta_z(idx);
        if (z != 0) base += "*zeta^" + std::to_string(z);
        return base;
      }
    }
  }

  // ---- actions on barred labels ------------------------------------------
  // Case 3: permutation of labels under conjugation by the generator of the
  // E-factor acting nontrivially on the residual p-group (chi -> chi^g with
  // chi^g(x) = chi(g x g^{-1})).
  std::vector<long> acting_gen_perm() const {
    require_case3();
    std::vector<long> perm(label_count());
    long ares = residual_unit();
    for (long t = 0; t < model.l; ++t)
      for (long z = 0; z < pbar; ++z)
        perm[tau_index(t, z)] = tau_index(
            ((t + tau_shift) % model.l + model.l) % model.l, z * ares % pbar);
    for (long qi = 0; qi < static_cast<long>(mreps.size()); ++qi)
      for (long z = 0; z < pbar; ++z)
        perm[ind_index(qi, z)] = ind_index(qi, z * ares % pbar);
    return perm;
  }

  // Case 3: label permutation of multiplication by the generator ζ̄ of
  // Irr(residual p-group) (the ∗-action by ζ̄).
  std::vector<long> star_gen_perm() const {
    require_case3();
    std::vector<long> perm(label_count());
    for (long t = 0; t < model.l; ++t)
      for (long z = 0; z < pbar; ++z)
        perm[tau_index(t, z)] = tau_index(t, (z + 1) % pbar);
    for (long qi = 0; qi < static_cast<long>(mreps.size()); ++qi)
      for (long z = 0; z < pbar; ++z)
        perm[ind_index(qi, z)] = ind_index(qi, (z + 1) % pbar);
    return perm;
  }

  // unit through which the acting generator multiplies the residual factor
  long residual_unit() const {
    require_case3();
    return (axis == 2 ? model.a2 : model.a1) % pbar;
  }

  // Case 1: permutations of the annihilator labels under the generators of
  // N_E(Q) (acting by chi -> chi ∘ conj).
  std::vector<std::vector<long>> case1_action_perms() const {
    if (tag != CaseTag::Case1)
      throw GroupError("wrong-case", "Case 1 accessor on a non-Case-1 model");
    std::vector<std::vector<long>> out;
    ActionGroup e = model.e_group();
    std::map<std::pair<long, long>, long> pos;
    for (long idx = 0; idx < static_cast<long>(ann.size()); ++idx)
      pos[ann[idx]] = idx;
    for (const Automorphism& f : normalizer_in_E(e, q)) {
      if (f.is_identity()) continue;
      std::vector<long> perm(ann.size());
      for (long idx = 0; idx < static_cast<long>(ann.size()); ++idx) {
        auto [c, d] = ann[idx];
        // chi^f(v) = chi(f(v)); for diagonal f = (u1, u2) this sends
        // (c, d) to (c u1 mod p^n, d u2 mod p^m)
        std::pair<long, long> im{c * f.a % model.pn, d * f.d % model.pm};
        auto it = pos.find(im);
        if (it == pos.end())
          throw GroupError("internal", "annihilator set not E-stable");
        perm[idx] = it->second;
      }
      out.push_back(std::move(perm));
    }
    return out;
  }

  // ---- full (uncollapsed) block of C_N(Q) --------------------------------

  long full_label_count() const {
    switch (tag) {
      case CaseTag::Case2:
        return static_cast<long>(irr.size());
      case CaseTag::Case1:
        return model.pn * model.pm;
      default:
        return (model.l + static_cast<long>(mreps.size())) * pm_e;
    }
  }

  long full_tau_index(long t, long w) const { return t * pm_e + w; }
  long full_ind_index(long qi, long w) const {
    return model.l * pm_e + qi * pm_e + w;
  }

  // index of a barred label inside the full label list
  long full_of_barred(long idx) const {
    switch (tag) {
      case CaseTag::Case2:
        return idx;
      case CaseTag::Case1: {
        auto [c, d] = ann[idx];
        return c * model.pm + d;
      }
      default: {
        long w = zeta_z(idx) * (pm_e / pbar);
        return is_tau(idx) ? full_tau_index(tau_t(idx), w)
                           : full_ind_index(ind_q(idx), w);
      }
    }
  }

  // value of a full-block character at an element of C_N(Q)
  Cyclotomic full_value(long idx, const NElem& g) const {
    switch (tag) {
      case CaseTag::Case2:
        return model.value(irr[idx], g);
      case CaseTag::Case1: {
        long c = idx / model.pm, d = idx % model.pm;
        return LocalBlockModel::rou(model.pn, c * g.x) *
               LocalBlockModel::rou(model.pm, d * g.y) *
               LocalBlockModel::rou(model.l, g.k);
      }
      default:
        return case3_value(idx, g);
    }
  }

  // value of a barred label at an element of C_N(Q) (i.e. the inflation of
  // the C̄-character through the canonical projection)
  Cyclotomic barred_value(long idx, const NElem& g) const {
    return full_value(full_of_barred(idx), g);
  }

  // default-constructs to the smallest model; used as a placeholder before
  // assignment from quotient_model
  QuotientModel() : model(LocalBlockModel::build(3, 1, 1, 2)) {}

 private:
  void require_case3() const {
    if (tag != CaseTag::Case31 && tag != CaseTag::Case32)
      throw GroupError("wrong-case", "Case 3 accessor on a non-Case-3 model");
  }

  Cyclotomic case3_value(long idx, const NElem& g) const {
    // coordinates in the axis-normalized frame
    long xc = (axis == 2 ? g.x : g.y);      // acting cyclic factor
    long yr = (axis == 2 ? g.y : g.x);      // residual cyclic factor
    long ie = (axis == 2 ? g.i : g.j);      // acting Heisenberg exponent
    long t = idx / pm_e;
    long w = idx % pm_e;
    Cyclotomic zeta = LocalBlockModel::rou(pm_e, w * yr);
    if (t < model.l) {  // tau_t ⊗ ζ_w, linear
      return LocalBlockModel::rou(model.l, t * ie + g.k) * zeta;
    }
    long c = mreps[t - model.l];  // Ind(ξ_c) ⊗ ζ_w
    if (ie != 0) return Cyclotomic(0L);
    Cyclotomic s;
    long au = 1 % pn_e;
    for (long r = 0; r < model.l; ++r) {
      s += LocalBlockModel::rou(pn_e, c * au % pn_e * xc);
      au = au * a1_e % pn_e;
    }
    return s * LocalBlockModel::rou(model.l, g.k) * zeta;
  }
};

inline CaseTag classify_case(const LocalBlockModel& model, const PSubgroup& q) {
  if (q.order() == 1) return CaseTag::Case2;
  bool has_x = false, has_y = false;
  for (PElem v : q.elems) {
    if (v.x != 0) has_x = true;
    if (v.y != 0) has_y = true;
  }
  if (has_x && has_y) return CaseTag::Case1;
  // Q ≤ P2 (axis 2) or Q ≤ P1 (axis 1); subcase 3.1 iff P_axis / Q is
  // trivial
  long paxis = has_y ? model.pm : model.pn;
  long pb = paxis / q.order();
  return pb == 1 ? CaseTag::Case31 : CaseTag::Case32;
}

inline QuotientModel quotient_model(const LocalBlockModel& model,
                                    const PSubgroup& q) {
  for (PElem v : q.elems) {
    PElem r = model.pgroup().reduce(v.x, v.y);
    if (!(r == v))
      throw GroupError("not-a-subgroup", "Q is not reduced inside P");
  }
  QuotientModel qm;
  qm.model = model;
  qm.q = q;
  qm.tag = classify_case(model, q);
  switch (qm.tag) {
    case CaseTag::Case2:
      qm.irr = model.irr_labels();
      break;
    case CaseTag::Case1: {
      for (long c = 0; c < model.pn; ++c)
        for (long d = 0; d < model.pm; ++d) {
          bool trivial = true;
          long big = std::lcm(model.pn, model.pm);
          for (PElem v : q.elems) {
            // χ_{c,d}(v) = ζ_{p^n}^{c v.x} ζ_{p^m}^{d v.y} must equal 1,
            // i.e. the combined phase must vanish modulo lcm(p^n, p^m)
            long phase = (c * v.x % model.pn) * (big / model.pn) +
                         (d * v.y % model.pm) * (big / model.pm);
            if (phase % big != 0) {
              trivial = false;
              break;
            }
          }
          if (trivial) qm.ann.push_back({c, d});
        }
      break;
    }
    default: {
      bool has_y = false;
      for (PElem v : q.elems)
        if (v.y != 0) has_y = true;
      qm.axis = has_y ? 2 : 1;
      if (qm.axis == 2) {
        qm.pn_e = model.pn;
        qm.pm_e = model.pm;
        qm.a1_e = model.a1;
        qm.a2_e = model.a2;
        qm.tau_shift = -1;  // e2 e1^t e2^{-1} = e1^t z^{-t}
      } else {
        qm.pn_e = model.pm;
        qm.pm_e = model.pn;
        qm.a1_e = model.a2;
        qm.a2_e = model.a1;
        qm.tau_shift = 1;  // e1 e2^t e1^{-1} = e2^t z^{t}
      }
      qm.pbar = qm.pm_e / q.order();
      // Ẽ1-orbit representatives on the nontrivial characters of the
      // acting cyclic factor
      for (long c = 1; c < qm.pn_e; ++c) {
        long mn = c, u = 1 % qm.pn_e;
        for (long t = 0; t < model.l; ++t) {
          mn = std::min(mn, c * u % qm.pn_e);
          u = u * qm.a1_e % qm.pn_e;
        }
        if (mn == c) qm.mreps.push_back(c);
      }
      break;
    }
  }
  return qm;
}

}  // namespace iso
