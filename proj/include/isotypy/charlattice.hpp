#pragma once

// Class functions on concrete subgroups of the model group, the p-section
// maps d^u and e^u, the ∗-construction, and the distinguished bases of the
// sublattice L° = ker(d^1) inside the block character lattice, together
// with an exact certification that they really are bases.

#include <functional>

#include "intmat.hpp"
#include "localmodel.hpp"

namespace iso {

// A concrete host group: a subgroup H ≤ N listed by elements (typically
// H = C_N(Q) for some Q ≤ P). Class functions on H are dense value vectors
// indexed by element position.
struct Host {
  const LocalBlockModel* mod = nullptr;
  std::vector<NElem> elems;        // sorted by encoded value
  std::map<long, long> pos;        // code -> position

  static Host whole(const LocalBlockModel& mod) {
    Host h;
    h.mod = &mod;
    for (long code = 0; code < mod.order(); ++code)
      h.elems.push_back(mod.decode(code));
    h.finish();
    return h;
  }

  static Host centralizer(const LocalBlockModel& mod, const PSubgroup& q) {
    Host h;
    h.mod = &mod;
    for (long code = 0; code < mod.order(); ++code) {
      NElem g = mod.decode(code);
      bool central = true;
      for (PElem v : q.elems) {
        NElem qe = mod.reduce(v.x, v.y, 0, 0, 0);
        if (!(mod.conj(qe, g) == qe)) {
          central = false;
          break;
        }
      }
      if (central) h.elems.push_back(g);
    }
    h.finish();
    return h;
  }

  // C_H(u)
  Host sub_centralizer(const NElem& u) const {
    Host h;
    h.mod = mod;
    for (const NElem& g : elems)
      if (mod->mul(g, u) == mod->mul(u, g)) h.elems.push_back(g);
    h.finish();
    return h;
  }

  long size() const { return static_cast<long>(elems.size()); }

  long idx(const NElem& g) const {
    auto it = pos.find(mod->encode(g));
    if (it == pos.end())
      throw GroupError("not-in-host", "element outside the host subgroup");
    return it->second;
  }

  bool contains(const NElem& g) const { return pos.count(mod->encode(g)); }

 private:
  void finish() {
    std::sort(elems.begin(), elems.end(),
              [&](const NElem& a, const NElem& b) {
                return mod->encode(a) < mod->encode(b);
              });
    for (long i = 0; i < size(); ++i) pos[mod->encode(elems[i])] = i;
  }
};

using CF = std::vector<Cyclotomic>;  // values over Host::elems

inline Cyclotomic inner_product(const Host& h, const CF& f, const CF& g) {
  if (f.size() != h.elems.size() || g.size() != h.elems.size())
    throw GroupError("host-mismatch", "class function size differs from host");
  Cyclotomic s;
  for (std::size_t i = 0; i < f.size(); ++i) s += f[i] * g[i].conjugate();
  return Rational(1, h.size()) * s;
}

// class function of a generalized character given by integer coefficients
// over the barred labels of a quotient model, evaluated on a host inside
// C_N(Q) via inflation
inline CF lattice_cf(const Host& h, const QuotientModel& qm, const ZVec& coeffs) {
  if (static_cast<long>(coeffs.size()) != qm.label_count())
    throw GroupError("host-mismatch", "coefficient count differs from labels");
  CF f(h.elems.size());
  for (long lb = 0; lb < qm.label_count(); ++lb) {
    if (coeffs[lb] == 0) continue;
    Cyclotomic c(Rational(coeffs[lb]));
    for (std::size_t i = 0; i < h.elems.size(); ++i)
      f[i] += c * qm.barred_value(lb, h.elems[i]);
  }
  return f;
}

inline CF full_label_cf(const Host& h, const QuotientModel& qm, long full_idx) {
  CF f(h.elems.size());
  for (std::size_t i = 0; i < h.elems.size(); ++i)
    f[i] = qm.full_value(full_idx, h.elems[i]);
  return f;
}

// ---------------------------------------------------------------------------
// p-section maps

// d^u: class functions on h -> functions on C_h(u) supported on p'-elements,
// (d^u f)(s) = f(us)
inline CF d_u(const Host& h, const Host& ch, const NElem& u, const CF& f) {
  const LocalBlockModel& mod = *h.mod;
  if (!mod.is_p_element(u))
    throw GroupError("not-a-p-element", "section point must be a p-element");
  CF out(ch.elems.size());
  for (std::size_t i = 0; i < ch.elems.size(); ++i) {
    const NElem& s = ch.elems[i];
    if (!mod.is_p_prime_element(s)) continue;
    out[i] = f[h.idx(mod.mul(u, s))];
  }
  return out;
}

// Precomputed structure of e^u: for each g in h, either the position in
// C_h(u) of the conjugated p'-part, or -1 when the p-part of g is not
// h-conjugate to u.
struct SectionMap {
  std::vector<long> target;

  static SectionMap build(const Host& h, const Host& ch, const NElem& u) {
    const LocalBlockModel& mod = *h.mod;
    SectionMap sm;
    sm.target.assign(h.elems.size(), -1);
    // conjugator taking a given p-part to u, found once per distinct p-part
    std::map<long, long> conjugator;  // p-part code -> index in h.elems, or -2
    for (std::size_t i = 0; i < h.elems.size(); ++i) {
      const NElem& g = h.elems[i];
      NElem gp = mod.p_part(g);
      long code = mod.encode(gp);
      auto it = conjugator.find(code);
      if (it == conjugator.end()) {
        long found = -2;
        for (std::size_t t = 0; t < h.elems.size(); ++t)
          if (mod.conj(gp, h.elems[t]) == u) {
            found = static_cast<long>(t);
            break;
          }
        it = conjugator.emplace(code, found).first;
      }
      if (it->second >= 0)
        sm.target[i] =
            ch.idx(mod.conj(mod.p_prime_part(g), h.elems[it->second]));
    }
    return sm;
  }

  CF apply(const CF& phi) const {
    CF out(target.size());
    for (std::size_t i = 0; i < target.size(); ++i)
      if (target[i] >= 0) out[i] = phi[target[i]];
    return out;
  }
};

// e^u: p'-section functions on C_h(u) -> class functions on h, vanishing on
// every element whose p-part is not conjugate to u
inline CF e_u(const Host& h, const Host& ch, const NElem& u, const CF& phi) {
  return SectionMap::build(h, ch, u).apply(phi);
}

// (λ ∗ η)(g) = λ(g_p) η(g); λ is a class function on P given by a callback
// on P-elements (the p-part of every host element lies in P since the
// complement has p'-order)
inline CF star(const Host& h, const std::function<Cyclotomic(PElem)>& lambda,
               const CF& eta) {
  const LocalBlockModel& mod = *h.mod;
  CF out(h.elems.size());
  for (std::size_t i = 0; i < h.elems.size(); ++i) {
    NElem gp = mod.p_part(h.elems[i]);
    if (gp.i != 0 || gp.j != 0 || gp.k != 0)
      throw GroupError("internal", "p-part escaped the p-group");
    out[i] = lambda(PElem{gp.x, gp.y}) * eta[i];
  }
  return out;
}

// representatives (minimal code) of the orbits of a set of automorphisms
// of P on the elements of P
inline std::vector<PElem> orbit_reps_on_P(
    const LocalBlockModel& mod, const std::vector<Automorphism>& fs) {
  std::vector<PElem> reps;
  AbelianPGroup pg = mod.pgroup();
  std::set<PElem> seen;
  for (long x = 0; x < mod.pn; ++x)
    for (long y = 0; y < mod.pm; ++y) {
      PElem v{x, y};
      if (seen.count(v)) continue;
      // close the orbit
      std::set<PElem> orbit{v};
      std::vector<PElem> frontier{v};
      while (!frontier.empty()) {
        std::vector<PElem> next;
        for (PElem w : frontier)
          for (const Automorphism& f : fs) {
            PElem t = f.apply(w);
            if (orbit.insert(t).second) next.push_back(t);
          }
        frontier = std::move(next);
      }
      reps.push_back(v);
      seen.insert(orbit.begin(), orbit.end());
    }
  return reps;
}

// ---------------------------------------------------------------------------
// The sublattice L° = L ∩ ker(d^1) and its distinguished bases

// Distinguished basis of L° as integer rows over the barred labels.
//
// Q = 1:              {ψ1 − ψ1'} ∪ {ψ2 − ψ2'} ∪ {ψ2 − l ψ1}, where ψ1 is
//                     the first degree-l label, ψ2 the first degree-l² one.
// Case 3:             {(Σ_t τ_t − Ind(ξ)) ζ̄ : ξ, ζ̄} ∪ {τ_t − τ_t ζ̄ : ζ̄ ≠ 1}.
// C_E(Q) = 1:         {ψ0 − ψ : ψ ≠ ψ0} over the annihilator labels.
inline ZMat lzero_basis(const QuotientModel& qm) {
  long count = qm.label_count();
  ZMat rows;
  switch (qm.tag) {
    case CaseTag::Case2: {
      long psi1 = -1, psi2 = -1;
      const long l = qm.model.l;
      for (long i = 0; i < count; ++i) {
        if (qm.degree(i) == l && psi1 < 0) psi1 = i;
        if (qm.degree(i) == l * l && psi2 < 0) psi2 = i;
      }
      for (long i = 0; i < count; ++i) {
        if (i == psi1 || i == psi2) continue;
        ZVec row(count, 0);
        if (qm.degree(i) == l) {
          row[psi1] = 1;
          row[i] = -1;
        } else {
          row[psi2] = 1;
          row[i] = -1;
        }
        rows.push_back(std::move(row));
      }
      ZVec mu(count, 0);
      mu[psi2] = 1;
      mu[psi1] = -l;
      rows.push_back(std::move(mu));
      break;
    }
    case CaseTag::Case1: {
      for (long i = 1; i < count; ++i) {
        ZVec row(count, 0);
        row[0] = 1;
        row[i] = -1;
        rows.push_back(std::move(row));
      }
      break;
    }
    default: {
      const long l = qm.model.l;
      for (long qi = 0; qi < static_cast<long>(qm.mreps.size()); ++qi)
        for (long z = 0; z < qm.pbar; ++z) {
          ZVec row(count, 0);
          for (long t = 0; t < l; ++t) row[qm.tau_index(t, z)] = 1;
          row[qm.ind_index(qi, z)] = -1;
          rows.push_back(std::move(row));
        }
      for (long t = 0; t < l; ++t)
        for (long z = 1; z < qm.pbar; ++z) {
          ZVec row(count, 0);
          row[qm.tau_index(t, 0)] = 1;
          row[qm.tau_index(t, z)] = -1;
          rows.push_back(std::move(row));
        }
      break;
    }
  }
  return rows;
}

// Exact integer matrix of the d^1 constraints on the barred labels: one
// block of φ(l) integer columns per p'-class of the quotient group, from
// the coefficient expansion of the character value in Q(ζ_l).
inline ZMat d1_constraints(const QuotientModel& qm) {
  const long l = qm.model.l;
  long count = qm.label_count();

  // write the value, which lies in Z[ζ_l], as φ(l) integer columns
  auto expand = [&](const Cyclotomic& v, ZVec& row) {
    Cyclotomic w = v + Cyclotomic::root_of_unity(l, 0) - Cyclotomic(1L);
    if (w.conductor() != l)
      throw GroupError("internal", "unexpected conductor in d1 values");
    for (const Rational& c : w.coefficients()) {
      if (c.get_den() != 1)
        throw GroupError("internal", "non-integral d1 coefficient");
      row.push_back(c.get_num());
    }
  };

  ZMat out(count);
  switch (qm.tag) {
    case CaseTag::Case2: {
      auto reps = qm.model.pprime_class_reps();
      for (long i = 0; i < count; ++i)
        for (const NElem& rep : reps)
          expand(qm.model.value(qm.irr[i], rep), out[i]);
      break;
    }
    case CaseTag::Case1: {
      // p'-elements of C_N(Q) = P x Z are the central z^k; every label
      // takes value ζ_l^k there
      for (long i = 0; i < count; ++i)
        for (long k = 0; k < l; ++k)
          expand(Cyclotomic::root_of_unity(l, k), out[i]);
      break;
    }
    default: {
      // p'-classes are represented by the l² elements e1^i z^k of the
      // acting abelian part
      for (long i = 0; i < count; ++i) {
        long t = qm.tau_t(i);
        bool tau = qm.is_tau(i);
        for (long ie = 0; ie < l; ++ie)
          for (long k = 0; k < l; ++k) {
            Cyclotomic v;
            if (tau)
              v = Cyclotomic::root_of_unity(l, t * ie + k);
            else if (ie == 0)
              v = Rational(l) * Cyclotomic::root_of_unity(l, k);
            expand(v, out[i]);
          }
      }
      break;
    }
  }
  return out;
}

// Z-basis of L ∩ ker(d^1) computed independently of the distinguished basis
inline ZMat lzero_kernel_basis(const QuotientModel& qm) {
  return integer_kernel(transpose(d1_constraints(qm)));
}

// The distinguished basis generates exactly L ∩ ker(d^1).
inline bool certify_lzero_basis(const QuotientModel& qm) {
  return lattice_equal(lzero_basis(qm), lzero_kernel_basis(qm));
}

}  // namespace iso
