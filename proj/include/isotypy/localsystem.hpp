#pragma once

// The descent driver: a family of label-level isometries Γ_Q over the
// subgroups of P, assembled section by section into maps Δ_Q and Δ°_Q on
// concrete centralizer hosts, and the loop that extends the family from
// Γ_P downward to the trivial subgroup via the case engine.
//
// All concrete computation happens in the block's own label coordinates;
// an abstract target side enters only as a signed relabeling applied to
// the matrices passed to and received from the engine.

#include <functional>

#include "engine.hpp"

namespace iso {

struct LocalEntry {
  QuotientModel qm;
  // barred-label matrix of Γ_Q in block coordinates: cols[i] is the image
  // of label i
  ZMat gamma;
};

struct LocalSystemState {
  LocalBlockModel mod = LocalBlockModel::build(3, 1, 1, 2);
  std::map<PSubgroup, LocalEntry> entries;

  bool has(const PSubgroup& q) const { return entries.count(q) != 0; }
  const LocalEntry& at(const PSubgroup& q) const {
    auto it = entries.find(q);
    if (it == entries.end())
      throw GroupError("missing-gamma",
                       "no installed isometry for the requested subgroup");
    return it->second;
  }
};

// ---------------------------------------------------------------------------
// Γ applied to a section function.
//
// A section function d^u(η) on C_N(R) is supported on p'-elements, where it
// agrees with the p'-restriction of some K-combination of the barred labels
// (p'-elements carry no residual p-coordinate, so the full and barred blocks
// restrict identically). We read off one canonical representative from the
// values at the p'-class representatives, push its coefficients through the
// Γ matrix, and evaluate back on the host.

namespace detail {

inline std::optional<mpz_class> cyclotomic_integer(const Cyclotomic& v) {
  // the power basis at a fixed conductor is a Q-basis, so a value is
  // rational exactly when every coefficient beyond the constant vanishes
  const std::vector<Rational>& cs = v.coefficients();
  for (std::size_t i = 1; i < cs.size(); ++i)
    if (cs[i] != 0) return std::nullopt;
  if (cs[0].get_den() != 1) return std::nullopt;
  return mpz_class(cs[0].get_num());
}

}  // namespace detail

inline CF apply_gamma(const QuotientModel& qm, const ZMat& gamma,
                      const Host& ch, const CF& phi) {
  const LocalBlockModel& mod = qm.model;
  const long l = mod.l;
  long count = qm.label_count();
  if (static_cast<long>(gamma.size()) != count)
    throw GroupError("host-mismatch", "gamma size differs from labels");

  // representative coefficients over the barred labels
  std::vector<Cyclotomic> a(count);
  switch (qm.tag) {
    case CaseTag::Case1:
      // all labels restrict to the central character; ann[0] = (0,0)
      a[0] = phi[ch.idx(mod.id())];
      break;
    case CaseTag::Case2:
      // every restriction is a multiple of the degree-l base character
      a[0] = Rational(1, l) * phi[ch.idx(mod.id())];
      break;
    default: {
      // invert the discrete Fourier transform over the acting generator
      NElem gen = qm.axis == 2 ? mod.reduce(0, 0, 1, 0, 0)
                               : mod.reduce(0, 0, 0, 1, 0);
      std::vector<Cyclotomic> vals(l);
      NElem g = mod.id();
      for (long i = 0; i < l; ++i) {
        vals[i] = phi[ch.idx(g)];
        g = mod.mul(g, gen);
      }
      for (long t = 0; t < l; ++t) {
        Cyclotomic c;
        for (long i = 0; i < l; ++i)
          c += vals[i] * LocalBlockModel::rou(l, ((-t * i) % l + l) % l);
        a[qm.tau_index(t, 0)] = Rational(1, l) * c;
      }
      break;
    }
  }

  std::vector<Cyclotomic> b(count);
  for (long i = 0; i < count; ++i) {
    if (a[i].is_zero()) continue;
    for (long j = 0; j < count; ++j)
      if (gamma[i][j] != 0) b[j] += Rational(gamma[i][j]) * a[i];
  }

  CF out(ch.size());
  for (long idx = 0; idx < ch.size(); ++idx) {
    const NElem& g = ch.elems[idx];
    if (!mod.is_p_prime_element(g)) continue;
    for (long j = 0; j < count; ++j)
      if (!b[j].is_zero()) out[idx] += b[j] * qm.barred_value(j, g);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Exact coefficient extraction on a host, with integrality and
// reconstruction verified (the generalized-character condition).

inline ZVec express_exactly(const Host& h, const std::vector<CF>& basis_cfs,
                            const CF& f) {
  ZVec out;
  for (const CF& c : basis_cfs) {
    auto v = detail::cyclotomic_integer(inner_product(h, f, c));
    if (!v)
      throw GroupError("not-integral",
                       "assembled map leaves the character lattice");
    out.push_back(*v);
  }
  CF rebuilt(h.size());
  for (std::size_t j = 0; j < basis_cfs.size(); ++j) {
    if (out[j] == 0) continue;
    Cyclotomic c(Rational(out[j]));
    for (long i = 0; i < h.size(); ++i) rebuilt[i] += c * basis_cfs[j][i];
  }
  for (long i = 0; i < h.size(); ++i)
    if (!(rebuilt[i] == f[i]))
      throw GroupError("not-in-span",
                       "assembled map escapes the block character span");
  return out;
}

// ---------------------------------------------------------------------------
// Section terms shared by the two assembly maps

namespace detail {

struct SectionTerm {
  NElem u;
  Host ch;
  SectionMap em;
  const LocalEntry* entry = nullptr;
};

inline std::vector<SectionTerm> section_terms(const LocalSystemState& st,
                                              const PSubgroup& q,
                                              const Host& h,
                                              bool skip_members) {
  const LocalBlockModel& mod = st.mod;
  AbelianPGroup pg = mod.pgroup();
  std::vector<SectionTerm> terms;
  auto fs = centralizer_in_E(mod.e_group(), q);
  for (PElem v : orbit_reps_on_P(mod, fs)) {
    if (skip_members && q.contains(v)) continue;
    std::vector<PElem> gens = q.elems;
    gens.push_back(v);
    PSubgroup r = span(pg, std::move(gens));
    SectionTerm t;
    t.u = mod.reduce(v.x, v.y, 0, 0, 0);
    t.ch = h.sub_centralizer(t.u);
    t.em = SectionMap::build(h, t.ch, t.u);
    t.entry = &st.at(r);
    terms.push_back(std::move(t));
  }
  return terms;
}

inline CF assemble(const std::vector<SectionTerm>& terms, const Host& h,
                   const CF& eta) {
  CF sum(h.size());
  for (const SectionTerm& t : terms) {
    CF part = t.em.apply(
        apply_gamma(t.entry->qm, t.entry->gamma, t.ch, d_u(h, t.ch, t.u, eta)));
    for (long i = 0; i < h.size(); ++i) sum[i] += part[i];
  }
  return sum;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Δ_Q on the full block lattice of C_N(Q): the sum of section terms over
// all representatives, returned as verified integer coefficients over the
// full labels.

inline ZVec assemble_delta(const LocalSystemState& st, const PSubgroup& q,
                           const ZVec& eta_full) {
  const LocalBlockModel& mod = st.mod;
  QuotientModel qm = quotient_model(mod, q);
  if (static_cast<long>(eta_full.size()) != qm.full_label_count())
    throw GroupError("host-mismatch", "coefficients do not match full labels");
  Host h = Host::centralizer(mod, q);
  CF eta(h.size());
  for (long j = 0; j < qm.full_label_count(); ++j) {
    if (eta_full[j] == 0) continue;
    Cyclotomic c(Rational(eta_full[j]));
    for (long i = 0; i < h.size(); ++i)
      eta[i] += c * qm.full_value(j, h.elems[i]);
  }
  auto terms = detail::section_terms(st, q, h, /*skip_members=*/false);
  CF sum = detail::assemble(terms, h, eta);
  std::vector<CF> basis_cfs;
  for (long j = 0; j < qm.full_label_count(); ++j)
    basis_cfs.push_back(full_label_cf(h, qm, j));
  return express_exactly(h, basis_cfs, sum);
}

// ---------------------------------------------------------------------------
// Δ°_Q: the section sum without the members of Q, evaluated on the
// distinguished basis of the p'-vanishing sublattice; columns over the
// barred labels, Gram-preservation verified.

inline ZMat delta_zero(const LocalSystemState& st, const PSubgroup& q) {
  const LocalBlockModel& mod = st.mod;
  QuotientModel qm = quotient_model(mod, q);
  Host h = Host::centralizer(mod, q);
  auto terms = detail::section_terms(st, q, h, /*skip_members=*/true);
  std::vector<CF> basis_cfs;
  for (long j = 0; j < qm.label_count(); ++j) {
    ZVec unit(qm.label_count(), 0);
    unit[j] = 1;
    basis_cfs.push_back(lattice_cf(h, qm, unit));
  }
  ZMat basis = lzero_basis(qm);
  ZMat cols;
  for (const ZVec& row : basis) {
    CF sum = detail::assemble(terms, h, lattice_cf(h, qm, row));
    cols.push_back(express_exactly(h, basis_cfs, sum));
  }
  return cols;
}

// ---------------------------------------------------------------------------
// The descent loop.

// An abstract target side plus the signed relabeling identifying its labels
// with the block's own (the concrete value model for targets the artifact
// can instantiate; the self-instance uses the identity).
struct GSideInstance {
  GSide gside;
  SignedPerm relabel;  // block barred label -> target label, with sign
};

inline GSideInstance self_gside_instance(const QuotientModel& qm) {
  return {GSide::self(qm), SignedPerm::identity(qm.label_count())};
}

using GSideProvider = std::function<GSideInstance(const QuotientModel&)>;

// E-orbits of the subgroups of P, sorted by decreasing order then by the
// lexicographically least member; each orbit lists its members sorted.
inline std::vector<std::vector<PSubgroup>> subgroup_orbits(
    const LocalBlockModel& mod) {
  AbelianPGroup pg = mod.pgroup();
  ActionGroup eg = mod.e_group();
  std::set<PSubgroup> seen;
  std::vector<std::vector<PSubgroup>> orbits;
  for (const PSubgroup& q : subgroup_lattice(pg)) {
    if (seen.count(q)) continue;
    std::set<PSubgroup> orb;
    for (const Automorphism& f : eg.elements) {
      std::vector<PElem> img;
      for (PElem v : q.elems) img.push_back(f.apply(v));
      orb.insert(span(pg, std::move(img)));
    }
    orbits.emplace_back(orb.begin(), orb.end());
    seen.insert(orb.begin(), orb.end());
  }
  std::sort(orbits.begin(), orbits.end(),
            [](const std::vector<PSubgroup>& a,
               const std::vector<PSubgroup>& b) {
              if (a[0].order() != b[0].order())
                return a[0].order() > b[0].order();
              return a[0] < b[0];
            });
  return orbits;
}

struct LocalSystemResult {
  bool ok = false;
  std::string error, detail;
  PSubgroup failed_at;
  LocalSystemState state;
  long orbit_count = 0;
};

inline LocalSystemResult run_local_system(
    const LocalBlockModel& mod, const GSideProvider& provider,
    std::optional<ZMat> gamma_p_seed = std::nullopt) {
  AbelianPGroup pg = mod.pgroup();
  ActionGroup eg = mod.e_group();
  LocalSystemResult res;
  res.state.mod = mod;

  for (const std::vector<PSubgroup>& orbit : subgroup_orbits(mod)) {
    const PSubgroup& q = orbit[0];
    QuotientModel qm = quotient_model(mod, q);
    ZMat gamma;
    if (q.order() == pg.order()) {
      // the maximal subgroup carries the supplied seed
      gamma = gamma_p_seed ? *gamma_p_seed
                           : identity_mat(qm.label_count());
    } else {
      ZMat d0;
      try {
        d0 = delta_zero(res.state, q);
      } catch (const GroupError& e) {
        res.error = e.code;
        res.detail = e.what();
        res.failed_at = q;
        return res;
      }
      GSideInstance inst = provider(qm);
      ExtensionProblem pr;
      pr.qm = qm;
      pr.gside = inst.gside;
      for (const ZVec& col : d0) pr.delta0.push_back(inst.relabel.apply(col));
      ExtensionResult er = extend(pr);
      if (!er.ok) {
        res.error = er.error;
        res.detail = er.detail;
        res.failed_at = q;
        return res;
      }
      SignedPerm back = inst.relabel.inverse();
      for (const ZVec& col : er.ext.cols) gamma.push_back(back.apply(col));
    }
    // install the representative and its E-conjugates
    res.state.entries.emplace(q, LocalEntry{qm, gamma});
    for (const PSubgroup& qc : orbit) {
      if (qc == q || res.state.has(qc)) continue;
      // find a group element carrying q to qc and transport the labels
      bool moved = false;
      for (const Automorphism& f : eg.elements) {
        std::vector<PElem> img;
        for (PElem v : q.elems) img.push_back(f.apply(v));
        if (!(span(pg, std::move(img)) == qc)) continue;
        QuotientModel qmc = quotient_model(mod, qc);
        if (qm.tag != CaseTag::Case1)
          throw GroupError("internal", "only rank-mixing subgroups move");
        // χ ↦ χ ∘ f^{-1} maps the annihilator of q to that of qc
        Automorphism fi = f.inverse();
        std::map<std::pair<long, long>, long> pos;
        for (long i = 0; i < static_cast<long>(qmc.ann.size()); ++i)
          pos[qmc.ann[i]] = i;
        std::vector<long> t(qm.ann.size());
        for (long i = 0; i < static_cast<long>(qm.ann.size()); ++i) {
          auto [c, d] = qm.ann[i];
          auto it = pos.find({c * fi.a % mod.pn, d * fi.d % mod.pm});
          if (it == pos.end())
            throw GroupError("internal", "annihilator transport failed");
          t[i] = it->second;
        }
        ZMat gc = zmat(gamma.size(), gamma.size());
        for (std::size_t i = 0; i < gamma.size(); ++i)
          for (std::size_t j = 0; j < gamma.size(); ++j)
            gc[t[i]][t[j]] = gamma[i][j];
        res.state.entries.emplace(qc, LocalEntry{qmc, gc});
        moved = true;
        break;
      }
      if (!moved)
        throw GroupError("internal", "orbit member without a carrier");
    }
    ++res.orbit_count;
  }
  res.ok = true;
  return res;
}

}  // namespace iso
