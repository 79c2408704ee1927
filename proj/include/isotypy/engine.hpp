#pragma once

// The extension engine: given the restriction of a prospective isometry to
// the sublattice of p'-vanishing generalized characters, decide and
// construct the full equivariant extension, case by case in the shape of
// the centralizer quotient. The target side is abstract: a label set with
// group actions, degree weights and declared structural flags, which the
// engine re-verifies and never trusts.

#include <random>

#include "charlattice.hpp"
#include "isometry.hpp"

namespace iso {

// ---------------------------------------------------------------------------
// Abstract target side

struct GSide {
  long count = 0;
  std::vector<std::string> names;
  std::vector<long> degrees;                // degree weight per label
  std::vector<std::vector<long>> e_action;  // label permutations (generators)
  std::vector<long> star_action;            // twist generator; empty if none
  bool regular_orbit = false;               // declared: regular orbit exists
  bool free_star = false;                   // declared: twist action is free

  // the self-instance: the quotient model's own labels and actions
  static GSide self(const QuotientModel& qm) {
    GSide g;
    g.count = qm.label_count();
    for (long i = 0; i < g.count; ++i) {
      g.names.push_back(qm.label_name(i));
      g.degrees.push_back(qm.degree(i));
    }
    switch (qm.tag) {
      case CaseTag::Case2:
        break;  // inner actions are trivial on class functions
      case CaseTag::Case1:
        g.e_action = qm.case1_action_perms();
        break;
      default:
        g.e_action = {qm.acting_gen_perm()};
        if (qm.tag == CaseTag::Case32) {
          g.star_action = qm.star_gen_perm();
          g.free_star = true;
        } else {
          g.regular_orbit = true;
        }
        break;
    }
    return g;
  }
};

struct ExtensionProblem {
  QuotientModel qm;
  GSide gside;
  // column k = image of the k-th distinguished sublattice basis vector,
  // as a coefficient vector over the target labels
  ZMat delta0;
};

// restriction of the identity: columns are the basis rows themselves
inline ZMat self_delta0(const QuotientModel& qm) { return lzero_basis(qm); }

struct ExtensionResult {
  bool ok = false;
  std::string error;   // named violated constraint when not ok
  std::string detail;
  LatticeIsometry ext;  // label-level extension when ok
  SignedPerm bij;       // the same map in signed-bijection form
  long delta = 0;       // primary sign
  std::vector<long> a_before, a_after;  // case-2 integer constraint report

  static ExtensionResult fail(std::string code, std::string what) {
    ExtensionResult r;
    r.error = std::move(code);
    r.detail = std::move(what);
    return r;
  }
};

// ---------------------------------------------------------------------------
// small helpers

namespace detail {

inline long as_sign(const mpz_class& v) {
  if (v == 1) return 1;
  if (v == -1) return -1;
  return 0;
}

// nonzero support of a coefficient vector
inline std::vector<long> support(const ZVec& v) {
  std::vector<long> s;
  for (long i = 0; i < static_cast<long>(v.size()); ++i)
    if (v[i] != 0) s.push_back(i);
  return s;
}

// Recognize a family of vectors v_i = s(x0 - x_i) sharing one signed
// character: every vector has exactly two nonzero entries +s and -s, and
// one (index, sign) pair occurs in all of them. Needs >= 2 vectors for a
// unique answer.
struct FamilyRec {
  bool ok = false;
  std::string why;
  long common = -1;
  long sign = 0;
  std::vector<long> others;  // x_i per vector
};

inline FamilyRec recover_family(const std::vector<const ZVec*>& vs) {
  FamilyRec rec;
  if (vs.size() < 2) {
    rec.why = "family needs at least two difference vectors";
    return rec;
  }
  for (const ZVec* v : vs) {
    auto s = support(*v);
    if (s.size() != 2 || as_sign((*v)[s[0]]) == 0 ||
        as_sign((*v)[s[1]]) == 0 || (*v)[s[0]] != -(*v)[s[1]]) {
      rec.why = "image is not a signed difference of two characters";
      return rec;
    }
  }
  // candidates from the first vector, filtered through the rest
  auto s0 = support(*vs[0]);
  std::vector<std::pair<long, long>> cands;  // (index, sign)
  for (long idx : s0) cands.push_back({idx, as_sign((*vs[0])[idx])});
  for (std::size_t i = 1; i < vs.size(); ++i) {
    std::vector<std::pair<long, long>> keep;
    for (auto [idx, sg] : cands)
      if ((*vs[i])[idx] == sg) keep.push_back({idx, sg});
    cands = std::move(keep);
  }
  if (cands.size() != 1) {
    rec.why = cands.empty() ? "no common signed character in the family"
                            : "family differences are not pairwise distinct";
    return rec;
  }
  rec.common = cands[0].first;
  rec.sign = cands[0].second;
  for (const ZVec* v : vs) {
    auto s = support(*v);
    long other = s[0] == rec.common ? s[1] : s[0];
    if (s[0] != rec.common && s[1] != rec.common) {
      rec.why = "vector misses the common character";
      return rec;
    }
    rec.others.push_back(other);
  }
  rec.ok = true;
  return rec;
}

inline std::vector<long> perm_power(const std::vector<long>& p, long k) {
  std::vector<long> r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[i] = static_cast<long>(i);
  for (long t = 0; t < k; ++t)
    for (std::size_t i = 0; i < p.size(); ++i) r[i] = p[r[i]];
  return r;
}

inline std::vector<long> orbit_of(const std::vector<long>& p, long x) {
  std::vector<long> o{x};
  long c = p[x];
  while (c != x) {
    o.push_back(c);
    c = p[c];
  }
  return o;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// shared pre-verification: cardinality, Gram, stability, twist-compatibility
// and declared structural flags. Returns an error result or nothing.

inline std::optional<ExtensionResult> engine_precheck(
    const ExtensionProblem& pr) {
  const QuotientModel& qm = pr.qm;
  const GSide& g = pr.gside;
  auto fail = [](const char* c, std::string w) {
    return ExtensionResult::fail(c, std::move(w));
  };

  if (g.count != qm.label_count())
    return fail("cardinality-mismatch",
                "target label count differs from the block label count");
  ZMat basis = lzero_basis(qm);
  if (pr.delta0.size() != basis.size())
    return fail("cardinality-mismatch",
                "column count differs from the sublattice basis size");
  for (const ZVec& col : pr.delta0)
    if (static_cast<long>(col.size()) != g.count)
      return fail("cardinality-mismatch", "column height differs from labels");

  // Gram preservation on the sublattice basis
  LatticeIsometry d0;
  d0.cols = pr.delta0;
  d0.domain_gram = zmat(basis.size(), basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j) {
      mpz_class dot = 0;
      for (std::size_t t = 0; t < basis[i].size(); ++t)
        dot += basis[i][t] * basis[j][t];
      d0.domain_gram[i][j] = dot;
    }
  IsometryVerdict iv = verify_isometry(d0);
  if (!iv.pass)
    return fail("not-an-isometry", "Gram violated at basis pair (" +
                                       std::to_string(iv.i) + "," +
                                       std::to_string(iv.j) + ")");

  // equivariance of the restriction
  std::vector<std::vector<long>> dom_perms;
  switch (qm.tag) {
    case CaseTag::Case2:
      break;
    case CaseTag::Case1:
      dom_perms = qm.case1_action_perms();
      break;
    default:
      dom_perms = {qm.acting_gen_perm()};
      break;
  }
  if (dom_perms.size() != g.e_action.size())
    return fail("cardinality-mismatch",
                "action generator count differs between the two sides");
  for (std::size_t s = 0; s < dom_perms.size(); ++s) {
    auto dom = action_on_basis(SignedPerm::plain(dom_perms[s]), basis);
    if (!dom)
      return fail("stability-violation",
                  "block action does not preserve the sublattice");
    if (static_cast<long>(g.e_action[s].size()) != g.count)
      return fail("cardinality-mismatch", "action permutation size");
    if (!verify_stability(d0, *dom, SignedPerm::plain(g.e_action[s])))
      return fail("stability-violation",
                  "restriction does not commute with the action");
  }

  // case-specific declared flags, re-verified
  if (qm.tag == CaseTag::Case31) {
    if (!g.regular_orbit)
      return fail("no-regular-E2-orbit", "regular-orbit flag not declared");
    bool has = false;
    for (long x = 0; x < g.count && !has; ++x)
      has = static_cast<long>(detail::orbit_of(g.e_action[0], x).size()) ==
            qm.model.l;
    if (!has)
      return fail("no-regular-E2-orbit",
                  "target action has no orbit of full length");
  }
  if (qm.tag == CaseTag::Case32) {
    if (static_cast<long>(g.star_action.size()) != g.count)
      return fail("missing-star-action",
                  "twist action absent on the target side");
    if (!g.free_star)
      return fail("star-freeness-violation", "freeness flag not declared");
    for (long k = 1; k < qm.pbar; ++k) {
      std::vector<long> p = detail::perm_power(g.star_action, k);
      for (long i = 0; i < g.count; ++i)
        if (p[i] == i)
          return fail("star-freeness-violation",
                      "twist action has a fixed point");
    }
    std::vector<long> full = detail::perm_power(g.star_action, qm.pbar);
    for (long i = 0; i < g.count; ++i)
      if (full[i] != i)
        return fail("star-freeness-violation",
                    "twist action order does not divide the p-group order");
    auto dom = action_on_basis(SignedPerm::plain(qm.star_gen_perm()), basis);
    if (!dom)
      return fail("star-compat-violation",
                  "block twist does not preserve the sublattice");
    if (!verify_star_compat(d0, *dom, SignedPerm::plain(g.star_action)))
      return fail("star-compat-violation",
                  "restriction does not commute with the twist");
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// shared post-verification: the built extension must be a signed bijection,
// an isometry, stable, twist-compatible, and must restrict to the input.

inline ExtensionResult finish_extension(const ExtensionProblem& pr,
                                        ZMat ext_cols, long delta,
                                        std::vector<long> a_before = {},
                                        std::vector<long> a_after = {}) {
  ExtensionResult res;
  res.ext.cols = std::move(ext_cols);
  for (long i = 0; i < pr.qm.label_count(); ++i)
    res.ext.domain_labels.push_back(pr.qm.label_name(i));
  res.ext.codomain_labels =
      pr.gside.names.empty()
          ? res.ext.domain_labels
          : pr.gside.names;
  auto bij = to_signed_bijection(res.ext);
  if (!bij)
    return ExtensionResult::fail("not-an-isometry",
                                 "extension is not a signed bijection");
  res.bij = *bij;
  if (!verify_isometry(res.ext).pass)
    return ExtensionResult::fail("not-an-isometry",
                                 "extension fails the Gram check");
  ZMat basis = lzero_basis(pr.qm);
  LatticeIsometry restr = restrict_to_sublattice(res.ext, basis);
  if (restr.cols != pr.delta0)
    return ExtensionResult::fail(
        "not-an-extension", "restriction differs from the given sublattice map");
  std::vector<std::vector<long>> dom_perms;
  switch (pr.qm.tag) {
    case CaseTag::Case2:
      break;
    case CaseTag::Case1:
      dom_perms = pr.qm.case1_action_perms();
      break;
    default:
      dom_perms = {pr.qm.acting_gen_perm()};
      break;
  }
  for (std::size_t s = 0; s < dom_perms.size(); ++s) {
    ZMat dom;
    for (long j : dom_perms[s]) {
      ZVec row(pr.qm.label_count(), 0);
      row[j] = 1;
      dom.push_back(std::move(row));
    }
    if (!verify_stability(res.ext, dom, SignedPerm::plain(pr.gside.e_action[s])))
      return ExtensionResult::fail("stability-violation",
                                   "extension is not action-equivariant");
  }
  if (pr.qm.tag == CaseTag::Case32) {
    ZMat dom;
    for (long j : pr.qm.star_gen_perm()) {
      ZVec row(pr.qm.label_count(), 0);
      row[j] = 1;
      dom.push_back(std::move(row));
    }
    if (!verify_star_compat(res.ext, dom, SignedPerm::plain(pr.gside.star_action)))
      return ExtensionResult::fail("star-compat-violation",
                                   "extension is not twist-compatible");
  }
  res.ok = true;
  res.delta = delta;
  res.a_before = std::move(a_before);
  res.a_after = std::move(a_after);
  return res;
}

// ---------------------------------------------------------------------------
// Case with trivial stabilizer in the acting group: both blocks are
// nilpotent-like, all labels linear; recover the common character of the
// difference family and the global sign.

inline ExtensionResult extend_case1(const ExtensionProblem& pr) {
  if (auto bad = engine_precheck(pr)) return *bad;
  long n = pr.gside.count;
  if (n < 3)
    return ExtensionResult::fail("cardinality-mismatch",
                                 "need at least three characters");
  std::vector<const ZVec*> vs;
  for (const ZVec& c : pr.delta0) vs.push_back(&c);
  detail::FamilyRec rec = detail::recover_family(vs);
  if (!rec.ok) return ExtensionResult::fail("no-common-character", rec.why);
  long delta = rec.sign;
  std::vector<long> chi(n, -1);
  chi[0] = rec.common;
  std::vector<char> used(n, 0);
  used[rec.common] = 1;
  for (long i = 1; i < n; ++i) {
    long o = rec.others[i - 1];
    if (pr.delta0[i - 1][o] != -delta)
      return ExtensionResult::fail("no-common-character",
                                   "difference signs are inconsistent");
    if (used[o])
      return ExtensionResult::fail("cardinality-mismatch",
                                   "two block characters share an image");
    used[o] = 1;
    chi[i] = o;
  }
  ZMat cols = zmat(n, n);
  for (long i = 0; i < n; ++i) cols[i][chi[i]] = delta;
  return finish_extension(pr, std::move(cols), delta);
}

// ---------------------------------------------------------------------------
// Case of the trivial subgroup: the full-block extension through the
// degree-l / degree-l^2 split, the integer constraint on the overlap
// coefficient, strictness, and the sign-forcing degree functional.

inline ExtensionResult extend_case2(const ExtensionProblem& pr) {
  if (auto bad = engine_precheck(pr)) return *bad;
  const QuotientModel& qm = pr.qm;
  const long l = qm.model.l;
  long n = pr.gside.count;
  long count = qm.label_count();

  // reconstruct the basis layout exactly as the basis builder does
  long psi1 = -1, psi2 = -1;
  for (long i = 0; i < count; ++i) {
    if (qm.degree(i) == l && psi1 < 0) psi1 = i;
    if (qm.degree(i) == l * l && psi2 < 0) psi2 = i;
  }
  std::vector<long> lam1_rows, lam2_rows;  // basis row -> block label
  {
    long r = 0;
    for (long i = 0; i < count; ++i) {
      if (i == psi1 || i == psi2) continue;
      (qm.degree(i) == l ? lam1_rows : lam2_rows).push_back(i);
      ++r;
    }
  }
  // basis rows come in label order; recompute the row index of each family
  std::vector<long> row_label;  // per non-mu row, the psi' label
  for (long i = 0; i < count; ++i)
    if (i != psi1 && i != psi2) row_label.push_back(i);
  long mu_row = static_cast<long>(row_label.size());

  // family of degree-l differences
  std::vector<const ZVec*> v1;
  std::vector<long> v1_labels;
  std::vector<std::pair<long, const ZVec*>> v2;  // (label, image) degree-l^2
  for (long r = 0; r < mu_row; ++r) {
    if (qm.degree(row_label[r]) == l) {
      v1.push_back(&pr.delta0[r]);
      v1_labels.push_back(row_label[r]);
    } else {
      v2.push_back({row_label[r], &pr.delta0[r]});
    }
  }
  detail::FamilyRec rec = detail::recover_family(v1);
  if (!rec.ok) return ExtensionResult::fail("omega-assignment", rec.why);
  long delta1 = rec.sign;
  std::map<long, long> chi;  // block label -> target label
  chi[psi1] = rec.common;
  for (std::size_t i = 0; i < v1.size(); ++i) {
    if ((*v1[i])[rec.others[i]] != -delta1)
      return ExtensionResult::fail("omega-assignment",
                                   "difference signs are inconsistent");
    chi[v1_labels[i]] = rec.others[i];
  }
  std::set<long> omega1;
  for (auto [k, v] : chi) omega1.insert(v);
  if (static_cast<long>(omega1.size()) != static_cast<long>(chi.size()))
    return ExtensionResult::fail("omega-assignment",
                                 "degree-l images are not distinct");

  // overlap coefficient a from the image of mu = psi2 - l psi1
  const ZVec& w = pr.delta0[mu_row];
  mpz_class a_m = delta1 * w[chi[v1_labels.empty() ? psi1 : v1_labels[0]]];
  if (!v1_labels.empty()) {
    for (long lb : v1_labels)
      if (delta1 * w[chi[lb]] != a_m)
        return ExtensionResult::fail("omega-assignment",
                                     "overlap coefficient is not constant");
    if (w[chi[psi1]] != delta1 * (a_m - l))
      return ExtensionResult::fail("omega-assignment",
                                   "pivot coefficient violates the overlap");
  }
  long K = qm.model.pn + qm.model.pm - 1;
  std::vector<long> a_before, a_after;
  for (long a = -10; a <= 10; ++a) {
    long val = K * a * a - 2 * l * a;
    if (1 >= val) a_before.push_back(a);
    if (1 > val) a_after.push_back(a);
  }
  long a = static_cast<long>(a_m.get_si());
  bool strict_ok = std::find(a_after.begin(), a_after.end(), a) != a_after.end();
  if (!strict_ok || a != 0)
    return ExtensionResult::fail(
        "integer-constraint",
        "overlap coefficient a=" + std::to_string(a) +
            " excluded by strictness of the norm inequality");

  // Xi must be a single signed character: the image of psi2
  ZVec xi = w;
  xi[chi[psi1]] += delta1 * l;
  auto sup = detail::support(xi);
  if (sup.size() != 1 || detail::as_sign(xi[sup[0]]) == 0)
    return ExtensionResult::fail("omega-assignment",
                                 "residual term is not a single character");
  long delta2 = detail::as_sign(xi[sup[0]]);
  if (omega1.count(sup[0]))
    return ExtensionResult::fail("omega-assignment",
                                 "residual character collides with degree-l set");
  chi[psi2] = sup[0];

  // degree-l^2 differences hang off the recovered pivot
  std::set<long> omega2{sup[0]};
  for (auto [lb, v] : v2) {
    if ((*v)[chi[psi2]] != delta2)
      return ExtensionResult::fail("omega-assignment",
                                   "degree-l^2 difference misses the pivot");
    auto s = detail::support(*v);
    if (s.size() != 2)
      return ExtensionResult::fail("omega-assignment",
                                   "degree-l^2 image is not a difference");
    long other = s[0] == chi[psi2] ? s[1] : s[0];
    if ((*v)[other] != -delta2)
      return ExtensionResult::fail("omega-assignment",
                                   "degree-l^2 difference signs inconsistent");
    if (omega1.count(other) || omega2.count(other))
      return ExtensionResult::fail("omega-assignment",
                                   "degree-l^2 images are not distinct");
    omega2.insert(other);
    chi[lb] = other;
  }

  // degree functional: the image of mu vanishes at 1; this forces the signs
  mpz_class deg_sum = 0;
  for (long i = 0; i < n; ++i) deg_sum += w[i] * pr.gside.degrees[i];
  if (deg_sum != 0)
    return ExtensionResult::fail("sign-clash",
                                 "image of the mixed basis vector has nonzero degree");
  if (delta1 != delta2)
    return ExtensionResult::fail("sign-clash",
                                 "degree-l and degree-l^2 signs differ");

  if (static_cast<long>(omega1.size() + omega2.size()) != n)
    return ExtensionResult::fail("cardinality-mismatch",
                                 "images do not exhaust the target characters");

  ZMat cols = zmat(count, n);
  for (auto [lb, im] : chi) cols[lb][im] = delta1;
  return finish_extension(pr, std::move(cols), delta1, std::move(a_before),
                          std::move(a_after));
}

// ---------------------------------------------------------------------------
// Case of a full axis subgroup: one stable character per induced label and
// a regular orbit carrying the linear family.

inline ExtensionResult extend_case31(const ExtensionProblem& pr) {
  if (auto bad = engine_precheck(pr)) return *bad;
  const QuotientModel& qm = pr.qm;
  const long l = qm.model.l;
  long n = pr.gside.count;
  long mcount = static_cast<long>(qm.mreps.size());
  const std::vector<long>& A = pr.gside.e_action[0];
  long shift = ((qm.tau_shift % l) + l) % l;

  auto is_stable = [&](long x) { return A[x] == x; };

  // attempt one candidate assignment of stable characters to induced labels
  struct Candidate {
    std::vector<long> chi;  // per induced label
    long delta = 0;
  };
  std::vector<Candidate> candidates;
  if (mcount == 1) {
    candidates.push_back({});  // resolved inside the loop
  } else {
    // difference family relative to the first induced label
    std::vector<ZVec> diffs;
    for (long i = 1; i < mcount; ++i) {
      ZVec d(n, 0);
      for (long t = 0; t < n; ++t)
        d[t] = pr.delta0[0][t] - pr.delta0[i][t];
      diffs.push_back(std::move(d));
    }
    if (mcount >= 3) {
      std::vector<const ZVec*> vs;
      for (const ZVec& d : diffs) vs.push_back(&d);
      detail::FamilyRec rec = detail::recover_family(vs);
      if (!rec.ok) return ExtensionResult::fail("omega-assignment", rec.why);
      Candidate c;
      c.delta = -rec.sign;  // diffs are delta*(chi_i - chi_0)
      c.chi.assign(mcount, -1);
      c.chi[0] = rec.common;
      for (long i = 1; i < mcount; ++i) c.chi[i] = rec.others[i - 1];
      candidates.push_back(std::move(c));
    } else {
      // two induced labels: both readings of the single difference
      auto s = detail::support(diffs[0]);
      if (s.size() != 2 || detail::as_sign(diffs[0][s[0]]) == 0 ||
          diffs[0][s[0]] != -diffs[0][s[1]])
        return ExtensionResult::fail("omega-assignment",
                                     "induced difference is not a signed pair");
      for (int pick = 0; pick < 2; ++pick) {
        Candidate c;
        long x0 = s[pick], x1 = s[1 - pick];
        c.delta = -detail::as_sign(diffs[0][x0]);
        c.chi = {x0, x1};
        candidates.push_back(std::move(c));
      }
      // deterministic tie-break: try the lexicographically least first
      std::sort(candidates.begin(), candidates.end(),
                [](const Candidate& a, const Candidate& b) {
                  return a.chi < b.chi;
                });
    }
  }

  std::string last_err = "omega-assignment";
  std::string last_why = "no consistent assignment";
  for (Candidate& cand : candidates) {
    long delta = cand.delta;
    std::vector<long> chi = cand.chi;
    std::vector<char> taken(n, 0);
    if (mcount == 1) {
      // the single basis vector determines everything
      const ZVec& v = pr.delta0[0];
      long stable_at = -1;
      bool bad = false;
      for (long x = 0; x < n; ++x) {
        if (v[x] == 0) continue;
        if (detail::as_sign(v[x]) == 0) {
          bad = true;
          break;
        }
        if (is_stable(x)) {
          if (stable_at >= 0) {
            bad = true;
            break;
          }
          stable_at = x;
        }
      }
      if (bad || stable_at < 0) {
        last_err = "omega-assignment";
        last_why = "image support lacks a unique stable character";
        continue;
      }
      chi = {stable_at};
      delta = -detail::as_sign(v[stable_at]);
    }
    bool good = true;
    for (long x : chi) {
      if (!is_stable(x) || taken[x]) {
        good = false;
        last_err = "omega-assignment";
        last_why = "induced images are not distinct stable characters";
        break;
      }
      taken[x] = 1;
    }
    if (!good) continue;

    // the complement must be one regular orbit
    std::vector<long> omega;
    for (long x = 0; x < n; ++x)
      if (!taken[x]) omega.push_back(x);
    if (static_cast<long>(omega.size()) != l) {
      last_err = "no-regular-E2-orbit";
      last_why = "leftover characters do not number the acting order";
      continue;
    }
    std::vector<long> orb = detail::orbit_of(A, omega[0]);
    if (static_cast<long>(orb.size()) != l) {
      last_err = "no-regular-E2-orbit";
      last_why = "leftover characters are not a single regular orbit";
      continue;
    }

    // involvement: every column is (orbit sum with one sign) minus the
    // matching induced image
    long delta_orb = 0;
    for (long i = 0; i < mcount && good; ++i) {
      ZVec r = pr.delta0[i];
      r[chi[i]] += delta;
      auto sup = detail::support(r);
      if (static_cast<long>(sup.size()) != l) {
        good = false;
        last_err = "involvement-bound";
        last_why = "image does not involve the whole regular orbit";
        break;
      }
      long s0 = detail::as_sign(r[sup[0]]);
      if (s0 == 0) {
        good = false;
        last_err = "involvement-bound";
        last_why = "orbit coefficients are not signs";
        break;
      }
      for (long x : sup)
        if (taken[x] || detail::as_sign(r[x]) != s0) {
          good = false;
          last_err = "involvement-bound";
          last_why = "orbit coefficients are not one constant sign";
          break;
        }
      if (!good) break;
      if (delta_orb == 0) delta_orb = s0;
      if (delta_orb != s0) {
        good = false;
        last_err = "sign-clash";
        last_why = "orbit sign differs between induced labels";
        break;
      }
    }
    if (!good) continue;

    // equivariant alignment of the linear labels along the orbit
    long start = *std::min_element(orb.begin(), orb.end());
    ZMat cols = zmat(qm.label_count(), n);
    long t_cur = 0, c_cur = start;
    for (long step = 0; step < l; ++step) {
      cols[qm.tau_index(t_cur, 0)][c_cur] = delta_orb;
      t_cur = (t_cur + shift) % l;
      c_cur = A[c_cur];
    }
    for (long i = 0; i < mcount; ++i) cols[qm.ind_index(i, 0)][chi[i]] = delta;
    ExtensionResult res = finish_extension(pr, std::move(cols), delta);
    if (res.ok) return res;
    last_err = res.error;
    last_why = res.detail;
  }
  return ExtensionResult::fail(last_err, last_why);
}

// ---------------------------------------------------------------------------
// Case of a proper axis subgroup: twist-translation families.

inline ExtensionResult extend_case32(const ExtensionProblem& pr) {
  if (auto bad = engine_precheck(pr)) return *bad;
  const QuotientModel& qm = pr.qm;
  const long l = qm.model.l;
  const long pbar = qm.pbar;
  long n = pr.gside.count;
  long mcount = static_cast<long>(qm.mreps.size());
  const std::vector<long>& A = pr.gside.e_action[0];
  const std::vector<long>& S = pr.gside.star_action;
  ZMat basis = lzero_basis(qm);
  long shift = ((qm.tau_shift % l) + l) % l;

  // image of an arbitrary sublattice element through the given columns
  auto image_of = [&](const ZVec& vec) -> std::optional<ZVec> {
    auto coords = solve_in_row_lattice(basis, vec);
    if (!coords) return std::nullopt;
    ZVec out(n, 0);
    for (std::size_t k = 0; k < coords->size(); ++k) {
      if ((*coords)[k] == 0) continue;
      for (long i = 0; i < n; ++i) out[i] += (*coords)[k] * pr.delta0[k][i];
    }
    return out;
  };
  auto lattice_vec = [&](std::initializer_list<std::pair<long, long>> terms) {
    ZVec v(qm.label_count(), 0);
    for (auto [idx, c] : terms) v[idx] += c;
    return v;
  };

  // recover chi and sign from the image of (label at z=0) - (label at z=1):
  // delta*(chi - S(chi)); uniqueness holds because S is free of order >= 3
  auto recover_anchor = [&](const ZVec& y, long& chi,
                            long& sgn) -> std::optional<std::string> {
    auto sup = detail::support(y);
    if (sup.size() != 2 || detail::as_sign(y[sup[0]]) == 0 ||
        y[sup[0]] != -y[sup[1]])
      return "twist difference is not a signed pair";
    long found = -1, fsgn = 0;
    for (long x : sup) {
      long other = sup[0] == x ? sup[1] : sup[0];
      if (S[x] == other && y[x] == -y[other]) {
        if (found >= 0) return "twist anchor is ambiguous";
        found = x;
        fsgn = detail::as_sign(y[x]);
      }
    }
    if (found < 0) return "twist difference does not follow the twist action";
    chi = found;
    sgn = fsgn;
    return std::nullopt;
  };

  // induced families
  std::vector<long> chi_xi(mcount), delta_xi(mcount);
  for (long qi = 0; qi < mcount; ++qi) {
    auto y = image_of(lattice_vec(
        {{qm.ind_index(qi, 0), 1}, {qm.ind_index(qi, 1), -1}}));
    if (!y)
      return ExtensionResult::fail("omega-assignment",
                                   "twist difference escapes the sublattice");
    long chi, sgn;
    if (auto why = recover_anchor(*y, chi, sgn))
      return ExtensionResult::fail("omega-assignment", *why);
    if (A[chi] != chi)
      return ExtensionResult::fail("omega-assignment",
                                   "induced anchor is not action-stable");
    chi_xi[qi] = chi;
    delta_xi[qi] = sgn;
    for (long z = 2; z < pbar; ++z) {
      auto yz = image_of(lattice_vec(
          {{qm.ind_index(qi, 0), 1}, {qm.ind_index(qi, z), -1}}));
      ZVec expect(n, 0);
      expect[chi] += sgn;
      std::vector<long> pz = detail::perm_power(S, z);
      expect[pz[chi]] -= sgn;
      if (!yz || *yz != expect)
        return ExtensionResult::fail(
            "star-compat-violation",
            "translation family does not follow the twist powers");
    }
  }

  // linear families
  std::vector<long> chi_tau(l), delta_tau(l);
  for (long t = 0; t < l; ++t) {
    auto y = image_of(
        lattice_vec({{qm.tau_index(t, 0), 1}, {qm.tau_index(t, 1), -1}}));
    if (!y)
      return ExtensionResult::fail("omega-assignment",
                                   "twist difference escapes the sublattice");
    long chi, sgn;
    if (auto why = recover_anchor(*y, chi, sgn))
      return ExtensionResult::fail("omega-assignment", *why);
    chi_tau[t] = chi;
    delta_tau[t] = sgn;
    for (long z = 2; z < pbar; ++z) {
      auto yz = image_of(
          lattice_vec({{qm.tau_index(t, 0), 1}, {qm.tau_index(t, z), -1}}));
      ZVec expect(n, 0);
      expect[chi] += sgn;
      std::vector<long> pz = detail::perm_power(S, z);
      expect[pz[chi]] -= sgn;
      if (!yz || *yz != expect)
        return ExtensionResult::fail(
            "star-compat-violation",
            "translation family does not follow the twist powers");
    }
  }

  // action-consistency of the linear families: chi of the shifted label is
  // the action image, with one constant sign
  for (long t = 0; t < l; ++t) {
    long t2 = (t + shift) % l;
    if (chi_tau[t2] != A[chi_tau[t]])
      return ExtensionResult::fail("stability-violation",
                                   "linear anchors are not action-equivariant");
    if (delta_tau[t2] != delta_tau[t])
      return ExtensionResult::fail("sign-clash",
                                   "linear family signs differ along the orbit");
  }
  long delta = delta_tau[0];

  // disjointness of all twist orbits; together they must exhaust the labels
  std::vector<char> taken(n, 0);
  auto claim_orbit = [&](long x) -> bool {
    for (long z = 0; z < pbar; ++z) {
      if (taken[x]) return false;
      taken[x] = 1;
      x = S[x];
    }
    return true;
  };
  for (long qi = 0; qi < mcount; ++qi)
    if (!claim_orbit(chi_xi[qi]))
      return ExtensionResult::fail("star-freeness-violation",
                                   "twist orbits collide");
  for (long t = 0; t < l; ++t)
    if (!claim_orbit(chi_tau[t]))
      return ExtensionResult::fail("star-freeness-violation",
                                   "twist orbits collide");
  for (long x = 0; x < n; ++x)
    if (!taken[x])
      return ExtensionResult::fail("cardinality-mismatch",
                                   "twist orbits do not exhaust the labels");

  // residual constraint on the mixed basis vectors
  for (long qi = 0; qi < mcount; ++qi) {
    ZVec expect(n, 0);
    for (long t = 0; t < l; ++t) expect[chi_tau[t]] += delta;
    expect[chi_xi[qi]] -= delta_xi[qi];
    if (pr.delta0[qi * pbar] != expect)
      return ExtensionResult::fail(
          "involvement-bound",
          "mixed image is not the linear sum minus the induced anchor");
  }

  // assemble: twist powers translate the anchors
  ZMat cols = zmat(qm.label_count(), n);
  for (long z = 0; z < pbar; ++z) {
    std::vector<long> pz = detail::perm_power(S, z);
    for (long t = 0; t < l; ++t)
      cols[qm.tau_index(t, z)][pz[chi_tau[t]]] = delta;
    for (long qi = 0; qi < mcount; ++qi)
      cols[qm.ind_index(qi, z)][pz[chi_xi[qi]]] = delta_xi[qi];
  }
  return finish_extension(pr, std::move(cols), delta);
}

// ---------------------------------------------------------------------------

inline ExtensionResult extend(const ExtensionProblem& pr) {
  switch (pr.qm.tag) {
    case CaseTag::Case1:
      return extend_case1(pr);
    case CaseTag::Case2:
      return extend_case2(pr);
    case CaseTag::Case31:
      return extend_case31(pr);
    default:
      return extend_case32(pr);
  }
}

// ---------------------------------------------------------------------------
// Seeded scrambles: compose the self-instance with a random relabeling of
// the target side and a global sign; actions, degrees and flags are
// transported, so the scrambled problem is equivariant by construction.

struct ScrambledSide {
  GSide gside;
  SignedPerm relabel;  // block barred label -> scrambled label, global sign
};

inline ScrambledSide scrambled_gside(const QuotientModel& qm,
                                     unsigned long seed) {
  std::mt19937 rng(static_cast<std::mt19937::result_type>(seed));
  long n = qm.label_count();
  std::vector<long> perm(n);
  for (long i = 0; i < n; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  long sign = (rng() & 1) ? 1 : -1;

  GSide base = GSide::self(qm);
  ScrambledSide out;
  out.relabel.perm = perm;
  out.relabel.sign.assign(n, sign);
  out.gside.count = n;
  out.gside.names.resize(n);
  out.gside.degrees.resize(n);
  for (long i = 0; i < n; ++i) {
    out.gside.names[perm[i]] = "g:" + base.names[i];
    out.gside.degrees[perm[i]] = base.degrees[i];
  }
  auto transport = [&](const std::vector<long>& p) {
    std::vector<long> moved(n);
    for (long i = 0; i < n; ++i) moved[perm[i]] = perm[p[i]];
    return moved;
  };
  for (const auto& p : base.e_action)
    out.gside.e_action.push_back(transport(p));
  if (!base.star_action.empty())
    out.gside.star_action = transport(base.star_action);
  out.gside.regular_orbit = base.regular_orbit;
  out.gside.free_star = base.free_star;
  return out;
}

inline ExtensionProblem scrambled_problem(const QuotientModel& qm,
                                          unsigned long seed) {
  ScrambledSide s = scrambled_gside(qm, seed);
  ExtensionProblem pr;
  pr.qm = qm;
  pr.gside = std::move(s.gside);
  for (const ZVec& col : self_delta0(qm))
    pr.delta0.push_back(s.relabel.apply(col));
  return pr;
}

}  // namespace iso
