#pragma once

// Integer-matrix representation of bijective isometries between character
// lattices, with Gram, equivariance and twist-compatibility verification.
// Both sides are expressed over orthonormal irreducible-character bases, so
// inner products of lattice elements are plain integer dot products; maps
// restricted to a non-orthonormal sublattice basis carry an explicit Gram
// matrix for the domain.

#include <optional>
#include <string>

#include "groups.hpp"
#include "intmat.hpp"

namespace iso {

// label j -> sign[j] * label perm[j]
struct SignedPerm {
  std::vector<long> perm;
  std::vector<long> sign;  // entries in {+1, -1}

  static SignedPerm identity(long n) {
    SignedPerm s;
    s.perm.resize(n);
    s.sign.assign(n, 1);
    for (long i = 0; i < n; ++i) s.perm[i] = i;
    return s;
  }

  static SignedPerm plain(std::vector<long> p) {
    SignedPerm s;
    s.sign.assign(p.size(), 1);
    s.perm = std::move(p);
    return s;
  }

  long size() const { return static_cast<long>(perm.size()); }

  // action on coefficient vectors over the labels
  ZVec apply(const ZVec& v) const {
    ZVec out(v.size(), 0);
    for (std::size_t j = 0; j < v.size(); ++j) out[perm[j]] = sign[j] * v[j];
    return out;
  }

  SignedPerm compose(const SignedPerm& inner) const {  // this after inner
    SignedPerm out;
    out.perm.resize(perm.size());
    out.sign.resize(perm.size());
    for (std::size_t j = 0; j < perm.size(); ++j) {
      out.perm[j] = perm[inner.perm[j]];
      out.sign[j] = sign[inner.perm[j]] * inner.sign[j];
    }
    return out;
  }

  SignedPerm inverse() const {
    SignedPerm out;
    out.perm.resize(perm.size());
    out.sign.resize(perm.size());
    for (std::size_t j = 0; j < perm.size(); ++j) {
      out.perm[perm[j]] = static_cast<long>(j);
      out.sign[perm[j]] = sign[j];
    }
    return out;
  }
};

// A lattice map in a fixed pair of label orders. cols[j] is the image of
// the j-th domain basis vector as a coefficient vector over the codomain
// labels. The domain Gram matrix defaults to the identity (orthonormal
// domain basis); a restriction to a sublattice basis supplies its own.
struct LatticeIsometry {
  std::vector<std::string> domain_labels, codomain_labels;
  ZMat cols;
  ZMat domain_gram;  // empty means identity

  long domain_size() const { return static_cast<long>(cols.size()); }
  long codomain_size() const {
    return cols.empty() ? 0 : static_cast<long>(cols[0].size());
  }

  mpz_class gram(long i, long j) const {
    if (domain_gram.empty()) return i == j ? 1 : 0;
    return domain_gram[i][j];
  }

  ZVec apply(const ZVec& v) const {
    ZVec out(codomain_size(), 0);
    for (long j = 0; j < domain_size(); ++j) {
      if (v[j] == 0) continue;
      for (long i = 0; i < codomain_size(); ++i) out[i] += v[j] * cols[j][i];
    }
    return out;
  }

  static LatticeIsometry from_signed_perm(const SignedPerm& s) {
    LatticeIsometry iso;
    iso.cols = zmat(s.size(), s.size());
    for (long j = 0; j < s.size(); ++j) iso.cols[j][s.perm[j]] = s.sign[j];
    return iso;
  }
};

struct IsometryVerdict {
  bool pass = true;
  long i = -1, j = -1;  // first violating basis pair on failure
};

// Gram preservation on all basis pairs.
inline IsometryVerdict verify_isometry(const LatticeIsometry& iso) {
  for (long i = 0; i < iso.domain_size(); ++i)
    for (long j = i; j < iso.domain_size(); ++j) {
      mpz_class dot = 0;
      for (long k = 0; k < iso.codomain_size(); ++k)
        dot += iso.cols[i][k] * iso.cols[j][k];
      if (dot != iso.gram(i, j)) return {false, i, j};
    }
  return {};
}

// recognize a map whose matrix is a signed permutation of the labels
inline std::optional<SignedPerm> to_signed_bijection(
    const LatticeIsometry& iso) {
  long n = iso.domain_size();
  if (n == 0 || iso.codomain_size() != n) return std::nullopt;
  SignedPerm s;
  s.perm.assign(n, -1);
  s.sign.assign(n, 0);
  std::vector<char> hit(n, 0);
  for (long j = 0; j < n; ++j) {
    long where = -1;
    for (long i = 0; i < n; ++i) {
      if (iso.cols[j][i] == 0) continue;
      if (where >= 0 || (iso.cols[j][i] != 1 && iso.cols[j][i] != -1))
        return std::nullopt;
      where = i;
    }
    if (where < 0 || hit[where]) return std::nullopt;
    hit[where] = 1;
    s.perm[j] = where;
    s.sign[j] = iso.cols[j][where] == 1 ? 1 : -1;
  }
  return s;
}

// commutation of the map with one action generator given on both sides:
// iso(dom_action(v)) == cod_action(iso(v)) on every domain basis vector.
// The domain action is a matrix in domain-basis coordinates (an integer
// matrix in general: sublattice bases need not be permuted), the codomain
// action a signed permutation of codomain labels.
inline bool verify_stability(const LatticeIsometry& iso, const ZMat& dom_mat,
                             const SignedPerm& cod_act) {
  for (long j = 0; j < iso.domain_size(); ++j) {
    ZVec v(iso.domain_size(), 0);
    v[j] = 1;
    // dom_mat rows give the action images of basis vectors
    ZVec lhs = iso.apply(dom_mat[j]);
    ZVec rhs = cod_act.apply(iso.apply(v));
    if (lhs != rhs) return false;
  }
  return true;
}

// twist-compatibility is the same commutation check with the twist actions
inline bool verify_star_compat(const LatticeIsometry& iso, const ZMat& dom_star,
                               const SignedPerm& cod_star) {
  return verify_stability(iso, dom_star, cod_star);
}

// Matrix of the restriction of a label-level map to a sublattice: the image
// of each basis row under the map, over codomain labels. The result keeps
// the sublattice Gram matrix.
inline LatticeIsometry restrict_to_sublattice(const LatticeIsometry& full,
                                              const ZMat& basis_rows) {
  LatticeIsometry out;
  out.codomain_labels = full.codomain_labels;
  for (const ZVec& row : basis_rows) {
    if (static_cast<long>(row.size()) != full.domain_size())
      throw GroupError("host-mismatch", "basis rows do not match the domain");
    out.cols.push_back(full.apply(row));
  }
  out.domain_gram = zmat(basis_rows.size(), basis_rows.size());
  for (std::size_t i = 0; i < basis_rows.size(); ++i)
    for (std::size_t j = 0; j < basis_rows.size(); ++j) {
      mpz_class dot = 0;
      for (std::size_t k = 0; k < basis_rows[i].size(); ++k)
        dot += basis_rows[i][k] * basis_rows[j][k];
      out.domain_gram[i][j] = dot;
    }
  return out;
}

// Express a group action on labels as a matrix in sublattice-basis
// coordinates; fails when the action does not preserve the sublattice.
inline std::optional<ZMat> action_on_basis(const SignedPerm& act,
                                           const ZMat& basis_rows) {
  ZMat out;
  for (const ZVec& row : basis_rows) {
    auto x = solve_in_row_lattice(basis_rows, act.apply(row));
    if (!x) return std::nullopt;
    out.push_back(std::move(*x));
  }
  return out;
}

}  // namespace iso
