#pragma once

// Finite abelian p-groups of rank <= 2, their automorphisms as 2x2 residue
// matrices, subgroup lattices, and the decomposition of a diagonalizable
// abelian p'-action into two cyclic factors acting on complementary
// coordinates.

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace iso {

struct GroupError : std::runtime_error {
  std::string code;
  GroupError(std::string c, const std::string& msg)
      : std::runtime_error(c + ": " + msg), code(std::move(c)) {}
};

inline long pow_long(long base, int e) {
  long r = 1;
  while (e-- > 0) r *= base;
  return r;
}

inline bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// Multiplicative order of u modulo m.
inline long unit_order(long u, long m) {
  if (m == 1) return 1;
  if (std::gcd(u % m, m) != 1)
    throw std::invalid_argument("not a unit");
  long o = 1, v = u % m;
  while (v != 1) {
    v = v * u % m;
    ++o;
  }
  return o;
}

struct PElem {
  long x = 0, y = 0;
  friend bool operator==(const PElem&, const PElem&) = default;
  friend auto operator<=>(const PElem&, const PElem&) = default;
};

// C_{p^n} x C_{p^m}; an exponent of 0 means that factor is trivial. The
// canonical() factory normalizes so the first coordinate has the larger
// exponent; contexts that fix the roles of the two factors construct
// directly.
struct AbelianPGroup {
  long p;
  int n, m;

  AbelianPGroup(long p_, int n_, int m_) : p(p_), n(n_), m(m_) {
    if (!is_prime(p) || p == 2)
      throw GroupError("bad-prime", "p must be an odd prime");
    if (n < 0 || m < 0 || n + m == 0)
      throw GroupError("bad-exponents", "need a nontrivial group");
  }

  static AbelianPGroup canonical(long p, int n, int m) {
    if (n < m) std::swap(n, m);
    return AbelianPGroup(p, n, m);
  }

  long pn() const { return pow_long(p, n); }
  long pm() const { return pow_long(p, m); }
  long order() const { return pn() * pm(); }
  int rank() const { return (n >= 1 && m >= 1) ? 2 : 1; }

  PElem reduce(long x, long y) const {
    x %= pn();
    if (x < 0) x += pn();
    y %= pm();
    if (y < 0) y += pm();
    return {x, y};
  }
  PElem add(PElem a, PElem b) const { return reduce(a.x + b.x, a.y + b.y); }
  PElem neg(PElem a) const { return reduce(-a.x, -a.y); }
  PElem smul(long k, PElem a) const {
    return reduce((k % pn()) * a.x, (k % pm()) * a.y);
  }
  long elem_order(PElem a) const {
    long o = 1;
    PElem v = a;
    while (!(v == PElem{0, 0})) {
      v = add(v, a);
      ++o;
    }
    return o;
  }
  std::vector<PElem> all_elements() const {
    std::vector<PElem> v;
    v.reserve(order());
    for (long x = 0; x < pn(); ++x)
      for (long y = 0; y < pm(); ++y) v.push_back({x, y});
    return v;
  }
  friend bool operator==(const AbelianPGroup& a, const AbelianPGroup& b) {
    return a.p == b.p && a.n == b.n && a.m == b.m;
  }
};

// (x, y) -> (a x + b y mod p^n, c x + d y mod p^m). Well-definedness forces
// p^{n-m} | b when n > m and p^{m-n} | c when m > n.
struct Automorphism {
  long p;
  int n, m;
  long a, b, c, d;

  Automorphism(const AbelianPGroup& g, long a_, long b_, long c_, long d_)
      : p(g.p), n(g.n), m(g.m) {
    long pn = pow_long(p, n), pm = pow_long(p, m);
    a = mod(a_, pn);
    b = mod(b_, pn);
    c = mod(c_, pm);
    d = mod(d_, pm);
    if (n > m && b % pow_long(p, n - m) != 0)
      throw GroupError("bad-automorphism", "p^{n-m} must divide b");
    if (m > n && c % pow_long(p, m - n) != 0)
      throw GroupError("bad-automorphism", "p^{m-n} must divide c");
    // invertibility mod p; a degenerate coordinate contributes identity
    long da = n == 0 ? 1 : a % p;
    long dd = m == 0 ? 1 : d % p;
    long db = (n == 0 || m == 0) ? 0 : b % p;
    long dc = (n == 0 || m == 0) ? 0 : c % p;
    if ((da * dd - db * dc) % p == 0)
      throw GroupError("bad-automorphism", "determinant divisible by p");
  }

  static long mod(long v, long md) {
    v %= md;
    return v < 0 ? v + md : v;
  }

  AbelianPGroup group() const { return AbelianPGroup(p, n, m); }
  long pn() const { return pow_long(p, n); }
  long pm() const { return pow_long(p, m); }

  PElem apply(PElem v) const {
    return group().reduce(a * v.x + b * v.y, c * v.x + d * v.y);
  }

  bool is_identity() const {
    return a == 1 % pn() && b == 0 && c == 0 && d == 1 % pm();
  }

  // this ∘ g
  Automorphism compose(const Automorphism& g) const {
    long pn_ = pn(), pm_ = pm();
    long aa = mod(a * g.a + b * g.c, pn_);
    long bb = mod(a * g.b + b * g.d, pn_);
    long cc = mod(c * (g.a % pm_) + d * g.c, pm_);
    long dd = mod(c * (g.b % pm_) + d * g.d, pm_);
    return Automorphism(group(), aa, bb, cc, dd);
  }

  long order() const {
    Automorphism v = *this;
    long o = 1;
    while (!v.is_identity()) {
      v = v.compose(*this);
      ++o;
    }
    return o;
  }

  Automorphism inverse() const {
    Automorphism v = *this;
    Automorphism r = identity(group());
    long o = order();
    for (long i = 0; i + 1 < o; ++i) r = r.compose(*this);
    return r;
  }

  static Automorphism identity(const AbelianPGroup& g) {
    return Automorphism(g, 1, 0, 0, 1);
  }

  friend bool operator==(const Automorphism& f, const Automorphism& g) {
    return f.a == g.a && f.b == g.b && f.c == g.c && f.d == g.d;
  }
  friend auto operator<=>(const Automorphism& f, const Automorphism& g) {
    return std::tie(f.a, f.b, f.c, f.d) <=> std::tie(g.a, g.b, g.c, g.d);
  }
};

// Subgroup of Aut(D) given by generators, with cached element closure.
struct ActionGroup {
  AbelianPGroup grp;
  std::vector<Automorphism> generators;
  std::vector<Automorphism> elements;

  ActionGroup(const AbelianPGroup& g, std::vector<Automorphism> gens)
      : grp(g), generators(std::move(gens)) {
    std::set<Automorphism> seen;
    std::vector<Automorphism> frontier{Automorphism::identity(g)};
    seen.insert(frontier[0]);
    while (!frontier.empty()) {
      std::vector<Automorphism> next;
      for (const auto& f : frontier)
        for (const auto& s : generators) {
          Automorphism t = s.compose(f);
          if (seen.insert(t).second) next.push_back(t);
        }
      frontier = std::move(next);
    }
    elements.assign(seen.begin(), seen.end());
  }

  long order() const { return static_cast<long>(elements.size()); }

  bool is_abelian() const {
    for (const auto& f : elements)
      for (const auto& g : elements)
        if (!(f.compose(g) == g.compose(f))) return false;
    return true;
  }

  bool is_p_prime() const {
    for (const auto& f : elements)
      if (f.order() % grp.p == 0) return false;
    return true;
  }

  long exponent() const {
    long e = 1;
    for (const auto& f : elements) e = std::lcm(e, f.order());
    return e;
  }

  bool is_cyclic() const {
    for (const auto& f : elements)
      if (f.order() == order()) return true;
    return order() == 1;
  }
};

// ---------------------------------------------------------------------------
// Subgroups of D

struct PSubgroup {
  std::vector<PElem> gens;
  std::vector<PElem> elems;  // sorted; canonical key

  bool contains(PElem v) const {
    return std::binary_search(elems.begin(), elems.end(), v);
  }
  long order() const { return static_cast<long>(elems.size()); }
  friend bool operator==(const PSubgroup& a, const PSubgroup& b) {
    return a.elems == b.elems;
  }
  friend bool operator<(const PSubgroup& a, const PSubgroup& b) {
    return a.elems < b.elems;
  }
};

inline PSubgroup span(const AbelianPGroup& g, std::vector<PElem> gens) {
  std::set<PElem> seen{{0, 0}};
  std::vector<PElem> frontier{{0, 0}};
  while (!frontier.empty()) {
    std::vector<PElem> next;
    for (PElem v : frontier)
      for (PElem s : gens) {
        PElem t = g.add(v, s);
        if (seen.insert(t).second) next.push_back(t);
      }
    frontier = std::move(next);
  }
  PSubgroup h;
  h.gens = std::move(gens);
  h.elems.assign(seen.begin(), seen.end());
  return h;
}

// Minimal generating data (g1, g2) with <g1> ⊕ <g2> = H and
// ord(g1) >= ord(g2); g2 may be absent for cyclic H.
inline std::vector<PElem> subgroup_basis(const AbelianPGroup& g,
                                         const PSubgroup& h) {
  if (h.order() == 1) return {};
  PElem g1{0, 0};
  long o1 = 1;
  for (PElem v : h.elems) {
    long o = g.elem_order(v);
    if (o > o1 || (o == o1 && v < g1)) {
      o1 = o;
      g1 = v;
    }
  }
  if (o1 == h.order()) return {g1};
  PSubgroup c1 = span(g, {g1});
  long need = h.order() / o1;
  PElem best{-1, -1};
  long bo = 0;
  for (PElem v : h.elems) {
    long o = g.elem_order(v);
    if (o != need) continue;
    // direct-sum condition: <g1> ∩ <v> = 1
    bool ok = true;
    PElem w = v;
    for (long k = 1; k < o && ok; ++k) {
      if (c1.contains(w) && !(w == PElem{0, 0})) ok = false;
      w = g.add(w, v);
    }
    if (ok && (bo == 0 || v < best)) {
      best = v;
      bo = o;
    }
  }
  if (bo == 0)
    throw GroupError("internal", "no direct complement generator found");
  return {g1, best};
}

// All subgroups of C_{p^n} x C_{p^m}, enumerated through Hermite forms of
// the intermediate lattices p^n Z x p^m Z <= L <= Z^2.
inline std::vector<PSubgroup> subgroup_lattice(const AbelianPGroup& g) {
  std::vector<PSubgroup> out;
  long pn = g.pn(), pm = g.pm();
  for (long a = 1; a <= pn; a *= g.p) {
    for (long d = 1; d <= pm; d *= g.p) {
      for (long b = 0; b < d; ++b) {
        if (((pn / a) * b) % d != 0) continue;
        std::vector<PElem> gens;
        gens.push_back(g.reduce(a, b));
        gens.push_back(g.reduce(0, d));
        out.push_back(span(g, std::move(gens)));
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline std::vector<Automorphism> centralizer_in_E(const ActionGroup& e,
                                                  const PSubgroup& q) {
  std::vector<Automorphism> out;
  for (const auto& f : e.elements) {
    bool fixes = true;
    for (PElem v : q.elems)
      if (!(f.apply(v) == v)) {
        fixes = false;
        break;
      }
    if (fixes) out.push_back(f);
  }
  return out;
}

inline std::vector<Automorphism> normalizer_in_E(const ActionGroup& e,
                                                 const PSubgroup& q) {
  std::vector<Automorphism> out;
  for (const auto& f : e.elements) {
    bool stable = true;
    for (PElem v : q.elems)
      if (!q.contains(f.apply(v))) {
        stable = false;
        break;
      }
    if (stable) out.push_back(f);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Frattini quotient

inline AbelianPGroup frattini_quotient(const AbelianPGroup& g) {
  if (g.rank() != 2)
    throw GroupError("rank-1-input", "Frattini quotient is not C_p x C_p");
  return AbelianPGroup(g.p, 1, 1);
}

inline Automorphism frattini_project(const AbelianPGroup& g,
                                     const Automorphism& f) {
  AbelianPGroup q = frattini_quotient(g);
  return Automorphism(q, f.a % g.p, f.b % g.p, f.c % g.p, f.d % g.p);
}

inline bool frattini_restriction_injective(const AbelianPGroup& g,
                                           const ActionGroup& f) {
  std::set<std::tuple<long, long, long, long>> images;
  for (const auto& e : f.elements) {
    Automorphism pe = frattini_project(g, e);
    if (!images.insert({pe.a, pe.b, pe.c, pe.d}).second) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Decomposition of a diagonal p'-action (rank-2 case)

struct Decomposition {
  std::vector<PElem> d1_gens, d2_gens;
  std::vector<Automorphism> f1_gens, f2_gens;
};

namespace detail {

struct ActionInstance {
  AbelianPGroup grp;
  std::vector<Automorphism> elems;  // closed under composition, index-stable
};

struct CoreResult {
  std::vector<PElem> d1, d2;      // generators, instance coordinates
  std::vector<int> f1, f2;        // index sets into instance elems
};

inline PSubgroup commutator_sub(const AbelianPGroup& g,
                                const std::vector<PElem>& h_elems,
                                const std::vector<Automorphism>& fs) {
  std::vector<PElem> gens;
  for (PElem v : h_elems)
    for (const auto& f : fs) {
      PElem w = g.add(f.apply(v), g.neg(v));
      if (!(w == PElem{0, 0})) gens.push_back(w);
    }
  return span(g, std::move(gens));
}

inline std::vector<PElem> fixed_points(const AbelianPGroup& g,
                                       const std::vector<PElem>& dom,
                                       const std::vector<Automorphism>& fs) {
  std::vector<PElem> out;
  for (PElem v : dom) {
    bool fixed = true;
    for (const auto& f : fs)
      if (!(f.apply(v) == v)) {
        fixed = false;
        break;
      }
    if (fixed) out.push_back(v);
  }
  return out;
}

CoreResult decompose_core(const ActionInstance& inst);

// Elementary abelian base case: search for a pair of stable lines of F_p^2
// whose pointwise fixers split F as a direct product.
inline CoreResult decompose_base(const ActionInstance& inst) {
  const AbelianPGroup& g = inst.grp;
  long p = g.p;
  std::vector<PElem> lines;
  for (long t = 0; t < p; ++t) lines.push_back({1, t});
  lines.push_back({0, 1});
  auto stable = [&](PElem l) {
    PSubgroup ls = span(g, {l});
    for (const auto& f : inst.elems)
      if (!ls.contains(f.apply(l))) return false;
    return true;
  };
  std::vector<PElem> stable_lines;
  for (PElem l : lines)
    if (stable(l)) stable_lines.push_back(l);

  for (PElem l1 : stable_lines)
    for (PElem l2 : stable_lines) {
      if (l1 == l2) continue;
      PSubgroup s1 = span(g, {l1}), s2 = span(g, {l2});
      // spanning pair
      if (span(g, {l1, l2}).order() != g.order()) continue;
      std::vector<int> f1, f2;
      for (std::size_t i = 0; i < inst.elems.size(); ++i) {
        const auto& f = inst.elems[i];
        bool fix2 = f.apply(l2) == l2;
        bool fix1 = f.apply(l1) == l1;
        if (fix2) f1.push_back(static_cast<int>(i));
        if (fix1) f2.push_back(static_cast<int>(i));
      }
      // F = F1 x F2: trivial intersection and full product
      std::set<int> both(f1.begin(), f1.end());
      int inter = 0;
      for (int i : f2)
        if (both.count(i)) ++inter;
      if (inter != 1) continue;  // only the identity
      if (static_cast<long>(f1.size()) * static_cast<long>(f2.size()) !=
          static_cast<long>(inst.elems.size()))
        continue;
      if (f1.size() != f2.size()) continue;
      return {{l1}, {l2}, f1, f2};
    }
  throw GroupError("no-stable-line-pair",
                   "action is not simultaneously diagonalizable");
}

inline CoreResult decompose_core(const ActionInstance& inst) {
  const AbelianPGroup& g = inst.grp;
  if (g.rank() != 2)
    throw GroupError("rank-1-input", "decomposition needs rank 2");
  if (g.n == 1 && g.m == 1) return decompose_base(inst);

  // Project to D/Phi(D) and decompose there.
  AbelianPGroup q = frattini_quotient(g);
  ActionInstance qinst{q, {}};
  std::set<std::tuple<long, long, long, long>> images;
  for (const auto& f : inst.elems) {
    Automorphism pf = frattini_project(g, f);
    qinst.elems.push_back(pf);
    if (!images.insert({pf.a, pf.b, pf.c, pf.d}).second)
      throw GroupError("internal", "Frattini projection not injective");
  }
  CoreResult base = decompose_base(qinst);

  std::vector<Automorphism> f1e, f2e;
  for (int i : base.f1) f1e.push_back(inst.elems[i]);
  for (int i : base.f2) f2e.push_back(inst.elems[i]);

  // Preimages of the stable lines: D_i = <lift of line gen, Phi(D)>.
  auto preimage = [&](const std::vector<PElem>& line) {
    std::vector<PElem> gens;
    for (PElem v : line) gens.push_back(g.reduce(v.x, v.y));
    gens.push_back(g.reduce(g.p, 0));
    gens.push_back(g.reduce(0, g.p));
    return span(g, std::move(gens));
  };
  PSubgroup d1 = preimage(base.d1);
  PSubgroup d2 = preimage(base.d2);
  std::vector<PElem> all = g.all_elements();
  std::vector<PElem> phi_elems = span(g, {{g.p, 0}, {0, g.p}}).elems;

  if (g.m == 1 || g.n == 1) {
    // Phi(D) cyclic.
    PSubgroup b1 = commutator_sub(g, d2.elems, f1e);
    if (b1.order() == 1) {
      PSubgroup nd1 = commutator_sub(g, d1.elems, f1e);
      PSubgroup nd2 = span(g, fixed_points(g, all, f1e));
      return {subgroup_basis(g, nd1), subgroup_basis(g, nd2), base.f1,
              base.f2};
    }
    if (fixed_points(g, phi_elems, f1e).size() == 1) {
      PSubgroup b2 = commutator_sub(g, d1.elems, f2e);
      if (b2.order() == 1) {
        PSubgroup nd1 = span(g, fixed_points(g, all, f2e));
        PSubgroup nd2 = commutator_sub(g, d2.elems, f2e);
        return {subgroup_basis(g, nd1), subgroup_basis(g, nd2), base.f1,
                base.f2};
      }
      throw GroupError("internal", "cyclic-Frattini branch exhausted");
    }
    throw GroupError("internal", "cyclic Frattini admits two factors");
  }

  // Phi(D) of rank 2: F acts faithfully on D1; recurse on D1.
  for (const auto& f : inst.elems) {
    if (f.is_identity()) continue;
    bool trivial = true;
    for (PElem v : d1.elems)
      if (!(f.apply(v) == v)) {
        trivial = false;
        break;
      }
    if (trivial) throw GroupError("internal", "F not faithful on D1");
  }
  std::vector<PElem> basis = subgroup_basis(g, d1);
  if (basis.size() != 2)
    throw GroupError("internal", "D1 unexpectedly cyclic");
  long o1 = g.elem_order(basis[0]), o2 = g.elem_order(basis[1]);
  int e1 = 0, e2 = 0;
  for (long v = o1; v > 1; v /= g.p) ++e1;
  for (long v = o2; v > 1; v /= g.p) ++e2;
  AbelianPGroup sub(g.p, e1, e2);
  // express the restricted automorphisms in the (basis[0], basis[1]) frame
  auto dlog = [&](PElem target) -> std::pair<long, long> {
    for (long u = 0; u < o1; ++u)
      for (long v = 0; v < o2; ++v) {
        PElem w = g.add(g.smul(u, basis[0]), g.smul(v, basis[1]));
        if (w == target) return {u, v};
      }
    throw GroupError("internal", "discrete log failed in D1");
  };
  ActionInstance subinst{sub, {}};
  for (const auto& f : inst.elems) {
    auto [a, c] = dlog(f.apply(basis[0]));
    auto [b, d] = dlog(f.apply(basis[1]));
    subinst.elems.push_back(Automorphism(sub, a, b, c, d));
  }
  CoreResult rec = decompose_core(subinst);
  std::vector<Automorphism> f11, f12;
  for (int i : rec.f1) f11.push_back(inst.elems[i]);
  for (int i : rec.f2) f12.push_back(inst.elems[i]);
  PSubgroup nd1 = commutator_sub(g, all, f11);
  PSubgroup nd2 = commutator_sub(g, all, f12);
  return {subgroup_basis(g, nd1), subgroup_basis(g, nd2), rec.f1, rec.f2};
}

}  // namespace detail

// Brute-force check of all Decomposition invariants.
inline bool validate_decomposition(const AbelianPGroup& g,
                                   const ActionGroup& f,
                                   const Decomposition& dec) {
  PSubgroup d1 = span(g, dec.d1_gens);
  PSubgroup d2 = span(g, dec.d2_gens);
  if (d1.order() * d2.order() != g.order()) return false;
  for (PElem v : d1.elems)
    if (d2.contains(v) && !(v == PElem{0, 0})) return false;
  ActionGroup f1(g, dec.f1_gens), f2(g, dec.f2_gens);
  if (f1.order() * f2.order() != f.order()) return false;
  if (f1.order() != f2.order()) return false;
  if (!f1.is_cyclic() || !f2.is_cyclic()) return false;
  if ((g.p - 1) % f1.order() != 0) return false;
  std::set<Automorphism> felems(f.elements.begin(), f.elements.end());
  for (const auto& a : f1.elements) {
    if (!felems.count(a)) return false;
    for (PElem v : d2.elems)
      if (!(a.apply(v) == v)) return false;
    if (!a.is_identity()) {
      bool moves = false;
      for (PElem v : d1.elems)
        if (!(a.apply(v) == v)) moves = true;
      if (!moves) return false;  // faithfulness on D1
    }
  }
  for (const auto& a : f2.elements) {
    if (!felems.count(a)) return false;
    for (PElem v : d1.elems)
      if (!(a.apply(v) == v)) return false;
    if (!a.is_identity()) {
      bool moves = false;
      for (PElem v : d2.elems)
        if (!(a.apply(v) == v)) moves = true;
      if (!moves) return false;
    }
  }
  // F1 x F2 = F: trivial intersection suffices with matching orders
  for (const auto& a : f1.elements)
    for (const auto& b : f2.elements)
      if (a == b && !a.is_identity()) return false;
  return true;
}

inline Decomposition decompose_action(const AbelianPGroup& g,
                                      const ActionGroup& f) {
  if (g.rank() != 2)
    throw GroupError("rank-1-input", "D must have rank 2");
  if (!f.is_abelian()) throw GroupError("F-not-abelian", "F must be abelian");
  if (!f.is_p_prime())
    throw GroupError("F-not-p-prime", "F order must be coprime to p");
  long e = f.exponent();
  if (e * e != f.order())
    throw GroupError("F-not-square",
                     "F is not a product of two isomorphic cyclic subgroups");
  detail::ActionInstance inst{g, f.elements};
  detail::CoreResult core = detail::decompose_core(inst);
  Decomposition dec;
  dec.d1_gens = core.d1;
  dec.d2_gens = core.d2;
  for (int i : core.f1)
    if (!inst.elems[i].is_identity()) dec.f1_gens.push_back(inst.elems[i]);
  for (int i : core.f2)
    if (!inst.elems[i].is_identity()) dec.f2_gens.push_back(inst.elems[i]);
  if (!validate_decomposition(g, f, dec))
    throw GroupError("internal", "decomposition failed validation");
  return dec;
}

}  // namespace iso
