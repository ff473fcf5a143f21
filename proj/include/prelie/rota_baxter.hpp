#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "prelie/structures.hpp"

namespace prelie {

// A family of linear operators (P_w) on an algebra, with
//   P_a(x) P_b(y) = P_ab( P_a(x) y + x P_b(y) + weight * x y ).
// `bracket` is empty unless the model also carries a Lie/Poisson
// bracket; the identity can then be checked for either operation.
template <class V>
struct RBFamilyModel {
  std::string name;
  Rational weight;
  std::function<V(const V&, const V&)> mul;
  std::function<V(const SemigroupElem&, const V&)> proj;
  std::function<V(const V&, const V&)> bracket;  // optional

  bool has_bracket() const { return static_cast<bool>(bracket); }
};

enum class RBOp { product, bracket };

template <class V>
struct RBSample {
  V a;
  SemigroupElem alpha;
  V b;
  SemigroupElem beta;
};

template <class V>
std::vector<Violation> check_rb_family(const RBFamilyModel<V>& m,
                                       const std::vector<RBSample<V>>& samples,
                                       RBOp which = RBOp::product) {
  const auto& op = which == RBOp::product ? m.mul : m.bracket;
  if (!op) throw error("model '" + m.name + "' has no bracket");
  std::vector<Violation> out;
  for (const auto& s : samples) {
    V pa = m.proj(s.alpha, s.a);
    V pb = m.proj(s.beta, s.b);
    V lhs = op(pa, pb);
    V inner = op(pa, s.b) + op(s.a, pb) + m.weight * op(s.a, s.b);
    V rhs = m.proj(s.alpha.op(s.beta), inner);
    if (!(lhs == rhs))
      out.push_back({"Rota-Baxter family identity fails on a=" + s.a.str() +
                     ", alpha=" + s.alpha.str() + ", b=" + s.b.str() +
                     ", beta=" + s.beta.str() + ": lhs=" + lhs.str() +
                     ", rhs=" + rhs.str()});
  }
  return out;
}

// Commutativity of the product, antisymmetry and Jacobi for the
// bracket, and the Leibniz rule {x, y z} = {x,y} z + y {x,z}.
template <class V>
std::vector<Violation> check_poisson(const RBFamilyModel<V>& m,
                                     const std::vector<std::vector<V>>& triples) {
  if (!m.has_bracket()) throw error("model '" + m.name + "' has no bracket");
  std::vector<Violation> out;
  for (const auto& t : triples) {
    const V& x = t.at(0);
    const V& y = t.at(1);
    const V& z = t.at(2);
    if (!(m.mul(x, y) == m.mul(y, x)))
      out.push_back({"product not commutative on x=" + x.str() + ", y=" + y.str()});
    if (!(m.bracket(x, y) == -m.bracket(y, x)))
      out.push_back({"bracket not antisymmetric on x=" + x.str() + ", y=" + y.str()});
    V jac = m.bracket(x, m.bracket(y, z)) + m.bracket(y, m.bracket(z, x)) +
            m.bracket(z, m.bracket(x, y));
    if (!jac.is_zero())
      out.push_back({"Jacobi fails on x=" + x.str() + ", y=" + y.str() +
                     ", z=" + z.str()});
    V leib_lhs = m.bracket(x, m.mul(y, z));
    V leib_rhs = m.mul(m.bracket(x, y), z) + m.mul(y, m.bracket(x, z));
    if (!(leib_lhs == leib_rhs))
      out.push_back({"Leibniz fails on x=" + x.str() + ", y=" + y.str() +
                     ", z=" + z.str()});
  }
  return out;
}

enum class DendriformSplit { A, B };

// Weight-lambda splittings of the product behind (P_w); the two coincide
// when the weight vanishes:
//   A:  x <_w y = x P_w(y) + lambda x y,   x >_w y = P_w(x) y
//   B:  x <_w y = x P_w(y),                x >_w y = P_w(x) y + lambda x y
template <class V>
DendriformFamilyModel<V> dendriform_from_rb(const RBFamilyModel<V>& m,
                                            DendriformSplit variant) {
  Rational lambda = m.weight;
  auto mul = m.mul;
  auto proj = m.proj;
  if (variant == DendriformSplit::A) {
    return {m.name + ":dendriform-A",
            [mul, proj, lambda](const SemigroupElem& w, const V& x, const V& y) {
              return mul(x, proj(w, y)) + lambda * mul(x, y);
            },
            [mul, proj](const SemigroupElem& w, const V& x, const V& y) {
              return mul(proj(w, x), y);
            }};
  }
  return {m.name + ":dendriform-B",
          [mul, proj](const SemigroupElem& w, const V& x, const V& y) {
            return mul(x, proj(w, y));
          },
          [mul, proj, lambda](const SemigroupElem& w, const V& x, const V& y) {
            return mul(proj(w, x), y) + lambda * mul(x, y);
          }};
}

//   x >_w y := {P_w(x), y}   (weight 0, bracket required)
template <class V>
PreLieFamilyModel<V> prelie_from_rb_lie(const RBFamilyModel<V>& m) {
  if (!m.weight.is_zero())
    throw nonzero_weight("model '" + m.name + "' has weight " + m.weight.str());
  if (!m.has_bracket()) throw error("model '" + m.name + "' has no bracket");
  auto bracket = m.bracket;
  auto proj = m.proj;
  return {m.name + ":prelie",
          [bracket, proj](const SemigroupElem& w, const V& x, const V& y) {
            return bracket(proj(w, x), y);
          }};
}

//   x *_w y := P_w(x) y   (weight 0, commutative product)
template <class V>
ZinbielFamilyModel<V> zinbiel_from_rb_comm(const RBFamilyModel<V>& m) {
  if (!m.weight.is_zero())
    throw nonzero_weight("model '" + m.name + "' has weight " + m.weight.str());
  auto mul = m.mul;
  auto proj = m.proj;
  return {m.name + ":zinbiel",
          [mul, proj](const SemigroupElem& w, const V& x, const V& y) {
            return mul(proj(w, x), y);
          }};
}

template <class V>
PrePoissonFamilyModel<V> prepoisson_from_rb_poisson(const RBFamilyModel<V>& m) {
  return {zinbiel_from_rb_comm(m), prelie_from_rb_lie(m)};
}

// --- Laurent window model -------------------------------------------------

struct LaurentBasis {
  std::int64_t k;
};
inline std::string canonical_key(const LaurentBasis& b) {
  return "z" + encode_int64(b.k);
}
inline std::string render(const LaurentBasis& b) {
  return "z^" + std::to_string(b.k);
}

using LaurentVec = LinComb<LaurentBasis>;

// Laurent polynomials truncated to exponents in [kmin, kmax]. The
// operator family (indexed by the additive integers) projects onto the
// span of z^k with k < w; it makes the algebra Rota-Baxter of weight -1.
// Products leaving the window throw window_overflow.
class LaurentAlgebra {
 public:
  LaurentAlgebra(std::int64_t kmin, std::int64_t kmax);

  LaurentVec monomial(std::int64_t k, Rational c = Rational(1)) const;
  LaurentVec mul(const LaurentVec& a, const LaurentVec& b) const;
  LaurentVec proj(const SemigroupElem& w, const LaurentVec& x) const;

  RBFamilyModel<LaurentVec> rb_model() const;

  std::int64_t kmin() const { return kmin_; }
  std::int64_t kmax() const { return kmax_; }

 private:
  void require_windowed(std::int64_t k) const;
  std::int64_t kmin_, kmax_;
};

// Text form: rational multiples of z^k joined by +/-, e.g.
// "3/2*z^-1 + z^2"; a bare rational means a multiple of z^0.
LaurentVec parse_laurent(std::string_view text, const LaurentAlgebra& alg);

// --- dual-number models (weight 0) ----------------------------------------

// A character Q-valued on the built-in semigroups, used to make the
// weight-0 operator families genuinely index-sensitive: 2^k on int,
// 2^(lifted residue) on zmod, 2^(total degree) on freecm, 1 on trivial.
Rational character(const SemigroupElem& w);

// p^i q^j, optionally times the dual unit (eps^2 = 0).
struct PolyBasis {
  unsigned px, qx;
  bool eps;
};
std::string canonical_key(const PolyBasis& b);
std::string render(const PolyBasis& b);

using PolyVec = LinComb<PolyBasis>;

// Polynomials in p, q with dual-number coefficients, canonical Poisson
// bracket {f, g} = f_p g_q - f_q g_p extended eps-bilinearly, and
// P_w(x) = eps * character(w) * (eps-free part of x). Every P-image is
// an eps multiple, so the weight-0 family identity holds for both the
// product and the bracket.
class DualPoissonAlgebra {
 public:
  explicit DualPoissonAlgebra(unsigned max_degree = 16);

  PolyVec monomial(unsigned px, unsigned qx, bool eps = false,
                   Rational c = Rational(1)) const;
  PolyVec mul(const PolyVec& a, const PolyVec& b) const;
  PolyVec bracket(const PolyVec& a, const PolyVec& b) const;
  PolyVec proj(const SemigroupElem& w, const PolyVec& x) const;

  RBFamilyModel<PolyVec> rb_model() const;

  unsigned max_degree() const { return max_degree_; }

 private:
  unsigned max_degree_;
};

// Text form: polynomial in p, q with an optional "+ eps*(...)" part.
PolyVec parse_dual_poly(std::string_view text, const DualPoissonAlgebra& alg);
std::string format_dual_poly(const PolyVec& v);

// 2x2 matrix units with dual-number entries and commutator bracket;
// the noncommutative weight-0 companion of the Poisson model.
struct MatBasis {
  unsigned row, col;  // 1-based
  bool eps;
};
std::string canonical_key(const MatBasis& b);
std::string render(const MatBasis& b);

using MatVec = LinComb<MatBasis>;

class DualMatrixAlgebra {
 public:
  MatVec unit(unsigned row, unsigned col, bool eps = false,
              Rational c = Rational(1)) const;
  MatVec mul(const MatVec& a, const MatVec& b) const;
  MatVec bracket(const MatVec& a, const MatVec& b) const;  // commutator
  MatVec proj(const SemigroupElem& w, const MatVec& x) const;

  RBFamilyModel<MatVec> rb_model() const;
};

}  // namespace prelie
