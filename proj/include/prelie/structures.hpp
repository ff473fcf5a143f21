#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "prelie/errors.hpp"
#include "prelie/trees.hpp"

namespace prelie {

// Family-algebra models are immutable descriptors over some carrier V
// (a LinComb instantiation): a name for reports plus the family
// products as pure closures, bilinear in the carrier arguments.

template <class V>
struct PreLieFamilyModel {
  std::string name;
  std::function<V(const SemigroupElem&, const V&, const V&)> rhd;
};

template <class V>
struct DendriformFamilyModel {
  std::string name;
  std::function<V(const SemigroupElem&, const V&, const V&)> prec;
  std::function<V(const SemigroupElem&, const V&, const V&)> succ;
};

template <class V>
struct ZinbielFamilyModel {
  std::string name;
  std::function<V(const SemigroupElem&, const V&, const V&)> star;
};

template <class V>
struct PrePoissonFamilyModel {
  ZinbielFamilyModel<V> zinbiel;
  PreLieFamilyModel<V> prelie;
};

struct Violation {
  std::string context;
};

template <class V>
struct FamilyTriple {
  V x;
  SemigroupElem alpha;
  V y;
  SemigroupElem beta;
  V z;
};

namespace detail {

template <class V>
std::string triple_str(const FamilyTriple<V>& t) {
  return "x=" + t.x.str() + ", alpha=" + t.alpha.str() + ", y=" + t.y.str() +
         ", beta=" + t.beta.str() + ", z=" + t.z.str();
}

template <class V>
void report_if(std::vector<Violation>& out, const char* law, const V& lhs,
               const V& rhs, const FamilyTriple<V>& t) {
  if (lhs == rhs) return;
  out.push_back({std::string(law) + " fails on " + triple_str(t) +
                 ": lhs=" + lhs.str() + ", rhs=" + rhs.str()});
}

}  // namespace detail

//   x >_a (y >_b z) - (x >_a y) >_ab z = y >_b (x >_a z) - (y >_b x) >_ba z
template <class V>
std::vector<Violation> check_prelie_family(
    const PreLieFamilyModel<V>& m, const std::vector<FamilyTriple<V>>& triples) {
  std::vector<Violation> out;
  for (const auto& t : triples) {
    SemigroupElem ab = t.alpha.op(t.beta);
    SemigroupElem ba = t.beta.op(t.alpha);
    V lhs = m.rhd(t.alpha, t.x, m.rhd(t.beta, t.y, t.z)) -
            m.rhd(ab, m.rhd(t.alpha, t.x, t.y), t.z);
    V rhs = m.rhd(t.beta, t.y, m.rhd(t.alpha, t.x, t.z)) -
            m.rhd(ba, m.rhd(t.beta, t.y, t.x), t.z);
    detail::report_if(out, "pre-Lie family identity", lhs, rhs, t);
  }
  return out;
}

//   (x <_a y) <_b z  = x <_ab (y <_b z + y >_a z)
//   (x >_a y) <_b z  = x >_a (y <_b z)
//   (x <_b y + x >_a y) >_ab z = x >_a (y >_b z)
template <class V>
std::vector<Violation> check_dendriform_family(
    const DendriformFamilyModel<V>& m,
    const std::vector<FamilyTriple<V>>& triples) {
  std::vector<Violation> out;
  for (const auto& t : triples) {
    SemigroupElem ab = t.alpha.op(t.beta);
    detail::report_if(
        out, "dendriform axiom (<,<)",
        m.prec(t.beta, m.prec(t.alpha, t.x, t.y), t.z),
        m.prec(ab, t.x, m.prec(t.beta, t.y, t.z) + m.succ(t.alpha, t.y, t.z)),
        t);
    detail::report_if(out, "dendriform axiom (>,<)",
                      m.prec(t.beta, m.succ(t.alpha, t.x, t.y), t.z),
                      m.succ(t.alpha, t.x, m.prec(t.beta, t.y, t.z)), t);
    detail::report_if(
        out, "dendriform axiom (>,>)",
        m.succ(ab, m.prec(t.beta, t.x, t.y) + m.succ(t.alpha, t.x, t.y), t.z),
        m.succ(t.alpha, t.x, m.succ(t.beta, t.y, t.z)), t);
  }
  return out;
}

//   x >_w y := x >-_w y - y -<_w x
template <class V>
PreLieFamilyModel<V> prelie_from_dendriform(const DendriformFamilyModel<V>& m) {
  return {m.name + ":prelie",
          [m](const SemigroupElem& w, const V& x, const V& y) {
            return m.succ(w, x, y) - m.prec(w, y, x);
          }};
}

//   x *_a (y *_b z) = (x *_a y) *_ab z + (y *_b x) *_ab z
template <class V>
std::vector<Violation> check_zinbiel_family(
    const ZinbielFamilyModel<V>& m, const std::vector<FamilyTriple<V>>& triples) {
  std::vector<Violation> out;
  for (const auto& t : triples) {
    SemigroupElem ab = t.alpha.op(t.beta);
    V lhs = m.star(t.alpha, t.x, m.star(t.beta, t.y, t.z));
    V rhs = m.star(ab, m.star(t.alpha, t.x, t.y), t.z) +
            m.star(ab, m.star(t.beta, t.y, t.x), t.z);
    detail::report_if(out, "zinbiel family identity", lhs, rhs, t);
  }
  return out;
}

//   (x >_a y - y >_b x) *_ab z = x >_a (y *_b z) - y *_b (x >_a z)
//   (x *_a y + y *_b x) >_ab z = x *_a (y >_b z) + y *_b (x >_a z)
// plus the component zinbiel and pre-Lie axioms on the same triples.
template <class V>
std::vector<Violation> check_prepoisson_family(
    const PrePoissonFamilyModel<V>& m,
    const std::vector<FamilyTriple<V>>& triples) {
  std::vector<Violation> out = check_zinbiel_family(m.zinbiel, triples);
  for (auto& v : check_prelie_family(m.prelie, triples))
    out.push_back(std::move(v));
  const auto& star = m.zinbiel.star;
  const auto& rhd = m.prelie.rhd;
  for (const auto& t : triples) {
    SemigroupElem ab = t.alpha.op(t.beta);
    detail::report_if(
        out, "pre-Poisson compatibility (*,>)",
        star(ab, rhd(t.alpha, t.x, t.y) - rhd(t.beta, t.y, t.x), t.z),
        rhd(t.alpha, t.x, star(t.beta, t.y, t.z)) -
            star(t.beta, t.y, rhd(t.alpha, t.x, t.z)),
        t);
    detail::report_if(
        out, "pre-Poisson compatibility (>,*)",
        rhd(ab, star(t.alpha, t.x, t.y) + star(t.beta, t.y, t.x), t.z),
        star(t.alpha, t.x, rhd(t.beta, t.y, t.z)) +
            star(t.beta, t.y, rhd(t.alpha, t.x, t.z)),
        t);
  }
  return out;
}

// Hypothesis: x >-_w y = y -<_w x on every supplied sample; then the
// common value is the zinbiel product. Throws not_commutative.
template <class V>
ZinbielFamilyModel<V> zinbiel_from_comm_dendriform(
    const DendriformFamilyModel<V>& m,
    const std::vector<FamilyTriple<V>>& hypothesis_samples) {
  for (const auto& t : hypothesis_samples) {
    if (!(m.succ(t.alpha, t.x, t.y) == m.prec(t.alpha, t.y, t.x)))
      throw not_commutative("dendriform model '" + m.name +
                            "' is not commutative on x=" + t.x.str() +
                            ", w=" + t.alpha.str() + ", y=" + t.y.str());
  }
  return {m.name + ":zinbiel",
          [m](const SemigroupElem& w, const V& x, const V& y) {
            return m.succ(w, x, y);
          }};
}

// One factor of a multilinear grafting word.
template <class V>
using Factor = std::pair<V, SemigroupElem>;

template <class V>
struct GraftWord {
  std::vector<Factor<V>> factors;  // multiset; empty word acts as identity
  V target;
};

namespace detail {

// Word slots from `from` on are live; corrections mutate one slot in
// place and restore it, so no factor list is ever copied.
template <class V>
V multi_product_impl(const PreLieFamilyModel<V>& m, std::vector<Factor<V>>& f,
                     std::size_t from, const V& target) {
  if (from == f.size()) return target;
  const Factor<V>& head = f[from];
  V out = m.rhd(head.second, head.first,
                multi_product_impl(m, f, from + 1, target));
  for (std::size_t j = from + 1; j < f.size(); ++j) {
    Factor<V> saved = std::move(f[j]);
    f[j] = {m.rhd(head.second, head.first, saved.first),
            head.second.op(saved.second)};
    out -= multi_product_impl(m, f, from + 1, target);
    f[j] = std::move(saved);
  }
  return out;
}

}  // namespace detail

// Recursive multilinear product: the empty word returns the target;
// otherwise peel the first factor (x1, w1) and return
//   x1 >_w1 (rest > y) - sum_j (rest with slot j replaced by
//                              (x1 >_w1 xj, w1*wj)) > y.
template <class V>
V multi_product(const PreLieFamilyModel<V>& m, std::vector<Factor<V>> factors,
                const V& target) {
  return detail::multi_product_impl(m, factors, 0, target);
}

template <class V>
V multi_product(const PreLieFamilyModel<V>& m, const GraftWord<V>& w) {
  return multi_product(m, w.factors, w.target);
}

// True iff the word's value is unchanged by the given permutation of
// factor slots.
template <class V>
bool check_multi_symmetry(const PreLieFamilyModel<V>& m, const GraftWord<V>& w,
                          const std::vector<std::size_t>& permutation) {
  std::vector<Factor<V>> permuted;
  permuted.reserve(w.factors.size());
  for (std::size_t i : permutation) permuted.push_back(w.factors.at(i));
  return multi_product(m, w.factors, w.target) ==
         multi_product(m, permuted, w.target);
}

// The unique structure morphism from trees into the model determined
// by a value for each decoration: a single vertex maps to its assigned
// value, and a composite tree maps to the multilinear product of the
// images of its branches onto the image of its root.
template <class V>
V universal_morphism(const PreLieFamilyModel<V>& m,
                     const std::map<std::string, V>& psi, const TypedTree& t) {
  auto it = psi.find(t.dec());
  if (it == psi.end())
    throw unknown_label("no assignment for decoration '" + t.dec() + "'");
  if (t.arity() == 0) return it->second;
  std::vector<Factor<V>> factors;
  factors.reserve(t.arity());
  for (std::size_t i = 0; i < t.arity(); ++i)
    factors.emplace_back(universal_morphism(m, psi, t.branch(i)),
                         t.branch_type(i));
  return multi_product(m, std::move(factors), it->second);
}

template <class V>
V universal_morphism(const PreLieFamilyModel<V>& m,
                     const std::map<std::string, V>& psi, const TreeSum& u) {
  V acc;
  for (const auto& [key, term] : u.terms())
    acc.add_scaled(universal_morphism(m, psi, term.first), term.second);
  return acc;
}

// phi(S >_w T) == phi(S) >_w phi(T) in the model.
template <class V>
bool check_morphism_property(const PreLieFamilyModel<V>& m,
                             const std::map<std::string, V>& psi,
                             const TypedTree& s, const SemigroupElem& w,
                             const TypedTree& t) {
  V lhs = universal_morphism(m, psi, prelie_product(s, w, t));
  V rhs = m.rhd(w, universal_morphism(m, psi, s), universal_morphism(m, psi, t));
  return lhs == rhs;
}

// The tree carrier with grafting is itself a model; the universal
// morphism out of it with the vertex embedding is the identity.
inline PreLieFamilyModel<TreeSum> free_tree_model() {
  return {"trees", [](const SemigroupElem& w, const TreeSum& x, const TreeSum& y) {
            return prelie_product(x, w, y);
          }};
}

// Tagged-tree carrier: (S @ a) >_w (T @ b) = (S >_w T) @ ab. The family
// identity reduces to the one on trees, with tags multiplying along.
inline PreLieFamilyModel<TensorSum> tensor_tree_model() {
  return {"tensor",
          [](const SemigroupElem& w, const TensorSum& x, const TensorSum& y) {
            return bilinear_extend<TensorElem>(
                [&w](const TensorElem& a, const TensorElem& b) {
                  TreeSum grafted = prelie_product(a.tree, w, b.tree);
                  SemigroupElem tag = a.tag.op(b.tag);
                  TensorSum out;
                  for (const auto& [key, term] : grafted.terms())
                    out.add_term(TensorElem{term.first, tag}, term.second);
                  return out;
                })(x, y);
          }};
}

}  // namespace prelie
