#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "prelie/lincomb.hpp"
#include "prelie/semigroup.hpp"

namespace prelie {

// Unordered rooted tree with token-decorated vertices and semigroup-typed
// edges, kept in canonical form: children sorted ascending by
// (subtree canonical key, edge type encoding), duplicates allowed.
// Immutable; copies share structure.
class TypedTree {
 public:
  using Branch = std::pair<SemigroupElem, TypedTree>;

  // Canonicalizes: accepts children in any presentation order.
  TypedTree(std::string decoration, std::vector<Branch> children);
  static TypedTree leaf(std::string decoration) {
    return TypedTree(std::move(decoration), {});
  }

  const std::string& dec() const { return n_->dec; }
  std::size_t arity() const { return n_->kids.size(); }
  const SemigroupElem& branch_type(std::size_t i) const {
    return n_->kids[i].first;
  }
  TypedTree branch(std::size_t i) const { return TypedTree(n_->kids[i].second); }
  std::vector<Branch> branches() const;

  std::size_t size() const { return n_->size; }  // vertex count
  const std::string& key() const { return n_->key; }
  std::string str() const;

  friend bool operator==(const TypedTree& a, const TypedTree& b) {
    return a.key() == b.key();
  }
  friend bool operator<(const TypedTree& a, const TypedTree& b) {
    return a.key() < b.key();
  }

 private:
  struct Node {
    std::string dec;
    std::vector<std::pair<SemigroupElem, std::shared_ptr<const Node>>> kids;
    std::string key;
    std::size_t size;
  };
  explicit TypedTree(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  std::shared_ptr<const Node> n_;
};

inline const std::string& canonical_key(const TypedTree& t) { return t.key(); }
inline std::string render(const TypedTree& t) { return t.str(); }

using TreeSum = LinComb<TypedTree>;

// Address of a vertex: child indices into the canonical ordering,
// starting from the root (empty path).
using VertexPath = std::vector<std::size_t>;

// Preorder: root first, then each subtree in canonical child order.
std::vector<VertexPath> vertex_paths(const TypedTree& t);
TypedTree subtree_at(const TypedTree& t, const VertexPath& at);

// Grafts `scion` below the vertex of `target` addressed by `at`, through a
// new edge of the given type; every edge on the path from that vertex to
// the root has its type multiplied by the same element.
TypedTree graft_at(const TypedTree& scion, const SemigroupElem& type,
                   const TypedTree& target, const VertexPath& at);

// Sum of graft_at over all vertices of the target.
TreeSum prelie_product(const TypedTree& s, const SemigroupElem& type,
                       const TypedTree& t);
TreeSum prelie_product(const TreeSum& s, const SemigroupElem& type,
                       const TreeSum& t);

// Grafts the given branches onto a fresh root; no branches gives the
// single vertex.
TypedTree bplus(std::string decoration, std::vector<TypedTree::Branch> branches);
// Inverse: (decoration, branches in canonical order).
std::pair<std::string, std::vector<TypedTree::Branch>> decompose_root(
    const TypedTree& t);

// Every canonical tree with n vertices, decorations drawn from
// `alphabet` and edge types from the (finite) semigroup; sorted by
// canonical key. Throws not_finite.
std::vector<TypedTree> enumerate_trees(std::size_t n,
                                       const std::vector<std::string>& alphabet,
                                       const Semigroup& sg);

// |enumerate_trees(n, ...)| for |alphabet| = d and |sg| = q; closed
// forms for n <= 3, generating-series recurrence beyond.
mpz_class count_trees(std::size_t n, std::size_t d, std::size_t q);

// Basis element of the tensor carrier: a tree together with a
// semigroup tag.
struct TensorElem {
  TypedTree tree;
  SemigroupElem tag;
};
inline std::string canonical_key(const TensorElem& e) {
  return e.tree.key() + "#" + e.tag.enc();
}
inline std::string render(const TensorElem& e) {
  return e.tree.str() + " @ " + e.tag.str();
}

using TensorSum = LinComb<TensorElem>;

// (S @ a) x (T @ b) -> (S >_a T) @ ab, extended bilinearly.
TensorSum tensor_prelie(const TensorElem& a, const TensorElem& b);
TensorSum tensor_prelie(const TensorSum& a, const TensorSum& b);

// Working representation with presentation-order children; grafting
// appends, so vertex paths of the target stay valid across grafts.
// Used by the grafting-law suites and as an independent oracle.
struct RawTree {
  std::string dec;
  std::vector<std::pair<SemigroupElem, RawTree>> kids;

  static RawTree of(const TypedTree& t);
  TypedTree canonical() const;
  std::size_t size() const;
};

std::vector<VertexPath> raw_vertex_paths(const RawTree& t);
RawTree raw_graft_at(const RawTree& scion, const SemigroupElem& type,
                     RawTree target, const VertexPath& at);

// Text grammar: tree := label | label "(" edge { "," edge } ")",
// edge := type ":" tree; whitespace insignificant.
TypedTree parse_tree(std::string_view text, const Semigroup& sg);

}  // namespace prelie
