#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "prelie/trees.hpp"

namespace prelie {

// Labeled trees reuse TypedTree with decorations acting as labels;
// operations below require every label to occur exactly once.

bool labels_distinct(const TypedTree& t);
std::vector<std::string> label_set(const TypedTree& t);  // sorted

using OpSum = LinComb<TypedTree>;

// Replaces the vertex labeled `at` in `outer` by `inner`, summed over
// all reattachment choices of the incoming edges: each incoming edge
// lands on some vertex of `inner`, keeping its own type and multiplying
// the types of the inner edges below its landing point.
OpSum partial_compose(const TypedTree& outer, const std::string& at,
                      const TypedTree& inner);
OpSum partial_compose(const OpSum& outer, const std::string& at,
                      const OpSum& inner);

namespace detail {
// Skips the distinctness/disjointness validation; callers guarantee it.
OpSum partial_compose_unchecked(const TypedTree& outer, const std::string& at,
                                const TypedTree& inner);
}  // namespace detail

// The single-vertex tree; composing with it on either side is the identity.
TypedTree operad_unit(const std::string& label);
// Both unit laws at the given vertex of mu.
bool check_unit(const TypedTree& mu, const std::string& at);

// Renames labels through a bijection covering every label of the tree.
TypedTree relabel(const TypedTree& t,
                  const std::map<std::string, std::string>& bijection);
OpSum relabel(const OpSum& u, const std::map<std::string, std::string>& bijection);

// The binary generator "`action` acts on `base`": root labeled `base`
// with one child labeled `action` through an edge of the given type.
TypedTree generator_tree(const SemigroupElem& type, const std::string& action,
                         const std::string& base);

// Formal expression over generators combined by labeled partial
// compositions; evaluated bottom-up in the tree operad.
class Composite {
 public:
  static Composite gen(SemigroupElem type, std::string action, std::string base);
  static Composite compose(std::string at, Composite lhs, Composite rhs);

  OpSum eval() const;
  std::string str() const;

 private:
  struct Node;
  explicit Composite(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  std::shared_ptr<const Node> n_;
};

// Text form: gen(<w>,<a>,<b>) | compose(<v>, <expr>, <expr>).
Composite parse_composite(std::string_view text, const Semigroup& sg);

// Image in the tree operad of the defining pre-Lie family relation on
// labels {1,2,b} (with the standard identification of the two
// three-label sets); must vanish for every pair of types.
OpSum relation_image(const SemigroupElem& alpha, const SemigroupElem& beta);

// Rank over Q of the span of all two- or three-label composites of
// generators, to compare with the full dimension n^(n-1) |Omega|^(n-1).
int span_rank(std::size_t n, const Semigroup& sg);

// Every typed rooted tree whose vertex set is exactly the given label
// set, for a finite semigroup; sorted by canonical key.
std::vector<TypedTree> enumerate_labeled_trees(
    const std::vector<std::string>& labels, const Semigroup& sg);

// (gen(w,a,b) o_a S) o_b T with fresh intermediate labels; agrees with
// prelie_product when all decorations are pairwise distinct.
TreeSum prelie_via_operad(const TypedTree& s, const SemigroupElem& w,
                          const TypedTree& t);

}  // namespace prelie
