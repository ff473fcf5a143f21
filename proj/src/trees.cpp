#include "prelie/trees.hpp"

#include <algorithm>
#include <cctype>

#include "prelie/errors.hpp"

namespace prelie {

namespace {

bool valid_label(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

}  // namespace

TypedTree::TypedTree(std::string decoration, std::vector<Branch> children) {
  if (!valid_label(decoration))
    throw error("invalid decoration token '" + decoration + "'");
  std::sort(children.begin(), children.end(),
            [](const Branch& a, const Branch& b) {
              if (a.second.key() != b.second.key())
                return a.second.key() < b.second.key();
              return a.first.enc() < b.first.enc();
            });
  auto node = std::make_shared<Node>();
  node->size = 1;
  std::size_t cap = decoration.size() + 2;
  for (const auto& [type, sub] : children)
    cap += sub.key().size() + type.enc().size() + 2;
  node->key.reserve(cap);
  node->key = decoration;
  if (!children.empty()) {
    node->kids.reserve(children.size());
    node->key += '(';
    for (auto& [type, sub] : children) {
      node->size += sub.size();
      node->key += sub.key();
      node->key += '|';
      node->key += type.enc();
      node->key += ';';
      node->kids.emplace_back(std::move(type), std::move(sub.n_));
    }
    node->key += ')';
  }
  node->dec = std::move(decoration);
  n_ = std::move(node);
}

std::vector<TypedTree::Branch> TypedTree::branches() const {
  std::vector<Branch> out;
  out.reserve(n_->kids.size());
  for (const auto& [type, sub] : n_->kids)
    out.emplace_back(type, TypedTree(sub));
  return out;
}

std::string TypedTree::str() const {
  std::string out = dec();
  if (arity() == 0) return out;
  out += '(';
  for (std::size_t i = 0; i < arity(); ++i) {
    if (i) out += ',';
    out += branch_type(i).str();
    out += ':';
    out += branch(i).str();
  }
  out += ')';
  return out;
}

namespace {

void collect_paths(const TypedTree& t, VertexPath& prefix,
                   std::vector<VertexPath>& out) {
  out.push_back(prefix);
  for (std::size_t i = 0; i < t.arity(); ++i) {
    prefix.push_back(i);
    collect_paths(t.branch(i), prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<VertexPath> vertex_paths(const TypedTree& t) {
  std::vector<VertexPath> out;
  out.reserve(t.size());
  VertexPath prefix;
  collect_paths(t, prefix, out);
  return out;
}

TypedTree subtree_at(const TypedTree& t, const VertexPath& at) {
  TypedTree cur = t;
  for (std::size_t i : at) {
    if (i >= cur.arity()) throw invalid_path("vertex path leaves the tree");
    cur = cur.branch(i);
  }
  return cur;
}

namespace {

TypedTree graft_rec(const TypedTree& scion, const SemigroupElem& type,
                    const TypedTree& target, const VertexPath& at,
                    std::size_t depth) {
  auto kids = target.branches();
  if (depth == at.size()) {
    kids.emplace_back(type, scion);
    return TypedTree(target.dec(), std::move(kids));
  }
  std::size_t i = at[depth];
  if (i >= kids.size()) throw invalid_path("vertex path leaves the tree");
  // This edge lies between the grafting vertex and the root.
  TypedTree sub = graft_rec(scion, type, kids[i].second, at, depth + 1);
  kids[i] = {kids[i].first.op(type), std::move(sub)};
  return TypedTree(target.dec(), std::move(kids));
}

}  // namespace

TypedTree graft_at(const TypedTree& scion, const SemigroupElem& type,
                   const TypedTree& target, const VertexPath& at) {
  return graft_rec(scion, type, target, at, 0);
}

TreeSum prelie_product(const TypedTree& s, const SemigroupElem& type,
                       const TypedTree& t) {
  TreeSum out;
  for (const auto& at : vertex_paths(t))
    out.add_term(graft_at(s, type, t, at), Rational::one());
  return out;
}

TreeSum prelie_product(const TreeSum& s, const SemigroupElem& type,
                       const TreeSum& t) {
  return bilinear_extend<TypedTree>(
      [&type](const TypedTree& a, const TypedTree& b) {
        return prelie_product(a, type, b);
      })(s, t);
}

TypedTree bplus(std::string decoration,
                std::vector<TypedTree::Branch> branches) {
  return TypedTree(std::move(decoration), std::move(branches));
}

std::pair<std::string, std::vector<TypedTree::Branch>> decompose_root(
    const TypedTree& t) {
  return {t.dec(), t.branches()};
}

namespace {

struct TreeEnumerator {
  const std::vector<std::string>& alphabet;
  std::vector<SemigroupElem> elems;
  std::vector<std::vector<TypedTree>> by_size;  // [0] unused

  const std::vector<TypedTree>& trees_of_size(std::size_t n) {
    while (by_size.size() <= n) {
      std::size_t k = by_size.size();
      std::vector<TypedTree> out;
      if (k >= 1) {
        // All typed branches of size < k, in a fixed order.
        std::vector<TypedTree::Branch> pool;
        for (std::size_t s = 1; s < k; ++s)
          for (const auto& sub : trees_of_size(s))
            for (const auto& e : elems) pool.emplace_back(e, sub);
        std::vector<TypedTree::Branch> chosen;
        for (const auto& dec : alphabet)
          multisets(pool, 0, k - 1, chosen, dec, out);
      }
      std::sort(out.begin(), out.end());
      by_size.push_back(std::move(out));
    }
    return by_size[n];
  }

  // Non-decreasing index choices from the pool avoid duplicate multisets.
  void multisets(const std::vector<TypedTree::Branch>& pool, std::size_t from,
                 std::size_t remaining, std::vector<TypedTree::Branch>& chosen,
                 const std::string& dec, std::vector<TypedTree>& out) {
    if (remaining == 0) {
      out.push_back(bplus(dec, chosen));
      return;
    }
    for (std::size_t i = from; i < pool.size(); ++i) {
      if (pool[i].second.size() > remaining) continue;
      chosen.push_back(pool[i]);
      multisets(pool, i, remaining - pool[i].second.size(), chosen, dec, out);
      chosen.pop_back();
    }
  }
};

}  // namespace

std::vector<TypedTree> enumerate_trees(std::size_t n,
                                       const std::vector<std::string>& alphabet,
                                       const Semigroup& sg) {
  if (n < 1) throw error("tree size must be >= 1");
  if (alphabet.empty()) throw error("alphabet must be nonempty");
  TreeEnumerator e{alphabet, sg.enumerate(), {}};
  return e.trees_of_size(n);
}

mpz_class count_trees(std::size_t n, std::size_t d, std::size_t q) {
  if (n < 1) throw error("tree size must be >= 1");
  mpz_class dz(static_cast<unsigned long>(d));
  mpz_class qz(static_cast<unsigned long>(q));
  if (n == 1) return dz;
  if (n == 2) return dz * dz * qz;
  if (n == 3) {
    mpz_class dq = dz * qz;
    return dz * dz * dz * qz * qz + dz * dq * (dq + 1) / 2;
  }
  // r[k] = d * (# multisets of typed subtrees totaling k-1), where
  // size-j subtrees come in t[j] = q*r[j] typed flavors.
  std::vector<mpz_class> r(n + 1), t(n + 1);
  std::vector<mpz_class> m(n, 0);  // multiset counts, updated per item size
  m[0] = 1;
  for (std::size_t j = 1; j < n; ++j) {
    r[j] = j == 1 ? dz : dz * m[j - 1];
    t[j] = qz * r[j];
    // Fold in items of size j: choose c of them with repetition from t[j] kinds.
    std::vector<mpz_class> next(n, 0);
    for (std::size_t s = 0; s < n; ++s) {
      for (std::size_t c = 0; c * j <= s; ++c) {
        mpz_class ways;
        mpz_class top = t[j] + static_cast<long>(c) - 1;
        mpz_bin_ui(ways.get_mpz_t(), top.get_mpz_t(),
                   static_cast<unsigned long>(c));
        next[s] += ways * m[s - c * j];
      }
    }
    m = std::move(next);
  }
  return dz * m[n - 1];
}

TensorSum tensor_prelie(const TensorElem& a, const TensorElem& b) {
  TreeSum grafted = prelie_product(a.tree, a.tag, b.tree);
  SemigroupElem tag = a.tag.op(b.tag);
  TensorSum out;
  for (const auto& [key, term] : grafted.terms())
    out.add_term(TensorElem{term.first, tag}, term.second);
  return out;
}

TensorSum tensor_prelie(const TensorSum& a, const TensorSum& b) {
  return bilinear_extend<TensorElem>(
      [](const TensorElem& x, const TensorElem& y) {
        return tensor_prelie(x, y);
      })(a, b);
}

RawTree RawTree::of(const TypedTree& t) {
  RawTree out;
  out.dec = t.dec();
  for (std::size_t i = 0; i < t.arity(); ++i)
    out.kids.emplace_back(t.branch_type(i), RawTree::of(t.branch(i)));
  return out;
}

TypedTree RawTree::canonical() const {
  std::vector<TypedTree::Branch> branches;
  branches.reserve(kids.size());
  for (const auto& [type, sub] : kids)
    branches.emplace_back(type, sub.canonical());
  return TypedTree(dec, std::move(branches));
}

std::size_t RawTree::size() const {
  std::size_t n = 1;
  for (const auto& [type, sub] : kids) n += sub.size();
  return n;
}

namespace {

void raw_collect(const RawTree& t, VertexPath& prefix,
                 std::vector<VertexPath>& out) {
  out.push_back(prefix);
  for (std::size_t i = 0; i < t.kids.size(); ++i) {
    prefix.push_back(i);
    raw_collect(t.kids[i].second, prefix, out);
    prefix.pop_back();
  }
}

RawTree* raw_descend(RawTree& t, const VertexPath& at, const SemigroupElem* mul) {
  RawTree* cur = &t;
  for (std::size_t i : at) {
    if (i >= cur->kids.size()) throw invalid_path("vertex path leaves the tree");
    if (mul) cur->kids[i].first = cur->kids[i].first.op(*mul);
    cur = &cur->kids[i].second;
  }
  return cur;
}

}  // namespace

std::vector<VertexPath> raw_vertex_paths(const RawTree& t) {
  std::vector<VertexPath> out;
  VertexPath prefix;
  raw_collect(t, prefix, out);
  return out;
}

RawTree raw_graft_at(const RawTree& scion, const SemigroupElem& type,
                     RawTree target, const VertexPath& at) {
  RawTree* host = raw_descend(target, at, &type);
  host->kids.emplace_back(type, scion);
  return target;
}

namespace {

struct TreeParser {
  std::string_view text;
  std::size_t pos = 0;
  const Semigroup& sg;

  void skip_ws() {
    while (pos < text.size() &&
           std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  }

  std::string scan_until(std::string_view stops, const char* what) {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && stops.find(text[pos]) == std::string_view::npos)
      ++pos;
    std::string token(text.substr(start, pos - start));
    while (!token.empty() &&
           std::isspace(static_cast<unsigned char>(token.back())))
      token.pop_back();
    if (token.empty())
      throw parse_error(std::string("expected ") + what, start);
    return token;
  }

  TypedTree tree() {
    std::string label = scan_until("(),:", "label");
    skip_ws();
    std::vector<TypedTree::Branch> branches;
    if (pos < text.size() && text[pos] == '(') {
      ++pos;
      while (true) {
        std::string type_text = scan_until(":(),", "edge type");
        skip_ws();
        if (pos >= text.size() || text[pos] != ':')
          throw parse_error("expected ':' after edge type", pos);
        ++pos;
        SemigroupElem type = sg.parse(type_text);
        branches.emplace_back(type, tree());
        skip_ws();
        if (pos < text.size() && text[pos] == ',') {
          ++pos;
          continue;
        }
        if (pos < text.size() && text[pos] == ')') {
          ++pos;
          break;
        }
        throw parse_error("expected ',' or ')'", pos);
      }
    }
    return TypedTree(std::move(label), std::move(branches));
  }
};

}  // namespace

TypedTree parse_tree(std::string_view text, const Semigroup& sg) {
  TreeParser p{text, 0, sg};
  TypedTree t = p.tree();
  p.skip_ws();
  if (p.pos != text.size())
    throw parse_error("trailing characters after tree", p.pos);
  return t;
}

}  // namespace prelie
