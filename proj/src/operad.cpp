#include "prelie/operad.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <tuple>
#include <set>

#include "prelie/errors.hpp"

namespace prelie {

namespace {

void collect_labels(const TypedTree& t, std::vector<std::string>& out) {
  out.push_back(t.dec());
  for (std::size_t i = 0; i < t.arity(); ++i)
    collect_labels(t.branch(i), out);
}

}  // namespace

bool labels_distinct(const TypedTree& t) {
  std::vector<std::string> labels;
  collect_labels(t, labels);
  std::sort(labels.begin(), labels.end());
  return std::adjacent_find(labels.begin(), labels.end()) == labels.end();
}

std::vector<std::string> label_set(const TypedTree& t) {
  std::vector<std::string> labels;
  collect_labels(t, labels);
  std::sort(labels.begin(), labels.end());
  return labels;
}

namespace {

void collect_label_views(const TypedTree& t, std::vector<std::string_view>& out) {
  out.emplace_back(t.dec());
  for (std::size_t i = 0; i < t.arity(); ++i)
    collect_label_views(t.branch(i), out);
}

// Labels sorted; throws when one repeats.
std::vector<std::string_view> sorted_labels(const TypedTree& t) {
  std::vector<std::string_view> labels;
  labels.reserve(t.size());
  collect_label_views(t, labels);
  std::sort(labels.begin(), labels.end());
  auto dup = std::adjacent_find(labels.begin(), labels.end());
  if (dup != labels.end())
    throw label_clash("label '" + std::string(*dup) + "' repeats");
  return labels;
}

bool find_path_by_dec(const TypedTree& t, const std::string& label,
                      VertexPath& out) {
  if (t.dec() == label) return true;
  for (std::size_t i = 0; i < t.arity(); ++i) {
    out.push_back(i);
    if (find_path_by_dec(t.branch(i), label, out)) return true;
    out.pop_back();
  }
  return false;
}

// Working copy of the inner tree only; reattached branches stay shared
// with their source tree and are never traversed again. Each node keeps
// its canonical subtree for the untouched state, so folding a choice
// only rebuilds the nodes the landing paths actually visit.
struct PlugNode {
  const std::string* dec;
  std::vector<std::pair<SemigroupElem, PlugNode>> kids;
  std::vector<TypedTree::Branch> attached;
  std::optional<TypedTree> clean;
  bool dirty = false;

  static PlugNode of(const TypedTree& t) {
    PlugNode n{&t.dec(), {}, {}, std::nullopt, false};
    n.kids.reserve(t.arity());
    for (std::size_t i = 0; i < t.arity(); ++i)
      n.kids.emplace_back(t.branch_type(i), PlugNode::of(t.branch(i)));
    n.clean = t;
    return n;
  }

  TypedTree fold() const {
    if (!dirty) return *clean;
    std::vector<TypedTree::Branch> branches = attached;
    branches.reserve(attached.size() + kids.size());
    for (const auto& [type, sub] : kids)
      branches.emplace_back(type, sub.fold());
    return TypedTree(*dec, std::move(branches));
  }
};

// Ancestor edges and endpoint of one landing vertex inside the template.
struct Landing {
  std::vector<std::pair<PlugNode*, std::size_t>> edges;
  PlugNode* node;
};

void collect_landings(PlugNode& n, std::vector<std::pair<PlugNode*, std::size_t>>& prefix,
                      std::vector<Landing>& out) {
  out.push_back({prefix, &n});
  for (std::size_t i = 0; i < n.kids.size(); ++i) {
    prefix.emplace_back(&n, i);
    collect_landings(n.kids[i].second, prefix, out);
    prefix.pop_back();
  }
}

TypedTree replace_at(const TypedTree& t, const VertexPath& at, std::size_t depth,
                     const TypedTree& replacement) {
  if (depth == at.size()) return replacement;
  auto branches = t.branches();
  branches[at[depth]].second = replace_at(branches[at[depth]].second, at,
                                          depth + 1, replacement);
  return TypedTree(t.dec(), std::move(branches));
}

}  // namespace

OpSum partial_compose(const TypedTree& outer, const std::string& at,
                      const TypedTree& inner) {
  auto outer_labels = sorted_labels(outer);
  auto inner_labels = sorted_labels(inner);
  if (!std::binary_search(outer_labels.begin(), outer_labels.end(),
                          std::string_view(at)))
    throw unknown_label("label '" + at + "' not in tree");
  for (const auto& l : inner_labels)
    if (l != at &&
        std::binary_search(outer_labels.begin(), outer_labels.end(), l))
      throw label_clash("label '" + std::string(l) + "' occurs on both sides");
  return detail::partial_compose_unchecked(outer, at, inner);
}

OpSum detail::partial_compose_unchecked(const TypedTree& outer,
                                        const std::string& at,
                                        const TypedTree& inner) {
  VertexPath hole;
  if (!find_path_by_dec(outer, at, hole))
    throw unknown_label("label '" + at + "' not in tree");
  std::vector<TypedTree::Branch> incoming = subtree_at(outer, hole).branches();
  std::size_t fan = incoming.size();
  PlugNode tmpl = PlugNode::of(inner);
  std::vector<Landing> landings;
  {
    std::vector<std::pair<PlugNode*, std::size_t>> prefix;
    collect_landings(tmpl, prefix, landings);
  }

  // Each incoming edge chooses a landing vertex independently; its type
  // multiplies the inner edges on the path below the landing point.
  // The template is mutated per choice and restored afterwards.
  OpSum out;
  std::vector<std::size_t> choice(fan, 0);
  std::vector<std::tuple<PlugNode*, std::size_t, SemigroupElem>> touched_edges;
  std::vector<PlugNode*> touched_nodes;
  while (true) {
    touched_edges.clear();
    touched_nodes.clear();
    for (std::size_t i = 0; i < fan; ++i) {
      const Landing& landing = landings[choice[i]];
      for (const auto& [node, step] : landing.edges) {
        node->dirty = true;
        touched_nodes.push_back(node);
        touched_edges.emplace_back(node, step, node->kids[step].first);
        node->kids[step].first = node->kids[step].first.op(incoming[i].first);
      }
      landing.node->dirty = true;
      touched_nodes.push_back(landing.node);
      landing.node->attached.push_back(incoming[i]);
    }
    out.add_term(replace_at(outer, hole, 0, tmpl.fold()), Rational::one());
    for (auto it = touched_edges.rbegin(); it != touched_edges.rend(); ++it)
      std::get<0>(*it)->kids[std::get<1>(*it)].first = std::move(std::get<2>(*it));
    for (PlugNode* n : touched_nodes) {
      n->dirty = false;
      n->attached.clear();
    }
    std::size_t d = 0;
    while (d < fan && ++choice[d] == landings.size()) choice[d++] = 0;
    if (d == fan) break;
  }
  return out;
}

OpSum partial_compose(const OpSum& outer, const std::string& at,
                      const OpSum& inner) {
  return bilinear_extend<TypedTree>(
      [&at](const TypedTree& a, const TypedTree& b) {
        return partial_compose(a, at, b);
      })(outer, inner);
}

TypedTree operad_unit(const std::string& label) { return TypedTree::leaf(label); }

bool check_unit(const TypedTree& mu, const std::string& at) {
  std::string fresh = "u";
  auto labels = label_set(mu);
  while (std::binary_search(labels.begin(), labels.end(), fresh)) fresh += "u";
  return partial_compose(mu, at, operad_unit(at)) == OpSum::of(mu) &&
         partial_compose(operad_unit(fresh), fresh, mu) == OpSum::of(mu);
}

TypedTree relabel(const TypedTree& t,
                  const std::map<std::string, std::string>& bijection) {
  std::set<std::string> images;
  for (const auto& [from, to] : bijection)
    if (!images.insert(to).second)
      throw not_bijective("two labels map to '" + to + "'");
  struct Walk {
    const std::map<std::string, std::string>& map;
    TypedTree run(const TypedTree& t) {
      auto it = map.find(t.dec());
      if (it == map.end())
        throw not_bijective("no image for label '" + t.dec() + "'");
      std::vector<TypedTree::Branch> branches;
      for (std::size_t i = 0; i < t.arity(); ++i)
        branches.emplace_back(t.branch_type(i), run(t.branch(i)));
      return TypedTree(it->second, std::move(branches));
    }
  };
  return Walk{bijection}.run(t);
}

OpSum relabel(const OpSum& u, const std::map<std::string, std::string>& bijection) {
  OpSum out;
  for (const auto& [key, term] : u.terms())
    out.add_term(relabel(term.first, bijection), term.second);
  return out;
}

TypedTree generator_tree(const SemigroupElem& type, const std::string& action,
                         const std::string& base) {
  if (action == base)
    throw label_clash("generator labels must differ, got '" + action + "' twice");
  return TypedTree(base, {{type, TypedTree::leaf(action)}});
}

struct Composite::Node {
  bool is_gen;
  // generator
  SemigroupElem type;
  std::string action, base;
  // composition
  std::string at;
  std::shared_ptr<const Node> lhs, rhs;
};

Composite Composite::gen(SemigroupElem type, std::string action,
                         std::string base) {
  auto n = std::make_shared<Node>();
  n->is_gen = true;
  n->type = std::move(type);
  n->action = std::move(action);
  n->base = std::move(base);
  return Composite(std::move(n));
}

Composite Composite::compose(std::string at, Composite lhs, Composite rhs) {
  auto n = std::make_shared<Node>();
  n->is_gen = false;
  n->at = std::move(at);
  n->lhs = std::move(lhs.n_);
  n->rhs = std::move(rhs.n_);
  return Composite(std::move(n));
}

OpSum Composite::eval() const {
  if (n_->is_gen)
    return OpSum::of(generator_tree(n_->type, n_->action, n_->base));
  return partial_compose(Composite(n_->lhs).eval(), n_->at,
                         Composite(n_->rhs).eval());
}

std::string Composite::str() const {
  if (n_->is_gen)
    return "gen(" + n_->type.str() + "," + n_->action + "," + n_->base + ")";
  return "compose(" + n_->at + ", " + Composite(n_->lhs).str() + ", " +
         Composite(n_->rhs).str() + ")";
}

namespace {

struct CompositeParser {
  std::string_view text;
  std::size_t pos = 0;
  const Semigroup& sg;

  void skip_ws() {
    while (pos < text.size() &&
           std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  }
  std::string token(const char* what) {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && text[pos] != '(' && text[pos] != ')' &&
           text[pos] != ',')
      ++pos;
    std::string out(text.substr(start, pos - start));
    while (!out.empty() && std::isspace(static_cast<unsigned char>(out.back())))
      out.pop_back();
    if (out.empty()) throw parse_error(std::string("expected ") + what, start);
    return out;
  }
  void expect(char c) {
    skip_ws();
    if (pos >= text.size() || text[pos] != c)
      throw parse_error(std::string("expected '") + c + "'", pos);
    ++pos;
  }

  Composite expr() {
    std::string head = token("'gen' or 'compose'");
    expect('(');
    if (head == "gen") {
      SemigroupElem w = sg.parse(token("edge type"));
      expect(',');
      std::string action = token("label");
      expect(',');
      std::string base = token("label");
      expect(')');
      return Composite::gen(std::move(w), std::move(action), std::move(base));
    }
    if (head == "compose") {
      std::string at = token("label");
      expect(',');
      Composite lhs = expr();
      expect(',');
      Composite rhs = expr();
      expect(')');
      return Composite::compose(std::move(at), std::move(lhs), std::move(rhs));
    }
    throw parse_error("unknown composite head '" + head + "'", 0);
  }
};

}  // namespace

Composite parse_composite(std::string_view text, const Semigroup& sg) {
  CompositeParser p{text, 0, sg};
  Composite c = p.expr();
  p.skip_ws();
  if (p.pos != text.size())
    throw parse_error("trailing characters after composite", p.pos);
  return c;
}

OpSum relation_image(const SemigroupElem& alpha, const SemigroupElem& beta) {
  SemigroupElem ab = alpha.op(beta);
  SemigroupElem ba = beta.op(alpha);
  // First-style terms live on {a,1,2}, second-style on {1,2,b}; the
  // identification a->1, 1->2, 2->b aligns them before tau swaps 1,2.
  std::map<std::string, std::string> ident{{"a", "1"}, {"1", "2"}, {"2", "b"}};
  std::map<std::string, std::string> tau{{"1", "2"}, {"2", "1"}, {"b", "b"}};

  auto left_style = [&](const SemigroupElem& outer, const SemigroupElem& inner) {
    return relabel(partial_compose(OpSum::of(generator_tree(outer, "a", "b")),
                                   "b",
                                   OpSum::of(generator_tree(inner, "1", "2"))),
                   ident);
  };
  auto right_style = [&](const SemigroupElem& outer, const SemigroupElem& inner) {
    return partial_compose(OpSum::of(generator_tree(outer, "a", "b")), "a",
                           OpSum::of(generator_tree(inner, "1", "2")));
  };

  OpSum first = left_style(alpha, beta) - right_style(ab, alpha);
  OpSum second = left_style(beta, alpha) - right_style(ba, beta);
  return first - relabel(second, tau);
}

int span_rank(std::size_t n, const Semigroup& sg) {
  auto types = sg.enumerate();
  std::vector<OpSum> rows;
  if (n == 2) {
    for (const auto& w : types) {
      rows.push_back(OpSum::of(generator_tree(w, "1", "2")));
      rows.push_back(OpSum::of(generator_tree(w, "2", "1")));
    }
  } else if (n == 3) {
    const std::vector<std::string> labels{"1", "2", "3"};
    for (const auto& kept : labels) {
      std::vector<std::string> rest;
      for (const auto& l : labels)
        if (l != kept) rest.push_back(l);
      for (int swap_rest = 0; swap_rest < 2; ++swap_rest) {
        std::string r = rest[swap_rest], s = rest[1 - swap_rest];
        for (int hole_first = 0; hole_first < 2; ++hole_first) {
          for (const auto& a : types)
            for (const auto& b : types) {
              Composite outer =
                  hole_first ? Composite::gen(a, "h", kept)
                             : Composite::gen(a, kept, "h");
              Composite c = Composite::compose(
                  "h", std::move(outer), Composite::gen(b, r, s));
              rows.push_back(c.eval());
            }
        }
      }
    }
  } else {
    throw error("span_rank supports n = 2 or 3");
  }
  return rank(rows);
}

namespace {

TypedTree build_from_parents(const std::vector<std::string>& labels,
                             std::size_t root,
                             const std::vector<std::size_t>& parent,
                             const std::vector<SemigroupElem>& edge_type,
                             std::size_t vertex) {
  std::vector<TypedTree::Branch> branches;
  for (std::size_t v = 0; v < labels.size(); ++v) {
    if (v == root || parent[v] != vertex) continue;
    branches.emplace_back(
        edge_type[v], build_from_parents(labels, root, parent, edge_type, v));
  }
  return TypedTree(labels[vertex], std::move(branches));
}

}  // namespace

std::vector<TypedTree> enumerate_labeled_trees(
    const std::vector<std::string>& labels, const Semigroup& sg) {
  std::size_t n = labels.size();
  auto types = sg.enumerate();
  std::vector<TypedTree> out;
  // Parent maps: every non-root vertex points somewhere; keep the
  // acyclic ones, then type each of the n-1 edges independently.
  std::vector<std::size_t> parent(n);
  for (std::size_t root = 0; root < n; ++root) {
    std::vector<std::size_t> nonroot;
    for (std::size_t v = 0; v < n; ++v)
      if (v != root) nonroot.push_back(v);
    std::size_t maps = 1;
    for (std::size_t i = 0; i < nonroot.size(); ++i) maps *= n;
    for (std::size_t code = 0; code < maps; ++code) {
      std::size_t c = code;
      for (std::size_t v : nonroot) {
        parent[v] = c % n;
        c /= n;
      }
      bool ok = true;
      for (std::size_t v : nonroot) {
        std::size_t cur = v, steps = 0;
        while (cur != root && steps <= n) {
          cur = parent[cur];
          ++steps;
        }
        if (cur != root) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      std::size_t typings = 1;
      for (std::size_t i = 0; i < nonroot.size(); ++i) typings *= types.size();
      for (std::size_t tcode = 0; tcode < typings; ++tcode) {
        std::vector<SemigroupElem> edge_type(n, types.front());
        std::size_t tc = tcode;
        for (std::size_t v : nonroot) {
          edge_type[v] = types[tc % types.size()];
          tc /= types.size();
        }
        out.push_back(build_from_parents(labels, root, parent, edge_type, root));
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end(),
                        [](const TypedTree& a, const TypedTree& b) {
                          return a.key() == b.key();
                        }),
            out.end());
  return out;
}

TreeSum prelie_via_operad(const TypedTree& s, const SemigroupElem& w,
                          const TypedTree& t) {
  std::vector<std::string> used;
  collect_labels(s, used);
  collect_labels(t, used);
  std::sort(used.begin(), used.end());
  if (std::adjacent_find(used.begin(), used.end()) != used.end())
    throw duplicate_decoration(
        "operad route needs pairwise distinct decorations");
  auto fresh = [&used](const std::string& base) {
    std::string cand = base;
    for (int i = 0; std::binary_search(used.begin(), used.end(), cand); ++i)
      cand = base + std::to_string(i);
    return cand;
  };
  std::string a = fresh("ga");
  std::string b = fresh("gb");
  OpSum attached =
      partial_compose(OpSum::of(generator_tree(w, a, b)), a, OpSum::of(s));
  return partial_compose(attached, b, OpSum::of(t));
}

}  // namespace prelie
