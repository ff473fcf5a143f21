#include "prelie/trees.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "prelie/errors.hpp"
#include "prelie/tree_json.hpp"

using namespace prelie;

namespace {

std::size_t pick(std::mt19937_64& rng, std::size_t n) { return rng() % n; }

TypedTree rand_tree(std::mt19937_64& rng, std::size_t size,
                    const std::vector<std::string>& alphabet,
                    const Semigroup& sg) {
  std::string dec = alphabet[pick(rng, alphabet.size())];
  if (size <= 1) return TypedTree::leaf(dec);
  std::vector<TypedTree::Branch> branches;
  std::size_t remaining = size - 1;
  while (remaining > 0) {
    std::size_t part = 1 + pick(rng, remaining);
    branches.emplace_back(sg.sample(rng), rand_tree(rng, part, alphabet, sg));
    remaining -= part;
  }
  return TypedTree(dec, std::move(branches));
}

std::vector<TypedTree> pool_upto(std::size_t max_size,
                                 const std::vector<std::string>& alphabet,
                                 const Semigroup& sg) {
  std::vector<TypedTree> out;
  for (std::size_t n = 1; n <= max_size; ++n)
    for (auto& t : enumerate_trees(n, alphabet, sg)) out.push_back(std::move(t));
  return out;
}

// Independent enumeration oracle: every rooted tree on n vertices shows
// up as a parent array with parent[i] < i; decorate and type all ways,
// then dedupe canonical keys.
std::set<std::string> oracle_tree_keys(std::size_t n,
                                       const std::vector<std::string>& alphabet,
                                       const Semigroup& sg) {
  auto types = sg.enumerate();
  std::set<std::string> keys;
  std::vector<std::size_t> parent(n, 0);
  std::function<void(std::size_t)> parents = [&](std::size_t v) {
    if (v == n) {
      std::vector<std::size_t> deco(n, 0), typ(n, 0);
      std::function<void(std::size_t)> assign = [&](std::size_t i) {
        if (i == n) {
          std::function<TypedTree(std::size_t)> build = [&](std::size_t u) {
            std::vector<TypedTree::Branch> branches;
            for (std::size_t w = u + 1; w < n; ++w)
              if (parent[w] == u) branches.emplace_back(types[typ[w]], build(w));
            return TypedTree(alphabet[deco[u]], std::move(branches));
          };
          keys.insert(build(0).key());
          return;
        }
        for (deco[i] = 0; deco[i] < alphabet.size(); ++deco[i])
          for (typ[i] = 0; typ[i] < types.size(); ++typ[i]) assign(i + 1);
      };
      assign(0);
      return;
    }
    for (parent[v] = 0; parent[v] < v; ++parent[v]) parents(v + 1);
  };
  parents(1);
  return keys;
}

}  // namespace

TEST_CASE("canonical form ignores child presentation order") {
  auto sg = make_semigroup("freecm:alpha,beta");
  auto a = sg->parse("alpha");
  auto b = sg->parse("beta");
  TypedTree one("a", {{a, TypedTree::leaf("b")}, {b, TypedTree::leaf("c")}});
  TypedTree two("a", {{b, TypedTree::leaf("c")}, {a, TypedTree::leaf("b")}});
  CHECK(one.key() == two.key());
  CHECK(one == two);

  TypedTree leaf = TypedTree::leaf("a");
  CHECK(leaf.key() == "a");
  CHECK(leaf.size() == 1);

  // duplicate children survive as a multiset
  TypedTree dup("a", {{a, TypedTree::leaf("b")}, {a, TypedTree::leaf("b")}});
  CHECK(dup.arity() == 2);
  CHECK(dup.size() == 3);
}

TEST_CASE("canonicalization is idempotent") {
  std::mt19937_64 rng(3);
  auto sg = make_semigroup("zmod:3");
  for (int i = 0; i < 100; ++i) {
    TypedTree t = rand_tree(rng, 1 + pick(rng, 5), {"a", "b"}, *sg);
    TypedTree rebuilt(t.dec(), t.branches());
    CHECK(rebuilt.key() == t.key());
    CHECK(RawTree::of(t).canonical() == t);
  }
}

TEST_CASE("grafting onto a single vertex") {
  auto sg = make_semigroup("zmod:2");
  TypedTree got = graft_at(TypedTree::leaf("b"), sg->parse("1"),
                           TypedTree::leaf("a"), {});
  CHECK(got.str() == "a(1:b)");
}

TEST_CASE("grafting multiplies the path to the root") {
  auto sg = make_semigroup("freecm:beta,gamma");
  // target c1(gamma:c2), graft b below c2: the gamma edge lies under c2
  TypedTree target("c1", {{sg->parse("gamma"), TypedTree::leaf("c2")}});
  TypedTree got =
      graft_at(TypedTree::leaf("b"), sg->parse("beta"), target, {0});
  CHECK(got.str() == "c1(beta*gamma:c2(beta:b))");

  // over zmod:2 the path type wraps: 1 + 1 = 0
  auto z2 = make_semigroup("zmod:2");
  TypedTree t2("a", {{z2->parse("1"), TypedTree::leaf("c")}});
  TypedTree got2 = graft_at(TypedTree::leaf("b"), z2->parse("1"), t2, {0});
  CHECK(got2.str() == "a(0:c(1:b))");

  CHECK_THROWS_AS(
      graft_at(TypedTree::leaf("b"), z2->parse("1"), t2, {0, 0}),
      invalid_path);
  CHECK_THROWS_AS(
      graft_at(TypedTree::leaf("b"), z2->parse("1"), t2, {2}),
      invalid_path);
}

TEST_CASE("grafting product sums over target vertices") {
  auto sg = make_semigroup("freecm:beta,gamma");
  TypedTree target("c1", {{sg->parse("gamma"), TypedTree::leaf("c2")}});
  TreeSum got = prelie_product(TypedTree::leaf("b"), sg->parse("beta"), target);
  TreeSum expected =
      TreeSum::of(TypedTree(
          "c1", {{sg->parse("gamma"), TypedTree::leaf("c2")},
                 {sg->parse("beta"), TypedTree::leaf("b")}})) +
      TreeSum::of(TypedTree(
          "c1", {{sg->parse("beta*gamma"),
                  TypedTree("c2", {{sg->parse("beta"), TypedTree::leaf("b")}})}}));
  CHECK(got == expected);

  auto any = make_semigroup("zmod:5");
  TreeSum single = prelie_product(TypedTree::leaf("a"), any->parse("2"),
                                  TypedTree::leaf("b"));
  CHECK(single == TreeSum::of(TypedTree(
                      "b", {{any->parse("2"), TypedTree::leaf("a")}})));
}

TEST_CASE("family identity expansion on a worked instance") {
  // S = s, T = b, U = c1(gamma:c2): the difference
  //   S >_a (T >_b U) - (S >_a T) >_ab U
  // collapses to the four grafts of S and T into U alone.
  auto sg = make_semigroup("freecm:alpha,beta,gamma");
  auto alpha = sg->parse("alpha");
  auto beta = sg->parse("beta");
  TreeSum s = TreeSum::of(TypedTree::leaf("s"));
  TreeSum t = TreeSum::of(TypedTree::leaf("b"));
  TreeSum u = TreeSum::of(parse_tree("c1(gamma:c2)", *sg));

  TreeSum lhs = prelie_product(s, alpha, prelie_product(t, beta, u)) -
                prelie_product(prelie_product(s, alpha, t), alpha.op(beta), u);
  TreeSum expected =
      TreeSum::of(parse_tree("c1(gamma:c2,beta:b,alpha:s)", *sg)) +
      TreeSum::of(parse_tree("c1(beta*gamma:c2(beta:b),alpha:s)", *sg)) +
      TreeSum::of(parse_tree("c1(alpha*gamma:c2(alpha:s),beta:b)", *sg)) +
      TreeSum::of(parse_tree("c1(alpha*beta*gamma:c2(beta:b,alpha:s))", *sg));
  CHECK(lhs == expected);

  TreeSum rhs = prelie_product(t, beta, prelie_product(s, alpha, u)) -
                prelie_product(prelie_product(t, beta, s), beta.op(alpha), u);
  CHECK(rhs == expected);
}

TEST_CASE("grafting product against the raw-vertex oracle") {
  auto z2 = make_semigroup("zmod:2");
  TypedTree target("b", {{z2->parse("0"), TypedTree::leaf("b")}});
  TreeSum got = prelie_product(TypedTree::leaf("a"), z2->parse("0"), target);

  TreeSum expected =
      TreeSum::of(TypedTree("b", {{z2->parse("0"), TypedTree::leaf("b")},
                                  {z2->parse("0"), TypedTree::leaf("a")}})) +
      TreeSum::of(TypedTree(
          "b", {{z2->parse("0"),
                 TypedTree("b", {{z2->parse("0"), TypedTree::leaf("a")}})}}));
  CHECK(got == expected);

  // oracle: raw grafting at every raw address, canonicalized
  std::mt19937_64 rng(17);
  auto sg = make_semigroup("zmod:3");
  for (int i = 0; i < 60; ++i) {
    TypedTree s = rand_tree(rng, 1 + pick(rng, 3), {"a", "b"}, *sg);
    TypedTree t = rand_tree(rng, 1 + pick(rng, 4), {"a", "b"}, *sg);
    SemigroupElem w = sg->sample(rng);
    TreeSum via_raw;
    RawTree raw_t = RawTree::of(t);
    for (const auto& at : raw_vertex_paths(raw_t))
      via_raw.add_term(raw_graft_at(RawTree::of(s), w, raw_t, at).canonical(),
                       Rational(1));
    CHECK(via_raw == prelie_product(s, w, t));
  }
}

TEST_CASE("grafting product is independent of presentation") {
  // shuffle raw children before canonicalizing; product must not move
  std::mt19937_64 rng(23);
  auto sg = make_semigroup("zmod:2");
  for (int i = 0; i < 40; ++i) {
    TypedTree s = rand_tree(rng, 1 + pick(rng, 2), {"a", "b"}, *sg);
    TypedTree t = rand_tree(rng, 1 + pick(rng, 4), {"a", "b"}, *sg);
    SemigroupElem w = sg->sample(rng);
    RawTree shuffled = RawTree::of(t);
    std::function<void(RawTree&)> shuffle = [&](RawTree& node) {
      for (std::size_t k = node.kids.size(); k > 1; --k)
        std::swap(node.kids[k - 1], node.kids[pick(rng, k)]);
      for (auto& [type, sub] : node.kids) shuffle(sub);
    };
    shuffle(shuffled);
    CHECK(prelie_product(s, w, shuffled.canonical()) == prelie_product(s, w, t));
  }
}

TEST_CASE("parallel grafting commutes") {
  auto sg = make_semigroup("zmod:2");
  auto small = pool_upto(2, {"a", "b"}, *sg);
  auto hosts = pool_upto(3, {"a", "b"}, *sg);
  auto types = sg->enumerate();
  for (const auto& u : hosts) {
    RawTree raw_u = RawTree::of(u);
    auto spots = raw_vertex_paths(raw_u);
    for (const auto& s : small)
      for (const auto& t : small)
        for (const auto& alpha : types)
          for (const auto& beta : types)
            for (const auto& v : spots)
              for (const auto& vp : spots) {
                TypedTree lhs =
                    raw_graft_at(RawTree::of(s), alpha,
                                 raw_graft_at(RawTree::of(t), beta, raw_u, vp), v)
                        .canonical();
                TypedTree rhs =
                    raw_graft_at(RawTree::of(t), beta,
                                 raw_graft_at(RawTree::of(s), alpha, raw_u, v), vp)
                        .canonical();
                CHECK(lhs == rhs);
              }
  }
}

TEST_CASE("sequential grafting telescopes") {
  auto sg = make_semigroup("zmod:2");
  auto small = pool_upto(2, {"a", "b"}, *sg);
  auto mids = pool_upto(3, {"a", "b"}, *sg);
  auto types = sg->enumerate();
  for (const auto& t : mids) {
    RawTree raw_t = RawTree::of(t);
    auto spots_t = raw_vertex_paths(raw_t);
    for (const auto& u : small) {
      RawTree raw_u = RawTree::of(u);
      auto spots_u = raw_vertex_paths(raw_u);
      for (const auto& s : small)
        for (const auto& alpha : types)
          for (const auto& beta : types)
            for (const auto& v : spots_t)
              for (const auto& vp : spots_u) {
                RawTree host = raw_graft_at(raw_t, beta, raw_u, vp);
                RawTree* at = &host;
                for (std::size_t i : vp) at = &at->kids[i].second;
                VertexPath into_t = vp;
                into_t.push_back(at->kids.size() - 1);
                into_t.insert(into_t.end(), v.begin(), v.end());
                TypedTree lhs =
                    raw_graft_at(RawTree::of(s), alpha, host, into_t).canonical();
                TypedTree rhs = raw_graft_at(raw_graft_at(RawTree::of(s), alpha,
                                                          raw_t, v),
                                             alpha.op(beta), raw_u, vp)
                                    .canonical();
                CHECK(lhs == rhs);
              }
    }
  }
}

TEST_CASE("branch grafting and root decomposition invert each other") {
  auto sg = make_semigroup("zmod:2");
  CHECK(bplus("a", {}) == TypedTree::leaf("a"));

  auto z = make_semigroup("freecm:alpha,beta");
  TypedTree two = bplus("c", {{z->parse("alpha"), TypedTree::leaf("a")},
                              {z->parse("beta"), TypedTree::leaf("b")}});
  CHECK(two.str() == "c(alpha:a,beta:b)");

  TypedTree dup = bplus("a", {{sg->parse("1"), TypedTree::leaf("b")},
                              {sg->parse("1"), TypedTree::leaf("b")}});
  CHECK(dup.arity() == 2);

  for (std::size_t n = 1; n <= 4; ++n)
    for (const auto& t : enumerate_trees(n, {"a", "b"}, *sg)) {
      auto [dec, branches] = decompose_root(t);
      CHECK(bplus(dec, branches) == t);
    }
}

TEST_CASE("enumeration counts") {
  auto trivial = make_semigroup("trivial");
  auto z2 = make_semigroup("zmod:2");

  CHECK(enumerate_trees(1, {"a", "b", "c"}, *trivial).size() == 3);
  CHECK(enumerate_trees(2, {"a", "b"}, *z2).size() == 8);  // d^2 q
  CHECK(enumerate_trees(3, {"a"}, *trivial).size() == 2);  // chain and cherry

  CHECK_THROWS_AS(enumerate_trees(2, {"a"}, *make_semigroup("int")), not_finite);
}

TEST_CASE("enumeration matches the parent-array oracle") {
  struct Setup {
    std::vector<std::string> alphabet;
    const char* sg;
  };
  for (const auto& setup : {Setup{{"a"}, "trivial"}, Setup{{"a", "b"}, "zmod:2"}}) {
    auto sg = make_semigroup(setup.sg);
    for (std::size_t n = 1; n <= 4; ++n) {
      auto listed = enumerate_trees(n, setup.alphabet, *sg);
      auto oracle = oracle_tree_keys(n, setup.alphabet, *sg);
      CHECK(listed.size() == oracle.size());
      for (const auto& t : listed) CHECK(oracle.count(t.key()) == 1);
      CHECK(std::is_sorted(listed.begin(), listed.end(),
                           [](const TypedTree& a, const TypedTree& b) {
                             return a.key() < b.key();
                           }));
    }
  }
}

TEST_CASE("closed-form counts") {
  CHECK(count_trees(1, 7, 3) == 7);
  CHECK(count_trees(2, 3, 2) == 18);        // d^2 q
  CHECK(count_trees(3, 1, 1) == 2);
  CHECK(count_trees(3, 2, 2) == 52);        // 32 + 20
  // single label, single type: the classic rooted-tree counts
  const long untyped[] = {1, 1, 2, 4, 9, 20, 48, 115, 286, 719};
  for (std::size_t n = 1; n <= 10; ++n)
    CHECK(count_trees(n, 1, 1) == untyped[n - 1]);
  auto one = make_semigroup("trivial");
  for (std::size_t n = 1; n <= 7; ++n)
    CHECK(count_trees(n, 1, 1) ==
          static_cast<long>(enumerate_trees(n, {"a"}, *one).size()));

  auto z2 = make_semigroup("zmod:2");
  auto trivial = make_semigroup("trivial");
  for (std::size_t n = 1; n <= 5; ++n) {
    CHECK(count_trees(n, 2, 2) ==
          static_cast<long>(enumerate_trees(n, {"a", "b"}, *z2).size()));
    CHECK(count_trees(n, 2, 1) ==
          static_cast<long>(enumerate_trees(n, {"a", "b"}, *trivial).size()));
    CHECK(count_trees(n, 1, 2) ==
          static_cast<long>(enumerate_trees(n, {"a"}, *z2).size()));
  }
}

TEST_CASE("tagged product") {
  auto z2 = make_semigroup("zmod:2");
  TensorElem a{TypedTree::leaf("a"), z2->parse("1")};
  TensorElem b{TypedTree::leaf("b"), z2->parse("1")};
  TensorSum got = tensor_prelie(a, b);
  TensorSum expected = TensorSum::of(TensorElem{
      TypedTree("b", {{z2->parse("1"), TypedTree::leaf("a")}}), z2->parse("0")});
  CHECK(got == expected);

  // one graft per target vertex; distinct decorations prevent merging
  auto sg = make_semigroup("zmod:3");
  TypedTree t("x", {{sg->parse("1"), TypedTree::leaf("y")},
                    {sg->parse("2"), TypedTree::leaf("z")}});
  TensorSum fan = tensor_prelie(TensorElem{TypedTree::leaf("w"), sg->parse("1")},
                                TensorElem{t, sg->parse("2")});
  CHECK(fan.term_count() == t.size());

  CHECK(tensor_prelie(TensorSum(), TensorSum::of(b)).is_zero());
}

TEST_CASE("vertex addressing") {
  auto sg = make_semigroup("zmod:2");
  TypedTree t("a", {{sg->parse("0"), TypedTree::leaf("b")},
                    {sg->parse("1"),
                     TypedTree("b", {{sg->parse("0"), TypedTree::leaf("a")}})}});
  auto paths = vertex_paths(t);
  CHECK(paths.size() == t.size());
  CHECK(subtree_at(t, {}) == t);
  for (const auto& p : paths) (void)subtree_at(t, p);  // all addressable
  CHECK_THROWS_AS(subtree_at(t, {5}), invalid_path);
}

TEST_CASE("json form round trips through canonicalization") {
  std::mt19937_64 rng(31);
  for (const char* desc : {"zmod:3", "freecm:u,v"}) {
    auto sg = make_semigroup(desc);
    for (int i = 0; i < 40; ++i) {
      TypedTree t = rand_tree(rng, 1 + pick(rng, 5), {"a", "b"}, *sg);
      CHECK(tree_from_json(tree_to_json(t), *sg) == t);
    }
  }
  auto sg = make_semigroup("zmod:2");
  auto parsed = nlohmann::json::parse(
      R"({"dec":"a","children":[{"type":"1","tree":{"dec":"b","children":[]}},)"
      R"({"type":"0","tree":{"dec":"c"}}]})");
  CHECK(tree_from_json(parsed, *sg).str() == "a(1:b,0:c)");  // subtree key sorts first
  CHECK_THROWS_AS(tree_from_json(nlohmann::json::array(), *sg), parse_error);
}

TEST_CASE("text grammar round trip") {
  auto sg = make_semigroup("zmod:3");
  CHECK(parse_tree("a", *sg) == TypedTree::leaf("a"));
  CHECK(parse_tree(" a ( 1 : b , 2 : c ) ", *sg).str() == "a(1:b,2:c)");

  std::mt19937_64 rng(29);
  for (const char* desc : {"trivial", "zmod:4", "int", "freecm:u,v"}) {
    auto s = make_semigroup(desc);
    for (int i = 0; i < 50; ++i) {
      TypedTree t = rand_tree(rng, 1 + pick(rng, 5), {"a", "b", "c"}, *s);
      CHECK(parse_tree(t.str(), *s) == t);
    }
  }

  CHECK_THROWS_AS(parse_tree("a(", *sg), parse_error);
  CHECK_THROWS_AS(parse_tree("a(1:b", *sg), parse_error);
  CHECK_THROWS_AS(parse_tree("a)", *sg), parse_error);
  CHECK_THROWS_AS(parse_tree("a(1 b)", *sg), parse_error);
  CHECK_THROWS_AS(parse_tree("", *sg), parse_error);
  try {
    parse_tree("a(1:b,,2:c)", *sg);
    CHECK(false);
  } catch (const parse_error& e) {
    CHECK(e.pos == 6);  // position of the offending comma
  }
}
