#include "prelie/suites.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "prelie/operad.hpp"
#include "prelie/rota_baxter.hpp"
#include "prelie/structures.hpp"

namespace prelie {

namespace {

std::size_t pick(std::mt19937_64& rng, std::size_t n) { return rng() % n; }

Rational small_rational(std::mt19937_64& rng) {
  long num = static_cast<long>(pick(rng, 5)) - 2;  // -2..2
  if (num == 0) num = 1;
  unsigned long den = pick(rng, 2) ? 2 : 1;
  return Rational(num, den);
}

TypedTree random_tree(std::mt19937_64& rng, std::size_t size,
                      const std::vector<std::string>& alphabet,
                      const Semigroup& sg) {
  std::string dec = alphabet[pick(rng, alphabet.size())];
  if (size <= 1) return TypedTree::leaf(std::move(dec));
  std::vector<TypedTree::Branch> branches;
  std::size_t remaining = size - 1;
  while (remaining > 0) {
    std::size_t part = 1 + pick(rng, remaining);
    branches.emplace_back(sg.sample(rng), random_tree(rng, part, alphabet, sg));
    remaining -= part;
  }
  return TypedTree(std::move(dec), std::move(branches));
}

TypedTree random_tree_upto(std::mt19937_64& rng, std::size_t max_size,
                           const std::vector<std::string>& alphabet,
                           const Semigroup& sg) {
  return random_tree(rng, 1 + pick(rng, max_size), alphabet, sg);
}

// All canonical trees of size 1..max_size.
std::vector<TypedTree> tree_pool(std::size_t max_size,
                                 const std::vector<std::string>& alphabet,
                                 const Semigroup& sg) {
  std::vector<TypedTree> pool;
  for (std::size_t n = 1; n <= max_size; ++n)
    for (auto& t : enumerate_trees(n, alphabet, sg)) pool.push_back(std::move(t));
  return pool;
}

struct Suite {
  SuiteResult result;
  std::size_t max_failures = 8;
  std::size_t dropped = 0;

  explicit Suite(std::string name) { result.name = std::move(name); }

  void check(bool ok, const std::function<std::string()>& describe) {
    ++result.checks;
    if (ok) return;
    if (result.failures.size() < max_failures)
      result.failures.push_back(describe());
    else
      ++dropped;
  }

  void fold(const std::vector<Violation>& report, std::size_t performed,
            const std::string& tag) {
    result.checks += performed;
    for (const auto& v : report) {
      if (result.failures.size() < max_failures)
        result.failures.push_back(tag + ": " + v.context);
      else
        ++dropped;
    }
  }

  SuiteResult take() {
    if (dropped > 0)
      result.failures.push_back("... and " + std::to_string(dropped) +
                                " more failures");
    return std::move(result);
  }
};

const std::vector<std::string> kAlphabet{"a", "b"};

// ---------------------------------------------------------------------------

SuiteResult suite_semigroup_laws(const SuiteConfig&) {
  Suite s("semigroup-laws");
  auto run = [&s](const SemigroupPtr& sg, std::vector<SemigroupElem> samples) {
    std::vector<Violation> report;
    for (auto& v : check_commutative_associative(*sg, samples))
      report.push_back({std::move(v.detail)});
    s.fold(report, samples.size() * samples.size() * (samples.size() + 1),
           sg->name());
    for (const auto& e : samples)
      s.check(sg->parse(e.str()) == e, [&] {
        return sg->name() + ": parse(format(" + e.str() + ")) round-trip fails";
      });
  };
  for (const char* desc : {"trivial", "zmod:2", "zmod:3", "zmod:5"}) {
    auto sg = make_semigroup(desc);
    run(sg, sg->enumerate());
  }
  {
    auto sg = make_semigroup("int");
    std::vector<SemigroupElem> samples;
    for (long k : {-2L, -1L, 0L, 1L, 3L}) samples.push_back(sg->parse(std::to_string(k)));
    run(sg, samples);
  }
  {
    auto sg = make_semigroup("freecm:x,y");
    std::vector<SemigroupElem> samples;
    for (const char* t : {"1", "x", "y", "x*y", "x^2", "x^2*y"})
      samples.push_back(sg->parse(t));
    run(sg, samples);
  }
  return s.take();
}

// Exhaustive small-scale family identity on the tree model, then
// seeded random triples at size <= 4 over zmod:3 and freecm.
SuiteResult suite_prelie_family(const SuiteConfig& cfg) {
  Suite s("prelie-family");
  {
    auto sg = make_semigroup("zmod:2");
    auto model = free_tree_model();
    auto pool = tree_pool(2, kAlphabet, *sg);
    auto types = sg->enumerate();
    std::vector<FamilyTriple<TreeSum>> triples;
    for (const auto& x : pool)
      for (const auto& y : pool)
        for (const auto& z : pool)
          for (const auto& alpha : types)
            for (const auto& beta : types)
              triples.push_back({TreeSum::of(x), alpha, TreeSum::of(y), beta,
                                 TreeSum::of(z)});
    s.fold(check_prelie_family(model, triples), triples.size(),
           "exhaustive zmod:2");
  }
  std::size_t bound = std::max<std::size_t>(4, cfg.max_size);
  for (const char* desc : {"zmod:3", "freecm:u,v"}) {
    auto sg = make_semigroup(desc);
    auto model = free_tree_model();
    std::mt19937_64 rng(cfg.seed);
    std::vector<FamilyTriple<TreeSum>> triples;
    for (int i = 0; i < 500; ++i)
      triples.push_back(
          {TreeSum::of(random_tree_upto(rng, bound, kAlphabet, *sg)),
           sg->sample(rng),
           TreeSum::of(random_tree_upto(rng, bound, kAlphabet, *sg)),
           sg->sample(rng),
           TreeSum::of(random_tree_upto(rng, bound, kAlphabet, *sg))});
    s.fold(check_prelie_family(model, triples), triples.size(),
           std::string("random ") + desc);
  }
  return s.take();
}

// Grafts at distinct vertices commute, and grafting into a grafted
// tree telescopes with the product of the types.
SuiteResult suite_grafting(const SuiteConfig&) {
  Suite s("grafting");
  auto sg = make_semigroup("zmod:2");
  auto pool = tree_pool(2, kAlphabet, *sg);
  auto types = sg->enumerate();

  for (const auto& u : pool) {
    RawTree raw_u = RawTree::of(u);
    auto spots = raw_vertex_paths(raw_u);
    for (const auto& scion1 : pool)
      for (const auto& scion2 : pool)
        for (const auto& alpha : types)
          for (const auto& beta : types)
            for (const auto& v : spots)
              for (const auto& vp : spots) {
                TypedTree lhs =
                    raw_graft_at(RawTree::of(scion1), alpha,
                                 raw_graft_at(RawTree::of(scion2), beta, raw_u, vp),
                                 v)
                        .canonical();
                TypedTree rhs =
                    raw_graft_at(RawTree::of(scion2), beta,
                                 raw_graft_at(RawTree::of(scion1), alpha, raw_u, v),
                                 vp)
                        .canonical();
                s.check(lhs == rhs, [&] {
                  return "parallel grafting differs on U=" + u.str() +
                         ", S=" + scion1.str() + "@" + alpha.str() +
                         ", T=" + scion2.str() + "@" + beta.str();
                });
              }
  }

  for (const auto& u : pool) {
    RawTree raw_u = RawTree::of(u);
    auto spots_u = raw_vertex_paths(raw_u);
    for (const auto& t : pool) {
      RawTree raw_t = RawTree::of(t);
      auto spots_t = raw_vertex_paths(raw_t);
      for (const auto& scion : pool)
        for (const auto& alpha : types)
          for (const auto& beta : types)
            for (const auto& v : spots_t)
              for (const auto& vp : spots_u) {
                // graft T below vp, then S at v inside the lodged copy of T
                RawTree host = raw_graft_at(raw_t, beta, raw_u, vp);
                RawTree* at = &host;
                for (std::size_t i : vp) at = &at->kids[i].second;
                VertexPath into_t = vp;
                into_t.push_back(at->kids.size() - 1);
                into_t.insert(into_t.end(), v.begin(), v.end());
                TypedTree lhs =
                    raw_graft_at(RawTree::of(scion), alpha, host, into_t)
                        .canonical();
                TypedTree rhs =
                    raw_graft_at(
                        raw_graft_at(RawTree::of(scion), alpha, raw_t, v),
                        alpha.op(beta), raw_u, vp)
                        .canonical();
                s.check(lhs == rhs, [&] {
                  return "sequential grafting differs on U=" + u.str() +
                         ", T=" + t.str() + ", S=" + scion.str() +
                         ", alpha=" + alpha.str() + ", beta=" + beta.str();
                });
              }
    }
  }
  return s.take();
}

// The multilinear product is invariant under permutations of its
// factor slots: n <= 3 exhaustively, n = 4 on seeded instances.
SuiteResult suite_multi_symmetry(const SuiteConfig& cfg) {
  Suite s("multi-symmetry");
  auto sg = make_semigroup("zmod:2");
  auto model = free_tree_model();
  auto pool = tree_pool(2, kAlphabet, *sg);
  auto types = sg->enumerate();

  std::vector<Factor<TreeSum>> factors;
  for (const auto& t : pool)
    for (const auto& w : types) factors.emplace_back(TreeSum::of(t), w);

  // the identity permutation is vacuous; check the rest
  std::vector<std::vector<std::size_t>> perms2{{1, 0}};
  std::vector<std::vector<std::size_t>> perms3;
  {
    std::vector<std::size_t> p{0, 1, 2};
    while (std::next_permutation(p.begin(), p.end())) perms3.push_back(p);
  }

  // Unordered index choices cover every word up to permutation.
  for (std::size_t i = 0; i < factors.size(); ++i)
    for (std::size_t j = i; j < factors.size(); ++j)
      for (const auto& y : pool) {
        GraftWord<TreeSum> w{{factors[i], factors[j]}, TreeSum::of(y)};
        for (const auto& perm : perms2)
          s.check(check_multi_symmetry(model, w, perm), [&] {
            return "n=2 symmetry fails on factors (" +
                   factors[i].first.str() + "@" + factors[i].second.str() +
                   ", " + factors[j].first.str() + "@" +
                   factors[j].second.str() + ") onto " + y.str();
          });
      }

  for (std::size_t i = 0; i < factors.size(); ++i)
    for (std::size_t j = i; j < factors.size(); ++j)
      for (std::size_t k = j; k < factors.size(); ++k)
        for (const auto& y : pool) {
          GraftWord<TreeSum> w{{factors[i], factors[j], factors[k]},
                               TreeSum::of(y)};
          TreeSum reference = multi_product(model, w);
          for (const auto& perm : perms3) {
            std::vector<Factor<TreeSum>> permuted;
            for (std::size_t idx : perm) permuted.push_back(w.factors[idx]);
            s.check(multi_product(model, permuted, w.target) == reference, [&] {
              return "n=3 symmetry fails on word #" + std::to_string(i) + "," +
                     std::to_string(j) + "," + std::to_string(k) + " onto " +
                     y.str();
            });
          }
        }

  std::mt19937_64 rng(cfg.seed);
  std::vector<std::vector<std::size_t>> perms4;
  {
    std::vector<std::size_t> p{0, 1, 2, 3};
    while (std::next_permutation(p.begin(), p.end())) perms4.push_back(p);
  }
  for (int rep = 0; rep < 200; ++rep) {
    GraftWord<TreeSum> w;
    for (int f = 0; f < 4; ++f)
      w.factors.emplace_back(TreeSum::of(random_tree_upto(rng, 2, kAlphabet, *sg)),
                             sg->sample(rng));
    w.target = TreeSum::of(random_tree_upto(rng, 2, kAlphabet, *sg));
    TreeSum reference = multi_product(model, w);
    for (const auto& perm : perms4) {
      std::vector<Factor<TreeSum>> permuted;
      for (std::size_t idx : perm) permuted.push_back(w.factors[idx]);
      s.check(multi_product(model, permuted, w.target) == reference, [&] {
        return "n=4 symmetry fails on seeded instance #" + std::to_string(rep);
      });
    }
  }
  return s.take();
}

// The multilinear product of a forest onto a single vertex rebuilds
// the tree with that forest grafted on the common root.
SuiteResult suite_bplus_recursion(const SuiteConfig&) {
  Suite s("bplus-recursion");
  auto sg = make_semigroup("zmod:2");
  auto model = free_tree_model();
  auto types = sg->enumerate();

  std::vector<std::pair<SemigroupElem, TypedTree>> typed_pool;
  for (std::size_t n = 1; n <= 4; ++n)
    for (const auto& t : enumerate_trees(n, kAlphabet, *sg))
      for (const auto& w : types) typed_pool.emplace_back(w, t);

  // Non-decreasing index sequences with total size <= 4, empty included.
  std::vector<std::vector<std::size_t>> forests;
  std::vector<std::size_t> current;
  std::function<void(std::size_t, std::size_t)> grow = [&](std::size_t from,
                                                           std::size_t budget) {
    forests.push_back(current);
    for (std::size_t i = from; i < typed_pool.size(); ++i) {
      std::size_t sz = typed_pool[i].second.size();
      if (sz > budget) continue;
      current.push_back(i);
      grow(i, budget - sz);
      current.pop_back();
    }
  };
  grow(0, 4);

  for (const auto& forest : forests)
    for (const auto& root : kAlphabet) {
      std::vector<Factor<TreeSum>> factors;
      std::vector<TypedTree::Branch> branches;
      for (std::size_t i : forest) {
        factors.emplace_back(TreeSum::of(typed_pool[i].second), typed_pool[i].first);
        branches.emplace_back(typed_pool[i].first, typed_pool[i].second);
      }
      TreeSum via_product =
          multi_product(model, factors, TreeSum::of(TypedTree::leaf(root)));
      TreeSum via_bplus = TreeSum::of(bplus(root, branches));
      s.check(via_product == via_bplus, [&] {
        return "forest onto vertex '" + root +
               "' differs: product=" + via_product.str() +
               ", bplus=" + via_bplus.str();
      });
    }
  return s.take();
}

// Structure morphism out of the tree model: identity back into trees,
// homomorphism into every concrete target.
SuiteResult suite_freeness(const SuiteConfig& cfg) {
  Suite s("freeness");

  {  // identity on all trees of size <= 4
    auto sg = make_semigroup("zmod:2");
    auto model = free_tree_model();
    std::map<std::string, TreeSum> psi;
    for (const auto& x : kAlphabet)
      psi.emplace(x, TreeSum::of(TypedTree::leaf(x)));
    for (std::size_t n = 1; n <= 4; ++n)
      for (const auto& t : enumerate_trees(n, kAlphabet, *sg))
        s.check(universal_morphism(model, psi, t) == TreeSum::of(t), [&] {
          return "identity morphism moves " + t.str();
        });
  }

  {  // free target, seeded homomorphism checks
    auto sg = make_semigroup("zmod:2");
    auto model = free_tree_model();
    std::map<std::string, TreeSum> psi;
    for (const auto& x : kAlphabet)
      psi.emplace(x, TreeSum::of(TypedTree::leaf(x)));
    std::mt19937_64 rng(cfg.seed);
    for (int rep = 0; rep < 300; ++rep) {
      TypedTree lhs = random_tree_upto(rng, 3, kAlphabet, *sg);
      TypedTree rhs = random_tree_upto(rng, 3, kAlphabet, *sg);
      SemigroupElem w = sg->sample(rng);
      s.check(check_morphism_property(model, psi, lhs, w, rhs), [&] {
        return "tree target: morphism fails on " + lhs.str() + " >_" + w.str() +
               " " + rhs.str();
      });
    }
  }

  {  // tagged-tree target with identity tags
    auto sg = make_semigroup("freecm:u,v");
    auto model = tensor_tree_model();
    std::map<std::string, TensorSum> psi;
    for (const auto& x : kAlphabet)
      psi.emplace(x, TensorSum::of(TensorElem{TypedTree::leaf(x), sg->identity()}));
    std::mt19937_64 rng(cfg.seed);
    for (int rep = 0; rep < 300; ++rep) {
      TypedTree lhs = random_tree_upto(rng, 3, kAlphabet, *sg);
      TypedTree rhs = random_tree_upto(rng, 3, kAlphabet, *sg);
      SemigroupElem w = sg->sample(rng);
      s.check(check_morphism_property(model, psi, lhs, w, rhs), [&] {
        return "tagged target: morphism fails on " + lhs.str() + " >_" +
               w.str() + " " + rhs.str();
      });
    }
  }

  {  // Laurent-derived target
    auto sg = make_semigroup("int");
    LaurentAlgebra alg(-64, 64);
    auto rb = alg.rb_model();
    auto model = prelie_from_dendriform(dendriform_from_rb(rb, DendriformSplit::A));
    std::map<std::string, LaurentVec> psi;
    psi.emplace("a", alg.monomial(-1));
    psi.emplace("b", alg.monomial(2, Rational(1, 2)) + alg.monomial(0));
    std::mt19937_64 rng(cfg.seed);
    for (int rep = 0; rep < 300; ++rep) {
      TypedTree lhs = random_tree_upto(rng, 3, kAlphabet, *sg);
      TypedTree rhs = random_tree_upto(rng, 3, kAlphabet, *sg);
      SemigroupElem w = sg->sample(rng);
      s.check(check_morphism_property(model, psi, lhs, w, rhs), [&] {
        return "Laurent target: morphism fails on " + lhs.str() + " >_" +
               w.str() + " " + rhs.str();
      });
    }
  }

  {  // dual-number Poisson target
    auto sg = make_semigroup("zmod:3");
    DualPoissonAlgebra alg(24);
    auto model = prelie_from_rb_lie(alg.rb_model());
    std::map<std::string, PolyVec> psi;
    psi.emplace("a", alg.monomial(1, 0) + alg.monomial(0, 2, true));
    psi.emplace("b", alg.monomial(0, 1) + alg.monomial(2, 0, false, Rational(1, 2)));
    std::mt19937_64 rng(cfg.seed);
    for (int rep = 0; rep < 300; ++rep) {
      TypedTree lhs = random_tree_upto(rng, 3, kAlphabet, *sg);
      TypedTree rhs = random_tree_upto(rng, 3, kAlphabet, *sg);
      SemigroupElem w = sg->sample(rng);
      s.check(check_morphism_property(model, psi, lhs, w, rhs), [&] {
        return "Poisson target: morphism fails on " + lhs.str() + " >_" +
               w.str() + " " + rhs.str();
      });
    }
  }
  return s.take();
}

// The tagged carrier satisfies the plain (index-free) pre-Lie identity.
SuiteResult suite_tensor(const SuiteConfig&) {
  Suite s("tensor");
  auto sg = make_semigroup("zmod:2");
  auto pool = tree_pool(2, kAlphabet, *sg);
  auto types = sg->enumerate();
  std::vector<TensorElem> elems;
  for (const auto& t : pool)
    for (const auto& w : types) elems.push_back(TensorElem{t, w});
  for (const auto& x : elems)
    for (const auto& y : elems)
      for (const auto& z : elems) {
        TensorSum vx = TensorSum::of(x), vy = TensorSum::of(y),
                  vz = TensorSum::of(z);
        TensorSum lhs = tensor_prelie(vx, tensor_prelie(vy, vz)) -
                        tensor_prelie(tensor_prelie(vx, vy), vz);
        TensorSum rhs = tensor_prelie(vy, tensor_prelie(vx, vz)) -
                        tensor_prelie(tensor_prelie(vy, vx), vz);
        s.check(lhs == rhs, [&] {
          return "tensor pre-Lie identity fails on " + render(x) + ", " +
                 render(y) + ", " + render(z);
        });
      }
  return s.take();
}

// Laurent window model: operator identity at weight -1, both
// dendriform splittings, and the derived pre-Lie structure.
SuiteResult suite_rb_dendriform(const SuiteConfig& cfg) {
  Suite s("rb-dendriform");
  auto sg = make_semigroup("int");
  LaurentAlgebra alg(-20, 20);
  auto rb = alg.rb_model();

  auto random_vec = [&](std::mt19937_64& rng) {
    LaurentVec v;
    std::size_t terms = 1 + pick(rng, 3);
    for (std::size_t i = 0; i < terms; ++i)
      v += alg.monomial(static_cast<std::int64_t>(pick(rng, 9)) - 4,
                        small_rational(rng));
    return v;
  };

  {
    std::mt19937_64 rng(cfg.seed);
    std::vector<RBSample<LaurentVec>> samples;
    for (int i = 0; i < 500; ++i)
      samples.push_back(
          {random_vec(rng), sg->sample(rng), random_vec(rng), sg->sample(rng)});
    s.fold(check_rb_family(rb, samples), samples.size(), "Laurent weight -1");
  }

  for (auto variant : {DendriformSplit::A, DendriformSplit::B}) {
    auto dend = dendriform_from_rb(rb, variant);
    std::mt19937_64 rng(cfg.seed);
    std::vector<FamilyTriple<LaurentVec>> triples;
    for (int i = 0; i < 500; ++i)
      triples.push_back({random_vec(rng), sg->sample(rng), random_vec(rng),
                         sg->sample(rng), random_vec(rng)});
    s.fold(check_dendriform_family(dend, triples), triples.size(), dend.name);
    auto pre = prelie_from_dendriform(dend);
    s.fold(check_prelie_family(pre, triples), triples.size(), pre.name);
  }
  return s.take();
}

// Sequential, parallel, unit and relabeling laws of partial composition.
SuiteResult suite_operad_axioms(const SuiteConfig&) {
  Suite s("operad-axioms");
  auto sg = make_semigroup("zmod:2");

  auto family = [&](const std::vector<std::string>& labels) {
    std::vector<TypedTree> out;
    for (std::size_t k = 1; k <= labels.size(); ++k)
      for (auto& t : enumerate_labeled_trees(
               std::vector<std::string>(labels.begin(), labels.begin() + k), *sg))
        out.push_back(std::move(t));
    return out;
  };
  auto outers = family({"s1", "s2", "s3"});
  auto middles = family({"u1", "u2", "u3"});
  auto inners = family({"w1", "w2", "w3"});

  // Base-pair compositions recur across many axiom instances; memoize
  // those only, so the cache stays small. The trees involved all have
  // distinct, disjoint labels by construction.
  std::map<std::string, OpSum> memo;
  auto compose_base = [&memo](const TypedTree& t, const std::string& at,
                              const TypedTree& u) -> const OpSum& {
    std::string key = t.key() + "/" + at + "/" + u.key();
    auto it = memo.find(key);
    if (it == memo.end())
      it = memo.emplace(std::move(key),
                        detail::partial_compose_unchecked(t, at, u))
               .first;
    return it->second;
  };
  auto compose_terms = [](const OpSum& sum, const std::string& at,
                          const TypedTree& u) {
    OpSum out;
    for (const auto& [key, term] : sum.terms())
      out.add_scaled(detail::partial_compose_unchecked(term.first, at, u),
                     term.second);
    return out;
  };

  for (const auto& t : outers) {
    auto t_labels = label_set(t);
    for (const auto& u : middles) {
      auto u_labels = label_set(u);
      for (const auto& v : t_labels) {
        const OpSum& tu = compose_base(t, v, u);
        for (const auto& w : inners) {
          for (const auto& vp : u_labels) {
            OpSum lhs = compose_terms(tu, vp, w);
            OpSum rhs;
            const OpSum& uw = compose_base(u, vp, w);
            for (const auto& [key, term] : uw.terms())
              rhs.add_scaled(detail::partial_compose_unchecked(t, v, term.first),
                             term.second);
            s.check(lhs == rhs, [&] {
              return "sequential law fails on T=" + t.str() + " o_" + v +
                     " U=" + u.str() + " o_" + vp + " W=" + w.str();
            });
          }
          for (const auto& vp : t_labels) {
            if (vp == v) continue;
            OpSum lhs = compose_terms(tu, vp, w);
            OpSum rhs = compose_terms(compose_base(t, vp, w), v, u);
            s.check(lhs == rhs, [&] {
              return "parallel law fails on T=" + t.str() + " at (" + v + "," +
                     vp + "), U=" + u.str() + ", W=" + w.str();
            });
          }
        }
      }
    }
  }

  for (const auto& t : outers) {
    for (const auto& b : label_set(t)) {
      s.check(partial_compose(t, b, operad_unit(b)) == OpSum::of(t), [&] {
        return "right unit fails on " + t.str() + " at " + b;
      });
    }
    s.check(partial_compose(operad_unit("hole"), "hole", t) == OpSum::of(t),
            [&] { return "left unit fails on " + t.str(); });
  }

  {  // relabeling commutes with composition
    std::map<std::string, std::string> phi{{"s1", "x1"}, {"s2", "x2"},
                                           {"s3", "x3"}, {"u1", "y1"},
                                           {"u2", "y2"}, {"u3", "y3"}};
    for (const auto& t : outers)
      for (const auto& u : middles)
        for (const auto& v : label_set(t)) {
          std::map<std::string, std::string> phi_t, phi_u;
          for (const auto& l : label_set(t)) phi_t[l] = phi.at(l);
          for (const auto& l : label_set(u)) phi_u[l] = phi.at(l);
          OpSum lhs = relabel(partial_compose(t, v, u), [&] {
            std::map<std::string, std::string> all = phi_t;
            all.erase(v);
            all.insert(phi_u.begin(), phi_u.end());
            return all;
          }());
          OpSum rhs = partial_compose(relabel(t, phi_t), phi_t.at(v),
                                      relabel(u, phi_u));
          s.check(lhs == rhs, [&] {
            return "equivariance fails on T=" + t.str() + " o_" + v +
                   " U=" + u.str();
          });
        }
  }
  return s.take();
}

// Image of the defining relation vanishes; generator composites span
// the whole component at small arity.
SuiteResult suite_operad_relation(const SuiteConfig&) {
  Suite s("operad-relation");
  {
    auto sg = make_semigroup("zmod:3");
    for (const auto& alpha : sg->enumerate())
      for (const auto& beta : sg->enumerate()) {
        OpSum r = relation_image(alpha, beta);
        s.check(r.is_zero(), [&] {
          return "relation image nonzero for alpha=" + alpha.str() +
                 ", beta=" + beta.str() + ": " + r.str();
        });
      }
  }
  for (const char* desc : {"trivial", "zmod:2"}) {
    auto sg = make_semigroup(desc);
    std::size_t q = sg->enumerate().size();
    for (std::size_t n : {std::size_t{2}, std::size_t{3}}) {
      int expected = 1;
      for (std::size_t i = 0; i + 1 < n; ++i)
        expected *= static_cast<int>(n * q);
      int got = span_rank(n, *sg);
      s.check(got == expected, [&] {
        return "span rank at n=" + std::to_string(n) + ", |Omega|=" +
               std::to_string(q) + " is " + std::to_string(got) +
               ", expected " + std::to_string(expected);
      });
    }
  }
  return s.take();
}

// The generator-composite route through the operad reproduces the
// grafting product on distinct-decorated trees.
SuiteResult suite_operad_agree(const SuiteConfig&) {
  Suite s("operad-agree");
  auto sg = make_semigroup("zmod:2");
  auto family = [&](const std::vector<std::string>& labels) {
    std::vector<TypedTree> out;
    for (std::size_t k = 1; k <= labels.size(); ++k)
      for (auto& t : enumerate_labeled_trees(
               std::vector<std::string>(labels.begin(), labels.begin() + k), *sg))
        out.push_back(std::move(t));
    return out;
  };
  auto lefts = family({"s1", "s2", "s3"});
  auto rights = family({"t1", "t2", "t3"});
  for (const auto& l : lefts)
    for (const auto& r : rights)
      for (const auto& w : sg->enumerate()) {
        s.check(prelie_via_operad(l, w, r) == prelie_product(l, w, r), [&] {
          return "operad route differs from grafting on " + l.str() + " >_" +
                 w.str() + " " + r.str();
        });
      }
  return s.take();
}

// Dual-number models: zinbiel and pre-Poisson axioms, plus agreement
// of the two zinbiel constructions.
SuiteResult suite_zinbiel_prepoisson(const SuiteConfig& cfg) {
  Suite s("zinbiel-prepoisson");
  auto sg = make_semigroup("zmod:3");
  DualPoissonAlgebra alg(24);
  auto rb = alg.rb_model();

  auto random_vec = [&](std::mt19937_64& rng) {
    PolyVec v;
    std::size_t terms = 1 + pick(rng, 3);
    for (std::size_t i = 0; i < terms; ++i) {
      unsigned px = static_cast<unsigned>(pick(rng, 3));
      unsigned qx = static_cast<unsigned>(pick(rng, 3));
      v += alg.monomial(px, qx, pick(rng, 2) == 1, small_rational(rng));
    }
    return v;
  };

  std::mt19937_64 rng(cfg.seed);
  std::vector<FamilyTriple<PolyVec>> triples;
  std::vector<RBSample<PolyVec>> rb_samples;
  std::vector<std::vector<PolyVec>> poisson_triples;
  for (int i = 0; i < 500; ++i) {
    PolyVec x = random_vec(rng), y = random_vec(rng), z = random_vec(rng);
    SemigroupElem alpha = sg->sample(rng), beta = sg->sample(rng);
    triples.push_back({x, alpha, y, beta, z});
    rb_samples.push_back({x, alpha, y, beta});
    poisson_triples.push_back({x, y, z});
  }

  s.fold(check_poisson(rb, poisson_triples), poisson_triples.size(),
         "Poisson axioms");
  s.fold(check_rb_family(rb, rb_samples, RBOp::product), rb_samples.size(),
         "weight-0 identity (product)");
  s.fold(check_rb_family(rb, rb_samples, RBOp::bracket), rb_samples.size(),
         "weight-0 identity (bracket)");

  auto zin = zinbiel_from_rb_comm(rb);
  s.fold(check_zinbiel_family(zin, triples), triples.size(), zin.name);

  auto pp = prepoisson_from_rb_poisson(rb);
  s.fold(check_prepoisson_family(pp, triples), triples.size(), "pre-Poisson");

  // Route agreement: splitting the product vs applying the operator.
  auto dend = dendriform_from_rb(rb, DendriformSplit::A);
  auto zin_via_dend = zinbiel_from_comm_dendriform(dend, triples);
  for (const auto& t : triples) {
    s.check(zin_via_dend.star(t.alpha, t.x, t.y) == zin.star(t.alpha, t.x, t.y),
            [&] {
              return "zinbiel routes disagree on x=" + t.x.str() +
                     ", w=" + t.alpha.str() + ", y=" + t.y.str();
            });
  }
  return s.take();
}

// Closed-form counts match the enumerator; the untyped single-label
// series starts 1, 1, 2, 4, 9.
SuiteResult suite_counting(const SuiteConfig&) {
  Suite s("counting");
  std::vector<std::vector<std::string>> alphabets{{"a"}, {"a", "b"}};
  std::vector<const char*> sgs{"trivial", "zmod:2"};
  for (const auto& alphabet : alphabets)
    for (const char* desc : sgs) {
      auto sg = make_semigroup(desc);
      std::size_t q = sg->enumerate().size();
      for (std::size_t n = 1; n <= 5; ++n) {
        auto listed = enumerate_trees(n, alphabet, *sg);
        mpz_class counted = count_trees(n, alphabet.size(), q);
        s.check(counted == static_cast<long>(listed.size()), [&] {
          return "count mismatch at n=" + std::to_string(n) + ", d=" +
                 std::to_string(alphabet.size()) + ", q=" + std::to_string(q) +
                 ": formula " + counted.get_str() + ", enumerated " +
                 std::to_string(listed.size());
        });
      }
    }
  const long expected[] = {1, 1, 2, 4, 9};
  for (std::size_t n = 1; n <= 5; ++n)
    s.check(count_trees(n, 1, 1) == expected[n - 1], [&] {
      return "untyped count at n=" + std::to_string(n) + " is not " +
             std::to_string(expected[n - 1]);
    });
  return s.take();
}

using SuiteFn = SuiteResult (*)(const SuiteConfig&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> suites{
      {"semigroup-laws", suite_semigroup_laws},
      {"prelie-family", suite_prelie_family},
      {"grafting", suite_grafting},
      {"multi-symmetry", suite_multi_symmetry},
      {"bplus-recursion", suite_bplus_recursion},
      {"freeness", suite_freeness},
      {"tensor", suite_tensor},
      {"rb-dendriform", suite_rb_dendriform},
      {"operad-axioms", suite_operad_axioms},
      {"operad-relation", suite_operad_relation},
      {"operad-agree", suite_operad_agree},
      {"zinbiel-prepoisson", suite_zinbiel_prepoisson},
      {"counting", suite_counting},
  };
  return suites;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : registry()) out.push_back(name);
    return out;
  }();
  return names;
}

SuiteResult run_suite(const std::string& name, const SuiteConfig& cfg) {
  for (const auto& [n, fn] : registry())
    if (n == name) {
      SuiteResult r = fn(cfg);
      r.rerun = "prelie check " + name + " --seed " + std::to_string(cfg.seed);
      return r;
    }
  throw unknown_suite("unknown suite '" + name + "'");
}

std::vector<SuiteResult> run_all_suites(const SuiteConfig& cfg) {
  std::vector<SuiteResult> out;
  for (const auto& [name, fn] : registry()) out.push_back(run_suite(name, cfg));
  return out;
}

std::string render_report(const SuiteResult& r) {
  std::ostringstream out;
  out << "suite " << r.name << ": " << (r.passed() ? "PASS" : "FAIL") << " ("
      << r.checks << " checks";
  if (!r.passed()) out << ", " << r.failures.size() << " failures";
  out << ")\n";
  for (const auto& f : r.failures) out << "  " << f << "\n";
  if (!r.passed() && !r.rerun.empty()) out << "  re-run: " << r.rerun << "\n";
  return out.str();
}

}  // namespace prelie
