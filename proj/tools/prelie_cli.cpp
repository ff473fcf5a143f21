// Command-line surface: enumeration, products, morphism evaluation,
// operad composition, and the identity check suites.

#include <cstdio>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "prelie/errors.hpp"
#include "prelie/operad.hpp"
#include "prelie/rota_baxter.hpp"
#include "prelie/structures.hpp"
#include "prelie/suites.hpp"
#include "prelie/tree_json.hpp"
#include "prelie/trees.hpp"

using nlohmann::json;
using namespace prelie;

namespace {

struct Options {
  std::string semigroup = "zmod:2";
  std::string alphabet = "a,b";
  std::uint64_t seed = 1;
  std::size_t max_size = 4;
  std::string format = "text";

  bool json_out() const { return format == "json"; }
  std::vector<std::string> alphabet_list() const {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos <= alphabet.size()) {
      std::size_t comma = alphabet.find(',', pos);
      if (comma == std::string::npos) comma = alphabet.size();
      if (comma > pos) out.push_back(alphabet.substr(pos, comma - pos));
      pos = comma + 1;
    }
    if (out.empty()) throw error("empty alphabet");
    return out;
  }
};

template <class B>
json lincomb_to_json(const LinComb<B>& u) {
  json terms = json::array();
  for (const auto& [key, term] : u.terms()) {
    json entry;
    entry["basis"] = render(term.first);
    entry["coeff"] = term.second.str();
    terms.push_back(std::move(entry));
  }
  return terms;
}

template <class B>
void emit_lincomb(const Options& opt, const LinComb<B>& u) {
  if (opt.json_out())
    std::cout << lincomb_to_json(u).dump(2) << "\n";
  else
    std::cout << u.str() << "\n";
}

TypedTree::Branch parse_branch(const std::string& arg, const Semigroup& sg) {
  std::size_t colon = arg.find(':');
  if (colon == std::string::npos)
    throw parse_error("expected <type>:<tree> in '" + arg + "'", 0);
  SemigroupElem w = sg.parse(arg.substr(0, colon));
  TypedTree t = parse_tree(arg.substr(colon + 1), sg);
  return {std::move(w), std::move(t)};
}

int cmd_enumerate(const Options& opt, std::size_t n) {
  auto sg = make_semigroup(opt.semigroup);
  auto alphabet = opt.alphabet_list();
  auto trees = enumerate_trees(n, alphabet, *sg);
  mpz_class closed = count_trees(n, alphabet.size(), sg->enumerate().size());
  if (opt.json_out()) {
    json out;
    out["trees"] = json::array();
    for (const auto& t : trees) out["trees"].push_back(t.str());
    out["count"] = trees.size();
    out["closed_form"] = closed.get_str();
    std::cout << out.dump(2) << "\n";
  } else {
    for (const auto& t : trees) std::cout << t.str() << "\n";
    std::cout << "count: " << trees.size() << " (closed form: " << closed
              << ")\n";
  }
  return 0;
}

int cmd_count(const Options& opt, std::size_t n) {
  auto sg = make_semigroup(opt.semigroup);
  mpz_class closed =
      count_trees(n, opt.alphabet_list().size(), sg->enumerate().size());
  if (opt.json_out()) {
    json out;
    out["count"] = closed.get_str();
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << closed << "\n";
  }
  return 0;
}

int cmd_product(const Options& opt, const std::string& s_text,
                const std::string& w_text, const std::string& t_text) {
  auto sg = make_semigroup(opt.semigroup);
  TreeSum result = prelie_product(parse_tree(s_text, *sg), sg->parse(w_text),
                                  parse_tree(t_text, *sg));
  emit_lincomb(opt, result);
  return 0;
}

int cmd_multi_product(const Options& opt, const std::string& target_text,
                      const std::vector<std::string>& factor_args) {
  auto sg = make_semigroup(opt.semigroup);
  auto model = free_tree_model();
  std::vector<Factor<TreeSum>> factors;
  for (const auto& arg : factor_args) {
    auto [w, t] = parse_branch(arg, *sg);
    factors.emplace_back(TreeSum::of(t), w);
  }
  TreeSum result = multi_product(
      model, factors, TreeSum::of(parse_tree(target_text, *sg)));
  emit_lincomb(opt, result);
  return 0;
}

int cmd_bplus(const Options& opt, const std::string& label,
              const std::vector<std::string>& branch_args) {
  auto sg = make_semigroup(opt.semigroup);
  std::vector<TypedTree::Branch> branches;
  for (const auto& arg : branch_args) branches.push_back(parse_branch(arg, *sg));
  TypedTree t = bplus(label, std::move(branches));
  if (opt.json_out())
    std::cout << tree_to_json(t).dump(2) << "\n";
  else
    std::cout << t.str() << "\n";
  return 0;
}

int cmd_tensor_product(const Options& opt, const std::string& s_text,
                       const std::string& a_text, const std::string& t_text,
                       const std::string& b_text) {
  auto sg = make_semigroup(opt.semigroup);
  TensorSum result = tensor_prelie(
      TensorElem{parse_tree(s_text, *sg), sg->parse(a_text)},
      TensorElem{parse_tree(t_text, *sg), sg->parse(b_text)});
  emit_lincomb(opt, result);
  return 0;
}

int cmd_phi(const Options& opt, const std::string& tree_text,
            const std::string& target,
            const std::vector<std::string>& psi_args) {
  auto sg = make_semigroup(opt.semigroup);
  TypedTree input = parse_tree(tree_text, *sg);

  std::map<std::string, std::string> psi_text;
  for (const auto& arg : psi_args) {
    std::size_t eq = arg.find('=');
    if (eq == std::string::npos)
      throw parse_error("expected <label>=<value> in '" + arg + "'", 0);
    psi_text[arg.substr(0, eq)] = arg.substr(eq + 1);
  }

  if (target == "free") {
    auto model = free_tree_model();
    std::map<std::string, TreeSum> psi;
    for (const auto& x : opt.alphabet_list())
      psi.emplace(x, TreeSum::of(TypedTree::leaf(x)));
    for (const auto& [label, text] : psi_text)
      psi.insert_or_assign(label, TreeSum::of(parse_tree(text, *sg)));
    emit_lincomb(opt, universal_morphism(model, psi, input));
    return 0;
  }
  if (target == "tensor") {
    auto model = tensor_tree_model();
    std::map<std::string, TensorSum> psi;
    for (const auto& x : opt.alphabet_list())
      psi.emplace(x, TensorSum::of(TensorElem{TypedTree::leaf(x), sg->identity()}));
    for (const auto& [label, text] : psi_text) {
      std::size_t at = text.rfind('@');
      if (at == std::string::npos)
        throw parse_error("tensor psi values use <tree>@<tag>", 0);
      psi.insert_or_assign(label,
                           TensorSum::of(TensorElem{
                               parse_tree(text.substr(0, at), *sg),
                               sg->parse(text.substr(at + 1))}));
    }
    emit_lincomb(opt, universal_morphism(model, psi, input));
    return 0;
  }
  if (target == "laurent") {
    if (sg->name() != "int")
      throw error("the laurent target needs --semigroup int");
    LaurentAlgebra alg(-64, 64);
    auto model =
        prelie_from_dendriform(dendriform_from_rb(alg.rb_model(), DendriformSplit::A));
    std::map<std::string, LaurentVec> psi;
    for (const auto& [label, text] : psi_text)
      psi.insert_or_assign(label, parse_laurent(text, alg));
    emit_lincomb(opt, universal_morphism(model, psi, input));
    return 0;
  }
  if (target == "dual-poisson") {
    DualPoissonAlgebra alg(24);
    auto model = prelie_from_rb_lie(alg.rb_model());
    std::map<std::string, PolyVec> psi;
    for (const auto& [label, text] : psi_text)
      psi.insert_or_assign(label, parse_dual_poly(text, alg));
    PolyVec value = universal_morphism(model, psi, input);
    if (opt.json_out())
      std::cout << lincomb_to_json(value).dump(2) << "\n";
    else
      std::cout << format_dual_poly(value) << "\n";
    return 0;
  }
  throw error("unknown phi target '" + target +
              "' (expected free|tensor|laurent|dual-poisson)");
}

int cmd_operad_compose(const Options& opt, const std::string& expr) {
  auto sg = make_semigroup(opt.semigroup);
  emit_lincomb(opt, parse_composite(expr, *sg).eval());
  return 0;
}

int cmd_operad_rank(const Options& opt, std::size_t n) {
  auto sg = make_semigroup(opt.semigroup);
  std::size_t q = sg->enumerate().size();
  int got = span_rank(n, *sg);
  long full = 1;
  for (std::size_t i = 0; i + 1 < n; ++i) full *= static_cast<long>(n * q);
  if (opt.json_out()) {
    json out;
    out["rank"] = got;
    out["full_dimension"] = full;
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "rank: " << got << "\nfull dimension: " << full << "\n";
  }
  return got == full ? 0 : 1;
}

int cmd_check(const Options& opt, const std::string& which) {
  SuiteConfig cfg{opt.seed, opt.max_size};
  std::vector<SuiteResult> results;
  if (which == "all")
    results = run_all_suites(cfg);
  else
    results.push_back(run_suite(which, cfg));
  bool ok = true;
  if (opt.json_out()) {
    json out = json::array();
    for (const auto& r : results) {
      ok = ok && r.passed();
      json entry;
      entry["suite"] = r.name;
      entry["passed"] = r.passed();
      entry["checks"] = r.checks;
      entry["failures"] = r.failures;
      out.push_back(std::move(entry));
    }
    std::cout << out.dump(2) << "\n";
  } else {
    for (const auto& r : results) {
      ok = ok && r.passed();
      std::cout << render_report(r);
    }
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"free pre-Lie family algebras on typed decorated rooted trees"};
  app.require_subcommand(1);

  Options opt;
  app.add_option("--semigroup", opt.semigroup,
                 "semigroup descriptor: trivial | zmod:<m> | int | "
                 "freecm:<g1,...,gk>")
      ->capture_default_str();
  app.add_option("--alphabet", opt.alphabet, "comma-separated decorations")
      ->capture_default_str();
  app.add_option("--seed", opt.seed, "seed for randomized suites")
      ->capture_default_str();
  app.add_option("--max-size", opt.max_size, "size bound for random inputs")
      ->capture_default_str();
  app.add_option("--format", opt.format, "output format: text | json")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();

  std::size_t n = 1;
  std::string s_text, w_text, t_text, b_text, label, target_text, expr;
  std::string target = "free";
  std::vector<std::string> list_args;

  auto* enumerate = app.add_subcommand("enumerate", "list all trees of size n");
  enumerate->add_option("n", n, "number of vertices")->required();

  auto* count = app.add_subcommand("count", "count trees of size n");
  count->add_option("n", n, "number of vertices")->required();

  auto* product =
      app.add_subcommand("product", "grafting product S >_w T");
  product->add_option("S", s_text)->required();
  product->add_option("w", w_text)->required();
  product->add_option("T", t_text)->required();

  auto* multi = app.add_subcommand(
      "multi-product", "multilinear product of factors onto a target");
  multi->add_option("target", target_text)->required();
  multi->add_option("factors", list_args, "<w>:<tree> ...");

  auto* bplus_cmd =
      app.add_subcommand("bplus", "graft branches onto a fresh root");
  bplus_cmd->add_option("label", label)->required();
  bplus_cmd->add_option("branches", list_args, "<w>:<tree> ...");

  auto* tensor =
      app.add_subcommand("tensor-product", "(S @ a) x (T @ b) product");
  tensor->add_option("S", s_text)->required();
  tensor->add_option("a", w_text)->required();
  tensor->add_option("T", t_text)->required();
  tensor->add_option("b", b_text)->required();

  auto* phi = app.add_subcommand(
      "phi", "evaluate the structure morphism on a tree");
  phi->add_option("tree", s_text)->required();
  phi->add_option("--target", target, "free | tensor | laurent | dual-poisson")
      ->capture_default_str();
  phi->add_option("--psi", list_args, "<label>=<value> assignments");

  auto* operad = app.add_subcommand("operad", "labeled-tree operad operations");
  operad->require_subcommand(1);
  auto* compose = operad->add_subcommand("compose", "evaluate a composite");
  compose->add_option("expr", expr,
                      "gen(<w>,<a>,<b>) | compose(<v>, <e1>, <e2>)")
      ->required();
  auto* rank_cmd = operad->add_subcommand("rank", "span rank of composites");
  rank_cmd->add_option("n", n, "number of labels (2 or 3)")->required();

  auto* check = app.add_subcommand("check", "run an identity suite");
  check->add_option("suite", expr, "suite name or 'all'")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*enumerate) return cmd_enumerate(opt, n);
    if (*count) return cmd_count(opt, n);
    if (*product) return cmd_product(opt, s_text, w_text, t_text);
    if (*multi) return cmd_multi_product(opt, target_text, list_args);
    if (*bplus_cmd) return cmd_bplus(opt, label, list_args);
    if (*tensor) return cmd_tensor_product(opt, s_text, w_text, t_text, b_text);
    if (*phi) return cmd_phi(opt, s_text, target, list_args);
    if (*compose) return cmd_operad_compose(opt, expr);
    if (*rank_cmd) return cmd_operad_rank(opt, n);
    if (*check) return cmd_check(opt, expr);
  } catch (const unknown_suite& e) {
    std::cerr << "error: " << e.what() << "\n";
    std::cerr << "available suites:";
    for (const auto& name : suite_names()) std::cerr << " " << name;
    std::cerr << " all\n";
    return 2;
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
