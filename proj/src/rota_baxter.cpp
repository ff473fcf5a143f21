#include "prelie/rota_baxter.hpp"

#include <cctype>
#include <charconv>

namespace prelie {

// --- Laurent --------------------------------------------------------------

LaurentAlgebra::LaurentAlgebra(std::int64_t kmin, std::int64_t kmax)
    : kmin_(kmin), kmax_(kmax) {
  if (kmin > kmax) throw error("empty Laurent window");
}

void LaurentAlgebra::require_windowed(std::int64_t k) const {
  if (k < kmin_ || k > kmax_)
    throw window_overflow("exponent " + std::to_string(k) +
                          " outside Laurent window [" + std::to_string(kmin_) +
                          ", " + std::to_string(kmax_) + "]");
}

LaurentVec LaurentAlgebra::monomial(std::int64_t k, Rational c) const {
  require_windowed(k);
  return LaurentVec::of(LaurentBasis{k}, c);
}

LaurentVec LaurentAlgebra::mul(const LaurentVec& a, const LaurentVec& b) const {
  LaurentVec out;
  for (const auto& [ka, ta] : a.terms())
    for (const auto& [kb, tb] : b.terms()) {
      std::int64_t k = ta.first.k + tb.first.k;
      require_windowed(k);
      out.add_term(LaurentBasis{k}, ta.second * tb.second);
    }
  return out;
}

LaurentVec LaurentAlgebra::proj(const SemigroupElem& w,
                                const LaurentVec& x) const {
  if (w.semigroup().name() != "int")
    throw element_mismatch("Laurent operators are indexed by 'int'");
  std::int64_t cut = decode_int64(w.enc());
  LaurentVec out;
  for (const auto& [key, term] : x.terms())
    if (term.first.k < cut) out.add_term(term.first, term.second);
  return out;
}

RBFamilyModel<LaurentVec> LaurentAlgebra::rb_model() const {
  LaurentAlgebra alg = *this;
  return {"laurent",
          Rational(-1),
          [alg](const LaurentVec& a, const LaurentVec& b) { return alg.mul(a, b); },
          [alg](const SemigroupElem& w, const LaurentVec& x) {
            return alg.proj(w, x);
          },
          nullptr};
}

// --- characters -----------------------------------------------------------

Rational character(const SemigroupElem& w) {
  const std::string& name = w.semigroup().name();
  if (name == "trivial") return Rational(1);
  if (name == "int") return Rational::pow2(decode_int64(w.enc()));
  if (name.starts_with("zmod:")) return Rational::pow2(std::stol(w.enc()));
  if (name.starts_with("freecm:")) {
    long degree = 0;
    std::size_t pos = 0;
    const std::string& enc = w.enc();
    while (pos <= enc.size()) {
      std::size_t next = enc.find(',', pos);
      if (next == std::string::npos) next = enc.size();
      degree += std::stol(enc.substr(pos, next - pos));
      pos = next + 1;
    }
    return Rational::pow2(degree);
  }
  return Rational(1);
}

// --- dual-number polynomial Poisson model ----------------------------------

std::string canonical_key(const PolyBasis& b) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "p%03uq%03ue%u", b.px, b.qx, b.eps ? 1u : 0u);
  return buf;
}

std::string render(const PolyBasis& b) {
  std::string out;
  auto factor = [&out](const char* var, unsigned e) {
    if (e == 0) return;
    if (!out.empty()) out += '*';
    out += var;
    if (e > 1) out += '^' + std::to_string(e);
  };
  factor("p", b.px);
  factor("q", b.qx);
  if (b.eps) {
    if (!out.empty()) out += '*';
    out += "eps";
  }
  return out.empty() ? "1" : out;
}

DualPoissonAlgebra::DualPoissonAlgebra(unsigned max_degree)
    : max_degree_(max_degree) {}

PolyVec DualPoissonAlgebra::monomial(unsigned px, unsigned qx, bool eps,
                                     Rational c) const {
  if (px + qx > max_degree_)
    throw window_overflow("monomial degree exceeds bound");
  return PolyVec::of(PolyBasis{px, qx, eps}, c);
}

PolyVec DualPoissonAlgebra::mul(const PolyVec& a, const PolyVec& b) const {
  PolyVec out;
  for (const auto& [ka, ta] : a.terms())
    for (const auto& [kb, tb] : b.terms()) {
      if (ta.first.eps && tb.first.eps) continue;  // eps^2 = 0
      unsigned px = ta.first.px + tb.first.px;
      unsigned qx = ta.first.qx + tb.first.qx;
      if (px + qx > max_degree_)
        throw window_overflow("product degree exceeds bound");
      out.add_term(PolyBasis{px, qx, ta.first.eps || tb.first.eps},
                   ta.second * tb.second);
    }
  return out;
}

PolyVec DualPoissonAlgebra::bracket(const PolyVec& a, const PolyVec& b) const {
  PolyVec out;
  for (const auto& [ka, ta] : a.terms())
    for (const auto& [kb, tb] : b.terms()) {
      if (ta.first.eps && tb.first.eps) continue;
      const PolyBasis& f = ta.first;
      const PolyBasis& g = tb.first;
      // {p^i q^j, p^k q^l} = (i l - j k) p^(i+k-1) q^(j+l-1)
      long il = static_cast<long>(f.px) * g.qx;
      long jk = static_cast<long>(f.qx) * g.px;
      if (il == jk) continue;
      unsigned px = f.px + g.px - 1;
      unsigned qx = f.qx + g.qx - 1;
      if (px + qx > max_degree_)
        throw window_overflow("bracket degree exceeds bound");
      out.add_term(PolyBasis{px, qx, f.eps || g.eps},
                   ta.second * tb.second * Rational(il - jk));
    }
  return out;
}

PolyVec DualPoissonAlgebra::proj(const SemigroupElem& w, const PolyVec& x) const {
  Rational chi = character(w);
  PolyVec out;
  for (const auto& [key, term] : x.terms()) {
    if (term.first.eps) continue;
    out.add_term(PolyBasis{term.first.px, term.first.qx, true},
                 chi * term.second);
  }
  return out;
}

RBFamilyModel<PolyVec> DualPoissonAlgebra::rb_model() const {
  DualPoissonAlgebra alg = *this;
  return {"dual-poisson",
          Rational(0),
          [alg](const PolyVec& a, const PolyVec& b) { return alg.mul(a, b); },
          [alg](const SemigroupElem& w, const PolyVec& x) {
            return alg.proj(w, x);
          },
          [alg](const PolyVec& a, const PolyVec& b) { return alg.bracket(a, b); }};
}

// --- dual-number 2x2 matrix model ------------------------------------------

std::string canonical_key(const MatBasis& b) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "m%u%ue%u", b.row, b.col, b.eps ? 1u : 0u);
  return buf;
}

std::string render(const MatBasis& b) {
  std::string out = "m" + std::to_string(b.row) + std::to_string(b.col);
  if (b.eps) out += "*eps";
  return out;
}

MatVec DualMatrixAlgebra::unit(unsigned row, unsigned col, bool eps,
                               Rational c) const {
  if (row < 1 || row > 2 || col < 1 || col > 2)
    throw error("matrix unit index out of range");
  return MatVec::of(MatBasis{row, col, eps}, c);
}

MatVec DualMatrixAlgebra::mul(const MatVec& a, const MatVec& b) const {
  MatVec out;
  for (const auto& [ka, ta] : a.terms())
    for (const auto& [kb, tb] : b.terms()) {
      if (ta.first.eps && tb.first.eps) continue;
      if (ta.first.col != tb.first.row) continue;
      out.add_term(MatBasis{ta.first.row, tb.first.col,
                            ta.first.eps || tb.first.eps},
                   ta.second * tb.second);
    }
  return out;
}

MatVec DualMatrixAlgebra::bracket(const MatVec& a, const MatVec& b) const {
  return mul(a, b) - mul(b, a);
}

MatVec DualMatrixAlgebra::proj(const SemigroupElem& w, const MatVec& x) const {
  Rational chi = character(w);
  MatVec out;
  for (const auto& [key, term] : x.terms()) {
    if (term.first.eps) continue;
    out.add_term(MatBasis{term.first.row, term.first.col, true},
                 chi * term.second);
  }
  return out;
}

RBFamilyModel<MatVec> DualMatrixAlgebra::rb_model() const {
  DualMatrixAlgebra alg = *this;
  return {"dual-matrix",
          Rational(0),
          [alg](const MatVec& a, const MatVec& b) { return alg.mul(a, b); },
          [alg](const SemigroupElem& w, const MatVec& x) { return alg.proj(w, x); },
          [alg](const MatVec& a, const MatVec& b) { return alg.bracket(a, b); }};
}

// --- parsers ---------------------------------------------------------------

namespace {

struct ExprParser {
  std::string_view text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() &&
           std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  bool peek_alpha(std::string_view word) {
    skip_ws();
    if (text.substr(pos, word.size()) != word) return false;
    std::size_t end = pos + word.size();
    return end >= text.size() ||
           !std::isalnum(static_cast<unsigned char>(text[end]));
  }
  Rational number() {
    skip_ws();
    std::size_t start = pos;
    if (pos < text.size() && text[pos] == '-') ++pos;
    while (pos < text.size() &&
           std::isdigit(static_cast<unsigned char>(text[pos])))
      ++pos;
    if (pos < text.size() && text[pos] == '/') {  // no spaces inside a number
      ++pos;
      while (pos < text.size() &&
             std::isdigit(static_cast<unsigned char>(text[pos])))
        ++pos;
    }
    return Rational::parse(text.substr(start, pos - start));
  }
  long exponent(bool allow_negative) {
    skip_ws();
    std::size_t start = pos;
    if (allow_negative && pos < text.size() && text[pos] == '-') ++pos;
    std::size_t dstart = pos;
    while (pos < text.size() &&
           std::isdigit(static_cast<unsigned char>(text[pos])))
      ++pos;
    if (pos == dstart) throw parse_error("expected exponent", pos);
    long value = 0;
    std::from_chars(text.data() + start, text.data() + pos, value);
    return value;
  }
  bool at_number() {
    skip_ws();
    return pos < text.size() &&
           std::isdigit(static_cast<unsigned char>(text[pos]));
  }
  void done() {
    skip_ws();
    if (pos != text.size())
      throw parse_error("trailing characters in expression", pos);
  }
};

}  // namespace

LaurentVec parse_laurent(std::string_view text, const LaurentAlgebra& alg) {
  ExprParser p{text};
  LaurentVec acc;
  bool first = true;
  while (true) {
    p.skip_ws();
    bool negative = false;
    if (p.eat('-'))
      negative = true;
    else if (!first && !p.eat('+'))
      break;
    Rational coeff(1);
    if (p.at_number()) {
      coeff = p.number();
      if (!p.eat('*')) {
        acc += alg.monomial(0, negative ? -coeff : coeff);
        first = false;
        continue;
      }
    }
    p.skip_ws();
    if (p.pos >= p.text.size() || p.text[p.pos] != 'z')
      throw parse_error("expected 'z'", p.pos);
    ++p.pos;
    std::int64_t k = 1;  // bare z means z^1
    if (p.eat('^')) k = p.exponent(true);
    acc += alg.monomial(k, negative ? -coeff : coeff);
    first = false;
    if (p.pos >= p.text.size()) break;
  }
  p.done();
  if (first) throw parse_error("empty Laurent expression", 0);
  return acc;
}

namespace {

struct PolyParser : ExprParser {
  const DualPoissonAlgebra& alg;
  PolyParser(std::string_view t, const DualPoissonAlgebra& a)
      : ExprParser{t}, alg(a) {}

  PolyVec expr() {
    PolyVec acc;
    bool negative = eat('-');
    acc = term();
    if (negative) acc *= Rational(-1);
    while (true) {
      if (eat('+'))
        acc += term();
      else if (eat('-'))
        acc -= term();
      else
        break;
    }
    return acc;
  }

  PolyVec term() {
    PolyVec acc = factor();
    while (eat('*')) acc = alg.mul(acc, factor());
    return acc;
  }

  PolyVec factor() {
    skip_ws();
    if (eat('(')) {
      PolyVec inner = expr();
      if (!eat(')')) throw parse_error("expected ')'", pos);
      return inner;
    }
    if (at_number()) return alg.monomial(0, 0, false, number());
    if (peek_alpha("eps")) {
      pos += 3;
      return alg.monomial(0, 0, true);
    }
    if (pos < text.size() && (text[pos] == 'p' || text[pos] == 'q')) {
      bool is_p = text[pos] == 'p';
      ++pos;
      unsigned e = 1;
      if (eat('^')) e = static_cast<unsigned>(exponent(false));
      return alg.monomial(is_p ? e : 0, is_p ? 0 : e);
    }
    throw parse_error("expected polynomial factor", pos);
  }
};

}  // namespace

PolyVec parse_dual_poly(std::string_view text, const DualPoissonAlgebra& alg) {
  PolyParser p(text, alg);
  PolyVec v = p.expr();
  p.done();
  return v;
}

std::string format_dual_poly(const PolyVec& v) {
  PolyVec plain, dual;
  for (const auto& [key, term] : v.terms()) {
    PolyBasis b = term.first;
    if (b.eps) {
      b.eps = false;
      dual.add_term(b, term.second);
    } else {
      plain.add_term(b, term.second);
    }
  }
  if (dual.is_zero()) return plain.str();
  std::string eps_part = "eps*(" + dual.str() + ")";
  if (plain.is_zero()) return eps_part;
  return plain.str() + " + " + eps_part;
}

}  // namespace prelie
