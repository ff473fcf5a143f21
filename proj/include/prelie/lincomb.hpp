#pragma once

#include <algorithm>
#include <concepts>
#include <string>
#include <utility>
#include <vector>

#include "prelie/rational.hpp"

namespace prelie {

// Basis values provide a canonical key (injective byte string; equal
// values iff equal keys) and a display rendering, both found by ADL.
template <class B>
concept BasisValue = requires(const B& b) {
  { canonical_key(b) } -> std::convertible_to<std::string>;
  { render(b) } -> std::convertible_to<std::string>;
};

// Finitely supported linear combination over a basis, with exact
// rational coefficients. Zero coefficients are never stored; terms are
// kept sorted by canonical key (flat storage: these sums stay small).
template <BasisValue B>
class LinComb {
 public:
  using Entry = std::pair<std::string, std::pair<B, Rational>>;
  using Terms = std::vector<Entry>;

  LinComb() = default;

  static LinComb of(const B& b, Rational c = Rational::one()) {
    LinComb u;
    u.add_term(b, c);
    return u;
  }

  void add_term(const B& b, const Rational& c) {
    if (c.is_zero()) return;
    auto&& key = canonical_key(b);
    auto it = std::lower_bound(
        terms_.begin(), terms_.end(), key,
        [](const Entry& e, const std::string& k) { return e.first < k; });
    if (it == terms_.end() || it->first != key) {
      terms_.insert(it, Entry(std::string(key), std::make_pair(b, c)));
      return;
    }
    it->second.second += c;
    if (it->second.second.is_zero()) terms_.erase(it);
  }

  // this += c * o, in one merge pass.
  void add_scaled(const LinComb& o, const Rational& c) {
    if (c.is_zero() || o.terms_.empty()) return;
    if (terms_.empty()) {
      terms_ = o.terms_;
      if (!c.is_one())
        for (auto& e : terms_) e.second.second *= c;
      return;
    }
    Terms merged;
    merged.reserve(terms_.size() + o.terms_.size());
    auto a = terms_.begin();
    auto b = o.terms_.begin();
    while (a != terms_.end() && b != o.terms_.end()) {
      if (a->first < b->first) {
        merged.push_back(std::move(*a++));
      } else if (b->first < a->first) {
        merged.push_back(*b);
        if (!c.is_one()) merged.back().second.second *= c;
        ++b;
      } else {
        Rational sum = a->second.second + c * b->second.second;
        if (!sum.is_zero()) {
          merged.push_back(std::move(*a));
          merged.back().second.second = std::move(sum);
        }
        ++a;
        ++b;
      }
    }
    for (; a != terms_.end(); ++a) merged.push_back(std::move(*a));
    for (; b != o.terms_.end(); ++b) {
      merged.push_back(*b);
      if (!c.is_one()) merged.back().second.second *= c;
    }
    terms_ = std::move(merged);
  }

  LinComb& operator+=(const LinComb& o) {
    add_scaled(o, Rational::one());
    return *this;
  }
  LinComb& operator-=(const LinComb& o) {
    add_scaled(o, Rational(-1));
    return *this;
  }
  LinComb& operator*=(const Rational& c) {
    if (c.is_zero()) {
      terms_.clear();
      return *this;
    }
    if (!c.is_one())
      for (auto& e : terms_) e.second.second *= c;
    return *this;
  }

  friend LinComb operator+(LinComb a, const LinComb& b) { return a += b; }
  friend LinComb operator-(LinComb a, const LinComb& b) { return a -= b; }
  friend LinComb operator*(const Rational& c, LinComb u) { return u *= c; }
  LinComb operator-() const {
    LinComb u = *this;
    for (auto& e : u.terms_) e.second.second = -e.second.second;
    return u;
  }

  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const Terms& terms() const { return terms_; }

  Rational coeff(const B& b) const {
    auto&& key = canonical_key(b);
    auto it = std::lower_bound(
        terms_.begin(), terms_.end(), key,
        [](const Entry& e, const std::string& k) { return e.first < k; });
    if (it == terms_.end() || it->first != key) return Rational(0);
    return it->second.second;
  }

  friend bool operator==(const LinComb& a, const LinComb& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
      if (a.terms_[i].first != b.terms_[i].first ||
          !(a.terms_[i].second.second == b.terms_[i].second.second))
        return false;
    }
    return true;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [key, term] : terms_) {
      const Rational& c = term.second;
      if (first) {
        if (c.sign() < 0) out += "-";
      } else {
        out += c.sign() < 0 ? " - " : " + ";
      }
      Rational abs = c.sign() < 0 ? -c : c;
      if (!abs.is_one()) out += abs.str() + "*";
      out += render(term.first);
      first = false;
    }
    return out;
  }

 private:
  Terms terms_;
};

// Lifts a basis-level map to a linear map on combinations.
template <BasisValue B, class F>
auto linear_extend(F f) {
  return [f](const auto& u) {
    using Out = decltype(f(u.terms().begin()->second.first));
    Out acc;
    for (const auto& [key, term] : u.terms())
      acc.add_scaled(f(term.first), term.second);
    return acc;
  };
}

// Lifts a basis-level binary map to a bilinear map on combinations.
template <BasisValue B, class F>
auto bilinear_extend(F f) {
  return [f](const LinComb<B>& u, const LinComb<B>& v) {
    using Out = decltype(f(std::declval<const B&>(), std::declval<const B&>()));
    Out acc;
    for (const auto& [ku, tu] : u.terms())
      for (const auto& [kv, tv] : v.terms())
        acc.add_scaled(f(tu.first, tv.first), tu.second * tv.second);
    return acc;
  };
}

// Rank over Q of the coefficient matrix of `rows`, by exact Gaussian
// elimination on the union of their basis keys.
template <BasisValue B>
int rank(const std::vector<LinComb<B>>& rows) {
  std::vector<std::string> columns;
  for (const auto& row : rows)
    for (const auto& [key, term] : row.terms()) columns.push_back(key);
  std::sort(columns.begin(), columns.end());
  columns.erase(std::unique(columns.begin(), columns.end()), columns.end());
  auto column_of = [&columns](const std::string& key) {
    return static_cast<std::size_t>(
        std::lower_bound(columns.begin(), columns.end(), key) - columns.begin());
  };
  std::vector<std::vector<Rational>> reduced;  // pivots, normalized
  std::vector<std::size_t> pivot_col;
  for (const auto& row : rows) {
    std::vector<Rational> v(columns.size(), Rational(0));
    for (const auto& [key, term] : row.terms()) v[column_of(key)] = term.second;
    for (std::size_t p = 0; p < reduced.size(); ++p) {
      Rational c = v[pivot_col[p]];  // copy: v mutates below
      if (c.is_zero()) continue;
      for (std::size_t j = 0; j < v.size(); ++j) v[j] -= c * reduced[p][j];
    }
    std::size_t lead = v.size();
    for (std::size_t j = 0; j < v.size(); ++j)
      if (!v[j].is_zero()) {
        lead = j;
        break;
      }
    if (lead == v.size()) continue;
    Rational inv = Rational(1) / v[lead];
    for (auto& c : v) c *= inv;
    reduced.push_back(std::move(v));
    pivot_col.push_back(lead);
  }
  return static_cast<int>(reduced.size());
}

}  // namespace prelie
