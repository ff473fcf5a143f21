#include "prelie/semigroup.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>

namespace prelie {

namespace {

bool is_token_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

bool valid_token(std::string_view s) {
  if (s.empty()) return false;
  if (std::isdigit(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin(), s.end(), is_token_char);
}

long parse_long(std::string_view s, const char* what) {
  long value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw parse_error(std::string("expected integer ") + what, 0);
  return value;
}

}  // namespace

std::string encode_int64(std::int64_t k) {
  // Offset-binary hex: lexicographic order of encodings equals numeric order.
  std::uint64_t biased = static_cast<std::uint64_t>(k) ^ (1ull << 63);
  char buf[17];
  for (int i = 15; i >= 0; --i) {
    buf[i] = "0123456789abcdef"[biased & 0xf];
    biased >>= 4;
  }
  buf[16] = '\0';
  return std::string(buf, 16);
}

std::int64_t decode_int64(const std::string& enc) {
  std::uint64_t biased = 0;
  for (char c : enc) {
    biased <<= 4;
    if (c >= '0' && c <= '9')
      biased |= static_cast<std::uint64_t>(c - '0');
    else if (c >= 'a' && c <= 'f')
      biased |= static_cast<std::uint64_t>(c - 'a' + 10);
    else
      throw error("corrupt integer encoding");
  }
  return static_cast<std::int64_t>(biased ^ (1ull << 63));
}

const Semigroup& SemigroupElem::semigroup() const {
  if (!sg_) throw error("element has no semigroup");
  return *sg_;
}

SemigroupElem SemigroupElem::op(const SemigroupElem& other) const {
  return semigroup().op(*this, other);
}

std::string SemigroupElem::str() const { return semigroup().format(*this); }

bool operator==(const SemigroupElem& a, const SemigroupElem& b) {
  return (a <=> b) == std::strong_ordering::equal;
}

std::strong_ordering operator<=>(const SemigroupElem& a,
                                 const SemigroupElem& b) {
  const std::string& an = a.sg_ ? a.sg_->name() : std::string();
  const std::string& bn = b.sg_ ? b.sg_->name() : std::string();
  if (auto c = an <=> bn; c != 0) return c;
  return a.enc_ <=> b.enc_;
}

void Semigroup::require_member(const SemigroupElem& e) const {
  if (e.semigroup_ptr().get() == this) return;  // common case
  if (!e.semigroup_ptr() || e.semigroup_ptr()->name() != name())
    throw element_mismatch("element of '" +
                           (e.semigroup_ptr() ? e.semigroup_ptr()->name()
                                              : std::string("<none>")) +
                           "' used with semigroup '" + name() + "'");
}

SemigroupElem Semigroup::op(const SemigroupElem& a,
                            const SemigroupElem& b) const {
  require_member(a);
  require_member(b);
  return make(op_enc(a.enc(), b.enc()));
}

SemigroupElem Semigroup::parse(std::string_view text) const {
  return make(parse_enc(text));
}

std::string Semigroup::format(const SemigroupElem& e) const {
  require_member(e);
  return format_enc(e.enc());
}

std::vector<SemigroupElem> Semigroup::enumerate() const {
  if (!finite())
    throw not_finite("semigroup '" + name() + "' is not finite");
  std::vector<SemigroupElem> out;
  for (auto& enc : enumerate_enc()) out.push_back(make(std::move(enc)));
  return out;
}

std::vector<std::string> Semigroup::enumerate_enc() const {
  throw not_finite("semigroup '" + name() + "' is not finite");
}

SemigroupElem Semigroup::identity() const {
  auto id = identity_enc();
  if (!id) throw error("semigroup '" + name() + "' has no identity");
  return make(*id);
}

SemigroupElem Semigroup::sample(std::mt19937_64& rng) const {
  return make(sample_enc(rng));
}

std::string Semigroup::sample_enc(std::mt19937_64& rng) const {
  // Raw modulo keeps the draw sequence pinned to the engine alone.
  auto all = enumerate_enc();
  return all[rng() % all.size()];
}

SemigroupElem Semigroup::make(std::string enc) const {
  return SemigroupElem(shared_from_this(), std::move(enc));
}

namespace {

class TrivialSemigroup final : public Semigroup {
 public:
  const std::string& name() const override {
    static const std::string n = "trivial";
    return n;
  }
  bool finite() const override { return true; }
  std::optional<std::string> identity_enc() const override { return "e"; }

 protected:
  std::string op_enc(const std::string&, const std::string&) const override {
    return "e";
  }
  std::string parse_enc(std::string_view text) const override {
    if (text != "e") throw parse_error("trivial semigroup element must be 'e'", 0);
    return "e";
  }
  std::string format_enc(const std::string&) const override { return "e"; }
  std::vector<std::string> enumerate_enc() const override { return {"e"}; }
};

// Additive Z/m. Encodings are zero-padded decimals of the canonical
// representative so encoding order matches numeric order; all m
// encodings are precomputed once.
class ZmodSemigroup final : public Semigroup {
 public:
  explicit ZmodSemigroup(unsigned long m)
      : m_(m), name_("zmod:" + std::to_string(m)) {
    std::size_t width = std::to_string(m_ - 1).size();
    encs_.reserve(m_);
    for (unsigned long k = 0; k < m_; ++k) {
      std::string s = std::to_string(k);
      encs_.push_back(std::string(width - s.size(), '0') + s);
    }
  }
  const std::string& name() const override { return name_; }
  bool finite() const override { return true; }
  std::optional<std::string> identity_enc() const override { return encs_[0]; }

 protected:
  std::string op_enc(const std::string& a, const std::string& b) const override {
    return encs_[(value(a) + value(b)) % m_];
  }
  std::string parse_enc(std::string_view text) const override {
    long v = parse_long(text, "residue");
    long m = static_cast<long>(m_);
    return encs_[static_cast<unsigned long>(((v % m) + m) % m)];
  }
  std::string format_enc(const std::string& enc) const override {
    return std::to_string(value(enc));
  }
  std::vector<std::string> enumerate_enc() const override { return encs_; }

 private:
  unsigned long value(const std::string& enc) const {
    unsigned long v = 0;
    for (char c : enc) v = v * 10 + static_cast<unsigned long>(c - '0');
    return v;
  }
  unsigned long m_;
  std::string name_;
  std::vector<std::string> encs_;
};

class IntSemigroup final : public Semigroup {
 public:
  const std::string& name() const override {
    static const std::string n = "int";
    return n;
  }
  bool finite() const override { return false; }
  std::optional<std::string> identity_enc() const override {
    return encode_int64(0);
  }

 protected:
  std::string op_enc(const std::string& a, const std::string& b) const override {
    std::int64_t r = 0;
    if (__builtin_add_overflow(decode_int64(a), decode_int64(b), &r))
      throw error("integer semigroup overflow");
    return encode_int64(r);
  }
  std::string parse_enc(std::string_view text) const override {
    return encode_int64(parse_long(text, "value"));
  }
  std::string format_enc(const std::string& enc) const override {
    return std::to_string(decode_int64(enc));
  }
  std::string sample_enc(std::mt19937_64& rng) const override {
    return encode_int64(static_cast<std::int64_t>(rng() % 7) - 3);
  }
};

// Free commutative monoid on named generators; elements are exponent
// multisets. Encodings join all k exponents with commas.
class FreeCMSemigroup final : public Semigroup {
 public:
  explicit FreeCMSemigroup(std::vector<std::string> gens)
      : gens_(std::move(gens)) {
    name_ = "freecm:";
    for (std::size_t i = 0; i < gens_.size(); ++i) {
      if (i) name_ += ',';
      name_ += gens_[i];
    }
  }
  const std::string& name() const override { return name_; }
  bool finite() const override { return false; }
  std::optional<std::string> identity_enc() const override {
    return join(std::vector<unsigned long>(gens_.size(), 0));
  }

 protected:
  std::string op_enc(const std::string& a, const std::string& b) const override {
    auto ea = split(a), eb = split(b);
    for (std::size_t i = 0; i < ea.size(); ++i) ea[i] += eb[i];
    return join(ea);
  }
  std::string parse_enc(std::string_view text) const override;
  std::string format_enc(const std::string& enc) const override;
  std::string sample_enc(std::mt19937_64& rng) const override {
    std::vector<unsigned long> e(gens_.size());
    for (auto& x : e) x = rng() % 3;
    return join(e);
  }

 private:
  std::vector<unsigned long> split(const std::string& enc) const {
    std::vector<unsigned long> out;
    std::size_t pos = 0;
    while (pos <= enc.size()) {
      std::size_t next = enc.find(',', pos);
      if (next == std::string::npos) next = enc.size();
      out.push_back(std::stoul(enc.substr(pos, next - pos)));
      pos = next + 1;
    }
    if (out.size() != gens_.size()) throw error("corrupt freecm encoding");
    return out;
  }
  std::string join(const std::vector<unsigned long>& e) const {
    std::string out;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(e[i]);
    }
    return out;
  }
  std::vector<std::string> gens_;
  std::string name_;
};

std::string FreeCMSemigroup::parse_enc(std::string_view text) const {
  // Grammar: "1" (identity) or g1^e1*g2^e2 with generators in declared
  // order, ^1 omitted, zero exponents omitted.
  std::vector<unsigned long> e(gens_.size(), 0);
  if (text == "1") return join(e);
  std::size_t i = 0;
  while (i < text.size()) {
    std::size_t start = i;
    while (i < text.size() && is_token_char(text[i])) ++i;
    std::string gen(text.substr(start, i - start));
    auto it = std::find(gens_.begin(), gens_.end(), gen);
    if (it == gens_.end())
      throw parse_error("unknown generator '" + gen + "'", start);
    unsigned long exp = 1;
    if (i < text.size() && text[i] == '^') {
      ++i;
      std::size_t dstart = i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      if (i == dstart) throw parse_error("expected exponent", i);
      exp = std::stoul(std::string(text.substr(dstart, i - dstart)));
    }
    e[static_cast<std::size_t>(it - gens_.begin())] += exp;
    if (i < text.size()) {
      if (text[i] != '*') throw parse_error("expected '*'", i);
      ++i;
      if (i == text.size()) throw parse_error("trailing '*'", i);
    }
  }
  return join(e);
}

std::string FreeCMSemigroup::format_enc(const std::string& enc) const {
  auto e = split(enc);
  std::string out;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += gens_[i];
    if (e[i] > 1) out += '^' + std::to_string(e[i]);
  }
  return out.empty() ? "1" : out;
}

}  // namespace

SemigroupPtr make_semigroup(std::string_view descriptor) {
  if (descriptor == "trivial") return std::make_shared<TrivialSemigroup>();
  if (descriptor == "int") return std::make_shared<IntSemigroup>();
  if (descriptor.starts_with("zmod:")) {
    long m = parse_long(descriptor.substr(5), "modulus");
    if (m < 1) throw parse_error("zmod modulus must be >= 1", 5);
    return std::make_shared<ZmodSemigroup>(static_cast<unsigned long>(m));
  }
  if (descriptor.starts_with("freecm:")) {
    std::vector<std::string> gens;
    std::string_view rest = descriptor.substr(7);
    while (!rest.empty()) {
      std::size_t comma = rest.find(',');
      std::string_view gen = rest.substr(0, comma);
      if (!valid_token(gen))
        throw parse_error("bad freecm generator '" + std::string(gen) + "'", 7);
      gens.emplace_back(gen);
      rest = comma == std::string_view::npos ? std::string_view()
                                             : rest.substr(comma + 1);
    }
    if (gens.empty()) throw parse_error("freecm needs at least one generator", 7);
    for (std::size_t i = 0; i < gens.size(); ++i)
      for (std::size_t j = i + 1; j < gens.size(); ++j)
        if (gens[i] == gens[j])
          throw parse_error("duplicate freecm generator '" + gens[i] + "'", 7);
    return std::make_shared<FreeCMSemigroup>(std::move(gens));
  }
  throw parse_error("unknown semigroup descriptor '" + std::string(descriptor) +
                        "'",
                    0);
}

std::vector<LawViolation> check_commutative_associative(
    const Semigroup& sg, std::span<const SemigroupElem> samples) {
  std::vector<LawViolation> report;
  for (const auto& a : samples)
    for (const auto& b : samples) {
      if (sg.op(a, b) != sg.op(b, a))
        report.push_back({"op(" + a.str() + ", " + b.str() + ") != op(" +
                          b.str() + ", " + a.str() + ")"});
    }
  for (const auto& a : samples)
    for (const auto& b : samples)
      for (const auto& c : samples) {
        if (sg.op(sg.op(a, b), c) != sg.op(a, sg.op(b, c)))
          report.push_back({"associativity fails on (" + a.str() + ", " +
                            b.str() + ", " + c.str() + ")"});
      }
  return report;
}

}  // namespace prelie
