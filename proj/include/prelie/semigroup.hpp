#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "prelie/errors.hpp"

namespace prelie {

class Semigroup;
using SemigroupPtr = std::shared_ptr<const Semigroup>;

// An element of a commutative semigroup. `enc` is the canonical byte
// encoding: injective per semigroup, totally ordered lexicographically.
// Elements keep a handle to their parent semigroup so the product can
// be taken anywhere without threading the descriptor around.
class SemigroupElem {
 public:
  SemigroupElem() = default;
  SemigroupElem(SemigroupPtr sg, std::string enc)
      : sg_(std::move(sg)), enc_(std::move(enc)) {}

  const std::string& enc() const { return enc_; }
  const Semigroup& semigroup() const;
  const SemigroupPtr& semigroup_ptr() const { return sg_; }

  SemigroupElem op(const SemigroupElem& other) const;  // the product
  std::string str() const;                             // text codec form

  friend bool operator==(const SemigroupElem& a, const SemigroupElem& b);
  friend std::strong_ordering operator<=>(const SemigroupElem& a,
                                          const SemigroupElem& b);

 private:
  SemigroupPtr sg_;
  std::string enc_;
};

// Abstract commutative semigroup descriptor. Instances are immutable;
// commutativity and associativity are enforced by the law checker, not
// by construction, so user-defined semigroups can plug in.
class Semigroup : public std::enable_shared_from_this<Semigroup> {
 public:
  virtual ~Semigroup() = default;

  virtual const std::string& name() const = 0;

  SemigroupElem op(const SemigroupElem& a, const SemigroupElem& b) const;
  SemigroupElem parse(std::string_view text) const;
  std::string format(const SemigroupElem& e) const;

  virtual bool finite() const = 0;
  // Each element exactly once, in encoding order. Throws not_finite.
  std::vector<SemigroupElem> enumerate() const;
  // Identity element when the semigroup is a monoid.
  virtual std::optional<std::string> identity_enc() const { return std::nullopt; }
  SemigroupElem identity() const;

  // Deterministic sample for randomized suites. Finite semigroups draw
  // uniformly; infinite ones draw from a small bounded window.
  SemigroupElem sample(std::mt19937_64& rng) const;

  SemigroupElem make(std::string enc) const;

 protected:
  virtual std::string op_enc(const std::string& a, const std::string& b) const = 0;
  virtual std::string parse_enc(std::string_view text) const = 0;
  virtual std::string format_enc(const std::string& enc) const = 0;
  virtual std::vector<std::string> enumerate_enc() const;
  virtual std::string sample_enc(std::mt19937_64& rng) const;

  void require_member(const SemigroupElem& e) const;
};

// Builds one of the built-in descriptors:
//   trivial | zmod:<m> | int | freecm:<g1,...,gk>
SemigroupPtr make_semigroup(std::string_view descriptor);

struct LawViolation {
  std::string detail;
};

// Empty report iff op is commutative on all sampled pairs and
// associative on all sampled triples.
std::vector<LawViolation> check_commutative_associative(
    const Semigroup& sg, std::span<const SemigroupElem> samples);

// Order-preserving injective encodings shared with other key schemes.
std::string encode_int64(std::int64_t k);
std::int64_t decode_int64(const std::string& enc);

}  // namespace prelie
