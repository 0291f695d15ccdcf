#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pcurv/arith/complex_rational.hpp"
#include "pcurv/arith/polynomial.hpp"
#include "pcurv/arith/rational.hpp"

namespace pcurv {

using QPoly = Polynomial<BigRational>;

/// Q[t]/(f) for a monic irreducible f, together with certified discs around
/// each complex root of f (one per embedding).
class NumberField {
 public:
  static constexpr unsigned kDefaultBits = 64;
  static constexpr unsigned kDefaultMaxBits = 1 << 14;

  /// Verifies irreducibility; throws PreconditionError otherwise.
  static std::shared_ptr<const NumberField> create(const QPoly& min_poly, std::string generator = "t");
  /// Q itself, presented as Q[t]/(t).
  static std::shared_ptr<const NumberField> rationals();

  const QPoly& min_poly() const { return min_poly_; }
  std::size_t degree() const { return static_cast<std::size_t>(min_poly_.degree()); }
  const std::string& generator_name() const { return generator_; }
  const std::vector<RootDisc>& embeddings() const { return embeddings_; }
  /// Root discs at a higher working precision; does not modify the field.
  std::vector<RootDisc> embeddings_at(unsigned bits, unsigned max_bits = kDefaultMaxBits) const;

  bool same_as(const NumberField& other) const { return this == &other || min_poly_ == other.min_poly_; }

 private:
  NumberField(QPoly min_poly, std::string generator, std::vector<RootDisc> embeddings)
      : min_poly_(std::move(min_poly)), generator_(std::move(generator)), embeddings_(std::move(embeddings)) {}

  QPoly min_poly_;
  std::string generator_;
  std::vector<RootDisc> embeddings_;
};

/// Element of a number field in the power basis 1, t, ..., t^(d-1).
class NumberFieldElement {
 public:
  struct Context {
    std::shared_ptr<const NumberField> field;
    bool operator==(const Context& o) const {
      if (field == o.field) return true;
      return field && o.field && field->same_as(*o.field);
    }
  };

  NumberFieldElement() = default;
  NumberFieldElement(std::shared_ptr<const NumberField> field, std::vector<BigRational> coords);
  NumberFieldElement(std::shared_ptr<const NumberField> field, const BigRational& value);

  static NumberFieldElement zero(const Context& ctx) { return {ctx.field, BigRational(0)}; }
  static NumberFieldElement one(const Context& ctx) { return {ctx.field, BigRational(1)}; }
  static NumberFieldElement from_integer(const Context& ctx, const BigInt& n) { return {ctx.field, BigRational(n)}; }
  static NumberFieldElement generator(const std::shared_ptr<const NumberField>& field);
  /// Reduces an arbitrary rational polynomial in the generator.
  static NumberFieldElement from_polynomial(const std::shared_ptr<const NumberField>& field, const QPoly& p);

  Context context() const { return {field_}; }
  const std::shared_ptr<const NumberField>& field() const { return field_; }
  const std::vector<BigRational>& coordinates() const { return coords_; }
  /// The element as a polynomial of degree < d in the generator.
  QPoly as_polynomial() const;

  bool is_zero() const;
  bool is_rational() const;
  BigRational rational_value() const;

  NumberFieldElement inverse() const;

  friend NumberFieldElement operator+(const NumberFieldElement& a, const NumberFieldElement& b);
  friend NumberFieldElement operator-(const NumberFieldElement& a, const NumberFieldElement& b);
  friend NumberFieldElement operator*(const NumberFieldElement& a, const NumberFieldElement& b);
  friend NumberFieldElement operator/(const NumberFieldElement& a, const NumberFieldElement& b) {
    return a * b.inverse();
  }
  friend NumberFieldElement operator-(const NumberFieldElement& a);
  friend NumberFieldElement operator*(const BigRational& c, const NumberFieldElement& a);
  friend NumberFieldElement operator*(const NumberFieldElement& a, const BigRational& c) { return c * a; }
  friend bool operator==(const NumberFieldElement& a, const NumberFieldElement& b);

  std::size_t hash() const;
  /// Expression in the generator name, e.g. "1/2*t + 3".
  std::string to_string() const;

 private:
  void check_same(const NumberFieldElement& o) const;

  std::shared_ptr<const NumberField> field_;
  std::vector<BigRational> coords_;
};

/// Monic minimal polynomial over Q, from the first linear dependency among
/// 1, e, e^2, ...
QPoly minimal_polynomial(const NumberFieldElement& e);

bool is_algebraic_integer(const NumberFieldElement& e);

/// Smallest n with f | X^n - 1, searching every n with phi(n) <= deg f. Intended
/// for f whose roots are Galois conjugate (an irreducible factor or a product
/// of conjugate orbits of equal order).
std::optional<unsigned> cyclotomic_order(const QPoly& f);

/// Multiplicative order of e when e is a root of unity; throws on e = 0.
std::optional<unsigned> is_root_of_unity(const NumberFieldElement& e);

/// Complex value of e under each embedding as a disc (center, error bound).
std::vector<DiscValue> embedding_values(const NumberFieldElement& e, const BigRational& tolerance,
                                        unsigned max_bits = NumberField::kDefaultMaxBits);

struct EmbeddingIntervals {
  /// False when the precision cap was reached before the width target.
  bool decided = true;
  std::vector<RationalInterval> intervals;
};

/// Certified intervals of width <= tolerance containing |sigma(e)| for every
/// complex embedding sigma of the parent field.
EmbeddingIntervals embedding_absolute_values(const NumberFieldElement& e, const BigRational& tolerance,
                                             unsigned max_bits = NumberField::kDefaultMaxBits);

/// Irreducibility over Q: rational roots, factor-degree patterns mod several
/// primes, then an exact recombination search over certified root subsets for
/// degree <= 8. Throws ArithmeticError when undecided.
bool is_irreducible(const QPoly& f);

/// Result of adjoining a second generator: the compositum field and the images
/// of both original generators in it.
struct Compositum {
  std::shared_ptr<const NumberField> field;
  NumberFieldElement first;
  NumberFieldElement second;
};

/// Q(a, b) for a root a of f and b of g via a primitive element a + k*b,
/// k searched in 1, -1, 2, -2, ...
Compositum compositum(const QPoly& f, const QPoly& g, std::string generator = "t");

/// Image of e under the field automorphism sending the generator to `image`.
/// Throws if `image` is not a root of the minimal polynomial.
NumberFieldElement apply_automorphism(const NumberFieldElement& e, const NumberFieldElement& image);

/// Polynomial with rational coefficients from "ascending" coefficient strings.
QPoly rational_polynomial(std::span<const BigRational> ascending);

}  // namespace pcurv

template <>
struct std::hash<pcurv::NumberFieldElement> {
  std::size_t operator()(const pcurv::NumberFieldElement& e) const { return e.hash(); }
};
