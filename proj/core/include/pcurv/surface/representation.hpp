#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pcurv/arith/complex_rational.hpp"
#include "pcurv/arith/matrix.hpp"
#include "pcurv/arith/number_field.hpp"
#include "pcurv/surface/word.hpp"

namespace pcurv {

using NFMatrix = Matrix<NumberFieldElement>;

enum class TargetGroup { SL2, GL2 };

NFMatrix nf_identity(const std::shared_ptr<const NumberField>& field);
/// Entries given row-major.
NFMatrix nf_matrix(const std::shared_ptr<const NumberField>& field, std::vector<NumberFieldElement> entries);
NumberFieldElement det2(const NFMatrix& m);
/// Inverse of an invertible 2x2 matrix (adjugate over the determinant).
NFMatrix inverse2(const NFMatrix& m);
NFMatrix matrix_power(const NFMatrix& m, unsigned long n);

/// Homomorphism from a surface group into SL2 or GL2 of a number field.
class Representation {
 public:
  /// `generators` lists images of a1, b1, ..., cn in order. When n >= 1 the
  /// last one may be omitted and is then solved from the relation. Throws
  /// PreconditionError on a wrong count, a shape or field mismatch, det != 1
  /// under SL2, a singular matrix, or a relation that does not hold.
  Representation(std::shared_ptr<const NumberField> field, SurfacePresentation presentation,
                 std::vector<NFMatrix> generators, TargetGroup target = TargetGroup::SL2);

  const std::shared_ptr<const NumberField>& field() const { return field_; }
  const SurfacePresentation& presentation() const { return presentation_; }
  TargetGroup target() const { return target_; }
  const std::vector<NFMatrix>& generators() const { return generators_; }
  const std::vector<NFMatrix>& inverses() const { return inverses_; }
  /// True if the last puncture generator was solved from the relation.
  bool derived_last() const { return derived_last_; }
  /// Every generator has determinant 1.
  bool unimodular() const;

  NFMatrix evaluate(const Word& w) const;
  NumberFieldElement trace(const Word& w) const { return evaluate(w).trace(); }

 private:
  std::shared_ptr<const NumberField> field_;
  SurfacePresentation presentation_;
  TargetGroup target_;
  std::vector<NFMatrix> generators_;
  std::vector<NFMatrix> inverses_;
  bool derived_last_ = false;
};

/// tr(xy) + tr(xy^-1) == tr(x) tr(y), exactly. Throws PreconditionError when a
/// generator has determinant other than 1.
bool trace_identity_check(const Representation& rho, const Word& x, const Word& y);

struct ElementOrder {
  bool finite = false;
  unsigned long order = 0;
  std::string reason;
};

/// Order of a determinant-1 matrix. Throws PreconditionError otherwise.
/// Central elements have order 1 or 2; noncentral ones with trace +-2 are
/// parabolic; otherwise the eigenvalues are the roots of
/// X^e m(X + 1/X) for the minimal polynomial m of the trace, and the order is
/// their common multiplicative order when they are roots of unity.
ElementOrder element_order(const NFMatrix& m);

/// Order of an invertible matrix: the determinant's order k, then the order
/// of M^k, then the least divisor d of their product with M^d = I.
ElementOrder gl2_element_order(const NFMatrix& m);

struct TraceCheck {
  bool passed = true;
  std::optional<Word> witness;
  std::string reason;
};

/// Every listed trace is an algebraic integer.
TraceCheck nonarch_check(const Representation& rho, const std::vector<Word>& words);

/// Certified value of one trace under every embedding of the parent field.
struct TraceEvidence {
  Word word;
  std::vector<DiscValue> values;
};

struct ArchCheck : TraceCheck {
  std::vector<TraceEvidence> evidence;
};

/// Every listed trace lies in [-2, 2] under every complex embedding. Decided
/// exactly: the minimal polynomial of the trace must have all its roots real
/// and in [-2, 2] (Sturm count). When `tolerance` is given, disc enclosures of
/// each embedded trace are attached as evidence.
ArchCheck arch_check(const Representation& rho, const std::vector<Word>& words,
                     const std::optional<BigRational>& tolerance = std::nullopt,
                     unsigned max_bits = NumberField::kDefaultMaxBits);

/// Applies the field automorphism sending the generator to `image` to every
/// matrix entry.
Representation conjugate_representation(const Representation& rho, const NumberFieldElement& image);

}  // namespace pcurv
