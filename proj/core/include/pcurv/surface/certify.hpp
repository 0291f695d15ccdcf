#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pcurv/surface/representation.hpp"

namespace pcurv {

struct CertifyOptions {
  std::size_t max_elements = 100000;
  unsigned long max_order = 10000;
  unsigned jobs = 1;
  /// Identify matrices up to sign (PSL2 / PGL2 closure).
  bool projective = false;
  /// Width of the evidence enclosures attached to the arch check; none when empty.
  std::optional<BigRational> evidence_tolerance;
  unsigned precision_cap = NumberField::kDefaultMaxBits;
};

enum class Verdict { Finite, Obstructed, Inconclusive };

std::string to_string(Verdict v);

struct FinitenessCertificate {
  Verdict verdict = Verdict::Inconclusive;
  std::size_t group_order = 0;
  std::optional<Word> witness;
  std::string reason;
  std::size_t element_count = 0;
  unsigned long max_order_seen = 0;
  /// Multiplicative order of each generator's determinant (GL2 only).
  std::vector<unsigned long> determinant_orders;
  TraceCheck nonarch;
  std::optional<ArchCheck> arch;
  /// The enumerated image, identity first, with a word reaching each element.
  std::vector<NFMatrix> elements;
  std::vector<Word> words;
};

/// Integrality, trace bounds and finite order on each simple-loop product in
/// turn (the first failure is the witness), then a breadth-first closure of
/// the image under the generators and their inverses, computing every new
/// element's order. Results do not depend on `jobs`.
FinitenessCertificate certify_finiteness(const Representation& rho, const CertifyOptions& options = {});

/// Hash of the exact coordinates of a matrix.
std::size_t matrix_hash(const NFMatrix& m);
/// Representative of {m, -m}: the first nonzero coordinate is positive.
NFMatrix sign_normalized(const NFMatrix& m);

}  // namespace pcurv
