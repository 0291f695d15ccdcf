#include "pcurv/surface/representation.hpp"

#include <numeric>

#include "pcurv/arith/errors.hpp"

namespace pcurv {

NFMatrix nf_identity(const std::shared_ptr<const NumberField>& field) {
  const NumberFieldElement zero(field, BigRational(0)), one(field, BigRational(1));
  return NFMatrix::identity(2, zero, one);
}

NFMatrix nf_matrix(const std::shared_ptr<const NumberField>& field, std::vector<NumberFieldElement> entries) {
  if (entries.size() != 4) throw PreconditionError("a 2x2 matrix needs 4 entries");
  for (auto& e : entries) {
    if (!e.field()) {
      e = NumberFieldElement(field, BigRational(0)) + e;
    } else if (!(e.context() == NumberFieldElement::Context{field})) {
      throw PreconditionError("matrix entry lies in a different number field");
    }
  }
  return NFMatrix(2, 2, std::move(entries));
}

NumberFieldElement det2(const NFMatrix& m) {
  if (m.rows() != 2 || m.cols() != 2) throw PreconditionError("expected a 2x2 matrix");
  return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
}

NFMatrix inverse2(const NFMatrix& m) {
  const NumberFieldElement d = det2(m);
  if (d.is_zero()) throw PreconditionError("singular matrix");
  const NumberFieldElement inv = d.inverse();
  return NFMatrix(2, 2, {m(1, 1) * inv, -m(0, 1) * inv, -m(1, 0) * inv, m(0, 0) * inv});
}

NFMatrix matrix_power(const NFMatrix& m, unsigned long n) {
  NFMatrix result = nf_identity(m(0, 0).field());
  NFMatrix base = m;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

Representation::Representation(std::shared_ptr<const NumberField> field, SurfacePresentation presentation,
                               std::vector<NFMatrix> generators, TargetGroup target)
    : field_(std::move(field)), presentation_(std::move(presentation)), target_(target) {
  const std::size_t n = presentation_.generator_count();
  if (generators.size() + 1 == n && !presentation_.closed()) {
    derived_last_ = true;
  } else if (generators.size() != n) {
    throw PreconditionError("expected " + std::to_string(n) + " generator matrices, got " +
                            std::to_string(generators.size()));
  }
  for (std::size_t i = 0; i < generators.size(); ++i) {
    auto& g = generators[i];
    if (g.rows() != 2 || g.cols() != 2) throw PreconditionError("generator matrices must be 2x2");
    g = nf_matrix(field_, std::vector<NumberFieldElement>(g.elements().begin(), g.elements().end()));
    const NumberFieldElement d = det2(g);
    if (d.is_zero()) throw PreconditionError("generator " + presentation_.names()[i] + " is singular");
    if (target_ == TargetGroup::SL2 && !(d == NumberFieldElement(field_, BigRational(1)))) {
      throw PreconditionError("generator " + presentation_.names()[i] + " has determinant " + d.to_string());
    }
  }
  generators_ = std::move(generators);
  for (const auto& g : generators_) inverses_.push_back(inverse2(g));
  const Word relation = presentation_.relation();
  if (derived_last_) {
    // relation = P * c_n, so c_n = P^-1
    std::vector<Letter> prefix(relation.letters().begin(), relation.letters().end() - 1);
    const NFMatrix p = evaluate(Word(std::move(prefix)));
    generators_.push_back(inverse2(p));
    inverses_.push_back(p);
  } else if (!(evaluate(relation) == nf_identity(field_))) {
    throw PreconditionError("the surface relation does not map to the identity");
  }
}

bool Representation::unimodular() const {
  const NumberFieldElement one(field_, BigRational(1));
  for (const auto& g : generators_) {
    if (!(det2(g) == one)) return false;
  }
  return true;
}

NFMatrix Representation::evaluate(const Word& w) const {
  NFMatrix acc = nf_identity(field_);
  for (const auto& l : w.letters()) {
    if (l.generator >= generators_.size()) throw PreconditionError("word uses an unknown generator");
    acc = acc * (l.exponent > 0 ? generators_[l.generator] : inverses_[l.generator]);
  }
  return acc;
}

bool trace_identity_check(const Representation& rho, const Word& x, const Word& y) {
  if (!rho.unimodular()) throw PreconditionError("trace identity needs determinant 1 generators");
  const NFMatrix mx = rho.evaluate(x), my = rho.evaluate(y);
  const NFMatrix myinv = inverse2(my);
  return (mx * my).trace() + (mx * myinv).trace() == mx.trace() * my.trace();
}

namespace {

bool is_scalar(const NFMatrix& m, const NumberFieldElement& c) {
  return m(0, 1).is_zero() && m(1, 0).is_zero() && m(0, 0) == c && m(1, 1) == c;
}

}  // namespace

ElementOrder element_order(const NFMatrix& m) {
  const auto& field = m(0, 0).field();
  const NumberFieldElement one(field, BigRational(1));
  if (!(det2(m) == one)) throw PreconditionError("element_order needs determinant 1");
  if (is_scalar(m, one)) return {true, 1, ""};
  if (is_scalar(m, -one)) return {true, 2, ""};
  const NumberFieldElement t = m.trace();
  if (t == one + one || t == -(one + one)) return {false, 0, "parabolic noncentral"};
  // eigenvalues solve X^2 - tX + 1 = 0; their conjugates are the roots of
  // X^e m_t(X + 1/X) = sum c_i (X^2 + 1)^i X^(e - i)
  const QPoly mt = minimal_polynomial(t);
  const auto e = static_cast<std::size_t>(mt.degree());
  const QPoly x = QPoly::variable({});
  const QPoly x2p1 = x * x + QPoly::one({});
  QPoly p;
  for (std::size_t i = 0; i <= e; ++i) {
    const BigRational& c = mt.coefficient(i);
    if (c == 0) continue;
    p += (x2p1.pow(i) * QPoly::monomial(BigRational(1), e - i)).scaled(c);
  }
  const auto n = cyclotomic_order(p);
  if (!n) return {false, 0, "eigenvalue not root of unity"};
  return {true, *n, ""};
}

ElementOrder gl2_element_order(const NFMatrix& m) {
  const NumberFieldElement d = det2(m);
  if (d.is_zero()) throw PreconditionError("singular matrix");
  const auto k = is_root_of_unity(d);
  if (!k) return {false, 0, "determinant not root of unity"};
  const NFMatrix mk = matrix_power(m, *k);
  const ElementOrder inner = element_order(mk);
  if (!inner.finite) return inner;
  const unsigned long bound = *k * inner.order;
  const NFMatrix id = nf_identity(m(0, 0).field());
  for (unsigned long dv = 1; dv <= bound; ++dv) {
    if (bound % dv == 0 && matrix_power(m, dv) == id) return {true, dv, ""};
  }
  return {true, bound, ""};
}

TraceCheck nonarch_check(const Representation& rho, const std::vector<Word>& words) {
  for (const auto& w : words) {
    const NumberFieldElement t = rho.trace(w);
    if (!is_algebraic_integer(t)) {
      return {false, w, "trace " + t.to_string() + " is not an algebraic integer"};
    }
  }
  return {};
}

ArchCheck arch_check(const Representation& rho, const std::vector<Word>& words,
                     const std::optional<BigRational>& tolerance, unsigned max_bits) {
  if (!rho.unimodular()) throw PreconditionError("arch_check needs determinant 1 generators");
  ArchCheck out;
  for (const auto& w : words) {
    const NumberFieldElement t = rho.trace(w);
    const QPoly mt = minimal_polynomial(t);
    const std::size_t inside = count_real_roots(mt, BigRational(-2), BigRational(2));
    if (inside != static_cast<std::size_t>(mt.degree()) && out.passed) {
      out.passed = false;
      out.witness = w;
      out.reason = "trace " + t.to_string() + " leaves [-2, 2] under some embedding";
    }
    if (tolerance) out.evidence.push_back({w, embedding_values(t, *tolerance, max_bits)});
    if (!out.passed && !tolerance) break;
  }
  return out;
}

Representation conjugate_representation(const Representation& rho, const NumberFieldElement& image) {
  std::vector<NFMatrix> gens;
  const std::size_t given = rho.generators().size() - (rho.derived_last() ? 1 : 0);
  for (std::size_t i = 0; i < given; ++i) {
    gens.push_back(rho.generators()[i].map([&](const NumberFieldElement& e) { return apply_automorphism(e, image); }));
  }
  return Representation(rho.field(), rho.presentation(), std::move(gens), rho.target());
}

}  // namespace pcurv
