#include <doctest.h>

#include "generators.hpp"
#include "oracles.hpp"
#include "pcurv/arith/expression.hpp"
#include "pcurv/arith/laurent_series.hpp"
#include "pcurv/arith/number_field.hpp"

using namespace pcurv;
using pcurv::testing::Gen;

namespace {

QPoly qp(std::initializer_list<long> ascending) {
  std::vector<BigRational> c;
  for (long v : ascending) c.emplace_back(v);
  return QPoly({}, std::move(c));
}

std::shared_ptr<const NumberField> field(std::initializer_list<long> ascending, const char* name = "t") {
  return NumberField::create(qp(ascending), name);
}

NumberFieldElement elem(const std::shared_ptr<const NumberField>& k, std::initializer_list<long> coords) {
  std::vector<BigRational> c;
  for (long v : coords) c.emplace_back(v);
  c.resize(k->degree(), BigRational(0));
  return NumberFieldElement(k, std::move(c));
}

template <class T, class G>
void check_ring_axioms(G&& draw, int trials) {
  for (int i = 0; i < trials; ++i) {
    const T a = draw(), b = draw(), c = draw();
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a - b) + b == a);
  }
}

}  // namespace

TEST_CASE("rational normal form") {
  const BigRational q(BigInt(6), BigInt(-4));
  CHECK(q.numerator() == -3);
  CHECK(q.denominator() == 2);
  CHECK(q.to_string() == "-3/2");
  CHECK(BigRational::parse("-3/2") == q);
  CHECK(BigRational::parse("10/5").to_string() == "2");
  CHECK_THROWS_AS(BigRational(1) / BigRational(0), ArithmeticError);
}

TEST_CASE("prime field") {
  CHECK(is_prime(2));
  CHECK(is_prime(97));
  CHECK_FALSE(is_prime(91));
  CHECK(primes_in_range(2, 20) == std::vector<std::uint64_t>{2, 3, 5, 7, 11, 13, 17, 19});
  const Fp::Context f7{7};
  CHECK(Fp(f7, 3).inverse() == Fp(f7, 5));
  CHECK(Fp(f7, -1) == Fp(f7, 6));
  CHECK_FALSE(reduce_mod(BigRational(BigInt(1), BigInt(7)), 7).has_value());
  CHECK(reduce_mod(BigRational(BigInt(1), BigInt(2)), 7)->value() == 4);
}

TEST_CASE("ring axioms on random triples") {
  Gen g(1);
  check_ring_axioms<BigRational>([&] { return g.rational(50); }, 1000);
  check_ring_axioms<Fp>([&] { return g.fp(101); }, 1000);
  check_ring_axioms<QPoly>([&] { return g.q_poly(4); }, 1000);
  check_ring_axioms<Polynomial<Fp>>([&] { return g.fp_poly(13, 5); }, 1000);
  check_ring_axioms<RationalFunction<Fp>>([&] { return g.fp_rf(11); }, 1000);
  check_ring_axioms<RationalFunction<BigRational>>([&] { return g.q_rf(); }, 300);
  const auto k = field({1, 1, 1});
  check_ring_axioms<NumberFieldElement>(
      [&] {
        return NumberFieldElement(k, std::vector<BigRational>{g.rational(), g.rational()});
      },
      1000);
}

TEST_CASE("poly_gcd") {
  CHECK(poly_gcd(qp({-1, 0, 1}), qp({-1, 1})) == qp({-1, 1}));
  CHECK(poly_gcd(qp({0, 1}), qp({1})) == qp({1}));
  CHECK(poly_gcd(qp({0, -1, 0, 1}), qp({0, 1, 1})) == qp({0, 1, 1}));
  CHECK(poly_gcd(qp({0, 2}), qp({0, 0, 6})) == qp({0, 1}));
  const auto f5 = Polynomial<Fp>::variable(Fp::Context{5}) + Polynomial<Fp>::one(Fp::Context{5});
  const auto f7 = Polynomial<Fp>::variable(Fp::Context{7});
  CHECK_THROWS_AS(poly_gcd(f5, f7), ArithmeticError);

  Gen g(2);
  for (int i = 0; i < 200; ++i) {
    const auto x = g.q_poly(4), y = g.q_poly(4), common = g.q_poly(2);
    if (x.is_zero() || y.is_zero() || common.is_zero()) continue;
    const auto d = poly_gcd(x * common, y * common);
    CHECK(d.is_monic());
    CHECK((x * common) % d == QPoly());
    CHECK((y * common) % d == QPoly());
    CHECK((d % common.monic()).is_zero());
  }
}

TEST_CASE("rational function canonical form") {
  using RF = RationalFunction<BigRational>;
  const RF f(qp({0, 1, 1}), qp({0, 2}));
  CHECK(f.numerator() == qp({1, 1}).scaled(BigRational(BigInt(1), BigInt(2))));
  CHECK(f.denominator() == qp({1}));
  const RF h(qp({1}), qp({0, 3}));
  CHECK(h.denominator().is_monic());
  CHECK(h.to_string() == "1/3/x");
  CHECK(RF(qp({1, 1, 1}), qp({0, 1})).to_string() == "(x^2 + x + 1)/x");
  CHECK_THROWS_AS(RF(qp({1}), QPoly()), ArithmeticError);
}

TEST_CASE("expression grammar") {
  using RF = RationalFunction<BigRational>;
  ExpressionSymbols<RF> sym{[](const BigInt& n) { return RF::constant(BigRational(n)); },
                            [](std::string_view name) -> std::optional<RF> {
                              if (name == "x") return RF::variable({});
                              return std::nullopt;
                            }};
  CHECK(parse_expression<RF>("(x + 1)^2 - 2*x", sym) == RF(qp({1, 0, 1})));
  CHECK(parse_expression<RF>("1/x - -1", sym) == RF(qp({1, 1}), qp({0, 1})));
  CHECK_THROWS_AS(parse_expression<RF>("x^-1", sym), ParseError);
  CHECK_THROWS_AS(parse_expression<RF>("y", sym), ParseError);
  CHECK_THROWS_AS(parse_expression<RF>("1/(x - x)", sym), ParseError);
  try {
    parse_expression<RF>("x + * 2", sym);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.column() == 5);
  }
}

TEST_CASE("laurent series") {
  using S = TruncatedLaurentSeries<BigRational>;
  using RF = RationalFunction<BigRational>;
  const S a = S::expand(RF(qp({1, 5}), qp({0, 1})), 4);
  CHECK(a.valuation() == QValuation::finite(-1));
  CHECK(a.coefficient(-1) == 1);
  CHECK(a.coefficient(0) == 5);
  const S geometric = S::expand(RF(qp({1}), qp({1, -1})), 6);
  for (long e = 0; e < 6; ++e) CHECK(geometric.coefficient(e) == 1);
  CHECK((geometric * S::expand(RF(qp({1, -1})), 6)) == S::expand(RF(qp({1})), 6));
  CHECK(S::zero({}, 3).valuation().is_undecided());
  CHECK_THROWS_AS(S::zero({}, 3).inverse(), ArithmeticError);
}

TEST_CASE("laurent valuation is a valuation") {
  using S = TruncatedLaurentSeries<BigRational>;
  using RF = RationalFunction<BigRational>;
  Gen g(3);
  auto draw = [&] {
    for (;;) {
      auto num = g.q_poly(3), den = g.q_poly(2);
      if (num.is_zero() || den.is_zero()) continue;
      const auto shift = QPoly::monomial(BigRational(1), static_cast<std::size_t>(g.integer(0, 2)));
      if (g.coin()) return RF(num, den * shift);
      return RF(num * shift, den);
    }
  };
  for (int i = 0; i < 500; ++i) {
    const RF f = draw(), h = draw();
    const S sf = S::expand(f, 12), sh = S::expand(h, 12);
    const auto vf = sf.valuation(), vh = sh.valuation();
    REQUIRE(vf.is_finite());
    REQUIRE(vh.is_finite());
    CHECK((sf * sh).valuation() == QValuation::finite(vf.value + vh.value));
    const auto vs = (sf + sh).valuation();
    if (vs.is_finite()) {
      CHECK(vs.value >= std::min(vf.value, vh.value));
    }
    if (vf.value != vh.value) CHECK(vs == QValuation::finite(std::min(vf.value, vh.value)));
  }
}

TEST_CASE("minimal_polynomial") {
  const auto k = field({-2, 0, 1});
  CHECK(minimal_polynomial(elem(k, {3})) == qp({-3, 1}));
  CHECK(minimal_polynomial(elem(k, {0, 1})) == qp({-2, 0, 1}));
  CHECK(minimal_polynomial(elem(k, {1, 1})) == qp({-1, -2, 1}));

  Gen g(4);
  const auto k4 = field({1, 0, 0, 0, 1});
  for (int i = 0; i < 100; ++i) {
    const NumberFieldElement e(k4, std::vector<BigRational>{g.rational(), g.rational(), g.rational(), g.rational()});
    const QPoly m = minimal_polynomial(e);
    CHECK(m.is_monic());
    CHECK(m.evaluate_in(e, NumberFieldElement::one(e.context())).is_zero());
    CHECK(is_irreducible(m));
  }
}

TEST_CASE("is_algebraic_integer") {
  const auto k2 = field({-2, 0, 1});
  CHECK_FALSE(is_algebraic_integer(NumberFieldElement(k2, BigRational(BigInt(1), BigInt(2)))));
  CHECK(is_algebraic_integer(elem(k2, {0, 1})));
  const auto k5 = field({-5, 0, 1});
  const NumberFieldElement golden(k5, std::vector<BigRational>{BigRational(BigInt(1), BigInt(2)),
                                                               BigRational(BigInt(1), BigInt(2))});
  CHECK(minimal_polynomial(golden) == qp({-1, -1, 1}));
  CHECK(is_algebraic_integer(golden));
}

TEST_CASE("is_root_of_unity") {
  const auto q = NumberField::rationals();
  CHECK(is_root_of_unity(NumberFieldElement(q, BigRational(-1))) == 2u);
  CHECK(is_root_of_unity(NumberFieldElement(q, BigRational(1))) == 1u);
  CHECK_FALSE(is_root_of_unity(NumberFieldElement(q, BigRational(2))).has_value());
  CHECK_THROWS_AS(is_root_of_unity(NumberFieldElement(q, BigRational(0))), std::exception);
  CHECK(is_root_of_unity(elem(field({1, -1, 1}), {0, 1})) == 6u);
  CHECK(is_root_of_unity(elem(field({1, 0, 1}), {0, 1})) == 4u);
  CHECK_FALSE(is_root_of_unity(elem(field({1, -3, 1}), {0, 1})).has_value());
  CHECK_FALSE(is_root_of_unity(elem(field({-1, -1, 1}), {0, 1})).has_value());
  // zeta_12 in Q(zeta_12): every power has the expected order
  const auto k12 = field({1, 0, -1, 0, 1});
  const auto z = elem(k12, {0, 1});
  NumberFieldElement power = z;
  for (unsigned e = 1; e <= 12; ++e) {
    const unsigned expect = 12 / std::gcd(e, 12u);
    CHECK(is_root_of_unity(power) == expect);
    power = power * z;
  }
}

TEST_CASE("root of unity order is minimal and matches the naive oracle") {
  for (const auto& f : {qp({1, -1, 1}), qp({1, 0, 1}), qp({1, 1, 1}), qp({1, 0, -1, 0, 1}), qp({1, -1, 1, -1, 1}),
                        qp({1, 1, 1, 1, 1}), qp({1, -3, 1}), qp({-1, -1, 1}), qp({1, 0, 0, 0, 1}), qp({-2, 0, 1})}) {
    const auto k = NumberField::create(f);
    const auto t = NumberFieldElement::generator(k);
    const auto order = is_root_of_unity(t);
    CHECK(order == pcurv::testing::naive_cyclotomic_order(f));
    if (!order) continue;
    const auto one = NumberFieldElement::one(t.context());
    CHECK(field_pow(t, *order) == one);
    for (unsigned m = 1; m < *order; ++m) CHECK_FALSE(field_pow(t, m) == one);
    CHECK(is_algebraic_integer(t));
    for (const auto& iv : embedding_absolute_values(t, BigRational(BigInt(1), BigInt(1000))).intervals) {
      CHECK(iv.contains(BigRational(1)));
    }
  }
}

TEST_CASE("embedding_absolute_values") {
  const BigRational tol(BigInt(1), BigInt(1000));
  const auto two = embedding_absolute_values(NumberFieldElement(field({-2, 0, 1}), BigRational(2)), tol);
  REQUIRE(two.decided);
  for (const auto& iv : two.intervals) CHECK(iv.contains(BigRational(2)));

  const auto sqrt2 = embedding_absolute_values(elem(field({-2, 0, 1}), {0, 1}), tol);
  REQUIRE(sqrt2.intervals.size() == 2);
  for (const auto& iv : sqrt2.intervals) {
    CHECK(iv.width() <= tol);
    CHECK(iv.lo.to_double() < 1.41422);
    CHECK(iv.hi.to_double() > 1.41421);
  }

  const auto phi = embedding_absolute_values(elem(field({-1, -1, 1}), {0, 1}), tol);
  REQUIRE(phi.intervals.size() == 2);
  std::vector<double> mids;
  for (const auto& iv : phi.intervals) {
    CHECK(iv.width() <= tol);
    mids.push_back(((iv.lo + iv.hi) * BigRational(BigInt(1), BigInt(2))).to_double());
  }
  std::sort(mids.begin(), mids.end());
  CHECK(mids[0] == doctest::Approx(0.618034).epsilon(1e-3));
  CHECK(mids[1] == doctest::Approx(1.618034).epsilon(1e-3));
}

TEST_CASE("irreducibility and field construction") {
  CHECK(is_irreducible(qp({1, 0, 1})));
  CHECK_FALSE(is_irreducible(qp({-1, 0, 1})));
  CHECK_FALSE(is_irreducible(qp({1, 0, 2, 0, 1})));
  CHECK_FALSE(is_irreducible(qp({4, 0, 0, 0, 1})));  // (x^2-2x+2)(x^2+2x+2)
  CHECK(is_irreducible(qp({-2, 0, 0, 0, 1})));
  CHECK_THROWS_AS(NumberField::create(qp({-1, 0, 1})), PreconditionError);
  const auto k = field({1, 0, 1});
  CHECK(k->embeddings().size() == 2);
}

TEST_CASE("compositum") {
  const auto c = compositum(qp({1, 0, 1}), qp({-5, 0, 1}));
  CHECK(c.field->degree() == 4);
  const auto one = NumberFieldElement::one(c.first.context());
  CHECK(c.first * c.first == -one);
  CHECK(c.second * c.second == BigRational(5) * one);
  CHECK(is_irreducible(c.field->min_poly()));
}

TEST_CASE("field automorphisms") {
  const auto k = field({1, 0, 1});
  const auto i = NumberFieldElement::generator(k);
  const auto e = elem(k, {3, 2});
  CHECK(apply_automorphism(e, -i) == elem(k, {3, -2}));
  CHECK(apply_automorphism(e, i) == e);
  CHECK_THROWS_AS(apply_automorphism(e, elem(k, {1})), std::exception);
  CHECK(minimal_polynomial(apply_automorphism(e, -i)) == minimal_polynomial(e));
}

TEST_CASE("sturm counts and root isolation") {
  CHECK(count_real_roots(qp({-2, 0, 1})) == 2);
  CHECK(count_real_roots(qp({1, 0, 1})) == 0);
  CHECK(count_real_roots(qp({-1, -1, 1}), BigRational(-2), BigRational(2)) == 2);
  CHECK(count_real_roots(qp({1, -3, 1}), BigRational(-2), BigRational(2)) == 1);
  const auto discs = isolate_roots(qp({-6, 11, -6, 1}), 64, 1 << 12);
  REQUIRE(discs.size() == 3);
  for (const auto& d : discs) CHECK(d.real);
}
