#include "pcurv/valuation.hpp"

#include <algorithm>

namespace pcurv {

NuIntegrality check_nu_integrality(const Derivation<FpQ>& d, const std::vector<FpQX>& samples) {
  NuIntegrality out;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const QValuation before = gauss_valuation(samples[i]);
    const QValuation after = gauss_valuation(apply_derivation(d, samples[i]));
    if (after.is_infinite() || before.is_infinite()) continue;
    if (after.value < before.value) return {false, i, before, after};
  }
  return out;
}

ValuationProfile valuation_profile(const std::vector<QValuation>& entries) {
  ValuationProfile out{entries, std::nullopt};
  for (const auto& v : entries) {
    if (v.is_undecided()) throw PreconditionError("undecided valuation " + v.to_string());
    if (v.is_finite() && (!out.min_valuation || v.value < *out.min_valuation)) out.min_valuation = v.value;
  }
  return out;
}

namespace {

std::vector<QValuation> column_valuations(const CompanionConnection<FpQ>& c) {
  std::vector<QValuation> out;
  for (const auto& f : c.last_column) out.push_back(gauss_valuation(f));
  return out;
}

// cross product sign of (b - a) x (c - a)
long long cross(const std::pair<long, long>& a, const std::pair<long, long>& b, const std::pair<long, long>& c) {
  return static_cast<long long>(b.first - a.first) * (c.second - a.second) -
         static_cast<long long>(b.second - a.second) * (c.first - a.first);
}

}  // namespace

ValuationProfile valuation_profile(const CompanionConnection<FpQ>& c) {
  return valuation_profile(column_valuations(c));
}

NewtonPolygon NewtonPolygon::from_valuations(const std::vector<QValuation>& f) {
  NewtonPolygon poly;
  poly.rank_ = f.size();
  std::vector<std::pair<long, long>> points;
  for (std::size_t m = 0; m < f.size(); ++m) {
    if (f[m].is_undecided()) throw PreconditionError("undecided valuation at index " + std::to_string(m));
    if (f[m].is_finite()) points.emplace_back(static_cast<long>(m), f[m].value);
  }
  points.emplace_back(static_cast<long>(f.size()), 0);
  for (const auto& pt : points) {
    while (poly.vertices_.size() >= 2 &&
           cross(poly.vertices_[poly.vertices_.size() - 2], poly.vertices_.back(), pt) <= 0) {
      poly.vertices_.pop_back();
    }
    poly.vertices_.push_back(pt);
  }
  return poly;
}

std::vector<BigRational> NewtonPolygon::slopes() const {
  std::vector<BigRational> out;
  for (std::size_t i = 0; i + 1 < vertices_.size(); ++i) {
    out.push_back(BigRational(BigInt(vertices_[i + 1].second - vertices_[i].second),
                              BigInt(vertices_[i + 1].first - vertices_[i].first)));
  }
  return out;
}

std::optional<BigRational> NewtonPolygon::min_eigenvalue_valuation() const {
  const auto s = slopes();
  if (s.empty()) return std::nullopt;
  return -s.back();
}

NewtonPolygon newton_polygon(const CompanionConnection<FpQ>& c) {
  return NewtonPolygon::from_valuations(column_valuations(c));
}

bool newton_slope_bound_holds(const std::vector<QValuation>& f, const BigRational& s) {
  const long r = static_cast<long>(f.size());
  bool equality = false;
  for (long m = 0; m < r; ++m) {
    const auto& v = f[static_cast<std::size_t>(m)];
    if (v.is_infinite()) continue;
    const BigRational bound = s * BigRational(r - m);
    const BigRational value(v.value);
    if (value < bound) return false;
    if (value == bound) equality = true;
  }
  return equality;
}

NonvanishingPrediction predict_nonvanishing(const CompanionConnection<FpQ>& c, std::uint64_t p) {
  const std::size_t r = c.rank();
  if (p <= r) {
    throw PreconditionError("prediction needs p > r (p = " + std::to_string(p) + ", r = " + std::to_string(r) + ")");
  }
  if (!is_prime(p)) throw PreconditionError(std::to_string(p) + " is not prime");
  const auto& ctx = c.derivation.context();
  const FpQX x = FpQX::variable(ctx);
  const auto integrality = check_nu_integrality(c.derivation, {x});
  if (!integrality.integral) throw PreconditionError("derivation is not nu-integral");
  if (!(frobenius_twist_multiplier(c.derivation, p) == c.derivation.multiplier)) {
    throw PreconditionError("derivation does not satisfy D^p = D");
  }
  const auto profile = valuation_profile(c);
  NonvanishingPrediction out;
  out.prime = p;
  out.rank = r;
  if (profile.min_valuation && *profile.min_valuation < 0) {
    out.predicted = true;
    out.reason = "an entry of the last column has q-adic valuation " + std::to_string(*profile.min_valuation);
  } else {
    out.reason = "every entry has nonnegative q-adic valuation; no claim";
  }
  return out;
}

bool verify_prediction(const CompanionConnection<FpQ>& c, std::uint64_t p) {
  return !p_curvature_matrix(c.connection(), p).is_zero();
}

}  // namespace pcurv
