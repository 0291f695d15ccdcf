#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pcurv/arith/laurent_series.hpp"
#include "pcurv/arith/rational_function.hpp"
#include "pcurv/connection.hpp"

namespace pcurv {

/// F_p(q) and F_p(q)(x): q is the parameter, x the curve coordinate.
using FpQ = RationalFunction<Fp>;
using FpQX = RationalFunction<FpQ>;

/// Order of vanishing at q = 0 of a rational function in q.
template <Field K>
QValuation q_valuation(const RationalFunction<K>& f) {
  if (f.is_zero()) return QValuation::infinite();
  return QValuation::finite(static_cast<long>(f.numerator().lowest_degree()) -
                            static_cast<long>(f.denominator().lowest_degree()));
}

template <Field K>
QValuation q_valuation(const TruncatedLaurentSeries<K>& s) {
  return s.valuation();
}

/// Gauss extension of the q-adic valuation to K(q)[x]: the minimum over the
/// x-coefficients; extended to K(q)(x) as nu(num) - nu(den).
template <Field K>
QValuation gauss_valuation(const Polynomial<RationalFunction<K>>& f) {
  QValuation best = QValuation::infinite();
  for (const auto& c : f.coefficients()) {
    const QValuation v = q_valuation(c);
    if (v.is_finite() && (!best.is_finite() || v.value < best.value)) best = v;
  }
  return best;
}

template <Field K>
QValuation gauss_valuation(const RationalFunction<RationalFunction<K>>& f) {
  if (f.is_zero()) return QValuation::infinite();
  return QValuation::finite(gauss_valuation(f.numerator()).value - gauss_valuation(f.denominator()).value);
}

struct NuIntegrality {
  bool integral = true;
  /// Index into the sample list of the first violation.
  std::optional<std::size_t> witness;
  QValuation before;
  QValuation after;
};

/// Checks nu(D(a)) >= nu(a) on each sample, stopping at the first violation.
NuIntegrality check_nu_integrality(const Derivation<FpQ>& d, const std::vector<FpQX>& samples);

struct ValuationProfile {
  std::vector<QValuation> entries;
  /// Minimum over finite entries; empty when every entry is zero.
  std::optional<long> min_valuation;
};

ValuationProfile valuation_profile(const std::vector<QValuation>& entries);
ValuationProfile valuation_profile(const CompanionConnection<FpQ>& c);

/// Lower convex hull of (m, nu(f_m)) for finite entries together with (r, 0).
/// The characteristic polynomial has coefficients -f_m, so a segment of slope
/// sigma and width w carries w eigenvalues of valuation -sigma.
class NewtonPolygon {
 public:
  /// Throws PreconditionError on an undecided valuation.
  static NewtonPolygon from_valuations(const std::vector<QValuation>& f);

  const std::vector<std::pair<long, long>>& vertices() const { return vertices_; }
  /// Slopes left to right, nondecreasing.
  std::vector<BigRational> slopes() const;
  std::size_t rank() const { return rank_; }
  /// s = minimal eigenvalue valuation (the largest eigenvalue absolute value is
  /// |q|^s); empty when every f_m vanishes.
  std::optional<BigRational> min_eigenvalue_valuation() const;

 private:
  std::vector<std::pair<long, long>> vertices_;
  std::size_t rank_ = 0;
};

NewtonPolygon newton_polygon(const CompanionConnection<FpQ>& c);

/// nu(f_m) >= s (r - m) for all m, with equality for some m.
bool newton_slope_bound_holds(const std::vector<QValuation>& f, const BigRational& s);

struct NonvanishingPrediction {
  bool predicted = false;
  std::string reason;
  std::uint64_t prime = 0;
  std::size_t rank = 0;
};

/// Requires p > r, D nu-integral and D^p = D (checked). Predicts psi_p != 0
/// exactly when some f_m has negative q-adic valuation.
NonvanishingPrediction predict_nonvanishing(const CompanionConnection<FpQ>& c, std::uint64_t p);

/// Exact psi_p over F_p(q)(x); true when it is nonzero.
bool verify_prediction(const CompanionConnection<FpQ>& c, std::uint64_t p);

}  // namespace pcurv
