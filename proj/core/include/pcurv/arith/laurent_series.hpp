#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "pcurv/arith/rational_function.hpp"

namespace pcurv {

/// Order of vanishing at q = 0: a finite integer, +infinity for exact zero, or
/// undecided when every known coefficient vanishes (value is then a lower bound).
struct QValuation {
  enum class Kind { finite, infinite, undecided };
  Kind kind = Kind::infinite;
  long value = 0;

  static QValuation finite(long v) { return {Kind::finite, v}; }
  static QValuation infinite() { return {Kind::infinite, 0}; }
  static QValuation undecided(long lower_bound) { return {Kind::undecided, lower_bound}; }

  bool is_finite() const { return kind == Kind::finite; }
  bool is_infinite() const { return kind == Kind::infinite; }
  bool is_undecided() const { return kind == Kind::undecided; }
  bool operator==(const QValuation&) const = default;

  std::string to_string() const {
    switch (kind) {
      case Kind::finite: return std::to_string(value);
      case Kind::infinite: return "inf";
      case Kind::undecided: return "undecided(>=" + std::to_string(value) + ")";
    }
    return "?";
  }
};

/// sum_{i} c_i q^(offset + i) + O(q^(offset + N)), N = number of stored coefficients.
/// Normalized so the first stored coefficient is nonzero; when every known
/// coefficient vanishes nothing is stored and offset() is the absolute precision.
template <Field K>
class TruncatedLaurentSeries {
 public:
  using Context = typename K::Context;

  TruncatedLaurentSeries() = default;
  TruncatedLaurentSeries(Context ctx, long offset, std::vector<K> coeffs)
      : ctx_(std::move(ctx)), offset_(offset), coeffs_(std::move(coeffs)) {
    normalize();
  }

  /// Zero known modulo q^absolute_precision.
  static TruncatedLaurentSeries zero(const Context& ctx, long absolute_precision) {
    return TruncatedLaurentSeries(ctx, absolute_precision, {});
  }

  /// Expansion of a rational function in q, known modulo q^absolute_precision.
  static TruncatedLaurentSeries expand(const RationalFunction<K>& f, long absolute_precision) {
    const auto& ctx = f.context();
    if (f.is_zero()) return zero(ctx, absolute_precision);
    const auto& den = f.denominator();
    const auto& num = f.numerator();
    const long shift = den.lowest_degree();
    const long lead = num.lowest_degree();
    const long valuation = lead - shift;
    if (absolute_precision <= valuation) return zero(ctx, absolute_precision);
    const std::size_t n = static_cast<std::size_t>(absolute_precision - valuation);
    // (num / q^lead) / (den / q^shift) as a power series to n terms
    std::vector<K> d(n, K::zero(ctx)), a(n, K::zero(ctx));
    for (std::size_t i = 0; i < n; ++i) {
      d[i] = den.coefficient(static_cast<std::size_t>(shift) + i);
      a[i] = num.coefficient(static_cast<std::size_t>(lead) + i);
    }
    const K d0_inv = d[0].inverse();
    std::vector<K> out(n, K::zero(ctx));
    for (std::size_t i = 0; i < n; ++i) {
      K acc = a[i];
      for (std::size_t j = 1; j <= i; ++j) acc = acc - d[j] * out[i - j];
      out[i] = acc * d0_inv;
    }
    return TruncatedLaurentSeries(ctx, valuation, std::move(out));
  }

  const Context& context() const { return ctx_; }
  long offset() const { return offset_; }
  /// Number of known coefficients starting at offset().
  std::size_t precision() const { return coeffs_.size(); }
  long absolute_precision() const { return offset_ + static_cast<long>(coeffs_.size()); }
  const std::vector<K>& coefficients() const { return coeffs_; }
  bool is_known_zero() const { return coeffs_.empty(); }

  /// Coefficient of q^e; must lie below the absolute precision.
  K coefficient(long e) const {
    if (e >= absolute_precision()) throw PreconditionError("coefficient beyond known precision");
    if (e < offset_) return K::zero(ctx_);
    return coeffs_[static_cast<std::size_t>(e - offset_)];
  }

  QValuation valuation() const {
    if (coeffs_.empty()) return QValuation::undecided(offset_);
    return QValuation::finite(offset_);
  }

  friend TruncatedLaurentSeries operator+(const TruncatedLaurentSeries& a, const TruncatedLaurentSeries& b) {
    return a.combine(b, false);
  }
  friend TruncatedLaurentSeries operator-(const TruncatedLaurentSeries& a, const TruncatedLaurentSeries& b) {
    return a.combine(b, true);
  }
  friend TruncatedLaurentSeries operator-(const TruncatedLaurentSeries& a) {
    TruncatedLaurentSeries out = a;
    for (auto& c : out.coeffs_) c = -c;
    return out;
  }

  friend TruncatedLaurentSeries operator*(const TruncatedLaurentSeries& a, const TruncatedLaurentSeries& b) {
    const auto& ctx = a.ctx_;
    // relative precision is limited by the less precise factor
    if (a.is_known_zero() || b.is_known_zero()) return zero(ctx, a.offset_ + b.offset_);
    const std::size_t n = std::min(a.coeffs_.size(), b.coeffs_.size());
    std::vector<K> out(n, K::zero(ctx));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j + i < n; ++j) out[i + j] = out[i + j] + a.coeffs_[i] * b.coeffs_[j];
    }
    return TruncatedLaurentSeries(ctx, a.offset_ + b.offset_, std::move(out));
  }

  TruncatedLaurentSeries inverse() const {
    if (coeffs_.empty()) throw ArithmeticError("inverse of a series with undecided valuation");
    const std::size_t n = coeffs_.size();
    std::vector<K> out(n, K::zero(ctx_));
    const K c0_inv = coeffs_[0].inverse();
    for (std::size_t i = 0; i < n; ++i) {
      K acc = i == 0 ? K::one(ctx_) : K::zero(ctx_);
      for (std::size_t j = 1; j <= i; ++j) acc = acc - coeffs_[j] * out[i - j];
      out[i] = acc * c0_inv;
    }
    return TruncatedLaurentSeries(ctx_, -offset_, std::move(out));
  }

  friend TruncatedLaurentSeries operator/(const TruncatedLaurentSeries& a, const TruncatedLaurentSeries& b) {
    return a * b.inverse();
  }

  /// Equality of every coefficient known to both sides.
  friend bool operator==(const TruncatedLaurentSeries& a, const TruncatedLaurentSeries& b) {
    const long lo = std::min(a.offset_, b.offset_);
    const long hi = std::min(a.absolute_precision(), b.absolute_precision());
    for (long e = lo; e < hi; ++e) {
      if (!(a.coefficient(e) == b.coefficient(e))) return false;
    }
    return true;
  }

  std::string to_string(const std::string& var = "q") const {
    std::string out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (coeffs_[i].is_zero()) continue;
      if (!out.empty()) out += " + ";
      out += "(" + format_element(coeffs_[i], {}) + ")*" + var + "^" + std::to_string(offset_ + static_cast<long>(i));
    }
    if (!out.empty()) out += " + ";
    return out + "O(" + var + "^" + std::to_string(absolute_precision()) + ")";
  }

 private:
  TruncatedLaurentSeries combine(const TruncatedLaurentSeries& b, bool subtract) const {
    const long abs = std::min(absolute_precision(), b.absolute_precision());
    const long start = std::min(offset_, b.offset_);
    if (abs <= start) return zero(ctx_, abs);
    std::vector<K> out;
    out.reserve(static_cast<std::size_t>(abs - start));
    for (long e = start; e < abs; ++e) {
      const K x = e >= offset_ ? coefficient(e) : K::zero(ctx_);
      const K y = e >= b.offset_ ? b.coefficient(e) : K::zero(ctx_);
      out.push_back(subtract ? x - y : x + y);
    }
    return TruncatedLaurentSeries(ctx_, start, std::move(out));
  }

  void normalize() {
    std::size_t lead = 0;
    while (lead < coeffs_.size() && coeffs_[lead].is_zero()) ++lead;
    if (lead > 0) {
      coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lead));
      offset_ += static_cast<long>(lead);
    }
  }

  Context ctx_{};
  long offset_ = 0;
  std::vector<K> coeffs_;
};

}  // namespace pcurv
