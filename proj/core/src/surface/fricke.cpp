#include "pcurv/surface/fricke.hpp"

#include <algorithm>
#include <vector>

#include "pcurv/arith/errors.hpp"

namespace pcurv {

TracePolynomial TracePolynomial::constant(long c) {
  TracePolynomial p;
  p.add_term({0, 0, 0}, BigInt(c));
  return p;
}

TracePolynomial TracePolynomial::variable(unsigned index) {
  if (index > 2) throw PreconditionError("trace variable index out of range");
  Exponents e{0, 0, 0};
  e[index] = 1;
  TracePolynomial p;
  p.add_term(e, BigInt(1));
  return p;
}

void TracePolynomial::add_term(const Exponents& e, const BigInt& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (inserted) return;
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

unsigned TracePolynomial::total_degree() const {
  unsigned d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[0] + e[1] + e[2]);
  return d;
}

TracePolynomial operator+(const TracePolynomial& a, const TracePolynomial& b) {
  TracePolynomial out = a;
  for (const auto& [e, c] : b.terms_) out.add_term(e, c);
  return out;
}

TracePolynomial operator-(const TracePolynomial& a, const TracePolynomial& b) {
  TracePolynomial out = a;
  for (const auto& [e, c] : b.terms_) out.add_term(e, -c);
  return out;
}

TracePolynomial operator*(const TracePolynomial& a, const TracePolynomial& b) {
  TracePolynomial out;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) out.add_term({ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}, ca * cb);
  }
  return out;
}

std::string TracePolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<Exponents, BigInt>> sorted(terms_.begin(), terms_.end());
  std::stable_sort(sorted.begin(), sorted.end(), [](const auto& l, const auto& r) {
    const unsigned dl = l.first[0] + l.first[1] + l.first[2];
    const unsigned dr = r.first[0] + r.first[1] + r.first[2];
    if (dl != dr) return dl > dr;
    return l.first > r.first;
  });
  static const char* names[] = {"X", "Y", "Z"};
  std::string out;
  for (const auto& [e, c] : sorted) {
    const bool negative = c < 0;
    const BigInt mag = negative ? BigInt(-c) : c;
    std::string mono;
    for (unsigned k = 0; k < 3; ++k) {
      if (e[k] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += names[k];
      if (e[k] > 1) mono += "^" + std::to_string(e[k]);
    }
    std::string term;
    if (mono.empty()) {
      term = mag.get_str();
    } else {
      term = mag == 1 ? mono : mag.get_str() + "*" + mono;
    }
    if (out.empty()) {
      out = negative ? "-" + term : term;
    } else {
      out += negative ? " - " : " + ";
      out += term;
    }
  }
  return out;
}

namespace {

// Letters: +1 = a, -1 = a^-1, +2 = b, -2 = b^-1.
using Code = std::vector<int>;

Code cyclic_reduce(Code w) {
  Code out;
  for (int l : w) {
    if (!out.empty() && out.back() == -l) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  std::size_t lo = 0, hi = out.size();
  while (hi - lo >= 2 && out[lo] == -out[hi - 1]) {
    ++lo;
    --hi;
  }
  return Code(out.begin() + static_cast<long>(lo), out.begin() + static_cast<long>(hi));
}

// Smallest rotation of w or of w^-1; traces in SL2 agree on all of them.
Code canonical(const Code& w) {
  if (w.empty()) return w;
  Code inv(w.rbegin(), w.rend());
  for (int& l : inv) l = -l;
  Code best = w;
  for (const Code* src : {&w, static_cast<const Code*>(&inv)}) {
    Code r = *src;
    for (std::size_t i = 0; i < r.size(); ++i) {
      std::rotate(r.begin(), r.begin() + 1, r.end());
      if (r < best) best = r;
    }
  }
  return best;
}

class Engine {
 public:
  TracePolynomial trace(const Code& input) {
    const Code w = canonical(cyclic_reduce(input));
    if (auto it = memo_.find(w); it != memo_.end()) return it->second;
    TracePolynomial result = compute(w);
    memo_.emplace(w, result);
    return result;
  }

 private:
  TracePolynomial compute(Code w) {
    if (w.empty()) return TracePolynomial::constant(2);
    // tr w = tr w^-1; keep the orientation with fewer inverse letters so each
    // rewrite below strictly shortens the word or reduces that count
    const auto negatives = static_cast<std::size_t>(std::count_if(w.begin(), w.end(), [](int l) { return l < 0; }));
    if (2 * negatives > w.size()) {
      std::reverse(w.begin(), w.end());
      for (int& l : w) l = -l;
    }
    if (w.size() == 1) return TracePolynomial::variable(std::abs(w[0]) == 1 ? 0 : 1);
    // remove an inverse letter: tr(s g^-1) = tr(s) tr(g) - tr(s g)
    const auto neg = std::find_if(w.begin(), w.end(), [](int l) { return l < 0; });
    if (neg != w.end()) {
      Code rotated(neg + 1, w.end());
      rotated.insert(rotated.end(), w.begin(), neg);
      const int g = -*neg;
      Code sg = rotated;
      sg.push_back(g);
      return trace(rotated) * TracePolynomial::variable(g == 1 ? 0 : 1) - trace(sg);
    }
    // positive word with a cyclically adjacent repeat: tr(g g s) = tr(g) tr(g s) - tr(s)
    for (std::size_t i = 0; i < w.size(); ++i) {
      const std::size_t j = (i + 1) % w.size();
      if (w[i] != w[j]) continue;
      Code s;
      for (std::size_t k = 2; k < w.size(); ++k) s.push_back(w[(i + k) % w.size()]);
      Code gs = s;
      gs.insert(gs.begin(), w[i]);
      return TracePolynomial::variable(w[i] == 1 ? 0 : 1) * trace(gs) - trace(s);
    }
    // alternating (ab)^k
    const std::size_t k = w.size() / 2;
    if (k == 1) return TracePolynomial::variable(2);
    Code shorter1, shorter2;
    for (std::size_t i = 0; i + 1 < k; ++i) shorter1.insert(shorter1.end(), {1, 2});
    for (std::size_t i = 0; i + 2 < k; ++i) shorter2.insert(shorter2.end(), {1, 2});
    return TracePolynomial::variable(2) * trace(shorter1) - trace(shorter2);
  }

  std::map<Code, TracePolynomial> memo_;
};

}  // namespace

TracePolynomial fricke_polynomial(const Word& w) {
  Code code;
  for (const auto& l : w.letters()) {
    if (l.generator > 1) throw PreconditionError("trace polynomials are defined for words in two generators");
    code.push_back((l.generator == 0 ? 1 : 2) * l.exponent);
  }
  thread_local Engine engine;
  return engine.trace(code);
}

}  // namespace pcurv
