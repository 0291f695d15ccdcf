#include "pcurv/surface/word.hpp"

#include <algorithm>
#include <cctype>

#include "pcurv/arith/errors.hpp"

namespace pcurv {

Word reduce_word(std::vector<Letter> letters) { return Word(std::move(letters)); }

Word::Word(std::vector<Letter> letters) {
  for (const auto& l : letters) {
    if (l.exponent != 1 && l.exponent != -1) throw PreconditionError("letter exponent must be +1 or -1");
    if (!letters_.empty() && letters_.back().generator == l.generator && letters_.back().exponent == -l.exponent) {
      letters_.pop_back();
    } else {
      letters_.push_back(l);
    }
  }
}

Word Word::inverse() const {
  std::vector<Letter> out(letters_.rbegin(), letters_.rend());
  for (auto& l : out) l.exponent = -l.exponent;
  return Word(std::move(out));
}

Word operator*(const Word& a, const Word& b) {
  std::vector<Letter> out = a.letters_;
  out.insert(out.end(), b.letters_.begin(), b.letters_.end());
  return Word(std::move(out));
}

std::string Word::to_string(std::span<const std::string> names) const {
  if (letters_.empty()) return "1";
  std::string out;
  for (const auto& l : letters_) {
    if (!out.empty()) out += "*";
    out += l.generator < names.size() ? names[l.generator] : "g" + std::to_string(l.generator);
    if (l.exponent < 0) out += "^-1";
  }
  return out;
}

Word parse_word(std::string_view text, std::span<const std::string> names) {
  std::vector<Letter> letters;
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && (std::isspace(static_cast<unsigned char>(text[pos])) || text[pos] == '*')) ++pos;
  };
  skip();
  if (text.substr(pos) == "1") return Word();
  while (pos < text.size()) {
    const std::size_t start = pos;
    while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) ++pos;
    if (pos == start) throw ParseError(pos + 1, std::string("unexpected '") + text[pos] + "'");
    const std::string name(text.substr(start, pos - start));
    const auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) throw ParseError(start + 1, "unknown generator '" + name + "'");
    long exponent = 1;
    if (pos < text.size() && text[pos] == '^') {
      ++pos;
      const std::size_t estart = pos;
      if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      const std::string digits(text.substr(estart, pos - estart));
      if (digits.empty() || digits == "-" || digits == "+" || digits.size() > 7) {
        throw ParseError(estart + 1, "malformed exponent");
      }
      exponent = std::stol(digits);
    }
    const auto g = static_cast<std::size_t>(it - names.begin());
    for (long k = 0; k < std::labs(exponent); ++k) letters.push_back({g, exponent < 0 ? -1 : 1});
    skip();
  }
  return Word(std::move(letters));
}

SurfacePresentation::SurfacePresentation(std::size_t genus, std::size_t punctures)
    : genus_(genus), punctures_(punctures) {
  for (std::size_t i = 1; i <= genus; ++i) {
    names_.push_back("a" + std::to_string(i));
    names_.push_back("b" + std::to_string(i));
  }
  for (std::size_t i = 1; i <= punctures; ++i) names_.push_back("c" + std::to_string(i));
}

std::size_t SurfacePresentation::free_rank() const {
  if (punctures_ == 0) throw PreconditionError("closed surface groups are not free");
  return names_.size() - 1;
}

Word SurfacePresentation::relation() const {
  std::vector<Letter> out;
  for (std::size_t i = 0; i < genus_; ++i) {
    const std::size_t a = 2 * i, b = 2 * i + 1;
    out.insert(out.end(), {{a, 1}, {b, -1}, {a, -1}, {b, 1}});
  }
  for (std::size_t i = 0; i < punctures_; ++i) out.push_back({2 * genus_ + i, 1});
  return Word(std::move(out));
}

std::vector<Word> simple_loop_products(const SurfacePresentation& pres) {
  const std::size_t n = pres.generator_count();
  if (n == 0) return {};
  if (n > 20) throw PreconditionError("too many generators for subset enumeration");
  std::vector<std::vector<std::size_t>> orders;
  for (unsigned long mask = 1; mask < (1UL << n); ++mask) {
    std::vector<std::size_t> pos;
    for (std::size_t i = 0; i < n; ++i) {
      if ((mask >> i) & 1) pos.push_back(i);
    }
    // gap before pos[i] is the cyclic distance from its predecessor
    std::size_t best = 0, best_gap = 0;
    for (std::size_t i = 0; i < pos.size(); ++i) {
      const std::size_t prev = pos[(i + pos.size() - 1) % pos.size()];
      const std::size_t gap = pos.size() == 1 ? n : (pos[i] + n - prev) % n;
      if (gap > best_gap) {
        best_gap = gap;
        best = i;
      }
    }
    std::rotate(pos.begin(), pos.begin() + static_cast<long>(best), pos.end());
    orders.push_back(std::move(pos));
  }
  std::sort(orders.begin(), orders.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  std::vector<Word> out;
  for (const auto& o : orders) {
    std::vector<Letter> letters;
    for (auto i : o) letters.push_back({i, 1});
    out.emplace_back(std::move(letters));
  }
  return out;
}

}  // namespace pcurv
