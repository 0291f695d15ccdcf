#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pcurv {

struct Letter {
  std::size_t generator = 0;
  int exponent = 1;  // +1 or -1
  bool operator==(const Letter&) const = default;
  auto operator<=>(const Letter&) const = default;
};

/// Freely reduced word in numbered generators.
class Word {
 public:
  Word() = default;
  /// Reduces the input freely.
  explicit Word(std::vector<Letter> letters);
  static Word generator(std::size_t g, int exponent = 1) { return Word({Letter{g, exponent}}); }

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  Word inverse() const;
  friend Word operator*(const Word& a, const Word& b);
  bool operator==(const Word&) const = default;
  auto operator<=>(const Word&) const = default;

  /// e.g. "a1*b1^-1*c1"; "1" for the empty word.
  std::string to_string(std::span<const std::string> names) const;

 private:
  std::vector<Letter> letters_;
};

Word reduce_word(std::vector<Letter> letters);

/// Parses "a1*b1^-1*c1", "a1 b1^-1 c1" or "1"; NAME^k for any integer k is
/// expanded. Throws ParseError on unknown names.
Word parse_word(std::string_view text, std::span<const std::string> names);

/// Surface of genus g with n punctures; generators a1, b1, ..., ag, bg, c1, ..., cn.
class SurfacePresentation {
 public:
  SurfacePresentation(std::size_t genus, std::size_t punctures);

  std::size_t genus() const { return genus_; }
  std::size_t punctures() const { return punctures_; }
  /// 2g + n.
  std::size_t generator_count() const { return names_.size(); }
  /// Rank of the free group when n >= 1 (c_n is then determined by the relation).
  std::size_t free_rank() const;
  bool closed() const { return punctures_ == 0; }
  const std::vector<std::string>& names() const { return names_; }

  /// prod_i a_i b_i^-1 a_i^-1 b_i * c_1 ... c_n.
  Word relation() const;

 private:
  std::size_t genus_;
  std::size_t punctures_;
  std::vector<std::string> names_;
};

/// Products of every nonempty subset of the optimal sequence a1, b1, ..., cn
/// taken in cyclic order, one representative per subset: the product starts
/// after the largest cyclic gap (earliest start on ties). Sorted by size, then
/// by positions.
std::vector<Word> simple_loop_products(const SurfacePresentation& pres);

}  // namespace pcurv

template <>
struct std::hash<pcurv::Word> {
  std::size_t operator()(const pcurv::Word& w) const {
    std::size_t h = w.size();
    for (const auto& l : w.letters()) h = h * 1000003u + l.generator * 2 + (l.exponent > 0 ? 1 : 0);
    return h;
  }
};
