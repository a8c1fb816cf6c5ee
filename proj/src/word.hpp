#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace rfc {

// One syllable of a word: generator index and a nonzero exponent.
struct Letter {
  std::uint32_t gen = 0;
  std::int64_t exp = 0;

  friend bool operator==(const Letter& a, const Letter& b) {
    return a.gen == b.gen && a.exp == b.exp;
  }
};

// Freely reduced word over an indexed generating set. Invariants: every
// exponent is nonzero and adjacent letters use distinct generators.
class Word {
public:
  Word() = default;

  static Word letter(std::uint32_t gen, std::int64_t exp) {
    Word w;
    w.push(gen, exp);
    return w;
  }

  static Word from_letters(const std::vector<Letter>& ls) {
    Word w;
    for (const Letter& l : ls) w.push(l.gen, l.exp);
    return w;
  }

  const std::vector<Letter>& letters() const { return ls_; }
  bool empty() const { return ls_.empty(); }
  std::size_t syllables() const { return ls_.size(); }

  // Sum of |exponent| over all syllables.
  std::int64_t length() const {
    std::int64_t n = 0;
    for (const Letter& l : ls_) n += l.exp < 0 ? -l.exp : l.exp;
    return n;
  }

  // Number of generators needed to interpret this word (1 + max index).
  std::uint32_t min_alphabet() const {
    std::uint32_t n = 0;
    for (const Letter& l : ls_)
      if (l.gen + 1 > n) n = l.gen + 1;
    return n;
  }

  Word& push(std::uint32_t gen, std::int64_t exp) {
    if (exp == 0) return *this;
    if (!ls_.empty() && ls_.back().gen == gen) {
      ls_.back().exp += exp;
      if (ls_.back().exp == 0) ls_.pop_back();
      return *this;
    }
    ls_.push_back(Letter{gen, exp});
    return *this;
  }

  Word& append(const Word& w) {
    for (const Letter& l : w.ls_) push(l.gen, l.exp);
    return *this;
  }

  friend Word operator*(const Word& a, const Word& b) {
    Word r = a;
    r.append(b);
    return r;
  }

  Word inverse() const {
    Word r;
    for (auto it = ls_.rbegin(); it != ls_.rend(); ++it) r.push(it->gen, -it->exp);
    return r;
  }

  Word pow(std::int64_t n) const {
    if (n < 0) return inverse().pow(-n);
    Word r;
    for (std::int64_t i = 0; i < n; i++) r.append(*this);
    return r;
  }

  std::int64_t exponent_sum(std::uint32_t gen) const {
    std::int64_t n = 0;
    for (const Letter& l : ls_)
      if (l.gen == gen) n += l.exp;
    return n;
  }

  friend bool operator==(const Word& a, const Word& b) { return a.ls_ == b.ls_; }
  friend bool operator!=(const Word& a, const Word& b) { return !(a == b); }

  bool operator<(const Word& b) const;  // shortlex on (syllable count, letters)

  // Renders with the given generator names, "1" when empty.
  std::string str(const std::vector<std::string>& names) const;

private:
  std::vector<Letter> ls_;
};

}  // namespace rfc
