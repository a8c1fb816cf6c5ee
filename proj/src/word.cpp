#include "word.hpp"

#include "error.hpp"

namespace rfc {

bool Word::operator<(const Word& b) const {
  if (length() != b.length()) return length() < b.length();
  if (ls_.size() != b.ls_.size()) return ls_.size() < b.ls_.size();
  for (std::size_t i = 0; i < ls_.size(); i++) {
    if (ls_[i].gen != b.ls_[i].gen) return ls_[i].gen < b.ls_[i].gen;
    if (ls_[i].exp != b.ls_[i].exp) return ls_[i].exp < b.ls_[i].exp;
  }
  return false;
}

std::string Word::str(const std::vector<std::string>& names) const {
  if (ls_.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < ls_.size(); i++) {
    const Letter& l = ls_[i];
    if (i) out += "*";
    if (l.gen >= names.size()) fail_internal("word references generator out of range");
    out += names[l.gen];
    if (l.exp != 1) out += "^" + std::to_string(l.exp);
  }
  return out;
}

}  // namespace rfc
