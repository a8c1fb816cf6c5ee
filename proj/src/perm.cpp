#include "perm.hpp"

#include <algorithm>
#include <numeric>

#include "error.hpp"

namespace rfc {

Perm::Perm(std::vector<std::int32_t> images) : map_(std::move(images)) {
  std::vector<bool> seen(map_.size(), false);
  for (std::int32_t v : map_) {
    if (v < 0 || static_cast<std::size_t>(v) >= map_.size() || seen[static_cast<std::size_t>(v)])
      fail_input("permutation image list is not a bijection");
    seen[static_cast<std::size_t>(v)] = true;
  }
}

Perm Perm::identity(std::size_t degree) {
  std::vector<std::int32_t> v(degree);
  std::iota(v.begin(), v.end(), 0);
  Perm p;
  p.map_ = std::move(v);
  return p;
}

bool Perm::is_identity() const {
  for (std::size_t i = 0; i < map_.size(); i++)
    if (map_[i] != static_cast<std::int32_t>(i)) return false;
  return true;
}

Perm operator*(const Perm& p, const Perm& q) {
  if (p.degree() != q.degree()) fail_internal("permutation degree mismatch");
  std::vector<std::int32_t> v(p.degree());
  for (std::size_t i = 0; i < v.size(); i++) v[i] = q.map_[static_cast<std::size_t>(p.map_[i])];
  Perm r;
  r.map_ = std::move(v);
  return r;
}

Perm Perm::inverse() const {
  std::vector<std::int32_t> v(map_.size());
  for (std::size_t i = 0; i < map_.size(); i++)
    v[static_cast<std::size_t>(map_[i])] = static_cast<std::int32_t>(i);
  Perm r;
  r.map_ = std::move(v);
  return r;
}

Perm Perm::pow(std::int64_t n) const {
  Perm base = n < 0 ? inverse() : *this;
  std::uint64_t e = static_cast<std::uint64_t>(n < 0 ? -n : n);
  Perm acc = Perm::identity(degree());
  while (e) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

std::int64_t Perm::order() const {
  std::vector<bool> seen(map_.size(), false);
  std::int64_t ord = 1;
  for (std::size_t i = 0; i < map_.size(); i++) {
    if (seen[i]) continue;
    std::int64_t len = 0;
    std::size_t j = i;
    while (!seen[j]) {
      seen[j] = true;
      j = static_cast<std::size_t>(map_[j]);
      len++;
    }
    ord = std::lcm(ord, len);
  }
  return ord;
}

std::size_t Perm::hash() const {
  std::size_t h = 1469598103934665603ull;
  for (std::int32_t v : map_) {
    h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ull;
    h *= 1099511628211ull;
  }
  return h;
}

std::string Perm::cycle_str() const {
  std::string out;
  std::vector<bool> seen(map_.size(), false);
  for (std::size_t i = 0; i < map_.size(); i++) {
    if (seen[i] || map_[i] == static_cast<std::int32_t>(i)) continue;
    out += "(";
    std::size_t j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = true;
      if (!first) out += " ";
      out += std::to_string(j);
      first = false;
      j = static_cast<std::size_t>(map_[j]);
    }
    out += ")";
  }
  return out.empty() ? "()" : out;
}

PermGroup::PermGroup(std::size_t degree, std::vector<Perm> gens)
    : degree_(degree), gens_(std::move(gens)) {
  for (const Perm& g : gens_)
    if (g.degree() != degree_) fail_input("generator degree mismatch in permutation group");
}

void PermGroup::enumerate(std::uint64_t cap) const {
  if (enumerated_) return;
  elems_.clear();
  index_.clear();
  parent_.clear();
  elems_.push_back(Perm::identity(degree_));
  index_.emplace(elems_[0], 0);
  parent_.emplace_back(-1, 0);
  for (std::size_t at = 0; at < elems_.size(); at++) {
    for (std::size_t gi = 0; gi < gens_.size(); gi++) {
      Perm next = elems_[at] * gens_[gi];
      if (index_.count(next)) continue;
      if (elems_.size() >= cap)
        fail_budget("permutation group enumeration exceeded cap of " + std::to_string(cap));
      index_.emplace(next, elems_.size());
      elems_.push_back(std::move(next));
      parent_.emplace_back(static_cast<std::int32_t>(gi), at);
    }
  }
  enumerated_ = true;
}

std::uint64_t PermGroup::order(std::uint64_t cap) const {
  enumerate(cap);
  return elems_.size();
}

const std::vector<Perm>& PermGroup::elements(std::uint64_t cap) const {
  enumerate(cap);
  return elems_;
}

bool PermGroup::contains(const Perm& p, std::uint64_t cap) const {
  enumerate(cap);
  return index_.count(p) != 0;
}

std::optional<std::size_t> PermGroup::index_of(const Perm& p, std::uint64_t cap) const {
  enumerate(cap);
  auto it = index_.find(p);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Word PermGroup::word_for(std::size_t i, std::uint64_t cap) const {
  enumerate(cap);
  std::vector<Letter> rev;
  while (i != 0) {
    auto [gen, pred] = parent_[i];
    rev.push_back(Letter{static_cast<std::uint32_t>(gen), 1});
    i = pred;
  }
  Word out;
  for (auto it = rev.rbegin(); it != rev.rend(); ++it) out.push(it->gen, it->exp);
  return out;
}

Perm PermGroup::eval(const Word& w) const {
  Perm acc = Perm::identity(degree_);
  for (const Letter& l : w.letters()) {
    if (l.gen >= gens_.size()) fail_input("word references generator outside permutation group");
    acc = acc * gens_[l.gen].pow(l.exp);
  }
  return acc;
}

std::vector<std::pair<Perm, Perm>> pair_closure(const std::vector<std::pair<Perm, Perm>>& gens,
                                                std::uint64_t cap) {
  if (gens.empty()) return {};
  struct PairHash {
    std::size_t operator()(const std::pair<Perm, Perm>& p) const {
      return p.first.hash() * 1000003u ^ p.second.hash();
    }
  };
  std::pair<Perm, Perm> id{Perm::identity(gens[0].first.degree()),
                           Perm::identity(gens[0].second.degree())};
  std::vector<std::pair<Perm, Perm>> elems{id};
  std::unordered_map<std::pair<Perm, Perm>, std::size_t, PairHash> seen;
  seen.emplace(id, 0);
  for (std::size_t at = 0; at < elems.size(); at++) {
    for (const auto& g : gens) {
      std::pair<Perm, Perm> next{elems[at].first * g.first, elems[at].second * g.second};
      if (seen.count(next)) continue;
      if (elems.size() >= cap) fail_budget("pair closure exceeded cap of " + std::to_string(cap));
      seen.emplace(next, elems.size());
      elems.push_back(std::move(next));
    }
  }
  return elems;
}

bool kernel_leq(const std::vector<Perm>& f_imgs, const std::vector<Perm>& g_imgs,
                std::uint64_t cap) {
  if (f_imgs.size() != g_imgs.size()) fail_internal("kernel_leq: generator count mismatch");
  std::vector<std::pair<Perm, Perm>> gens;
  gens.reserve(f_imgs.size());
  for (std::size_t i = 0; i < f_imgs.size(); i++) gens.emplace_back(f_imgs[i], g_imgs[i]);
  for (const auto& [x, y] : pair_closure(gens, cap))
    if (x.is_identity() && !y.is_identity()) return false;
  return true;
}

Perm pad_left(const Perm& p, std::size_t total_degree) {
  std::vector<std::int32_t> v(total_degree);
  std::iota(v.begin(), v.end(), 0);
  for (std::size_t i = 0; i < p.degree(); i++) v[i] = p.images()[i];
  return Perm(std::move(v));
}

Perm pad_right(const Perm& p, std::size_t total_degree) {
  std::vector<std::int32_t> v(total_degree);
  std::iota(v.begin(), v.end(), 0);
  std::size_t off = total_degree - p.degree();
  for (std::size_t i = 0; i < p.degree(); i++)
    v[off + i] = p.images()[i] + static_cast<std::int32_t>(off);
  return Perm(std::move(v));
}

Perm juxtapose(const Perm& a, const Perm& b) {
  std::vector<std::int32_t> v(a.degree() + b.degree());
  for (std::size_t i = 0; i < a.degree(); i++) v[i] = a.images()[i];
  for (std::size_t i = 0; i < b.degree(); i++)
    v[a.degree() + i] = b.images()[i] + static_cast<std::int32_t>(a.degree());
  return Perm(std::move(v));
}

}  // namespace rfc
