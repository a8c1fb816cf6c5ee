#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "word.hpp"

namespace rfc {

// Permutation of {0, ..., n-1}. p * q means "apply p, then q", so that the
// map w -> perm(w) over words is a homomorphism.
class Perm {
public:
  Perm() = default;
  explicit Perm(std::vector<std::int32_t> images);
  static Perm identity(std::size_t degree);

  std::size_t degree() const { return map_.size(); }
  std::int32_t operator()(std::int32_t i) const { return map_[static_cast<std::size_t>(i)]; }
  const std::vector<std::int32_t>& images() const { return map_; }

  bool is_identity() const;
  friend Perm operator*(const Perm& p, const Perm& q);
  Perm inverse() const;
  Perm pow(std::int64_t n) const;
  std::int64_t order() const;

  friend bool operator==(const Perm& a, const Perm& b) { return a.map_ == b.map_; }
  friend bool operator!=(const Perm& a, const Perm& b) { return !(a == b); }
  bool operator<(const Perm& b) const { return map_ < b.map_; }

  std::size_t hash() const;
  std::string cycle_str() const;

private:
  std::vector<std::int32_t> map_;
};

struct PermHash {
  std::size_t operator()(const Perm& p) const { return p.hash(); }
};

// Finitely generated permutation group with lazy breadth-first enumeration.
// Enumeration order is deterministic: BFS from the identity, generators in
// index order, so element indices and shortlex witness words are stable.
class PermGroup {
public:
  PermGroup() = default;
  PermGroup(std::size_t degree, std::vector<Perm> gens);

  std::size_t degree() const { return degree_; }
  const std::vector<Perm>& gens() const { return gens_; }

  // Enumerates at most `cap` elements; throws budget_exhausted beyond that.
  std::uint64_t order(std::uint64_t cap = kDefaultCap) const;
  const std::vector<Perm>& elements(std::uint64_t cap = kDefaultCap) const;
  bool contains(const Perm& p, std::uint64_t cap = kDefaultCap) const;
  std::optional<std::size_t> index_of(const Perm& p, std::uint64_t cap = kDefaultCap) const;

  // Shortlex-minimal word in the generators evaluating to elements[i].
  Word word_for(std::size_t i, std::uint64_t cap = kDefaultCap) const;

  Perm eval(const Word& w) const;

  static constexpr std::uint64_t kDefaultCap = 2000000;

private:
  void enumerate(std::uint64_t cap) const;

  std::size_t degree_ = 0;
  std::vector<Perm> gens_;

  mutable std::vector<Perm> elems_;
  mutable std::unordered_map<Perm, std::size_t, PermHash> index_;
  mutable std::vector<std::pair<std::int32_t, std::size_t>> parent_;  // (gen, predecessor)
  mutable bool enumerated_ = false;
};

// Closure of a set of pairs (a_i, b_i) inside the direct product of two
// permutation groups. Returns every pair (x, y) such that some word w has
// x = w(a), y = w(b). Used for kernel comparisons: ker(f) <= ker(g) iff no
// pair has x = 1, y != 1.
std::vector<std::pair<Perm, Perm>> pair_closure(const std::vector<std::pair<Perm, Perm>>& gens,
                                                std::uint64_t cap = PermGroup::kDefaultCap);

// True iff ker(f) <= ker(g), where f and g are given by generator images of
// the same source group (f_imgs[i], g_imgs[i] are images of generator i).
bool kernel_leq(const std::vector<Perm>& f_imgs, const std::vector<Perm>& g_imgs,
                std::uint64_t cap = PermGroup::kDefaultCap);

// Direct product embedding helpers: act on the disjoint union of the two
// domains.
Perm pad_left(const Perm& p, std::size_t total_degree);
Perm pad_right(const Perm& p, std::size_t total_degree);
Perm juxtapose(const Perm& a, const Perm& b);

}  // namespace rfc
