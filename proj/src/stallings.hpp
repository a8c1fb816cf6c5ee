#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "word.hpp"

namespace rfc {

// Folded subgroup graph for a finitely generated subgroup of a free group.
// Vertices are states, edge labels are free generators; at most one outgoing
// and one incoming edge per label at each vertex (folded). Vertex 0 is the
// basepoint.
class StallingsGraph {
public:
  // Builds the bouquet of the generating words and folds it.
  StallingsGraph(std::uint32_t alphabet, const std::vector<Word>& gens);

  std::uint32_t alphabet() const { return alphabet_; }
  std::size_t vertex_count() const { return out_[0].size(); }

  // Rank of the subgroup: edges minus vertices plus one (graph is connected).
  std::size_t rank() const;

  // True iff w labels a closed path at the basepoint.
  bool contains(const Word& w) const;

  // Follows w from the basepoint; empty when some edge is missing.
  std::optional<std::size_t> trace(const Word& w) const;

  // Single move: the label-edge leaving v (dir > 0) or entering v read
  // backwards (dir < 0); empty when absent.
  std::optional<std::size_t> step(std::size_t v, std::uint32_t label, int dir) const;

private:
  void fold();
  std::size_t add_vertex();
  void add_edge(std::size_t from, std::uint32_t label, std::size_t to);

  std::uint32_t alphabet_;
  // out_[label][v] = target of the label-edge leaving v, -1 if absent;
  // in_[label][v] = target of the label-edge read backwards.
  std::vector<std::vector<std::int64_t>> out_, in_;
};

// Rank of <gens> inside the free group on `alphabet` generators.
std::size_t subgroup_rank(std::uint32_t alphabet, const std::vector<Word>& gens);

// Nielsen-reduced generating data for <gens>, with history: reduced[i] is a
// word of the ambient free group and expr[i] is the same element written
// over the original generator indices (letters index into `gens`).
struct NielsenSet {
  std::vector<Word> reduced;
  std::vector<Word> expr;
};

NielsenSet nielsen_reduce(const std::vector<Word>& gens);

// Membership with expression readback: when w lies in <gens>, returns a word
// over indices into `gens` that evaluates to w; otherwise nullopt.
std::optional<Word> subgroup_express(std::uint32_t alphabet, const std::vector<Word>& gens,
                                     const Word& w);

// Decides membership only (Stallings fold; cheaper than expression readback).
bool subgroup_contains(std::uint32_t alphabet, const std::vector<Word>& gens, const Word& w);

}  // namespace rfc
