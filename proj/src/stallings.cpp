#include "stallings.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <queue>
#include <set>

#include "error.hpp"

namespace rfc {

namespace {

// Expands a word into unit letters (gen, +-1).
std::vector<std::pair<std::uint32_t, int>> unit_letters(const Word& w) {
  std::vector<std::pair<std::uint32_t, int>> out;
  for (const Letter& l : w.letters()) {
    const int step = l.exp > 0 ? 1 : -1;
    for (std::int64_t i = 0; i < std::llabs(l.exp); ++i) out.push_back({l.gen, step});
  }
  return out;
}

struct Dsu {
  std::vector<std::size_t> parent;
  explicit Dsu(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    // Keep the smaller representative so the basepoint class stays at 0.
    if (b < a) std::swap(a, b);
    parent[b] = a;
    return true;
  }
};

}  // namespace

StallingsGraph::StallingsGraph(std::uint32_t alphabet, const std::vector<Word>& gens)
    : alphabet_(alphabet) {
  for (const Word& g : gens) {
    if (g.min_alphabet() > alphabet) fail_input("subgroup generator uses an unknown generator");
  }
  // Bouquet: one path per generator, sharing the basepoint.
  struct RawEdge {
    std::size_t from, to;
    std::uint32_t label;
  };
  std::vector<RawEdge> edges;
  std::size_t nverts = 1;
  for (const Word& g : gens) {
    const auto letters = unit_letters(g);
    std::size_t cur = 0;
    for (std::size_t i = 0; i < letters.size(); ++i) {
      const std::size_t next = (i + 1 == letters.size()) ? 0 : nverts++;
      if (letters[i].second > 0) {
        edges.push_back({cur, next, letters[i].first});
      } else {
        edges.push_back({next, cur, letters[i].first});
      }
      cur = next;
    }
  }

  // Fold: merge targets of equally labeled parallel edges until stable.
  Dsu dsu(nverts);
  bool changed = true;
  while (changed) {
    changed = false;
    std::map<std::pair<std::size_t, std::uint32_t>, std::size_t> out_seen, in_seen;
    for (const RawEdge& e : edges) {
      const std::size_t f = dsu.find(e.from), t = dsu.find(e.to);
      auto [ito, inserted_o] = out_seen.insert({{f, e.label}, t});
      if (!inserted_o && dsu.find(ito->second) != t) {
        dsu.unite(ito->second, t);
        changed = true;
        break;
      }
      auto [iti, inserted_i] = in_seen.insert({{t, e.label}, f});
      if (!inserted_i && dsu.find(iti->second) != f) {
        dsu.unite(iti->second, f);
        changed = true;
        break;
      }
    }
  }

  // Canonical renumbering: BFS from the basepoint over (label, direction).
  std::map<std::pair<std::size_t, std::uint32_t>, std::size_t> out_map, in_map;
  for (const RawEdge& e : edges) {
    const std::size_t f = dsu.find(e.from), t = dsu.find(e.to);
    out_map[{f, e.label}] = t;
    in_map[{t, e.label}] = f;
  }
  std::map<std::size_t, std::size_t> renum;
  std::vector<std::size_t> order;
  renum[dsu.find(0)] = 0;
  order.push_back(dsu.find(0));
  for (std::size_t qi = 0; qi < order.size(); ++qi) {
    const std::size_t v = order[qi];
    for (std::uint32_t l = 0; l < alphabet_; ++l) {
      for (const auto* m : {&out_map, &in_map}) {
        auto it = m->find({v, l});
        if (it != m->end() && !renum.count(it->second)) {
          renum[it->second] = order.size();
          order.push_back(it->second);
        }
      }
    }
  }
  const std::size_t n = order.size();
  out_.assign(alphabet_, std::vector<std::int64_t>(n, -1));
  in_.assign(alphabet_, std::vector<std::int64_t>(n, -1));
  for (const auto& [key, t] : out_map) out_[key.second][renum[key.first]] = static_cast<std::int64_t>(renum[t]);
  for (const auto& [key, f] : in_map) in_[key.second][renum[key.first]] = static_cast<std::int64_t>(renum[f]);
}

std::size_t StallingsGraph::rank() const {
  std::size_t edges = 0;
  for (std::uint32_t l = 0; l < alphabet_; ++l)
    for (const std::int64_t t : out_[l])
      if (t >= 0) ++edges;
  return edges + 1 - vertex_count();
}

std::optional<std::size_t> StallingsGraph::step(std::size_t v, std::uint32_t label,
                                                int dir) const {
  if (label >= alphabet_ || v >= vertex_count()) return std::nullopt;
  const std::int64_t next = dir > 0 ? out_[label][v] : in_[label][v];
  if (next < 0) return std::nullopt;
  return static_cast<std::size_t>(next);
}

std::optional<std::size_t> StallingsGraph::trace(const Word& w) const {
  std::size_t v = 0;
  for (const auto& [gen, dir] : unit_letters(w)) {
    const auto next = step(v, gen, dir);
    if (!next) return std::nullopt;
    v = *next;
  }
  return v;
}

bool StallingsGraph::contains(const Word& w) const {
  const auto end = trace(w);
  return end.has_value() && *end == 0;
}

std::size_t subgroup_rank(std::uint32_t alphabet, const std::vector<Word>& gens) {
  return StallingsGraph(alphabet, gens).rank();
}

bool subgroup_contains(std::uint32_t alphabet, const std::vector<Word>& gens, const Word& w) {
  return StallingsGraph(alphabet, gens).contains(w);
}

NielsenSet nielsen_reduce(const std::vector<Word>& gens) {
  struct Item {
    Word w;
    Word expr;
  };
  std::vector<Item> items;
  for (std::size_t i = 0; i < gens.size(); ++i)
    items.push_back({gens[i], Word::letter(static_cast<std::uint32_t>(i), 1)});

  auto drop_trivial = [&items]() {
    items.erase(std::remove_if(items.begin(), items.end(),
                               [](const Item& it) { return it.w.empty(); }),
                items.end());
  };
  drop_trivial();

  // Pair Nielsen moves; a move applies when it shortens the replaced word or
  // keeps its length while lowering it in shortlex order. The pair
  // (total length, sorted word list) strictly decreases, so this terminates.
  bool moved = true;
  while (moved) {
    moved = false;
    for (std::size_t i = 0; i < items.size() && !moved; ++i) {
      for (std::size_t j = 0; j < items.size() && !moved; ++j) {
        if (i == j) continue;
        for (const int sign : {1, -1}) {
          const Word other = sign > 0 ? items[j].w : items[j].w.inverse();
          const Word other_e = sign > 0 ? items[j].expr : items[j].expr.inverse();
          for (const bool right : {true, false}) {
            Word cand = right ? items[i].w * other : other * items[i].w;
            const bool shorter = cand.length() < items[i].w.length();
            const bool tidier = cand.length() == items[i].w.length() && cand < items[i].w;
            if (shorter || tidier) {
              items[i].w = cand;
              items[i].expr = right ? items[i].expr * other_e : other_e * items[i].expr;
              moved = true;
              break;
            }
          }
          if (moved) break;
        }
      }
    }
    if (moved) drop_trivial();
  }

  // Canonical orientation: make the first letter positive.
  for (Item& it : items) {
    if (!it.w.empty() && it.w.letters()[0].exp < 0) {
      it.w = it.w.inverse();
      it.expr = it.expr.inverse();
    }
  }
  std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) { return a.w < b.w; });

  NielsenSet out;
  for (const Item& it : items) {
    out.reduced.push_back(it.w);
    out.expr.push_back(it.expr);
  }
  return out;
}

std::optional<Word> subgroup_express(std::uint32_t alphabet, const std::vector<Word>& gens,
                                     const Word& w) {
  StallingsGraph g(alphabet, gens);
  if (!g.contains(w)) return std::nullopt;
  if (w.empty()) return Word();

  // Spanning tree by BFS; path_word[v] reads the tree path basepoint -> v.
  const std::size_t n = g.vertex_count();
  std::vector<Word> path_word(n);
  std::vector<bool> seen(n, false);
  // Tree edges, stored as (source vertex, label) of the forward edge.
  std::set<std::pair<std::size_t, std::uint32_t>> tree;
  std::vector<std::size_t> order{0};
  seen[0] = true;
  for (std::size_t qi = 0; qi < order.size(); ++qi) {
    const std::size_t v = order[qi];
    for (std::uint32_t l = 0; l < alphabet; ++l) {
      if (auto u = g.step(v, l, 1); u && !seen[*u]) {
        seen[*u] = true;
        tree.insert({v, l});
        path_word[*u] = path_word[v] * Word::letter(l, 1);
        order.push_back(*u);
      }
      if (auto u = g.step(v, l, -1); u && !seen[*u]) {
        seen[*u] = true;
        tree.insert({*u, l});
        path_word[*u] = path_word[v] * Word::letter(l, -1);
        order.push_back(*u);
      }
    }
  }

  // Non-tree edges index the free basis of the subgroup.
  std::map<std::pair<std::size_t, std::uint32_t>, std::uint32_t> basis_index;
  for (std::size_t v = 0; v < n; ++v) {
    for (std::uint32_t l = 0; l < alphabet; ++l) {
      if (g.step(v, l, 1) && !tree.count({v, l})) {
        const auto idx = static_cast<std::uint32_t>(basis_index.size());
        basis_index[{v, l}] = idx;
      }
    }
  }

  // Reads a word along the graph, emitting one basis letter per non-tree
  // edge traversal; the emitted word equals the input in the subgroup basis.
  auto emit = [&](const Word& word) -> Word {
    Word out;
    std::size_t v = 0;
    for (const auto& [gen, dir] : unit_letters(word)) {
      const std::size_t u = *g.step(v, gen, dir);
      const std::size_t src = dir > 0 ? v : u;
      if (!tree.count({src, gen})) out.push(basis_index.at({src, gen}), dir);
      v = u;
    }
    return out;
  };

  // Each input generator written in the basis; these generate the whole
  // basis free group, so Nielsen reduction carries them to single letters
  // whose histories express the basis over the input generators.
  std::vector<Word> basis_exprs;
  for (const Word& gword : gens) basis_exprs.push_back(emit(gword));
  const NielsenSet red = nielsen_reduce(basis_exprs);
  std::vector<Word> basis_to_input(basis_index.size());
  std::vector<bool> have(basis_index.size(), false);
  for (std::size_t i = 0; i < red.reduced.size(); ++i) {
    const auto& letters = red.reduced[i].letters();
    if (letters.size() != 1 || std::llabs(letters[0].exp) != 1) continue;
    const std::uint32_t e = letters[0].gen;
    if (e >= basis_to_input.size() || have[e]) continue;
    basis_to_input[e] = letters[0].exp > 0 ? red.expr[i] : red.expr[i].inverse();
    have[e] = true;
  }

  const Word we = emit(w);
  Word result;
  for (const Letter& l : we.letters()) {
    if (!have[l.gen]) fail_internal("basis element not reached by Nielsen reduction");
    result.append(basis_to_input[l.gen].pow(l.exp));
  }

  // Defensive re-evaluation: the expression must reproduce w exactly.
  Word check;
  for (const Letter& l : result.letters()) check.append(gens[l.gen].pow(l.exp));
  if (!(check == w)) fail_internal("subgroup expression readback failed verification");
  return result;
}

}  // namespace rfc
