#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "perm.hpp"
#include "word.hpp"
#include "zmat.hpp"

namespace rfc {

using VecZ = std::vector<std::int64_t>;

// ---------------------------------------------------------------------------
// Group descriptions.
//
// A Group is one of seven representation classes. Elements are canonical
// values (see Elem); words over the generators are the universal input
// currency and normalize into canonical values via eval_word.
// ---------------------------------------------------------------------------

enum class GClass { free_grp, abelian, finite, pc, split, raag, asc_hnn };

struct Group;
using GroupPtr = std::shared_ptr<const Group>;

struct Elem;

// Element of a split extension F x| B: pair (f, b), written f * b inside the
// extension. The base part is a Word (free base) or exponent vector
// (abelian or pc base).
struct SplitVal {
  Perm f;
  std::variant<Word, VecZ> b;
};

// Element of an ascending HNN extension in minimal normal form t^k g t^-l.
struct HnnVal {
  std::int64_t k = 0;
  std::int64_t l = 0;
  std::shared_ptr<const Elem> g;  // base element, never null
};

struct Elem {
  std::variant<Word, VecZ, Perm, SplitVal, HnnVal> v;

  Elem() = default;
  explicit Elem(Word w) : v(std::move(w)) {}
  explicit Elem(VecZ e) : v(std::move(e)) {}
  explicit Elem(Perm p) : v(std::move(p)) {}
  explicit Elem(SplitVal s) : v(std::move(s)) {}
  explicit Elem(HnnVal h) : v(std::move(h)) {}
};

bool elem_eq(const Elem& a, const Elem& b);
bool elem_less(const Elem& a, const Elem& b);

// --- per-class data --------------------------------------------------------

struct FreeData {};

// Z^r + Z/d1 + ... + Z/ds with d1 | d2 | ... | ds, each di >= 2. Elements
// are integer vectors of length r + s; torsion coordinates live in [0, di).
struct AbelianData {
  std::size_t free_rank = 0;
  std::vector<std::int64_t> torsion;
};

struct FiniteData {
  std::size_t degree = 0;
  std::vector<Perm> gens;
  std::shared_ptr<PermGroup> pg;  // shared so Group stays copyable
};

// Polycyclic presentation on g_1..g_n. orders[i] is the relative order of
// g_i (0 = infinite). For finite orders[i], power_rhs[i] is the exponent
// vector of g_i^orders[i] (support > i). conj[i][j] (i < j) is the exponent
// vector of g_i^-1 g_j g_i, conj_inv[i][j] of g_i g_j g_i^-1; both have
// support >= j. Elements are collected exponent vectors with torsion
// entries in [0, orders[i]).
struct PcData {
  std::vector<std::int64_t> orders;
  std::vector<VecZ> power_rhs;
  std::vector<std::vector<VecZ>> conj;
  std::vector<std::vector<VecZ>> conj_inv;
};

// F x| B with F finite and B free, abelian, or pc. action[b][f] is the word
// over fiber generators for lambda_b(f) = b f b^-1. Generators of the split
// group are the fiber generators first, then the base generators.
struct SplitData {
  GroupPtr fiber;
  GroupPtr base;
  std::vector<std::vector<Word>> action;
  // Caches: fiber element list order is the PermGroup enumeration order.
  // act_elem[b] permutes fiber element indices by lambda_{gen b}.
  std::vector<Perm> act_elem;
  std::vector<Perm> act_elem_inv;
};

// Right-angled Artin group on named vertices; edges are commuting pairs.
struct RaagData {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  std::vector<std::vector<bool>> adj;
};

// Ascending HNN extension of `base` along the injective endomorphism with
// generator images `phi`. Generators: base generators, then the stable
// letter (always the last index). When `injective` is false the description
// is endomorphism-only: word-problem operations are disabled.
struct HnnData {
  GroupPtr base;
  std::vector<Word> phi;
  bool injective = false;
};

struct Group {
  GClass cls;
  std::vector<std::string> names;
  std::variant<FreeData, AbelianData, FiniteData, PcData, SplitData, RaagData, HnnData> data;

  template <class T>
  const T& get() const {
    return std::get<T>(data);
  }
};

// --- constructors (validate invariants, throw Error on violation) ----------

GroupPtr make_free(std::vector<std::string> names);
GroupPtr make_abelian(std::size_t free_rank, std::vector<std::int64_t> torsion,
                      std::vector<std::string> names = {});
GroupPtr make_finite(std::size_t degree, std::vector<Perm> gens, std::vector<std::string> names);
GroupPtr make_pc(std::vector<std::string> names, std::vector<std::int64_t> orders,
                 std::vector<VecZ> power_rhs, std::vector<std::vector<VecZ>> conj,
                 std::vector<std::vector<VecZ>> conj_inv);
GroupPtr make_split(GroupPtr fiber, GroupPtr base, std::vector<std::vector<Word>> action);
GroupPtr make_raag(std::vector<std::string> vertices,
                   std::vector<std::pair<std::uint32_t, std::uint32_t>> edges);
// verify_injective: check injectivity of phi (free via graph rank, abelian
// via kernel, finite via exhaustion, pc via derived-factor determinants);
// when the check fails the result is endomorphism-only.
GroupPtr make_asc_hnn(GroupPtr base, std::vector<Word> phi, std::string stable_name = "t");

// --- core operations --------------------------------------------------------

std::size_t group_ngens(const Group& g);
Elem group_identity(const Group& g);
Elem gen_elem(const Group& g, std::size_t i);
Elem group_mul(const Group& g, const Elem& a, const Elem& b);
Elem group_inv(const Group& g, const Elem& a);
Elem group_pow(const Group& g, const Elem& a, std::int64_t n);
bool is_identity(const Group& g, const Elem& a);

// Canonical value of a word over the group's generators.
Elem eval_word(const Group& g, const Word& w);

// A word over the group's generators representing the canonical element.
Word elem_to_word(const Group& g, const Elem& e);

// Rendering with generator names.
std::string elem_str(const Group& g, const Elem& e);

// Defining relators, as words over the generators. Available for the free,
// abelian, pc, and raag classes, and for split and asc_hnn groups whose
// constituents support it. Finite permutation groups have no stored
// presentation; callers that need one use Cayley-graph closure instead.
std::vector<Word> group_relators(const Group& g);
bool has_relator_presentation(const Group& g);

// Order of the group when finite, nullopt when infinite. May enumerate.
std::optional<std::uint64_t> group_order(const Group& g);

// All elements of a finite-order group, in a deterministic order.
// Throws budget_exhausted beyond `cap` elements.
std::vector<Elem> all_elements(const Group& g, std::uint64_t cap = 2000000);

// --- per-class helpers ------------------------------------------------------

// Abelian: canonical reduction of a raw integer vector (length r + s).
VecZ abelian_reduce(const AbelianData& a, VecZ v);
// Lattice of relations inside Z^{r+s}: rows d_i * e_i for torsion coords.
Lattice abelian_relation_lattice(const AbelianData& a);

// Finite: the underlying permutation group (enumeration cached).
const PermGroup& finite_pg(const Group& g);

// Split: the fiber automorphism lambda_b realized as a permutation of fiber
// element indices, for an arbitrary base element.
Perm split_aut_of(const Group& g, const std::variant<Word, VecZ>& base_elem);
// Index of a fiber element in the fiber enumeration order.
std::size_t split_fiber_index(const Group& g, const Perm& f);
const std::vector<Perm>& split_fiber_elements(const Group& g);
// Base group element ops routed through the base GroupPtr.
Elem split_base_to_elem(const Group& g, const std::variant<Word, VecZ>& b);
std::variant<Word, VecZ> split_base_from_elem(const Group& g, const Elem& e);

// Asc-HNN: minimal normal form of a word over base generators + stable
// letter (last index). Declared here, implemented with the base machinery.
Elem hnn_eval_word(const Group& g, const Word& w);
Word hnn_elem_to_word(const Group& g, const Elem& e);

// Raag: canonical (lexicographically least reduced) word.
Word raag_normal_form(const RaagData& r, std::size_t nverts, const Word& w);

}  // namespace rfc
