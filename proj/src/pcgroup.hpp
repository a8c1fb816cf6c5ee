#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "group.hpp"

namespace rfc {

// ---------------------------------------------------------------------------
// Polycyclic collection and subgroup machinery.
//
// All functions operate on a PcData presentation with n generators. Elements
// are collected exponent vectors of length n: entries for finite-order
// generators lie in [0, orders[i]).
// ---------------------------------------------------------------------------

// Collected product, inverse, power.
VecZ pc_mul(const PcData& pc, const VecZ& u, const VecZ& v);
VecZ pc_inv(const PcData& pc, const VecZ& u);
VecZ pc_pow(const PcData& pc, const VecZ& u, std::int64_t n);
VecZ pc_identity(const PcData& pc);
bool pc_is_identity(const VecZ& u);

// Reduces a raw exponent vector into collected range (right-to-left sweep).
VecZ pc_collect_vector(const PcData& pc, const VecZ& raw);

// Conjugate u^c = c^-1 u c.
VecZ pc_conj(const PcData& pc, const VecZ& u, const VecZ& c);

// Structural validation plus consistency: checks the presentation data
// shapes, then associativity on all generator triples with indices within
// distance 2 and on 500 deterministic pseudorandom triples. Throws Error
// (input_error) when a check fails.
void pc_validate(const PcData& pc);

// Group order: product of relative orders; nullopt when any is infinite.
std::optional<std::uint64_t> pc_order(const PcData& pc);

// --- induced generating sequences (IGS) -------------------------------------
//
// Echelonized generating data for a normal subgroup. slot[i] is an element
// with leading index i (empty when absent); leading exponents are positive,
// divide the relative order at torsion indices, and the set is closed under
// power overflow and conjugation by all ambient generators.

struct PcIgs {
  const PcData* pc = nullptr;
  std::vector<std::optional<VecZ>> slot;

  bool has(std::size_t i) const { return slot[i].has_value(); }
};

// Normal closure of the given elements.
PcIgs pc_normal_igs(const PcData& pc, const std::vector<VecZ>& gens);

// Membership and expression: reduces x by the echelon; returns the
// per-slot coefficients (ordered by leading index) when x is a member.
bool pc_igs_contains(const PcIgs& igs, const VecZ& x);
std::optional<VecZ> pc_igs_express(const PcIgs& igs, const VecZ& x);

// Subgroup presentation induced by the echelon: the pc generators are the
// nonempty slots in leading-index order.
struct PcSubgroup {
  PcData pres;                  // presentation of the subgroup
  std::vector<VecZ> gens;       // slot elements inside the ambient group
  std::vector<std::size_t> lead;  // leading ambient index per subgroup gen
};
PcSubgroup pc_igs_subgroup(const PcIgs& igs);

// Element of the subgroup (ambient vector) -> subgroup exponent vector.
std::optional<VecZ> pc_subgroup_coords(const PcIgs& igs, const PcSubgroup& sub, const VecZ& x);
// Subgroup exponent vector -> ambient vector.
VecZ pc_subgroup_to_ambient(const PcData& pc, const PcSubgroup& sub, const VecZ& coords);

// --- quotients ---------------------------------------------------------------

// Finite quotient G/K for a normal IGS K: canonical coset representatives
// are reduced exponent vectors. Fails (input_error) when the quotient is
// infinite; budget-capped enumeration.
struct PcQuotient {
  std::vector<VecZ> reps;            // canonical representatives, sorted
  std::vector<Perm> gen_action;      // right multiplication by each ambient generator
  std::size_t rep_index(const VecZ& reduced_rep) const;
};
PcQuotient pc_finite_quotient(const PcData& pc, const PcIgs& k, std::uint64_t cap = 2000000);

// Reduce an arbitrary element to its canonical coset representative mod K.
VecZ pc_coset_reduce(const PcData& pc, const PcIgs& k, const VecZ& x);

// --- derived subgroup and abelianization ------------------------------------

// IGS of the derived subgroup [G, G].
PcIgs pc_derived_igs(const PcData& pc);

// Abelianization G/[G,G] with projection and section data.
struct PcAbelianization {
  AbelianData quot;                // the abelian quotient
  std::vector<VecZ> proj;          // proj[i]: image of g_i (length r + s)
  std::vector<VecZ> section;       // per quotient generator: an exponent vector mapping onto it
};
PcAbelianization pc_abelianization(const PcData& pc);

// Apply the projection to a collected vector.
VecZ pc_abelian_image(const PcAbelianization& ab, const VecZ& x);

// --- mod-e congruence quotients ----------------------------------------------

// The presentation obtained by declaring every infinite relative order equal
// to e (keeping finite orders). Returns nullopt when the result fails the
// consistency check; otherwise a finite pc group.
std::optional<PcData> pc_mod_e(const PcData& pc, std::int64_t e);

}  // namespace rfc
