#include "pcgroup.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <map>
#include <numeric>
#include <random>

#include "error.hpp"

namespace rfc {

namespace {

std::size_t pc_n(const PcData& pc) { return pc.orders.size(); }

int lead_index(const VecZ& v) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) return static_cast<int>(i);
  return -1;
}

// Floor division (quotient rounds toward minus infinity).
std::int64_t fdiv(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b, r = a % b;
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}

// Extended gcd: returns (g, s, t) with s*a + t*b = g, g >= 0.
struct Egcd {
  std::int64_t g, s, t;
};
Egcd egcd(std::int64_t a, std::int64_t b) {
  if (b == 0) return a >= 0 ? Egcd{a, 1, 0} : Egcd{-a, -1, 0};
  Egcd r = egcd(b, a % b);
  return {r.g, r.t, r.s - (a / b) * r.t};
}

// Automorphism data: images of generators j+1..n-1 under conjugation by
// g_j^m, computed by binary exponentiation of the one-step map.
std::vector<VecZ> conj_map_power(const PcData& pc, std::size_t j, std::int64_t m);

VecZ mul_gen_power(const PcData& pc, const VecZ& r, std::size_t j, std::int64_t m);

VecZ apply_map(const PcData& pc, const std::vector<VecZ>& images, std::size_t base_idx,
               const VecZ& x) {
  // x has support > base_idx; images[k - base_idx - 1] is the image of g_k.
  VecZ out(pc_n(pc), 0);
  for (std::size_t k = base_idx + 1; k < pc_n(pc); ++k) {
    if (x[k] == 0) continue;
    out = pc_mul(pc, out, pc_pow(pc, images[k - base_idx - 1], x[k]));
  }
  return out;
}

std::vector<VecZ> compose_map(const PcData& pc, const std::vector<VecZ>& f,
                              const std::vector<VecZ>& g, std::size_t base_idx) {
  // (f then g): image of g_k is g applied to f's image.
  std::vector<VecZ> out;
  out.reserve(f.size());
  for (const VecZ& img : f) out.push_back(apply_map(pc, g, base_idx, img));
  return out;
}

std::vector<VecZ> conj_map_power(const PcData& pc, std::size_t j, std::int64_t m) {
  const std::size_t n = pc_n(pc);
  std::vector<VecZ> step;
  for (std::size_t k = j + 1; k < n; ++k)
    step.push_back(m > 0 ? pc.conj[j][k] : pc.conj_inv[j][k]);
  std::uint64_t e = static_cast<std::uint64_t>(m > 0 ? m : -m);
  // identity map
  std::vector<VecZ> acc;
  for (std::size_t k = j + 1; k < n; ++k) {
    VecZ v(n, 0);
    v[k] = 1;
    acc.push_back(v);
  }
  while (e > 0) {
    if (e & 1) acc = compose_map(pc, acc, step, j);
    e >>= 1;
    if (e > 0) step = compose_map(pc, step, step, j);
  }
  return acc;
}

// r * g_j^m for collected r.
VecZ mul_gen_power(const PcData& pc, const VecZ& r, std::size_t j, std::int64_t m) {
  if (m == 0) return r;
  const std::size_t n = pc_n(pc);
  // r = A * g_j^e * B with A below j, B above j.
  VecZ B(n, 0);
  bool b_trivial = true;
  for (std::size_t k = j + 1; k < n; ++k) {
    B[k] = r[k];
    if (B[k] != 0) b_trivial = false;
  }
  VecZ Bc = B;
  if (!b_trivial) {
    const auto images = conj_map_power(pc, j, m);
    Bc = apply_map(pc, images, j, B);
  }
  std::int64_t e2 = r[j] + m;
  VecZ tail = Bc;
  const std::int64_t o = pc.orders[j];
  if (o > 0) {
    const std::int64_t q = fdiv(e2, o);
    e2 -= q * o;
    if (q != 0) {
      const VecZ pq = pc_pow(pc, pc.power_rhs[j], q);
      tail = pc_mul(pc, pq, Bc);
    }
  }
  VecZ out(n, 0);
  for (std::size_t k = 0; k < j; ++k) out[k] = r[k];
  out[j] = e2;
  for (std::size_t k = j + 1; k < n; ++k) out[k] = tail[k];
  return out;
}

}  // namespace

VecZ pc_identity(const PcData& pc) { return VecZ(pc_n(pc), 0); }

bool pc_is_identity(const VecZ& u) { return lead_index(u) < 0; }

VecZ pc_mul(const PcData& pc, const VecZ& u, const VecZ& v) {
  VecZ r = u;
  for (std::size_t j = 0; j < pc_n(pc); ++j)
    if (v[j] != 0) r = mul_gen_power(pc, r, j, v[j]);
  return r;
}

VecZ pc_inv(const PcData& pc, const VecZ& u) {
  VecZ r = pc_identity(pc);
  for (std::size_t j = pc_n(pc); j-- > 0;)
    if (u[j] != 0) r = mul_gen_power(pc, r, j, -u[j]);
  return r;
}

VecZ pc_pow(const PcData& pc, const VecZ& u, std::int64_t n) {
  if (n < 0) return pc_pow(pc, pc_inv(pc, u), -n);
  VecZ acc = pc_identity(pc);
  VecZ base = u;
  std::uint64_t e = static_cast<std::uint64_t>(n);
  while (e > 0) {
    if (e & 1) acc = pc_mul(pc, acc, base);
    e >>= 1;
    if (e > 0) base = pc_mul(pc, base, base);
  }
  return acc;
}

VecZ pc_collect_vector(const PcData& pc, const VecZ& raw) {
  if (raw.size() != pc_n(pc)) fail_input("pc vector has wrong length");
  VecZ r = pc_identity(pc);
  for (std::size_t j = 0; j < pc_n(pc); ++j)
    if (raw[j] != 0) r = mul_gen_power(pc, r, j, raw[j]);
  return r;
}

VecZ pc_conj(const PcData& pc, const VecZ& u, const VecZ& c) {
  return pc_mul(pc, pc_mul(pc, pc_inv(pc, c), u), c);
}

std::optional<std::uint64_t> pc_order(const PcData& pc) {
  std::uint64_t prod = 1;
  for (const std::int64_t o : pc.orders) {
    if (o == 0) return std::nullopt;
    const unsigned __int128 p = static_cast<unsigned __int128>(prod) * static_cast<std::uint64_t>(o);
    if (p > UINT64_MAX) fail_internal("pc group order exceeds 64-bit range");
    prod = static_cast<std::uint64_t>(p);
  }
  return prod;
}

void pc_validate(const PcData& pc) {
  const std::size_t n = pc_n(pc);
  if (pc.power_rhs.size() != n || pc.conj.size() != n || pc.conj_inv.size() != n)
    fail_input("pc presentation arrays have inconsistent sizes");
  auto in_range = [&pc, n](const VecZ& v, std::size_t min_support) {
    if (v.size() != n) fail_input("pc relation vector has wrong length");
    for (std::size_t k = 0; k < n; ++k) {
      if (k < min_support && v[k] != 0) fail_input("pc relation vector violates support bound");
      if (pc.orders[k] > 0 && (v[k] < 0 || v[k] >= pc.orders[k]))
        fail_input("pc relation vector entry out of collected range");
    }
  };
  for (std::size_t i = 0; i < n; ++i) {
    if (pc.orders[i] < 0) fail_input("pc relative order must be positive or 0 (infinite)");
    if (pc.orders[i] > 0) {
      in_range(pc.power_rhs[i], i + 1);
    } else if (!pc.power_rhs[i].empty() && lead_index(pc.power_rhs[i]) >= 0) {
      fail_input("pc power relation given for an infinite-order generator");
    }
    if (pc.conj[i].size() != n || pc.conj_inv[i].size() != n)
      fail_input("pc conjugation arrays have inconsistent sizes");
    for (std::size_t j = i + 1; j < n; ++j) {
      in_range(pc.conj[i][j], j);
      in_range(pc.conj_inv[i][j], j);
      for (const auto* tab : {&pc.conj, &pc.conj_inv}) {
        const std::int64_t lead = (*tab)[i][j][j];
        if (pc.orders[j] == 0) {
          if (lead != 1 && lead != -1) fail_input("pc conjugation does not preserve the chain");
        } else if (std::gcd(static_cast<std::int64_t>(std::llabs(lead)), pc.orders[j]) != 1) {
          fail_input("pc conjugation does not preserve the chain");
        }
      }
    }
  }
  // Conjugation by g_i then g_i^-1 must restore every later generator.
  for (std::size_t i = 0; i < n; ++i) {
    const auto inv_map = conj_map_power(pc, i, -1);
    for (std::size_t j = i + 1; j < n; ++j) {
      VecZ gj(n, 0);
      gj[j] = 1;
      const VecZ back = apply_map(pc, inv_map, i, pc.conj[i][j]);
      if (back != gj) fail_input("pc conjugation data is not invertible");
    }
  }
  // Associativity on generator triples with indices within distance 2.
  auto check_triple = [&pc](const VecZ& u, const VecZ& v, const VecZ& w) {
    const VecZ a = pc_mul(pc, pc_mul(pc, u, v), w);
    const VecZ b = pc_mul(pc, u, pc_mul(pc, v, w));
    if (a != b) fail_input("pc presentation is inconsistent (associativity failed)");
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (std::llabs(static_cast<std::int64_t>(i) - static_cast<std::int64_t>(j)) > 2) continue;
      for (std::size_t k = 0; k < n; ++k) {
        if (std::llabs(static_cast<std::int64_t>(j) - static_cast<std::int64_t>(k)) > 2) continue;
        VecZ u(n, 0), v(n, 0), w(n, 0);
        u[i] = 1;
        v[j] = 1;
        w[k] = 1;
        check_triple(u, v, w);
      }
    }
  }
  // 500 deterministic pseudorandom triples.
  std::mt19937 rng(0x5eedu);
  auto rand_elem = [&pc, &rng, n]() {
    VecZ v(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (pc.orders[i] > 0) {
        v[i] = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(pc.orders[i]));
      } else {
        v[i] = static_cast<std::int64_t>(rng() % 7) - 3;
      }
    }
    return v;
  };
  for (int t = 0; t < 500; ++t) check_triple(rand_elem(), rand_elem(), rand_elem());
}

// --- IGS ---------------------------------------------------------------------

namespace {

// Normalizes a candidate slot element at its leading index: at a finite-order
// index the leading exponent is replaced by gcd(lead, order) via a power; at
// an infinite-order index the sign is made positive.
VecZ normalize_lead(const PcData& pc, VecZ x) {
  const int li = lead_index(x);
  if (li < 0) return x;
  const std::size_t i = static_cast<std::size_t>(li);
  const std::int64_t o = pc.orders[i];
  if (o == 0) {
    if (x[i] < 0) x = pc_inv(pc, x);
    return x;
  }
  const Egcd e = egcd(x[i], o);
  if (e.g == x[i]) return x;
  // x^s has leading exponent s*lead = g - t*o = g (mod o).
  VecZ y = pc_pow(pc, x, e.s);
  if (y[static_cast<std::size_t>(lead_index(y))] != e.g)
    fail_internal("pc igs lead normalization failed");
  return y;
}

}  // namespace

PcIgs pc_normal_igs(const PcData& pc, const std::vector<VecZ>& gens) {
  const std::size_t n = pc_n(pc);
  PcIgs igs;
  igs.pc = &pc;
  igs.slot.assign(n, std::nullopt);

  std::deque<VecZ> work;
  for (const VecZ& g : gens) work.push_back(pc_collect_vector(pc, g));

  auto enqueue_closure = [&](const VecZ& x, std::size_t lead) {
    // Torsion overflow: x^(o/lead_exp) drops to higher support.
    const std::int64_t o = pc.orders[lead];
    if (o > 0) {
      const std::int64_t a = x[lead];
      work.push_back(pc_pow(pc, x, o / std::gcd(a, o)));
    }
    // Conjugates by every ambient generator, both directions.
    for (std::size_t c = 0; c < pc_n(pc); ++c) {
      VecZ gc(pc_n(pc), 0);
      gc[c] = 1;
      work.push_back(pc_conj(pc, x, gc));
      gc[c] = -1;
      work.push_back(pc_conj(pc, x, pc_collect_vector(pc, gc)));
    }
  };

  std::uint64_t iterations = 0;
  while (!work.empty()) {
    if (++iterations > 4000000) fail_internal("pc igs computation did not stabilize");
    VecZ x = work.front();
    work.pop_front();
    while (true) {
      const int li = lead_index(x);
      if (li < 0) break;
      const std::size_t i = static_cast<std::size_t>(li);
      if (!igs.slot[i]) {
        x = normalize_lead(pc, std::move(x));
        igs.slot[i] = x;
        enqueue_closure(x, i);
        break;
      }
      const VecZ& cur = *igs.slot[i];
      const std::int64_t a = cur[i], b = x[i];
      if (b % a == 0) {
        x = pc_mul(pc, pc_pow(pc, cur, -(b / a)), x);
        continue;
      }
      const Egcd e = egcd(a, b);
      VecZ y = pc_mul(pc, pc_pow(pc, cur, e.s), pc_pow(pc, x, e.t));
      if (lead_index(y) != li || y[i] != e.g) fail_internal("pc igs gcd combination failed");
      y = normalize_lead(pc, std::move(y));
      const VecZ old = cur;
      igs.slot[i] = y;
      enqueue_closure(y, i);
      work.push_back(pc_mul(pc, pc_pow(pc, y, -(a / y[i])), old));
      x = pc_mul(pc, pc_pow(pc, y, -(b / y[i])), x);
    }
  }
  return igs;
}

std::optional<VecZ> pc_igs_express(const PcIgs& igs, const VecZ& x0) {
  const PcData& pc = *igs.pc;
  std::vector<std::size_t> leads;
  for (std::size_t i = 0; i < igs.slot.size(); ++i)
    if (igs.slot[i]) leads.push_back(i);
  VecZ coeffs(leads.size(), 0);
  VecZ x = x0;
  while (true) {
    const int li = lead_index(x);
    if (li < 0) return coeffs;
    const std::size_t i = static_cast<std::size_t>(li);
    if (!igs.slot[i]) return std::nullopt;
    const VecZ& h = *igs.slot[i];
    const std::int64_t a = h[i], b = x[i];
    if (b % a != 0) return std::nullopt;
    const std::int64_t t = b / a;
    const std::size_t pos =
        static_cast<std::size_t>(std::lower_bound(leads.begin(), leads.end(), i) - leads.begin());
    coeffs[pos] = t;
    x = pc_mul(pc, pc_pow(pc, h, -t), x);
    if (lead_index(x) == li) fail_internal("pc igs reduction made no progress");
  }
}

bool pc_igs_contains(const PcIgs& igs, const VecZ& x) {
  return pc_igs_express(igs, x).has_value();
}

PcSubgroup pc_igs_subgroup(const PcIgs& igs) {
  const PcData& pc = *igs.pc;
  PcSubgroup sub;
  for (std::size_t i = 0; i < igs.slot.size(); ++i) {
    if (igs.slot[i]) {
      sub.gens.push_back(*igs.slot[i]);
      sub.lead.push_back(i);
    }
  }
  const std::size_t m = sub.gens.size();
  sub.pres.orders.assign(m, 0);
  sub.pres.power_rhs.assign(m, VecZ());
  sub.pres.conj.assign(m, std::vector<VecZ>(m));
  sub.pres.conj_inv.assign(m, std::vector<VecZ>(m));

  auto express = [&](const VecZ& x) {
    auto c = pc_igs_express(igs, x);
    if (!c) fail_internal("pc subgroup closure is incomplete");
    return *c;
  };

  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t lead = sub.lead[i];
    const std::int64_t o = pc.orders[lead];
    if (o > 0) {
      const std::int64_t rel = o / sub.gens[i][lead];
      sub.pres.orders[i] = rel;
      // h_i^rel has ambient support beyond lead, so its expression only
      // involves later subgroup generators.
      sub.pres.power_rhs[i] = express(pc_pow(pc, sub.gens[i], rel));
    }
    for (std::size_t j = i + 1; j < m; ++j) {
      sub.pres.conj[i][j] = express(pc_conj(pc, sub.gens[j], sub.gens[i]));
      sub.pres.conj_inv[i][j] = express(pc_conj(pc, sub.gens[j], pc_inv(pc, sub.gens[i])));
    }
  }
  pc_validate(sub.pres);
  return sub;
}

std::optional<VecZ> pc_subgroup_coords(const PcIgs& igs, const PcSubgroup& sub, const VecZ& x) {
  (void)sub;
  return pc_igs_express(igs, x);
}

VecZ pc_subgroup_to_ambient(const PcData& pc, const PcSubgroup& sub, const VecZ& coords) {
  VecZ r = pc_identity(pc);
  for (std::size_t i = 0; i < sub.gens.size(); ++i)
    if (coords[i] != 0) r = pc_mul(pc, r, pc_pow(pc, sub.gens[i], coords[i]));
  return r;
}

// --- quotients ---------------------------------------------------------------

VecZ pc_coset_reduce(const PcData& pc, const PcIgs& k, const VecZ& x0) {
  VecZ x = x0;
  for (std::size_t i = 0; i < pc_n(pc); ++i) {
    if (x[i] == 0 || !k.slot[i]) continue;
    const VecZ& h = *k.slot[i];
    const std::int64_t a = h[i];
    const std::int64_t q = fdiv(x[i], a);
    if (q != 0) x = pc_mul(pc, pc_pow(pc, h, -q), x);
    if (x[i] < 0 || x[i] >= a) fail_internal("pc coset reduction out of range");
  }
  return x;
}

PcQuotient pc_finite_quotient(const PcData& pc, const PcIgs& k, std::uint64_t cap) {
  const std::size_t n = pc_n(pc);
  std::vector<std::int64_t> moduli(n);
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (k.slot[i]) {
      moduli[i] = (*k.slot[i])[i];
    } else if (pc.orders[i] > 0) {
      moduli[i] = pc.orders[i];
    } else {
      fail_input("pc quotient is infinite");
    }
    const unsigned __int128 t =
        static_cast<unsigned __int128>(total) * static_cast<std::uint64_t>(moduli[i]);
    if (t > cap) fail_budget("coset enumeration exceeded the coset limit");
    total = static_cast<std::uint64_t>(t);
  }
  PcQuotient q;
  q.reps.reserve(total);
  VecZ cur(n, 0);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    q.reps.push_back(cur);
    std::size_t i = n;
    while (i-- > 0) {
      if (++cur[i] < moduli[i]) break;
      cur[i] = 0;
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::int32_t> images(total);
    VecZ gj(n, 0);
    gj[j] = 1;
    for (std::size_t r = 0; r < total; ++r) {
      const VecZ prod = pc_coset_reduce(pc, k, pc_mul(pc, q.reps[r], gj));
      images[r] = static_cast<std::int32_t>(q.rep_index(prod));
    }
    q.gen_action.push_back(Perm(std::move(images)));
  }
  return q;
}

std::size_t PcQuotient::rep_index(const VecZ& reduced_rep) const {
  const auto it = std::lower_bound(reps.begin(), reps.end(), reduced_rep);
  if (it == reps.end() || *it != reduced_rep) fail_internal("pc coset representative not found");
  return static_cast<std::size_t>(it - reps.begin());
}

// --- derived subgroup, abelianization ----------------------------------------

PcIgs pc_derived_igs(const PcData& pc) {
  const std::size_t n = pc_n(pc);
  std::vector<VecZ> comms;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      VecZ gi(n, 0), gj(n, 0);
      gi[i] = 1;
      gj[j] = 1;
      const VecZ c = pc_mul(pc, pc_mul(pc, pc_inv(pc, gi), pc_inv(pc, gj)), pc_mul(pc, gi, gj));
      if (!pc_is_identity(c)) comms.push_back(c);
    }
  }
  return pc_normal_igs(pc, comms);
}

PcAbelianization pc_abelianization(const PcData& pc) {
  const std::size_t n = pc_n(pc);
  std::vector<VecZ> rows;
  for (std::size_t i = 0; i < n; ++i) {
    if (pc.orders[i] > 0) {
      VecZ row = pc.power_rhs[i];
      for (auto& v : row) v = -v;
      row[i] += pc.orders[i];
      rows.push_back(row);
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      for (const auto* tab : {&pc.conj, &pc.conj_inv}) {
        VecZ row = (*tab)[i][j];
        row[j] -= 1;
        if (lead_index(row) >= 0) rows.push_back(row);
      }
    }
  }
  ZMat rel(rows.size(), n);
  for (std::size_t r = 0; r < rows.size(); ++r) rel.set_row(r, rows[r]);
  const SnfResult snf = snf_with_transforms(rel);
  const auto diag = snf.diag();
  std::size_t rank = 0;
  for (const std::int64_t d : diag)
    if (d != 0) ++rank;

  // Quotient coordinates w = v * V: w[i] mod diag[i] for i < rank (dropping
  // diag 1), free coordinates w[rank..n-1]. Output order: free first.
  std::vector<std::size_t> keep_torsion;
  for (std::size_t i = 0; i < rank; ++i)
    if (diag[i] >= 2) keep_torsion.push_back(i);

  PcAbelianization ab;
  ab.quot.free_rank = n - rank;
  for (const std::size_t i : keep_torsion) ab.quot.torsion.push_back(diag[i]);

  auto project_raw = [&](const VecZ& v) {
    const VecZ w = row_times_mat(v, snf.v);
    VecZ out;
    for (std::size_t i = rank; i < n; ++i) out.push_back(w[i]);
    for (const std::size_t i : keep_torsion) {
      std::int64_t c = w[i] % diag[i];
      if (c < 0) c += diag[i];
      out.push_back(c);
    }
    return out;
  };
  for (std::size_t i = 0; i < n; ++i) {
    VecZ e(n, 0);
    e[i] = 1;
    ab.proj.push_back(project_raw(e));
  }
  // Sections: quotient generator k corresponds to w-coordinate idx; its
  // preimage exponent vector is row idx of V^-1.
  std::vector<std::size_t> widx;
  for (std::size_t i = rank; i < n; ++i) widx.push_back(i);
  for (const std::size_t i : keep_torsion) widx.push_back(i);
  for (const std::size_t i : widx) ab.section.push_back(snf.v_inv.row(i));
  return ab;
}

VecZ pc_abelian_image(const PcAbelianization& ab, const VecZ& x) {
  VecZ out(ab.quot.free_rank + ab.quot.torsion.size(), 0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t c = 0; c < out.size(); ++c) out[c] += x[i] * ab.proj[i][c];
  }
  return abelian_reduce(ab.quot, out);
}

// --- mod-e quotients -----------------------------------------------------------

std::optional<PcData> pc_mod_e(const PcData& pc, std::int64_t e) {
  if (e < 2) return std::nullopt;
  const std::size_t n = pc_n(pc);
  PcData q = pc;
  std::vector<bool> was_infinite(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (q.orders[i] == 0) {
      was_infinite[i] = true;
      q.orders[i] = e;
      q.power_rhs[i] = VecZ(n, 0);
    }
  }
  auto shift = [&](VecZ& v) {
    for (std::size_t k = 0; k < n; ++k) {
      if (was_infinite[k]) {
        v[k] %= e;
        if (v[k] < 0) v[k] += e;
      }
    }
  };
  for (std::size_t i = 0; i < n; ++i) {
    if (!q.power_rhs[i].empty()) shift(q.power_rhs[i]);
    for (std::size_t j = i + 1; j < n; ++j) {
      shift(q.conj[i][j]);
      shift(q.conj_inv[i][j]);
    }
  }
  try {
    pc_validate(q);
  } catch (const Error&) {
    return std::nullopt;
  }
  return q;
}

}  // namespace rfc
