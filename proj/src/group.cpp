#include "group.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "error.hpp"
#include "pcgroup.hpp"

namespace rfc {

// --- element comparison ------------------------------------------------------

namespace {

int elem_cmp(const Elem& a, const Elem& b);

int split_cmp(const SplitVal& a, const SplitVal& b) {
  if (a.f != b.f) return a.f < b.f ? -1 : 1;
  if (a.b.index() != b.b.index()) return a.b.index() < b.b.index() ? -1 : 1;
  if (a.b.index() == 0) {
    const Word &x = std::get<Word>(a.b), &y = std::get<Word>(b.b);
    if (x == y) return 0;
    return x < y ? -1 : 1;
  }
  const VecZ &x = std::get<VecZ>(a.b), &y = std::get<VecZ>(b.b);
  if (x == y) return 0;
  return x < y ? -1 : 1;
}

int elem_cmp(const Elem& a, const Elem& b) {
  if (a.v.index() != b.v.index()) return a.v.index() < b.v.index() ? -1 : 1;
  switch (a.v.index()) {
    case 0: {
      const Word &x = std::get<Word>(a.v), &y = std::get<Word>(b.v);
      if (x == y) return 0;
      return x < y ? -1 : 1;
    }
    case 1: {
      const VecZ &x = std::get<VecZ>(a.v), &y = std::get<VecZ>(b.v);
      if (x == y) return 0;
      return x < y ? -1 : 1;
    }
    case 2: {
      const Perm &x = std::get<Perm>(a.v), &y = std::get<Perm>(b.v);
      if (x == y) return 0;
      return x < y ? -1 : 1;
    }
    case 3:
      return split_cmp(std::get<SplitVal>(a.v), std::get<SplitVal>(b.v));
    default: {
      const HnnVal &x = std::get<HnnVal>(a.v), &y = std::get<HnnVal>(b.v);
      if (x.k != y.k) return x.k < y.k ? -1 : 1;
      if (x.l != y.l) return x.l < y.l ? -1 : 1;
      return elem_cmp(*x.g, *y.g);
    }
  }
}

void check_names(const std::vector<std::string>& names) {
  std::set<std::string> seen;
  for (const std::string& n : names) {
    if (n.empty()) fail_input("generator name is empty");
    for (const char c : n) {
      const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                      (c >= '0' && c <= '9') || c == '_' || c == '\'';
      if (!ok) fail_input("generator name contains an invalid character: " + n);
    }
    if (n[0] >= '0' && n[0] <= '9') fail_input("generator name starts with a digit: " + n);
    if (!seen.insert(n).second) fail_input("duplicate generator name: " + n);
  }
}

std::vector<std::string> default_names(std::size_t n, const std::string& stem) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(stem + std::to_string(i + 1));
  return out;
}

void check_word_alphabet(const Group& g, const Word& w) {
  if (w.min_alphabet() > group_ngens(g)) fail_input("word uses an unknown generator");
}

}  // namespace

bool elem_eq(const Elem& a, const Elem& b) { return elem_cmp(a, b) == 0; }
bool elem_less(const Elem& a, const Elem& b) { return elem_cmp(a, b) < 0; }

// --- constructors ------------------------------------------------------------

GroupPtr make_free(std::vector<std::string> names) {
  check_names(names);
  auto g = std::make_shared<Group>();
  g->cls = GClass::free_grp;
  g->names = std::move(names);
  g->data = FreeData{};
  return g;
}

GroupPtr make_abelian(std::size_t free_rank, std::vector<std::int64_t> torsion,
                      std::vector<std::string> names) {
  for (std::size_t i = 0; i < torsion.size(); ++i) {
    if (torsion[i] < 2) fail_input("abelian invariant factors must be at least 2");
    if (i > 0 && torsion[i] % torsion[i - 1] != 0)
      fail_input("abelian invariant factors must form a divisibility chain");
  }
  const std::size_t n = free_rank + torsion.size();
  if (names.empty()) names = default_names(n, "g");
  if (names.size() != n) fail_input("abelian group needs one name per generator");
  check_names(names);
  auto g = std::make_shared<Group>();
  g->cls = GClass::abelian;
  g->names = std::move(names);
  g->data = AbelianData{free_rank, std::move(torsion)};
  return g;
}

GroupPtr make_finite(std::size_t degree, std::vector<Perm> gens, std::vector<std::string> names) {
  if (degree == 0) fail_input("permutation degree must be positive");
  for (const Perm& p : gens) {
    if (p.degree() != degree) fail_input("generator degree mismatch");
  }
  if (names.empty()) names = default_names(gens.size(), "g");
  if (names.size() != gens.size()) fail_input("finite group needs one name per generator");
  check_names(names);
  auto g = std::make_shared<Group>();
  g->cls = GClass::finite;
  g->names = std::move(names);
  FiniteData d;
  d.degree = degree;
  d.gens = gens;
  d.pg = std::make_shared<PermGroup>(degree, std::move(gens));
  g->data = std::move(d);
  return g;
}

GroupPtr make_pc(std::vector<std::string> names, std::vector<std::int64_t> orders,
                 std::vector<VecZ> power_rhs, std::vector<std::vector<VecZ>> conj,
                 std::vector<std::vector<VecZ>> conj_inv) {
  const std::size_t n = orders.size();
  if (names.empty()) names = default_names(n, "g");
  if (names.size() != n) fail_input("pc group needs one name per generator");
  check_names(names);
  // Normalize omitted vectors to canonical shapes before validating.
  if (power_rhs.size() != n) fail_input("pc power relation list has wrong length");
  for (std::size_t i = 0; i < n; ++i) {
    if (orders[i] > 0 && power_rhs[i].empty()) power_rhs[i] = VecZ(n, 0);
  }
  PcData pc{std::move(orders), std::move(power_rhs), std::move(conj), std::move(conj_inv)};
  pc_validate(pc);
  auto g = std::make_shared<Group>();
  g->cls = GClass::pc;
  g->names = std::move(names);
  g->data = std::move(pc);
  return g;
}

GroupPtr make_raag(std::vector<std::string> vertices,
                   std::vector<std::pair<std::uint32_t, std::uint32_t>> edges) {
  check_names(vertices);
  const std::size_t n = vertices.size();
  RaagData d;
  d.adj.assign(n, std::vector<bool>(n, false));
  for (auto [a, b] : edges) {
    if (a >= n || b >= n) fail_input("raag edge references an unknown vertex");
    if (a == b) fail_input("raag edges must be irreflexive");
    if (a > b) std::swap(a, b);
    if (d.adj[a][b]) continue;
    d.adj[a][b] = d.adj[b][a] = true;
    d.edges.push_back({a, b});
  }
  std::sort(d.edges.begin(), d.edges.end());
  auto g = std::make_shared<Group>();
  g->cls = GClass::raag;
  g->names = std::move(vertices);
  g->data = std::move(d);
  return g;
}

GroupPtr make_split(GroupPtr fiber, GroupPtr base, std::vector<std::vector<Word>> action) {
  if (!fiber || fiber->cls != GClass::finite)
    fail_input("split extension fiber must be a finite permutation group");
  if (!base || (base->cls != GClass::free_grp && base->cls != GClass::abelian &&
                base->cls != GClass::pc))
    fail_input("split extension base must be free, abelian, or polycyclic");
  const std::size_t nf = group_ngens(*fiber);
  const std::size_t nb = group_ngens(*base);
  if (action.size() != nb) fail_input("split action needs one row per base generator");
  const PermGroup& pg = finite_pg(*fiber);
  const std::vector<Perm>& elems = pg.elements();
  const std::size_t order = elems.size();

  SplitData d;
  d.fiber = fiber;
  d.base = std::move(base);
  d.action = action;

  // Build the element-level permutation for each base generator and check
  // that it is an automorphism: images propagate along the enumeration and
  // the full multiplication-by-generator table must stay consistent.
  const FiniteData& fd = fiber->get<FiniteData>();
  for (std::size_t b = 0; b < nb; ++b) {
    if (action[b].size() != nf) fail_input("split action needs one word per fiber generator");
    std::vector<Perm> gen_img;
    for (const Word& w : action[b]) {
      check_word_alphabet(*fiber, w);
      gen_img.push_back(pg.eval(w));
    }
    std::vector<std::int32_t> img(order);
    for (std::size_t e = 0; e < order; ++e) {
      Perm target = Perm::identity(fd.degree);
      const Word we = pg.word_for(e);
      for (const Letter& l : we.letters()) target = target * gen_img[l.gen].pow(l.exp);
      img[e] = static_cast<std::int32_t>(pg.index_of(target));
    }
    Perm p(std::move(img));  // validates bijectivity
    // Homomorphism consistency over the whole table.
    for (std::size_t e = 0; e < order; ++e) {
      for (std::size_t gi = 0; gi < nf; ++gi) {
        const std::size_t eg = pg.index_of(elems[e] * fd.gens[gi]);
        const Perm lhs = elems[static_cast<std::size_t>(p(eg))];
        const Perm rhs = elems[static_cast<std::size_t>(p(e))] * gen_img[gi];
        if (lhs != rhs) fail_input("split action word does not define an automorphism");
      }
    }
    d.act_elem.push_back(p);
    d.act_elem_inv.push_back(p.inverse());
  }

  // The action must be a homomorphism from the base: base relators act
  // trivially. (Free bases have no relators.)
  auto gp = std::make_shared<Group>();
  gp->cls = GClass::split;
  gp->names = fiber->names;
  for (const std::string& n : d.base->names) gp->names.push_back(n);
  check_names(gp->names);
  GroupPtr basep = d.base;
  gp->data = std::move(d);
  if (has_relator_presentation(*basep)) {
    for (const Word& r : group_relators(*basep)) {
      const Perm a = split_aut_of(*gp, std::variant<Word, VecZ>(r));
      if (!a.is_identity()) fail_input("split action does not respect the base relations");
    }
  }
  return gp;
}

// --- basic dispatch ----------------------------------------------------------

std::size_t group_ngens(const Group& g) {
  switch (g.cls) {
    case GClass::free_grp:
    case GClass::raag:
      return g.names.size();
    case GClass::abelian: {
      const auto& d = g.get<AbelianData>();
      return d.free_rank + d.torsion.size();
    }
    case GClass::finite:
      return g.get<FiniteData>().gens.size();
    case GClass::pc:
      return g.get<PcData>().orders.size();
    case GClass::split:
      return group_ngens(*g.get<SplitData>().fiber) + group_ngens(*g.get<SplitData>().base);
    case GClass::asc_hnn:
      return group_ngens(*g.get<HnnData>().base) + 1;
  }
  fail_internal("unknown group class");
}

VecZ abelian_reduce(const AbelianData& a, VecZ v) {
  const std::size_t n = a.free_rank + a.torsion.size();
  if (v.size() != n) fail_input("abelian vector has wrong length");
  for (std::size_t i = 0; i < a.torsion.size(); ++i) {
    const std::int64_t d = a.torsion[i];
    std::int64_t& c = v[a.free_rank + i];
    c %= d;
    if (c < 0) c += d;
  }
  return v;
}

Lattice abelian_relation_lattice(const AbelianData& a) {
  const std::size_t n = a.free_rank + a.torsion.size();
  std::vector<VecZ> rows;
  for (std::size_t i = 0; i < a.torsion.size(); ++i) {
    VecZ r(n, 0);
    r[a.free_rank + i] = a.torsion[i];
    rows.push_back(r);
  }
  return Lattice::from_rows(n, rows);
}

const PermGroup& finite_pg(const Group& g) { return *g.get<FiniteData>().pg; }

const std::vector<Perm>& split_fiber_elements(const Group& g) {
  return finite_pg(*g.get<SplitData>().fiber).elements();
}

std::size_t split_fiber_index(const Group& g, const Perm& f) {
  return finite_pg(*g.get<SplitData>().fiber).index_of(f);
}

Elem split_base_to_elem(const Group& g, const std::variant<Word, VecZ>& b) {
  (void)g;
  if (b.index() == 0) return Elem(std::get<Word>(b));
  return Elem(std::get<VecZ>(b));
}

std::variant<Word, VecZ> split_base_from_elem(const Group& g, const Elem& e) {
  (void)g;
  if (e.v.index() == 0) return std::get<Word>(e.v);
  return std::get<VecZ>(e.v);
}

Perm split_aut_of(const Group& g, const std::variant<Word, VecZ>& base_elem) {
  const SplitData& d = g.get<SplitData>();
  const Word w = elem_to_word(*d.base, split_base_to_elem(g, base_elem));
  const std::size_t order = split_fiber_elements(g).size();
  Perm acc = Perm::identity(order);
  for (const Letter& l : w.letters()) {
    const Perm& a = l.exp > 0 ? d.act_elem[l.gen] : d.act_elem_inv[l.gen];
    const std::int64_t reps = l.exp > 0 ? l.exp : -l.exp;
    // lambda over a word composes right-to-left: acc accumulates on the left.
    acc = a.pow(reps) * acc;
  }
  return acc;
}

Elem group_identity(const Group& g) {
  switch (g.cls) {
    case GClass::free_grp:
    case GClass::raag:
      return Elem(Word());
    case GClass::abelian: {
      const auto& d = g.get<AbelianData>();
      return Elem(VecZ(d.free_rank + d.torsion.size(), 0));
    }
    case GClass::finite:
      return Elem(Perm::identity(g.get<FiniteData>().degree));
    case GClass::pc:
      return Elem(pc_identity(g.get<PcData>()));
    case GClass::split: {
      const SplitData& d = g.get<SplitData>();
      SplitVal v{Perm::identity(d.fiber->get<FiniteData>().degree),
                 std::variant<Word, VecZ>{}};
      const Elem bid = group_identity(*d.base);
      v.b = split_base_from_elem(g, bid);
      return Elem(std::move(v));
    }
    case GClass::asc_hnn: {
      HnnVal v;
      v.g = std::make_shared<Elem>(group_identity(*g.get<HnnData>().base));
      return Elem(std::move(v));
    }
  }
  fail_internal("unknown group class");
}

Elem gen_elem(const Group& g, std::size_t i) {
  if (i >= group_ngens(g)) fail_input("generator index out of range");
  switch (g.cls) {
    case GClass::free_grp:
    case GClass::raag:
      return Elem(Word::letter(static_cast<std::uint32_t>(i), 1));
    case GClass::abelian: {
      const auto& d = g.get<AbelianData>();
      VecZ v(d.free_rank + d.torsion.size(), 0);
      v[i] = 1;
      return Elem(std::move(v));
    }
    case GClass::finite:
      return Elem(g.get<FiniteData>().gens[i]);
    case GClass::pc: {
      VecZ v(group_ngens(g), 0);
      v[i] = 1;
      return Elem(pc_collect_vector(g.get<PcData>(), v));
    }
    case GClass::split: {
      const SplitData& d = g.get<SplitData>();
      const std::size_t nf = group_ngens(*d.fiber);
      SplitVal v{Perm::identity(d.fiber->get<FiniteData>().degree),
                 split_base_from_elem(g, group_identity(*d.base))};
      if (i < nf) {
        v.f = d.fiber->get<FiniteData>().gens[i];
      } else {
        v.b = split_base_from_elem(g, gen_elem(*d.base, i - nf));
      }
      return Elem(std::move(v));
    }
    case GClass::asc_hnn: {
      const HnnData& d = g.get<HnnData>();
      const std::size_t nb = group_ngens(*d.base);
      HnnVal v;
      if (i < nb) {
        v.g = std::make_shared<Elem>(gen_elem(*d.base, i));
      } else {
        v.k = 1;
        v.l = 0;
        v.g = std::make_shared<Elem>(group_identity(*d.base));
      }
      return Elem(std::move(v));
    }
  }
  fail_internal("unknown group class");
}

Elem group_mul(const Group& g, const Elem& a, const Elem& b) {
  switch (g.cls) {
    case GClass::free_grp:
      return Elem(std::get<Word>(a.v) * std::get<Word>(b.v));
    case GClass::raag: {
      const Word prod = std::get<Word>(a.v) * std::get<Word>(b.v);
      return Elem(raag_normal_form(g.get<RaagData>(), g.names.size(), prod));
    }
    case GClass::abelian:
      return Elem(abelian_reduce(g.get<AbelianData>(),
                                 vec_add(std::get<VecZ>(a.v), std::get<VecZ>(b.v))));
    case GClass::finite:
      return Elem(std::get<Perm>(a.v) * std::get<Perm>(b.v));
    case GClass::pc:
      return Elem(pc_mul(g.get<PcData>(), std::get<VecZ>(a.v), std::get<VecZ>(b.v)));
    case GClass::split: {
      const SplitVal& x = std::get<SplitVal>(a.v);
      const SplitVal& y = std::get<SplitVal>(b.v);
      const Perm lam = split_aut_of(g, x.b);
      const std::vector<Perm>& elems = split_fiber_elements(g);
      const Perm y_f_img = elems[static_cast<std::size_t>(lam(split_fiber_index(g, y.f)))];
      const SplitData& d = g.get<SplitData>();
      const Elem bprod = group_mul(*d.base, split_base_to_elem(g, x.b), split_base_to_elem(g, y.b));
      return Elem(SplitVal{x.f * y_f_img, split_base_from_elem(g, bprod)});
    }
    case GClass::asc_hnn:
      return hnn_eval_word(g, hnn_elem_to_word(g, a) * hnn_elem_to_word(g, b));
  }
  fail_internal("unknown group class");
}

Elem group_inv(const Group& g, const Elem& a) {
  switch (g.cls) {
    case GClass::free_grp:
      return Elem(std::get<Word>(a.v).inverse());
    case GClass::raag:
      return Elem(raag_normal_form(g.get<RaagData>(), g.names.size(),
                                   std::get<Word>(a.v).inverse()));
    case GClass::abelian:
      return Elem(abelian_reduce(g.get<AbelianData>(), vec_scale(std::get<VecZ>(a.v), -1)));
    case GClass::finite:
      return Elem(std::get<Perm>(a.v).inverse());
    case GClass::pc:
      return Elem(pc_inv(g.get<PcData>(), std::get<VecZ>(a.v)));
    case GClass::split: {
      const SplitVal& x = std::get<SplitVal>(a.v);
      const SplitData& d = g.get<SplitData>();
      const Elem binv = group_inv(*d.base, split_base_to_elem(g, x.b));
      const Perm lam_inv = split_aut_of(g, split_base_from_elem(g, binv));
      const std::vector<Perm>& elems = split_fiber_elements(g);
      const Perm f_img =
          elems[static_cast<std::size_t>(lam_inv(split_fiber_index(g, x.f.inverse())))];
      return Elem(SplitVal{f_img, split_base_from_elem(g, binv)});
    }
    case GClass::asc_hnn:
      return hnn_eval_word(g, hnn_elem_to_word(g, a).inverse());
  }
  fail_internal("unknown group class");
}

Elem group_pow(const Group& g, const Elem& a, std::int64_t n) {
  if (n < 0) return group_pow(g, group_inv(g, a), -n);
  Elem acc = group_identity(g);
  Elem base = a;
  std::uint64_t e = static_cast<std::uint64_t>(n);
  while (e > 0) {
    if (e & 1) acc = group_mul(g, acc, base);
    e >>= 1;
    if (e > 0) base = group_mul(g, base, base);
  }
  return acc;
}

bool is_identity(const Group& g, const Elem& a) { return elem_eq(a, group_identity(g)); }

Elem eval_word(const Group& g, const Word& w) {
  check_word_alphabet(g, w);
  if (g.cls == GClass::asc_hnn) return hnn_eval_word(g, w);
  if (g.cls == GClass::raag)
    return Elem(raag_normal_form(g.get<RaagData>(), g.names.size(), w));
  if (g.cls == GClass::free_grp) return Elem(w);
  if (g.cls == GClass::abelian) {
    const auto& d = g.get<AbelianData>();
    VecZ v(d.free_rank + d.torsion.size(), 0);
    for (const Letter& l : w.letters()) v[l.gen] += l.exp;
    return Elem(abelian_reduce(d, std::move(v)));
  }
  if (g.cls == GClass::finite) return Elem(finite_pg(g).eval(w));
  if (g.cls == GClass::pc) {
    const PcData& pc = g.get<PcData>();
    VecZ r = pc_identity(pc);
    for (const Letter& l : w.letters()) {
      VecZ s(pc_identity(pc));
      s[l.gen] = l.exp;
      r = pc_mul(pc, r, s);
    }
    return Elem(std::move(r));
  }
  // split
  Elem acc = group_identity(g);
  for (const Letter& l : w.letters())
    acc = group_mul(g, acc, group_pow(g, gen_elem(g, l.gen), l.exp));
  return acc;
}

Word elem_to_word(const Group& g, const Elem& e) {
  switch (g.cls) {
    case GClass::free_grp:
    case GClass::raag:
      return std::get<Word>(e.v);
    case GClass::abelian:
    case GClass::pc: {
      const VecZ& v = std::get<VecZ>(e.v);
      Word w;
      for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0) w.push(static_cast<std::uint32_t>(i), v[i]);
      return w;
    }
    case GClass::finite: {
      const PermGroup& pg = finite_pg(g);
      return pg.word_for(pg.index_of(std::get<Perm>(e.v)));
    }
    case GClass::split: {
      const SplitVal& x = std::get<SplitVal>(e.v);
      const SplitData& d = g.get<SplitData>();
      const PermGroup& pg = finite_pg(*d.fiber);
      Word w = pg.word_for(pg.index_of(x.f));
      const Word bw = elem_to_word(*d.base, split_base_to_elem(g, x.b));
      const std::uint32_t nf = static_cast<std::uint32_t>(group_ngens(*d.fiber));
      for (const Letter& l : bw.letters()) w.push(l.gen + nf, l.exp);
      return w;
    }
    case GClass::asc_hnn:
      return hnn_elem_to_word(g, e);
  }
  fail_internal("unknown group class");
}

std::string elem_str(const Group& g, const Elem& e) {
  return elem_to_word(g, e).str(g.names);
}

bool has_relator_presentation(const Group& g) {
  switch (g.cls) {
    case GClass::free_grp:
    case GClass::abelian:
    case GClass::pc:
    case GClass::raag:
      return true;
    case GClass::asc_hnn:
      return has_relator_presentation(*g.get<HnnData>().base);
    default:
      return false;
  }
}

std::vector<Word> group_relators(const Group& g) {
  std::vector<Word> out;
  switch (g.cls) {
    case GClass::free_grp:
      return out;
    case GClass::abelian: {
      const auto& d = g.get<AbelianData>();
      const std::size_t n = d.free_rank + d.torsion.size();
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
          Word w;
          w.push(static_cast<std::uint32_t>(i), 1);
          w.push(static_cast<std::uint32_t>(j), 1);
          w.push(static_cast<std::uint32_t>(i), -1);
          w.push(static_cast<std::uint32_t>(j), -1);
          out.push_back(w);
        }
      for (std::size_t i = 0; i < d.torsion.size(); ++i)
        out.push_back(Word::letter(static_cast<std::uint32_t>(d.free_rank + i), d.torsion[i]));
      return out;
    }
    case GClass::pc: {
      const PcData& pc = g.get<PcData>();
      const std::size_t n = pc.orders.size();
      auto vec_word = [](const VecZ& v) {
        Word w;
        for (std::size_t i = 0; i < v.size(); ++i)
          if (v[i] != 0) w.push(static_cast<std::uint32_t>(i), v[i]);
        return w;
      };
      for (std::size_t i = 0; i < n; ++i) {
        if (pc.orders[i] > 0) {
          Word w = Word::letter(static_cast<std::uint32_t>(i), pc.orders[i]);
          out.push_back(w * vec_word(pc.power_rhs[i]).inverse());
        }
        for (std::size_t j = i + 1; j < n; ++j) {
          {
            Word w;
            w.push(static_cast<std::uint32_t>(i), -1);
            w.push(static_cast<std::uint32_t>(j), 1);
            w.push(static_cast<std::uint32_t>(i), 1);
            out.push_back(w * vec_word(pc.conj[i][j]).inverse());
          }
          {
            Word w;
            w.push(static_cast<std::uint32_t>(i), 1);
            w.push(static_cast<std::uint32_t>(j), 1);
            w.push(static_cast<std::uint32_t>(i), -1);
            out.push_back(w * vec_word(pc.conj_inv[i][j]).inverse());
          }
        }
      }
      return out;
    }
    case GClass::raag: {
      const RaagData& d = g.get<RaagData>();
      for (const auto& [a, b] : d.edges) {
        Word w;
        w.push(a, 1);
        w.push(b, 1);
        w.push(a, -1);
        w.push(b, -1);
        out.push_back(w);
      }
      return out;
    }
    case GClass::asc_hnn: {
      const HnnData& d = g.get<HnnData>();
      if (!has_relator_presentation(*d.base))
        fail_input("no relator presentation for this group class");
      const std::uint32_t t = static_cast<std::uint32_t>(group_ngens(*d.base));
      out = group_relators(*d.base);
      for (std::size_t i = 0; i < group_ngens(*d.base); ++i) {
        Word w;
        w.push(t, -1);
        w.push(static_cast<std::uint32_t>(i), 1);
        w.push(t, 1);
        out.push_back(w * d.phi[i].inverse());
      }
      return out;
    }
    default:
      fail_input("no relator presentation for this group class");
  }
}

std::optional<std::uint64_t> group_order(const Group& g) {
  switch (g.cls) {
    case GClass::free_grp:
    case GClass::raag:
      return g.names.empty() ? std::optional<std::uint64_t>(1) : std::nullopt;
    case GClass::abelian: {
      const auto& d = g.get<AbelianData>();
      if (d.free_rank > 0) return std::nullopt;
      std::uint64_t o = 1;
      for (const std::int64_t t : d.torsion) o *= static_cast<std::uint64_t>(t);
      return o;
    }
    case GClass::finite:
      return finite_pg(g).order();
    case GClass::pc:
      return pc_order(g.get<PcData>());
    case GClass::split: {
      const SplitData& d = g.get<SplitData>();
      const auto bo = group_order(*d.base);
      if (!bo) return std::nullopt;
      return finite_pg(*d.fiber).order() * *bo;
    }
    case GClass::asc_hnn:
      return std::nullopt;  // the stable letter has infinite order
  }
  fail_internal("unknown group class");
}

std::vector<Elem> all_elements(const Group& g, std::uint64_t cap) {
  const auto order = group_order(g);
  if (!order) fail_input("cannot enumerate an infinite group");
  if (*order > cap) fail_budget("group enumeration exceeded the element limit");
  std::vector<Elem> out;
  switch (g.cls) {
    case GClass::free_grp:
    case GClass::raag:
      out.push_back(Elem(Word()));
      return out;
    case GClass::abelian: {
      const auto& d = g.get<AbelianData>();
      VecZ cur(d.torsion.size(), 0);
      for (std::uint64_t i = 0; i < *order; ++i) {
        out.push_back(Elem(cur));
        std::size_t k = cur.size();
        while (k-- > 0) {
          if (++cur[k] < d.torsion[k]) break;
          cur[k] = 0;
        }
      }
      return out;
    }
    case GClass::finite: {
      for (const Perm& p : finite_pg(g).elements()) out.push_back(Elem(p));
      return out;
    }
    case GClass::pc: {
      const PcData& pc = g.get<PcData>();
      PcIgs empty;
      empty.pc = &pc;
      empty.slot.assign(pc.orders.size(), std::nullopt);
      const PcQuotient q = pc_finite_quotient(pc, empty, cap);
      for (const VecZ& r : q.reps) out.push_back(Elem(r));
      return out;
    }
    case GClass::split: {
      const SplitData& d = g.get<SplitData>();
      const std::vector<Elem> base_elems = all_elements(*d.base, cap);
      for (const Elem& be : base_elems) {
        for (const Perm& f : split_fiber_elements(g)) {
          out.push_back(Elem(SplitVal{f, split_base_from_elem(g, be)}));
        }
      }
      return out;
    }
    default:
      fail_input("cannot enumerate this group class");
  }
}

// --- raag normal form ----------------------------------------------------------

namespace {

struct Unit {
  std::uint32_t gen;
  int sign;
};

std::vector<Unit> expand_units(const Word& w) {
  std::vector<Unit> units;
  for (const Letter& l : w.letters()) {
    const int s = l.exp > 0 ? 1 : -1;
    for (std::int64_t i = 0; i < std::llabs(l.exp); ++i) units.push_back({l.gen, s});
  }
  return units;
}

}  // namespace

Word raag_normal_form(const RaagData& r, std::size_t nverts, const Word& w) {
  (void)nverts;
  std::vector<Unit> units = expand_units(w);
  auto commute = [&r](std::uint32_t a, std::uint32_t b) { return a == b || r.adj[a][b]; };

  // Reduction: cancel any pair of opposite letters of the same generator
  // separated only by letters commuting with it.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < units.size() && !changed; ++i) {
      for (std::size_t j = i + 1; j < units.size(); ++j) {
        if (units[j].gen == units[i].gen) {
          if (units[j].sign == -units[i].sign) {
            units.erase(units.begin() + static_cast<std::ptrdiff_t>(j));
            units.erase(units.begin() + static_cast<std::ptrdiff_t>(i));
            changed = true;
          }
          break;  // same generator, same sign: no cancellation through it
        }
        if (!commute(units[i].gen, units[j].gen)) break;
      }
    }
  }

  // Canonical order: repeatedly emit the least available letter, where a
  // letter is available when everything before it commutes with it.
  // Letters of the same generator are emitted together (no cancellation is
  // possible at this point, so grouping preserves the element).
  std::vector<Unit> outu;
  std::vector<bool> used(units.size(), false);
  const std::size_t total = units.size();
  for (std::size_t emitted = 0; emitted < total;) {
    std::size_t best = units.size();
    for (std::size_t i = 0; i < units.size(); ++i) {
      if (used[i]) continue;
      bool avail = true;
      for (std::size_t j = 0; j < i; ++j) {
        if (!used[j] && !commute(units[j].gen, units[i].gen)) {
          avail = false;
          break;
        }
      }
      if (!avail) continue;
      if (best == units.size() || units[i].gen < units[best].gen ||
          (units[i].gen == units[best].gen && units[i].sign > units[best].sign)) {
        best = i;
      }
    }
    if (best == units.size()) fail_internal("raag normal form found no available letter");
    // Emit the whole block of this generator that is currently available.
    const std::uint32_t gen = units[best].gen;
    for (std::size_t i = best; i < units.size(); ++i) {
      if (used[i]) continue;
      if (units[i].gen == gen) {
        bool avail = true;
        for (std::size_t j = 0; j < i; ++j) {
          if (!used[j] && !commute(units[j].gen, gen)) {
            avail = false;
            break;
          }
        }
        if (!avail) break;
        outu.push_back(units[i]);
        used[i] = true;
        ++emitted;
      } else if (!commute(units[i].gen, gen)) {
        break;
      }
    }
  }

  Word out;
  for (const Unit& u : outu) out.push(u.gen, u.sign);
  return out;
}

}  // namespace rfc
