// Oracle tests for the word, permutation, and integer-matrix layers. The
// expected values here were computed independently (by hand or from the
// defining formulas) and are frozen; implementation changes must keep them.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "error.hpp"
#include "perm.hpp"
#include "word.hpp"
#include "zmat.hpp"

using namespace rfc;

TEST_CASE("word free reduction") {
  Word w;
  w.push(0, 1).push(1, 2).push(1, -2).push(0, -1);
  CHECK(w.empty());

  Word u = Word::letter(0, 3) * Word::letter(0, -1);
  CHECK(u == Word::letter(0, 2));

  Word v;
  v.push(0, 1).push(1, 1).push(2, -1);
  CHECK((v * v.inverse()).empty());
  CHECK((v.inverse() * v).empty());
  CHECK(v.pow(0).empty());
  CHECK(v.pow(2) == v * v);
  CHECK(v.pow(-1) == v.inverse());
  CHECK(v.length() == 3);
  CHECK(v.syllables() == 3);
  CHECK(v.min_alphabet() == 3);
  CHECK(v.exponent_sum(2) == -1);
  CHECK(v.exponent_sum(3) == 0);
}

TEST_CASE("word cascade cancellation") {
  // a b b^-1 a^-1 built letter by letter collapses step by step.
  Word w;
  w.push(0, 1);
  w.push(1, 1);
  w.push(1, -1);
  CHECK(w == Word::letter(0, 1));
  w.push(0, -1);
  CHECK(w.empty());
}

TEST_CASE("word ordering and rendering") {
  Word a = Word::letter(0, 1);
  Word b = Word::letter(1, 1);
  Word ab = a * b;
  CHECK(a < b);
  CHECK(a < ab);    // shorter first
  CHECK(!(ab < a));
  CHECK(Word().str({"x"}) == "1");
  Word w;
  w.push(0, 2).push(1, -1);
  CHECK(w.str({"x", "y"}) == "x^2*y^-1");
  CHECK(Word::letter(0, 1).str({"x"}) == "x");
}

TEST_CASE("perm composition convention") {
  // p: 0->1->2->0, q: swap 0,1. (p*q) means apply p first.
  Perm p({1, 2, 0});
  Perm q({1, 0, 2});
  Perm pq = p * q;
  CHECK(pq(0) == 0);  // 0 ->p 1 ->q 0
  CHECK(pq(1) == 2);
  CHECK(pq(2) == 1);
  CHECK(p * p.inverse() == Perm::identity(3));
  CHECK(p.pow(3).is_identity());
  CHECK(p.pow(-1) == p.inverse());
  CHECK(p.order() == 3);
  CHECK(q.order() == 2);
  CHECK((p * q).order() == 2);
  CHECK(Perm({1, 0, 3, 2}).order() == 2);
  CHECK(Perm({1, 2, 0, 4, 3}).order() == 6);
  CHECK(p.cycle_str() == "(0 1 2)");
}

TEST_CASE("perm rejects non-bijections") {
  CHECK_THROWS_AS(Perm({0, 0, 1}), Error);
  CHECK_THROWS_AS(Perm({0, 3}), Error);
}

TEST_CASE("perm group enumeration") {
  // S3 from a 3-cycle and a transposition.
  PermGroup s3(3, {Perm({1, 2, 0}), Perm({1, 0, 2})});
  CHECK(s3.order() == 6);
  // D4 from a 4-cycle and a reflection.
  PermGroup d4(4, {Perm({1, 2, 3, 0}), Perm({1, 0, 3, 2})});
  CHECK(d4.order() == 8);
  // C2 x C2.
  PermGroup v4(4, {Perm({1, 0, 3, 2}), Perm({2, 3, 0, 1})});
  CHECK(v4.order() == 4);

  CHECK(s3.contains(Perm({2, 0, 1})));
  CHECK(d4.contains(Perm({3, 2, 1, 0})));
  CHECK(!d4.contains(Perm({0, 2, 1, 3})));  // odd transposition not in D4

  // Witness words evaluate back to their elements.
  for (std::size_t i = 0; i < s3.order(); i++)
    CHECK(s3.eval(s3.word_for(i)) == s3.elements()[i]);
  for (std::size_t i = 0; i < d4.order(); i++)
    CHECK(d4.eval(d4.word_for(i)) == d4.elements()[i]);
}

TEST_CASE("perm group enumeration cap") {
  PermGroup s5(5, {Perm({1, 2, 3, 4, 0}), Perm({1, 0, 2, 3, 4})});
  CHECK_THROWS_AS(s5.order(100), Error);
  CHECK(s5.order() == 120);
}

TEST_CASE("pair closure and kernel comparison") {
  // <(a, b)> with a of order 2, b of order 3 is cyclic of order 6.
  auto pairs = pair_closure({{Perm({1, 0}), Perm({1, 2, 0})}});
  CHECK(pairs.size() == 6);

  // f = id on S3, g = sign map (image in S2): ker f <= ker g but not vice versa.
  std::vector<Perm> f_imgs{Perm({1, 2, 0}), Perm({1, 0, 2})};
  std::vector<Perm> g_imgs{Perm({0, 1}), Perm({1, 0})};
  CHECK(kernel_leq(f_imgs, g_imgs));
  CHECK(!kernel_leq(g_imgs, f_imgs));
  // Any kernel contains itself.
  CHECK(kernel_leq(g_imgs, g_imgs));
}

TEST_CASE("perm padding") {
  Perm p({1, 0});
  Perm q({1, 2, 0});
  Perm l = pad_left(p, 5);
  Perm r = pad_right(q, 5);
  CHECK(l == Perm({1, 0, 2, 3, 4}));
  CHECK(r == Perm({0, 1, 3, 4, 2}));
  CHECK(l * r == r * l);  // disjoint supports commute
  CHECK(juxtapose(p, q) == Perm({1, 0, 3, 4, 2}));
}

TEST_CASE("hnf canonical forms") {
  // 2Z and 3Z inside Z: intersection 6Z, sum Z.
  Lattice two = Lattice::scaled(1, 2);
  Lattice three = Lattice::scaled(1, 3);
  CHECK(two.intersect(three) == Lattice::scaled(1, 6));
  CHECK(two.sum(three) == Lattice::full(1));

  // 2Z^2 and 3Z^2: intersection 6Z^2.
  CHECK(Lattice::scaled(2, 2).intersect(Lattice::scaled(2, 3)) == Lattice::scaled(2, 6));

  // HNF of [[4, 6], [2, 2]]: pivots positive, echelon, reduced above.
  ZMat m(2, 2, {4, 6, 2, 2});
  ZMat h = lattice_hnf(m);
  CHECK(h == ZMat(2, 2, {2, 0, 0, 2}));

  // Span{(1, 2), (3, 4)} = index-2 sublattice of Z^2.
  Lattice l = Lattice::from_rows(ZMat(2, 2, {1, 2, 3, 4}));
  CHECK(l.index_in_ambient() == 2);
  CHECK(l.basis() == ZMat(2, 2, {1, 0, 0, 2}));
}

TEST_CASE("left kernel and solve") {
  // Kernel of the fold map Z^2 -> Z, (x, y) -> x + y.
  ZMat fold(2, 1, {1, 1});
  CHECK(left_kernel(fold) == ZMat(1, 2, {1, -1}));

  ZMat a(2, 3, {1, 0, 1, 0, 1, 1});
  auto x = solve_left(a, {2, 3, 5});
  REQUIRE(x.has_value());
  CHECK(row_times_mat(*x, a) == std::vector<std::int64_t>{2, 3, 5});
  CHECK(!solve_left(a, {0, 0, 1}).has_value());

  // No integral solution: 2x = 1.
  CHECK(!solve_left(ZMat(1, 1, {2}), {1}).has_value());
  CHECK(solve_left(ZMat(1, 1, {2}), {6}) == std::vector<std::int64_t>{3});
}

TEST_CASE("determinant") {
  CHECK(det_abs(ZMat(2, 2, {2, 0, 0, 3})) == 6);
  CHECK(det_abs(ZMat(2, 2, {0, 1, 1, 0})) == 1);
  CHECK(det_abs(ZMat(2, 2, {1, 2, 2, 4})) == 0);
  CHECK(det_abs(ZMat(3, 3, {1, 2, 3, 4, 5, 6, 7, 8, 10})) == 3);
}

TEST_CASE("smith normal form") {
  SnfResult s = snf_with_transforms(ZMat(2, 2, {2, 4, 6, 8}));
  CHECK(s.diag() == std::vector<std::int64_t>{2, 4});

  // Z^2 / span{(2, 0), (0, 2)} = (Z/2)^2.
  CHECK(snf_with_transforms(ZMat(2, 2, {2, 0, 0, 2})).diag() ==
        std::vector<std::int64_t>{2, 2});

  // Z / 0 has no relations: diag of a zero matrix is all zeros.
  CHECK(snf_with_transforms(ZMat(1, 1, {0})).diag() == std::vector<std::int64_t>{0});

  // Relation matrix of Z^3 / <(1,2,3)>: free of rank 2.
  CHECK(snf_with_transforms(ZMat(1, 3, {1, 2, 3})).diag() == std::vector<std::int64_t>{1});
}

TEST_CASE("snf and hnf transform identities hold on random matrices") {
  std::mt19937 rng(12345);
  std::uniform_int_distribution<int> dim(1, 4);
  std::uniform_int_distribution<std::int64_t> entry(-4, 4);
  for (int trial = 0; trial < 200; trial++) {
    std::size_t r = static_cast<std::size_t>(dim(rng));
    std::size_t c = static_cast<std::size_t>(dim(rng));
    ZMat a(r, c);
    for (std::size_t i = 0; i < r; i++)
      for (std::size_t j = 0; j < c; j++) a.at(i, j) = entry(rng);

    HnfResult h = hnf_with_transform(a);
    CHECK(mat_mul(h.u, a) == h.h);
    CHECK(det_abs(h.u) == 1);

    SnfResult s = snf_with_transforms(a);
    CHECK(mat_mul(mat_mul(s.u, a), s.v) == s.d);
    CHECK(mat_mul(s.v, s.v_inv) == ZMat::identity(c));
    CHECK(det_abs(s.u) == 1);
    CHECK(det_abs(s.v) == 1);
    auto dg = s.diag();
    for (std::size_t i = 0; i < dg.size(); i++) {
      CHECK(dg[i] >= 0);
      if (i + 1 < dg.size()) {
        if (dg[i] == 0) CHECK(dg[i + 1] == 0);
        else CHECK(dg[i + 1] % dg[i] == 0);
      }
    }
    // Off-diagonal entries vanish.
    for (std::size_t i = 0; i < r; i++)
      for (std::size_t j = 0; j < c; j++)
        if (i != j) CHECK(s.d.at(i, j) == 0);

    // Row span is preserved by HNF.
    Lattice la = Lattice::from_rows(a);
    Lattice lh = Lattice::from_rows(h.h);
    CHECK(la == lh);
  }
}

TEST_CASE("lattice membership and index") {
  Lattice l = Lattice::from_rows(ZMat(2, 2, {2, 0, 0, 3}));
  CHECK(l.contains({2, 3}));
  CHECK(l.contains({-4, 9}));
  CHECK(!l.contains({1, 0}));
  CHECK(!l.contains({0, 1}));
  CHECK(l.index_in_ambient() == 6);
  CHECK(Lattice::full(2).index_of(l) == 6);
  CHECK(l.index_of(Lattice::scaled(2, 6)) == 6);
  CHECK(l.subset_of(Lattice::full(2)));
  CHECK(!Lattice::full(2).subset_of(l));
  CHECK(Lattice::zero(2).subset_of(l));
  CHECK(l.index_of(Lattice::from_rows(ZMat(1, 2, {2, 0}))) == 0);

  auto co = l.coords({4, -3});
  REQUIRE(co.has_value());
  CHECK(*co == std::vector<std::int64_t>{2, -1});
}

TEST_CASE("lattice preimage and image") {
  // f: Z -> Z^2, x -> (2x, 0). Preimage of span{(4, 0)} is 2Z.
  ZMat f(1, 2, {2, 0});
  Lattice target = Lattice::from_rows(ZMat(1, 2, {4, 0}));
  CHECK(target.preimage(f) == Lattice::scaled(1, 2));

  // Preimage of the zero lattice is the kernel: g: Z^2 -> Z, (x,y) -> x + y.
  ZMat g(2, 1, {1, 1});
  CHECK(Lattice::zero(1).preimage(g) == Lattice::from_rows(ZMat(1, 2, {1, -1})));

  // Image of 3Z^2 under doubling is 6Z^2.
  ZMat dbl(2, 2, {2, 0, 0, 2});
  CHECK(Lattice::scaled(2, 3).image(dbl) == Lattice::scaled(2, 6));

  // Full preimage when the target contains the image.
  CHECK(Lattice::full(2).preimage(f) == Lattice::full(1));
}

TEST_CASE("mat pow and content") {
  ZMat a(2, 2, {1, 1, 0, 1});
  CHECK(mat_pow(a, 5) == ZMat(2, 2, {1, 5, 0, 1}));
  CHECK(mat_pow(a, 0) == ZMat::identity(2));
  CHECK(content({6, -9, 15}) == 3);
  CHECK(content({0, 0}) == 0);
  CHECK(content({7}) == 7);
}

TEST_CASE("budget meter") {
  Budget b;
  b.candidates = 10;
  BudgetMeter m(b);
  m.spend(9, "warmup");
  CHECK_THROWS_AS(m.spend(5, "next stage"), Error);
  try {
    BudgetMeter m2(b);
    m2.spend(11, "stage one");
  } catch (const Error& e) {
    CHECK(e.status() == Status::budget_exhausted);
  }
}
