#include "zmat.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

#include "error.hpp"

namespace rfc {

namespace {

using i128 = __int128;

std::int64_t chk(i128 v) {
  if (v > i128(INT64_MAX) || v < i128(INT64_MIN))
    fail_internal("integer overflow: matrix entries exceed 64-bit range");
  return static_cast<std::int64_t>(v);
}

std::int64_t add64(std::int64_t a, std::int64_t b) { return chk(i128(a) + i128(b)); }
std::int64_t mul64(std::int64_t a, std::int64_t b) { return chk(i128(a) * i128(b)); }

// Floor division, for reducing entries into [0, pivot) with pivot > 0.
std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) q--;
  return q;
}

// row[r] -= q * row[src], applied to every matrix in ms.
void row_axpy(std::vector<ZMat*> ms, std::size_t r, std::int64_t q, std::size_t src) {
  if (q == 0) return;
  for (ZMat* m : ms)
    for (std::size_t c = 0; c < m->cols(); c++)
      m->at(r, c) = chk(i128(m->at(r, c)) - i128(q) * i128(m->at(src, c)));
}

void row_swap(std::vector<ZMat*> ms, std::size_t r1, std::size_t r2) {
  if (r1 == r2) return;
  for (ZMat* m : ms)
    for (std::size_t c = 0; c < m->cols(); c++) std::swap(m->at(r1, c), m->at(r2, c));
}

void row_negate(std::vector<ZMat*> ms, std::size_t r) {
  for (ZMat* m : ms)
    for (std::size_t c = 0; c < m->cols(); c++) m->at(r, c) = chk(-i128(m->at(r, c)));
}

}  // namespace

ZMat::ZMat(std::size_t rows, std::size_t cols, std::vector<std::int64_t> entries)
    : rows_(rows), cols_(cols), a_(std::move(entries)) {
  if (a_.size() != rows_ * cols_) fail_internal("matrix entry count does not match shape");
}

ZMat ZMat::identity(std::size_t n) {
  ZMat m(n, n);
  for (std::size_t i = 0; i < n; i++) m.at(i, i) = 1;
  return m;
}

std::vector<std::int64_t> ZMat::row(std::size_t r) const {
  return std::vector<std::int64_t>(a_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                                   a_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

void ZMat::set_row(std::size_t r, const std::vector<std::int64_t>& v) {
  if (v.size() != cols_) fail_internal("row length does not match matrix width");
  std::copy(v.begin(), v.end(), a_.begin() + static_cast<std::ptrdiff_t>(r * cols_));
}

bool ZMat::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](std::int64_t v) { return v == 0; });
}

ZMat mat_mul(const ZMat& a, const ZMat& b) {
  if (a.cols() != b.rows()) fail_internal("matrix shape mismatch in product");
  ZMat r(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); i++)
    for (std::size_t j = 0; j < b.cols(); j++) {
      i128 acc = 0;
      for (std::size_t k = 0; k < a.cols(); k++) acc += i128(a.at(i, k)) * i128(b.at(k, j));
      r.at(i, j) = chk(acc);
    }
  return r;
}

ZMat mat_pow(const ZMat& a, std::uint64_t e) {
  if (a.rows() != a.cols()) fail_internal("matrix power requires a square matrix");
  ZMat acc = ZMat::identity(a.rows());
  ZMat base = a;
  while (e) {
    if (e & 1) acc = mat_mul(acc, base);
    if (e >>= 1) base = mat_mul(base, base);
  }
  return acc;
}

ZMat stack_rows(const ZMat& a, const ZMat& b) {
  if (a.cols() != b.cols()) fail_internal("matrix width mismatch in row stack");
  ZMat r(a.rows() + b.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); i++)
    for (std::size_t c = 0; c < a.cols(); c++) r.at(i, c) = a.at(i, c);
  for (std::size_t i = 0; i < b.rows(); i++)
    for (std::size_t c = 0; c < b.cols(); c++) r.at(a.rows() + i, c) = b.at(i, c);
  return r;
}

std::vector<std::int64_t> row_times_mat(const std::vector<std::int64_t>& v, const ZMat& m) {
  if (v.size() != m.rows()) fail_internal("vector length mismatch in row-matrix product");
  std::vector<std::int64_t> r(m.cols(), 0);
  for (std::size_t j = 0; j < m.cols(); j++) {
    i128 acc = 0;
    for (std::size_t i = 0; i < v.size(); i++) acc += i128(v[i]) * i128(m.at(i, j));
    r[j] = chk(acc);
  }
  return r;
}

std::vector<std::int64_t> vec_add(const std::vector<std::int64_t>& a,
                                  const std::vector<std::int64_t>& b) {
  if (a.size() != b.size()) fail_internal("vector length mismatch");
  std::vector<std::int64_t> r(a.size());
  for (std::size_t i = 0; i < a.size(); i++) r[i] = add64(a[i], b[i]);
  return r;
}

std::vector<std::int64_t> vec_sub(const std::vector<std::int64_t>& a,
                                  const std::vector<std::int64_t>& b) {
  if (a.size() != b.size()) fail_internal("vector length mismatch");
  std::vector<std::int64_t> r(a.size());
  for (std::size_t i = 0; i < a.size(); i++) r[i] = chk(i128(a[i]) - i128(b[i]));
  return r;
}

std::vector<std::int64_t> vec_scale(std::int64_t k, const std::vector<std::int64_t>& v) {
  std::vector<std::int64_t> r(v.size());
  for (std::size_t i = 0; i < v.size(); i++) r[i] = mul64(k, v[i]);
  return r;
}

bool vec_is_zero(const std::vector<std::int64_t>& v) {
  return std::all_of(v.begin(), v.end(), [](std::int64_t x) { return x == 0; });
}

std::int64_t content(const std::vector<std::int64_t>& v) {
  std::int64_t g = 0;
  for (std::int64_t x : v) g = std::gcd(g, x);
  return g;
}

HnfResult hnf_with_transform(ZMat a) {
  HnfResult res;
  res.u = ZMat::identity(a.rows());
  std::vector<ZMat*> ms{&a, &res.u};
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); col++) {
    // Euclid on the entries of this column at positions >= row.
    while (true) {
      std::size_t best = a.rows();
      for (std::size_t r = row; r < a.rows(); r++) {
        if (a.at(r, col) == 0) continue;
        if (best == a.rows() || std::llabs(a.at(r, col)) < std::llabs(a.at(best, col))) best = r;
      }
      if (best == a.rows()) break;  // column clear below
      row_swap(ms, row, best);
      bool clean = true;
      for (std::size_t r = row + 1; r < a.rows(); r++) {
        if (a.at(r, col) == 0) continue;
        row_axpy(ms, r, a.at(r, col) / a.at(row, col), row);
        if (a.at(r, col) != 0) clean = false;
      }
      if (clean) break;
    }
    if (a.at(row, col) == 0) continue;
    if (a.at(row, col) < 0) row_negate(ms, row);
    for (std::size_t r = 0; r < row; r++)
      row_axpy(ms, r, floor_div(a.at(r, col), a.at(row, col)), row);
    res.pivot_cols.push_back(col);
    row++;
  }
  res.rank = row;
  res.h = std::move(a);
  return res;
}

ZMat lattice_hnf(const ZMat& a) {
  HnfResult r = hnf_with_transform(a);
  ZMat out(r.rank, a.cols());
  for (std::size_t i = 0; i < r.rank; i++)
    for (std::size_t c = 0; c < a.cols(); c++) out.at(i, c) = r.h.at(i, c);
  return out;
}

ZMat left_kernel(const ZMat& a) {
  HnfResult r = hnf_with_transform(a);
  ZMat ker(a.rows() - r.rank, a.rows());
  for (std::size_t i = r.rank; i < a.rows(); i++)
    for (std::size_t c = 0; c < a.rows(); c++) ker.at(i - r.rank, c) = r.u.at(i, c);
  return lattice_hnf(ker);
}

std::optional<std::vector<std::int64_t>> solve_left(const ZMat& a,
                                                    const std::vector<std::int64_t>& v) {
  if (v.size() != a.cols()) fail_internal("vector length mismatch in solve");
  HnfResult r = hnf_with_transform(a);
  std::vector<std::int64_t> rem = v;
  std::vector<std::int64_t> c(a.rows(), 0);
  for (std::size_t i = 0; i < r.rank; i++) {
    std::int64_t piv = r.h.at(i, r.pivot_cols[i]);
    std::int64_t val = rem[r.pivot_cols[i]];
    if (val % piv != 0) return std::nullopt;
    std::int64_t q = val / piv;
    c[i] = q;
    if (q != 0) rem = vec_sub(rem, vec_scale(q, r.h.row(i)));
  }
  if (!vec_is_zero(rem)) return std::nullopt;
  return row_times_mat(c, r.u);
}

std::int64_t det_abs(const ZMat& a) {
  if (a.rows() != a.cols()) fail_internal("determinant requires a square matrix");
  HnfResult r = hnf_with_transform(a);
  if (r.rank < a.rows()) return 0;
  i128 d = 1;
  for (std::size_t i = 0; i < a.rows(); i++) {
    d *= i128(r.h.at(i, r.pivot_cols[i]));
    if (d > i128(INT64_MAX)) fail_internal("integer overflow: determinant exceeds 64-bit range");
  }
  return static_cast<std::int64_t>(d);
}

std::vector<std::int64_t> SnfResult::diag() const {
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < std::min(d.rows(), d.cols()); i++) out.push_back(d.at(i, i));
  return out;
}

namespace {

// col[c] -= q * col[src] on a and v; the inverse op (col[src] += q * col[c])
// applies to v_inv from the row side: row[src] of v_inv gains q * row[c].
void col_axpy(ZMat& a, ZMat& v, ZMat& v_inv, std::size_t c, std::int64_t q, std::size_t src) {
  if (q == 0) return;
  for (std::size_t r = 0; r < a.rows(); r++)
    a.at(r, c) = chk(i128(a.at(r, c)) - i128(q) * i128(a.at(r, src)));
  for (std::size_t r = 0; r < v.rows(); r++)
    v.at(r, c) = chk(i128(v.at(r, c)) - i128(q) * i128(v.at(r, src)));
  for (std::size_t k = 0; k < v_inv.cols(); k++)
    v_inv.at(src, k) = chk(i128(v_inv.at(src, k)) + i128(q) * i128(v_inv.at(c, k)));
}

void col_swap(ZMat& a, ZMat& v, ZMat& v_inv, std::size_t c1, std::size_t c2) {
  if (c1 == c2) return;
  for (std::size_t r = 0; r < a.rows(); r++) std::swap(a.at(r, c1), a.at(r, c2));
  for (std::size_t r = 0; r < v.rows(); r++) std::swap(v.at(r, c1), v.at(r, c2));
  for (std::size_t k = 0; k < v_inv.cols(); k++) std::swap(v_inv.at(c1, k), v_inv.at(c2, k));
}

}  // namespace

SnfResult snf_with_transforms(ZMat a) {
  SnfResult res;
  res.u = ZMat::identity(a.rows());
  res.v = ZMat::identity(a.cols());
  res.v_inv = ZMat::identity(a.cols());
  std::vector<ZMat*> row_ms{&a, &res.u};
  std::size_t n = std::min(a.rows(), a.cols());
  for (std::size_t t = 0; t < n; t++) {
    // Find a pivot of minimal absolute value in the trailing submatrix.
    auto pick_pivot = [&]() -> bool {
      std::size_t br = a.rows(), bc = a.cols();
      for (std::size_t r = t; r < a.rows(); r++)
        for (std::size_t c = t; c < a.cols(); c++) {
          if (a.at(r, c) == 0) continue;
          if (br == a.rows() || std::llabs(a.at(r, c)) < std::llabs(a.at(br, bc))) {
            br = r;
            bc = c;
          }
        }
      if (br == a.rows()) return false;
      row_swap(row_ms, t, br);
      col_swap(a, res.v, res.v_inv, t, bc);
      return true;
    };
    if (!pick_pivot()) break;
    while (true) {
      bool clean = true;
      for (std::size_t r = t + 1; r < a.rows(); r++) {
        if (a.at(r, t) == 0) continue;
        row_axpy(row_ms, r, a.at(r, t) / a.at(t, t), t);
        if (a.at(r, t) != 0) clean = false;
      }
      for (std::size_t c = t + 1; c < a.cols(); c++) {
        if (a.at(t, c) == 0) continue;
        col_axpy(a, res.v, res.v_inv, c, a.at(t, c) / a.at(t, t), t);
        if (a.at(t, c) != 0) clean = false;
      }
      if (!clean) {
        pick_pivot();
        continue;
      }
      // Enforce divisibility of the remaining block by the pivot.
      bool divides = true;
      for (std::size_t r = t + 1; r < a.rows() && divides; r++)
        for (std::size_t c = t + 1; c < a.cols() && divides; c++)
          if (a.at(r, c) % a.at(t, t) != 0) {
            row_axpy(row_ms, t, -1, r);  // row[t] += row[r]
            divides = false;
          }
      if (divides) break;
    }
    if (a.at(t, t) < 0) row_negate(row_ms, t);
  }
  res.d = std::move(a);
  return res;
}

Lattice Lattice::from_rows(const ZMat& rows) {
  Lattice l;
  l.basis_ = lattice_hnf(rows);
  return l;
}

Lattice Lattice::full(std::size_t n) { return from_rows(ZMat::identity(n)); }

Lattice Lattice::zero(std::size_t n) {
  Lattice l;
  l.basis_ = ZMat(0, n);
  return l;
}

Lattice Lattice::scaled(std::size_t n, std::int64_t k) {
  ZMat m(n, n);
  for (std::size_t i = 0; i < n; i++) m.at(i, i) = k;
  return from_rows(m);
}

bool Lattice::contains(const std::vector<std::int64_t>& v) const {
  return coords(v).has_value();
}

std::optional<std::vector<std::int64_t>> Lattice::coords(
    const std::vector<std::int64_t>& v) const {
  if (v.size() != ambient_dim()) fail_internal("vector dimension mismatch in lattice membership");
  std::vector<std::int64_t> rem = v;
  std::vector<std::int64_t> c(basis_.rows(), 0);
  for (std::size_t i = 0; i < basis_.rows(); i++) {
    // Pivot column of row i: first nonzero entry (basis is in HNF).
    std::size_t p = 0;
    while (p < basis_.cols() && basis_.at(i, p) == 0) p++;
    std::int64_t piv = basis_.at(i, p);
    if (rem[p] % piv != 0) return std::nullopt;
    c[i] = rem[p] / piv;
    if (c[i] != 0) rem = vec_sub(rem, vec_scale(c[i], basis_.row(i)));
  }
  if (!vec_is_zero(rem)) return std::nullopt;
  return c;
}

bool Lattice::subset_of(const Lattice& other) const {
  for (std::size_t i = 0; i < basis_.rows(); i++)
    if (!other.contains(basis_.row(i))) return false;
  return true;
}

Lattice Lattice::sum(const Lattice& other) const {
  if (ambient_dim() != other.ambient_dim()) fail_internal("ambient dimension mismatch");
  return from_rows(stack_rows(basis_, other.basis_));
}

Lattice Lattice::intersect(const Lattice& other) const {
  if (ambient_dim() != other.ambient_dim()) fail_internal("ambient dimension mismatch");
  if (rank() == 0 || other.rank() == 0) return zero(ambient_dim());
  ZMat stacked = stack_rows(basis_, other.basis_);
  ZMat ker = left_kernel(stacked);
  // For (x, y) in the kernel, x * basis = -y * other.basis lies in both.
  ZMat gens(ker.rows(), ambient_dim());
  for (std::size_t i = 0; i < ker.rows(); i++) {
    std::vector<std::int64_t> full = ker.row(i);
    std::vector<std::int64_t> x(full.begin(), full.begin() + basis_.rows());
    gens.set_row(i, row_times_mat(x, basis_));
  }
  return from_rows(gens);
}

Lattice Lattice::preimage(const ZMat& f) const {
  if (f.cols() != ambient_dim()) fail_internal("map target dimension mismatch in preimage");
  if (rank() == 0) return from_rows(left_kernel(f));
  ZMat stacked = stack_rows(f, basis_);
  ZMat ker = left_kernel(stacked);
  ZMat gens(ker.rows(), f.rows());
  for (std::size_t i = 0; i < ker.rows(); i++) {
    std::vector<std::int64_t> full = ker.row(i);
    gens.set_row(i, std::vector<std::int64_t>(full.begin(), full.begin() + f.rows()));
  }
  return from_rows(gens);
}

Lattice Lattice::image(const ZMat& f) const {
  if (f.rows() != ambient_dim()) fail_internal("map source dimension mismatch in image");
  return from_rows(mat_mul(basis_, f));
}

std::int64_t Lattice::index_in_ambient() const {
  if (rank() < ambient_dim()) return 0;
  i128 d = 1;
  for (std::size_t i = 0; i < basis_.rows(); i++) {
    d *= i128(basis_.at(i, i));
    if (d > i128(INT64_MAX)) fail_internal("integer overflow: lattice index exceeds 64-bit range");
  }
  return static_cast<std::int64_t>(d);
}

std::int64_t Lattice::index_of(const Lattice& sub) const {
  if (!sub.subset_of(*this)) fail_input("index_of requires a sublattice");
  if (sub.rank() < rank()) return 0;
  ZMat c(sub.rank(), rank());
  for (std::size_t i = 0; i < sub.rank(); i++) {
    auto co = coords(sub.basis().row(i));
    c.set_row(i, *co);
  }
  return det_abs(c);
}

}  // namespace rfc
