#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace rfc {

// Dense integer matrix with 64-bit entries. All arithmetic runs through
// 128-bit intermediates and throws internal_error on overflow rather than
// wrapping.
class ZMat {
public:
  ZMat() = default;
  ZMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, 0) {}
  ZMat(std::size_t rows, std::size_t cols, std::vector<std::int64_t> entries);

  static ZMat identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::int64_t& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  std::int64_t at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

  std::vector<std::int64_t> row(std::size_t r) const;
  void set_row(std::size_t r, const std::vector<std::int64_t>& v);

  bool is_zero() const;
  friend bool operator==(const ZMat& a, const ZMat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }
  friend bool operator!=(const ZMat& a, const ZMat& b) { return !(a == b); }

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::int64_t> a_;
};

ZMat mat_mul(const ZMat& a, const ZMat& b);
ZMat mat_pow(const ZMat& a, std::uint64_t e);
ZMat stack_rows(const ZMat& a, const ZMat& b);
std::vector<std::int64_t> row_times_mat(const std::vector<std::int64_t>& v, const ZMat& m);

std::vector<std::int64_t> vec_add(const std::vector<std::int64_t>& a,
                                  const std::vector<std::int64_t>& b);
std::vector<std::int64_t> vec_sub(const std::vector<std::int64_t>& a,
                                  const std::vector<std::int64_t>& b);
std::vector<std::int64_t> vec_scale(std::int64_t k, const std::vector<std::int64_t>& v);
bool vec_is_zero(const std::vector<std::int64_t>& v);

// gcd of the absolute values of the entries; 0 for the zero vector.
std::int64_t content(const std::vector<std::int64_t>& v);

// Row-style Hermite normal form: h = u * a with u unimodular, h in row
// echelon form with positive pivots and entries above each pivot reduced
// into [0, pivot). Rows of h beyond `rank` are zero; the matching rows of u
// form a basis of the left kernel of a.
struct HnfResult {
  ZMat h;
  ZMat u;
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_cols;
};

HnfResult hnf_with_transform(ZMat a);

// Canonical basis of the row span: HNF rows with zero rows dropped.
ZMat lattice_hnf(const ZMat& a);

// Canonical basis of {x : x * a = 0}.
ZMat left_kernel(const ZMat& a);

// Solves x * a = v over the integers; empty if no solution.
std::optional<std::vector<std::int64_t>> solve_left(const ZMat& a,
                                                    const std::vector<std::int64_t>& v);

// |det a| for square a, computed from HNF pivots; 0 when singular.
std::int64_t det_abs(const ZMat& a);

// Smith normal form: d = u * a * v with u, v unimodular and d diagonal with
// d[i] | d[i+1]. v_inv is the inverse of v, tracked during elimination.
struct SnfResult {
  ZMat d;
  ZMat u;
  ZMat v;
  ZMat v_inv;
  std::vector<std::int64_t> diag() const;
};

SnfResult snf_with_transforms(ZMat a);

// Subgroup of Z^n stored as a canonical HNF basis (rows span the lattice).
class Lattice {
public:
  Lattice() = default;
  static Lattice from_rows(const ZMat& rows);
  static Lattice full(std::size_t n);
  static Lattice zero(std::size_t n);
  static Lattice scaled(std::size_t n, std::int64_t k);  // k * Z^n

  const ZMat& basis() const { return basis_; }
  std::size_t ambient_dim() const { return basis_.cols(); }
  std::size_t rank() const { return basis_.rows(); }

  bool contains(const std::vector<std::int64_t>& v) const;
  // Coordinates of v in the basis rows; empty if v is outside the lattice.
  std::optional<std::vector<std::int64_t>> coords(const std::vector<std::int64_t>& v) const;
  bool subset_of(const Lattice& other) const;
  friend bool operator==(const Lattice& a, const Lattice& b) { return a.basis_ == b.basis_; }
  friend bool operator!=(const Lattice& a, const Lattice& b) { return !(a == b); }

  Lattice sum(const Lattice& other) const;
  Lattice intersect(const Lattice& other) const;

  // {x : x * f in this}, for f mapping Z^m -> Z^n row-style (n = ambient).
  Lattice preimage(const ZMat& f) const;

  // Image {x * f : x in this} inside Z^cols(f).
  Lattice image(const ZMat& f) const;

  // [Z^n : L]; 0 when the index is infinite.
  std::int64_t index_in_ambient() const;

  // [this : sub] for sub a finite-index sublattice of this; 0 when infinite.
  std::int64_t index_of(const Lattice& sub) const;

private:
  ZMat basis_;  // HNF, no zero rows
};

}  // namespace rfc
