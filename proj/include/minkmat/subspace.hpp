#pragma once

#include <utility>
#include <vector>

#include "minkmat/matrix.hpp"

namespace minkmat {

/// A linear subspace of F^d, held as the unique reduced-row-echelon basis
/// of its row space. Canonical storage makes equality a plain comparison.
/// Instances are immutable after construction; all operations return new
/// values and are safe to share across readers.
template <class F>
class Subspace {
 public:
  using Elem = typename F::Elem;
  using Row = typename Matrix<F>::Row;

  /// Row space of the given generator rows (rows may be dependent or zero).
  static Subspace span_of(Matrix<F> generators) {
    generators.reduce();
    return Subspace(std::move(generators));
  }

  static Subspace span_of_rows(F field, std::size_t ambient,
                               const std::vector<Row>& rows) {
    return span_of(Matrix<F>::from_rows(std::move(field), ambient, rows));
  }

  static Subspace zero(F field, std::size_t ambient) {
    return Subspace(Matrix<F>(std::move(field), 0, ambient));
  }

  static Subspace full(F field, std::size_t ambient) {
    return Subspace(Matrix<F>::identity(std::move(field), ambient));
  }

  std::size_t dim() const { return basis_.rows(); }
  std::size_t ambient_dim() const { return basis_.cols(); }
  const F& field() const { return basis_.field(); }
  const Matrix<F>& basis() const { return basis_; }

  bool is_zero() const { return dim() == 0; }
  bool is_full() const { return dim() == ambient_dim(); }

  bool contains(const Row& v) const {
    Matrix<F> m = basis_;
    m.append_row(v);
    return m.rank() == dim();
  }

  bool contains(const Subspace& other) const {
    check_same_ambient(other);
    Matrix<F> m = basis_;
    m.append_rows(other.basis_);
    return m.rank() == dim();
  }

  friend Subspace sum(const Subspace& a, const Subspace& b) {
    a.check_same_ambient(b);
    Matrix<F> m = a.basis_;
    m.append_rows(b.basis_);
    return span_of(std::move(m));
  }

  /// Computed as the annihilator of annihilators: (A^perp + B^perp)^perp.
  friend Subspace intersect(const Subspace& a, const Subspace& b) {
    a.check_same_ambient(b);
    Subspace joined = sum(a.orthogonal_complement(), b.orthogonal_complement());
    Subspace result = joined.orthogonal_complement();
    if (result.dim() + joined.dim() != a.ambient_dim())
      throw InternalCheckError("complement dimension mismatch");
    return result;
  }

  /// {x : <b, x> = 0 for every basis row b}, under the standard bilinear
  /// form. dim + dim of the complement always equals the ambient dimension.
  Subspace orthogonal_complement() const {
    Matrix<F> ker = basis_.kernel_basis();
    if (ker.rows() + dim() != ambient_dim())
      throw InternalCheckError("kernel dimension mismatch");
    return Subspace(std::move(ker));
  }

  bool operator==(const Subspace& other) const {
    return basis_ == other.basis_;
  }

 private:
  explicit Subspace(Matrix<F> canonical_basis)
      : basis_(std::move(canonical_basis)) {}

  void check_same_ambient(const Subspace& other) const {
    if (ambient_dim() != other.ambient_dim())
      throw InputError("subspaces live in different ambient spaces");
    if (!(field() == other.field()))
      throw InputError("subspaces live over different fields");
  }

  Matrix<F> basis_;
};

/// Projection V -> V / K onto explicit quotient coordinates. The quotient
/// coordinates are the non-pivot coordinates of the kernel's canonical
/// basis; kernel vectors project to zero and dimensions drop by dim K.
template <class F>
class QuotientContext {
 public:
  using Row = typename Matrix<F>::Row;

  QuotientContext(std::size_t ambient_dim, Subspace<F> kernel)
      : kernel_(std::move(kernel)),
        projection_(kernel_.field(), 0, ambient_dim) {
    if (kernel_.ambient_dim() != ambient_dim)
      throw InputError("kernel does not live in the given ambient space");
    const F& f = kernel_.field();
    const Matrix<F>& kb = kernel_.basis();
    std::vector<bool> is_pivot(ambient_dim, false);
    {
      Matrix<F> probe = kb;
      for (std::size_t c : probe.reduce()) is_pivot[c] = true;
    }
    for (std::size_t c = 0; c < ambient_dim; ++c) {
      if (is_pivot[c]) continue;
      Row row(ambient_dim, f.zero());
      row[c] = f.one();
      std::size_t pi = 0;
      for (std::size_t pc = 0; pc < ambient_dim; ++pc) {
        if (!is_pivot[pc]) continue;
        row[pc] = f.neg(kb.at(pi, c));
        ++pi;
      }
      projection_.append_row(row);
    }
    if (projection_.rows() + kernel_.dim() != ambient_dim)
      throw InternalCheckError("projection has wrong row count");
    for (std::size_t i = 0; i < kb.rows(); ++i)
      if (!is_zero_row(project_vector(kb.row(i))))
        throw InternalCheckError("kernel vector does not project to zero");
  }

  std::size_t ambient_dim() const { return projection_.cols(); }
  std::size_t quotient_dim() const { return projection_.rows(); }
  const Subspace<F>& kernel() const { return kernel_; }

  /// Rows index quotient coordinates, columns ambient coordinates.
  const Matrix<F>& projection() const { return projection_; }

  Row project_vector(const Row& v) const {
    const F& f = kernel_.field();
    if (v.size() != ambient_dim())
      throw InputError("vector has wrong length for projection");
    Row out(quotient_dim(), f.zero());
    for (std::size_t i = 0; i < quotient_dim(); ++i)
      for (std::size_t j = 0; j < ambient_dim(); ++j)
        out[i] = f.add(out[i], f.mul(projection_.at(i, j), v[j]));
    return out;
  }

  Subspace<F> project(const Subspace<F>& s) const {
    if (s.ambient_dim() != ambient_dim())
      throw InputError("subspace has wrong ambient dimension for projection");
    Matrix<F> rows(kernel_.field(), 0, quotient_dim());
    for (std::size_t i = 0; i < s.dim(); ++i)
      rows.append_row(project_vector(s.basis().row(i)));
    Subspace<F> image = Subspace<F>::span_of(std::move(rows));
    std::size_t expected =
        s.dim() - intersect(s, kernel_).dim();
    if (image.dim() != expected)
      throw InternalCheckError("projected subspace has wrong dimension");
    return image;
  }

 private:
  bool is_zero_row(const Row& v) const {
    for (const auto& x : v)
      if (!kernel_.field().is_zero(x)) return false;
    return true;
  }

  Subspace<F> kernel_;
  Matrix<F> projection_;
};

}  // namespace minkmat
