#pragma once

#include <cstddef>
#include <initializer_list>

#include "twostage/dense.hpp"

namespace twostage {

/// K = { P y : y >= 0 } for a nonsingular generator matrix P.
///
/// P^{-1} is computed once at construction. Predicates accept an optional
/// `scale`; the effective tolerance is tol() * scale, which lets callers
/// compare quantities of large magnitude without false negatives from
/// roundoff.
class SimplicialCone {
 public:
  static constexpr double kDefaultTolerance = 1e-12;

  explicit SimplicialCone(DenseMatrix generators, double tol = kDefaultTolerance);

  static SimplicialCone orthant(std::size_t n, double tol = kDefaultTolerance);

  std::size_t dim() const noexcept { return generators_.rows(); }
  double tol() const noexcept { return tol_; }
  bool is_orthant() const noexcept { return orthant_; }
  const DenseMatrix& generators() const noexcept { return generators_; }
  const DenseMatrix& generators_inverse() const noexcept { return inverse_; }

  /// P^{-1} x
  DenseVector coordinates(const DenseVector& x) const;
  /// P^{-1} A P
  DenseMatrix coordinates(const DenseMatrix& a) const;
  /// Inverse of coordinates(): P C P^{-1} and P y.
  DenseMatrix from_coordinates(const DenseMatrix& c) const;
  DenseVector from_coordinates(const DenseVector& y) const;

  bool contains_vector(const DenseVector& x, double scale = 1.0) const;
  bool contains_vector_interior(const DenseVector& x, double scale = 1.0) const;
  /// A K subset of K, i.e. A >=_K 0.
  bool leaves_invariant(const DenseMatrix& a, double scale = 1.0) const;
  /// A <=_K B.
  bool le(const DenseMatrix& a, const DenseMatrix& b, double scale = 1.0) const;
  /// x <=_K y.
  bool le(const DenseVector& x, const DenseVector& y, double scale = 1.0) const;

 private:
  void check_dim(std::size_t n, const char* op) const;

  DenseMatrix generators_;
  DenseMatrix inverse_;
  double tol_;
  bool orthant_ = false;
};

inline SimplicialCone orthant(std::size_t n) { return SimplicialCone::orthant(n); }

inline bool contains_vector(const SimplicialCone& k, const DenseVector& x) {
  return k.contains_vector(x);
}
inline bool contains_vector_interior(const SimplicialCone& k, const DenseVector& x) {
  return k.contains_vector_interior(x);
}
inline bool leaves_invariant(const SimplicialCone& k, const DenseMatrix& a) {
  return k.leaves_invariant(a);
}
inline bool cone_le(const SimplicialCone& k, const DenseMatrix& a, const DenseMatrix& b) {
  return k.le(a, b);
}

/// max(1, max |entry|) over the given matrices; the usual `scale` argument.
double magnitude_scale(std::initializer_list<const DenseMatrix*> ms);

}  // namespace twostage
