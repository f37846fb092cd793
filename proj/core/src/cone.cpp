#include "twostage/cone.hpp"

#include <algorithm>
#include <string>

#include "twostage/errors.hpp"
#include "twostage/linalg.hpp"

namespace twostage {

SimplicialCone::SimplicialCone(DenseMatrix generators, double tol)
    : generators_(std::move(generators)), tol_(tol) {
  if (!generators_.is_square() || generators_.rows() == 0) {
    throw DimensionMismatch("SimplicialCone: generator matrix must be square and nonempty");
  }
  if (!(tol_ >= 0.0)) throw InvalidConfig("SimplicialCone: tolerance must be nonnegative");
  orthant_ = generators_ == DenseMatrix::identity(generators_.rows());
  inverse_ = orthant_ ? generators_ : inverse(generators_);
}

SimplicialCone SimplicialCone::orthant(std::size_t n, double tol) {
  return SimplicialCone(DenseMatrix::identity(n), tol);
}

void SimplicialCone::check_dim(std::size_t n, const char* op) const {
  if (n != dim()) {
    throw DimensionMismatch(std::string(op) + ": cone dimension " + std::to_string(dim()) +
                            ", operand dimension " + std::to_string(n));
  }
}

DenseVector SimplicialCone::coordinates(const DenseVector& x) const {
  check_dim(x.size(), "cone coordinates");
  return orthant_ ? x : inverse_ * x;
}

DenseMatrix SimplicialCone::coordinates(const DenseMatrix& a) const {
  if (!a.is_square()) throw DimensionMismatch("cone coordinates: matrix not square");
  check_dim(a.rows(), "cone coordinates");
  return orthant_ ? a : inverse_ * a * generators_;
}

DenseMatrix SimplicialCone::from_coordinates(const DenseMatrix& c) const {
  check_dim(c.rows(), "cone from_coordinates");
  return orthant_ ? c : generators_ * c * inverse_;
}

DenseVector SimplicialCone::from_coordinates(const DenseVector& y) const {
  check_dim(y.size(), "cone from_coordinates");
  return orthant_ ? y : generators_ * y;
}

bool SimplicialCone::contains_vector(const DenseVector& x, double scale) const {
  return is_entrywise_nonneg(coordinates(x), tol_ * scale);
}

bool SimplicialCone::contains_vector_interior(const DenseVector& x, double scale) const {
  const DenseVector y = coordinates(x);
  const double t = tol_ * scale;
  return std::all_of(y.values().begin(), y.values().end(), [t](double v) { return v > t; });
}

bool SimplicialCone::leaves_invariant(const DenseMatrix& a, double scale) const {
  return is_entrywise_nonneg(coordinates(a), tol_ * scale);
}

bool SimplicialCone::le(const DenseMatrix& a, const DenseMatrix& b, double scale) const {
  return leaves_invariant(b - a, scale);
}

bool SimplicialCone::le(const DenseVector& x, const DenseVector& y, double scale) const {
  return contains_vector(y - x, scale);
}

double magnitude_scale(std::initializer_list<const DenseMatrix*> ms) {
  double s = 1.0;
  for (const DenseMatrix* m : ms) s = std::max(s, max_abs(*m));
  return s;
}

}  // namespace twostage
