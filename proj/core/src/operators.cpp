#include "twostage/operators.hpp"

#include "twostage/errors.hpp"

namespace twostage {
namespace {

void require_positive(std::size_t s) {
  if (s == 0) throw InvalidConfig("inner iteration count must be at least 1");
}

}  // namespace

DenseMatrix build_P_inv(const Splitting& inner, std::size_t s) {
  require_positive(s);
  const DenseMatrix f_inv = inner.u_inverse();
  const DenseMatrix m = f_inv * inner.V();
  return power_sum(m, s) * f_inv;
}

DenseMatrix build_P_inv_right(const Splitting& inner, std::size_t s) {
  require_positive(s);
  const DenseMatrix f_inv = inner.u_inverse();
  return f_inv * power_sum(inner.V() * f_inv, s);
}

DenseMatrix build_T(const Splitting& outer, const Splitting& inner, std::size_t s) {
  require_inner_of(outer, inner);
  require_positive(s);
  const DenseMatrix f_inv = inner.u_inverse();
  const DenseMatrix m = f_inv * inner.V();
  return matrix_power(m, s) + power_sum(m, s) * f_inv * outer.V();
}

DenseMatrix build_T_closed_form(const Splitting& outer, const Splitting& inner, std::size_t s) {
  require_inner_of(outer, inner);
  require_positive(s);
  const std::size_t n = outer.size();
  const DenseMatrix id = DenseMatrix::identity(n);
  const DenseMatrix m = inner.u_factors().solve(inner.V());
  const DenseMatrix h = iteration_matrix(outer);
  return id - (id - matrix_power(m, s)) * (id - h);
}

DenseMatrix build_T_hat(const Splitting& outer, const Splitting& inner, std::size_t s) {
  require_inner_of(outer, inner);
  require_positive(s);
  const DenseMatrix f_inv = inner.u_inverse();
  const DenseMatrix m = inner.V() * f_inv;
  return matrix_power(m, s) + power_sum(m, s) * outer.V() * f_inv;
}

}  // namespace twostage
