#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "twostage/dense.hpp"

// Hand-rolled instance generators for the property suites. Every generator
// takes the caller's engine so runs are reproducible from a fixed seed.
namespace gen {

using twostage::DenseMatrix;
using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi);
std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi);  // inclusive

/// Entries uniform in [lo, hi], each kept with probability `density`.
DenseMatrix nonneg(Rng& rng, std::size_t n, double lo, double hi, double density = 1.0);

DenseMatrix circulant(const std::vector<double>& first_row);

/// Strictly diagonally dominant M-matrix s I - N with N >= 0.
DenseMatrix m_matrix(Rng& rng, std::size_t n, double density = 0.7);

/// Circulant strictly diagonally dominant M-matrix.
DenseMatrix circulant_m_matrix(Rng& rng, std::size_t n);

/// Random nonsingular cone generators P with modest condition number: a
/// scaled permutation times (I + small perturbation), or I.
DenseMatrix cone_generators(Rng& rng, std::size_t n);

/// P M P^{-1}: carries an orthant statement into the cone P R^n_+.
DenseMatrix conjugate(const DenseMatrix& p, const DenseMatrix& m);

/// Outer splitting A = U - V and inner U = F - G.
struct TwoStageInstance {
  DenseMatrix a, u, v, f, g;
};

/// All five matrices circulant: outer regular, inner regular or (when
/// `weak_inner`) G with some negative entries. The inner type is not
/// guaranteed; callers classify.
TwoStageInstance circulant_instance(Rng& rng, std::size_t n, bool weak_inner);

/// V = c U with U a non-circulant M-matrix, so V F^{-1} G = G F^{-1} V for
/// any inner splitting although F and G need not commute.
TwoStageInstance proportional_instance(Rng& rng, std::size_t n);

TwoStageInstance conjugate(const DenseMatrix& p, const TwoStageInstance& t);

}  // namespace gen
