#include "generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "oracle.hpp"

namespace gen {

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

DenseMatrix nonneg(Rng& rng, std::size_t n, double lo, double hi, double density) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (uniform(rng, 0, 1) < density) m(i, j) = uniform(rng, lo, hi);
  return m;
}

DenseMatrix circulant(const std::vector<double>& first_row) {
  const std::size_t n = first_row.size();
  DenseMatrix c(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) c(i, j) = first_row[(j + n - i) % n];
  return c;
}

DenseMatrix m_matrix(Rng& rng, std::size_t n, double density) {
  DenseMatrix a = nonneg(rng, n, 0.05, 1.0, density);
  for (std::size_t i = 0; i < n; ++i) a(i, i) = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      row += a(i, j);
      a(i, j) = -a(i, j);
    }
    a(i, i) = row * uniform(rng, 1.05, 2.0) + uniform(rng, 0.05, 0.5);
  }
  return a;
}

DenseMatrix circulant_m_matrix(Rng& rng, std::size_t n) {
  std::vector<double> c(n);
  double off = 0.0;
  for (std::size_t j = 1; j < n; ++j) {
    c[j] = -uniform(rng, 0.05, 1.0);
    off -= c[j];
  }
  c[0] = off * uniform(rng, 1.05, 1.8) + uniform(rng, 0.01, 0.2);
  return circulant(c);
}

DenseMatrix cone_generators(Rng& rng, std::size_t n) {
  if (uniform(rng, 0, 1) < 0.2) return DenseMatrix::identity(n);
  for (;;) {
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    DenseMatrix q(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        q(i, j) = (i == j ? 1.0 : 0.0) + uniform(rng, -0.3, 0.3);
    DenseMatrix p(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      const double scale = uniform(rng, 0.5, 2.0);
      for (std::size_t j = 0; j < n; ++j) p(perm[i], j) = scale * q(i, j);
    }
    if (oracle::condition_number_2(p) < 50.0) return p;
  }
}

DenseMatrix conjugate(const DenseMatrix& p, const DenseMatrix& m) {
  return oracle::multiply(oracle::multiply(p, m), oracle::inverse(p));
}

TwoStageInstance circulant_instance(Rng& rng, std::size_t n, bool weak_inner) {
  const DenseMatrix a = circulant_m_matrix(rng, n);
  std::vector<double> arow(a.row(0).begin(), a.row(0).end());

  // V takes a random share of each off-diagonal of A, plus a diagonal shift.
  std::vector<double> vrow(n), urow(n);
  vrow[0] = uniform(rng, 0, 1) < 0.5 ? uniform(rng, 0.0, 0.5) : 0.0;
  for (std::size_t j = 1; j < n; ++j) vrow[j] = -arow[j] * uniform(rng, 0.0, 0.9);
  for (std::size_t j = 0; j < n; ++j) urow[j] = arow[j] + vrow[j];

  std::vector<double> grow(n);
  grow[0] = uniform(rng, 0.0, 0.5 * urow[0]);
  for (std::size_t j = 1; j < n; ++j) {
    grow[j] = -urow[j] * uniform(rng, 0.0, 0.9);
    if (weak_inner && uniform(rng, 0, 1) < 0.5) grow[j] = -uniform(rng, 0.0, 0.15) * urow[0] / n;
  }
  std::vector<double> frow(n);
  for (std::size_t j = 0; j < n; ++j) frow[j] = urow[j] + grow[j];
  return {a, circulant(urow), circulant(vrow), circulant(frow), circulant(grow)};
}

TwoStageInstance proportional_instance(Rng& rng, std::size_t n) {
  const DenseMatrix u = m_matrix(rng, n);
  const double c = uniform(rng, 0.05, 0.8);
  const DenseMatrix v = c * u;
  DenseMatrix g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) {
        g(i, j) = uniform(rng, 0.0, 0.4) * u(i, i);
      } else if (j > i) {
        g(i, j) = -u(i, j);  // Gauss-Seidel-like upper part
      }
    }
  return {(1.0 - c) * u, u, v, u + g, g};
}

TwoStageInstance conjugate(const DenseMatrix& p, const TwoStageInstance& t) {
  const DenseMatrix u = conjugate(p, t.u);
  const DenseMatrix v = conjugate(p, t.v);
  const DenseMatrix g = conjugate(p, t.g);
  return {u - v, u, v, u + g, g};
}

}  // namespace gen
