#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "twostage/errors.hpp"
#include "twostage/linalg.hpp"

namespace twostage {
namespace {

void balance(DenseMatrix& a) {
  constexpr double radix = 2.0;
  constexpr double sqrdx = radix * radix;
  const std::size_t n = a.rows();
  bool done = false;
  while (!done) {
    done = true;
    for (std::size_t i = 0; i < n; ++i) {
      double r = 0.0;
      double c = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(a(j, i));
        r += std::abs(a(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      double g = r / radix;
      double f = 1.0;
      const double s = c + r;
      while (c < g) {
        f *= radix;
        c *= sqrdx;
      }
      g = r * radix;
      while (c > g) {
        f /= radix;
        c /= sqrdx;
      }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        g = 1.0 / f;
        for (std::size_t j = 0; j < n; ++j) a(i, j) *= g;
        for (std::size_t j = 0; j < n; ++j) a(j, i) *= f;
      }
    }
  }
}

// Reduction to upper Hessenberg form by stabilized elementary similarities.
void hessenberg(DenseMatrix& a) {
  const std::size_t n = a.rows();
  for (std::size_t m = 1; m + 1 < n; ++m) {
    double x = 0.0;
    std::size_t i = m;
    for (std::size_t j = m; j < n; ++j) {
      if (std::abs(a(j, m - 1)) > std::abs(x)) {
        x = a(j, m - 1);
        i = j;
      }
    }
    if (i != m) {
      for (std::size_t j = m - 1; j < n; ++j) std::swap(a(i, j), a(m, j));
      for (std::size_t j = 0; j < n; ++j) std::swap(a(j, i), a(j, m));
    }
    if (x == 0.0) continue;
    for (i = m + 1; i < n; ++i) {
      double y = a(i, m - 1);
      if (y == 0.0) continue;
      y /= x;
      a(i, m - 1) = y;
      for (std::size_t j = m; j < n; ++j) a(i, j) -= y * a(m, j);
      for (std::size_t j = 0; j < n; ++j) a(j, m) += y * a(j, i);
    }
  }
  for (std::size_t i = 2; i < n; ++i)
    for (std::size_t j = 0; j + 1 < i; ++j) a(i, j) = 0.0;
}

double sign_of(double a, double b) { return b >= 0.0 ? std::abs(a) : -std::abs(a); }

// Francis double-shift QR on an upper Hessenberg matrix. Indices below are
// one-based to keep the deflation bookkeeping readable.
std::vector<ComplexEigenvalue> hessenberg_qr(DenseMatrix& h) {
  const int n = static_cast<int>(h.rows());
  auto a = [&h](int i, int j) -> double& { return h(i - 1, j - 1); };
  std::vector<ComplexEigenvalue> w(n + 1);

  double anorm = 0.0;
  for (int i = 1; i <= n; ++i)
    for (int j = std::max(i - 1, 1); j <= n; ++j) anorm += std::abs(a(i, j));

  int nn = n;
  double t = 0.0;
  double p = 0.0, q = 0.0, r = 0.0, s = 0.0, x = 0.0, y = 0.0, z = 0.0;
  while (nn >= 1) {
    int its = 0;
    int l = 0;
    do {
      for (l = nn; l >= 2; --l) {
        s = std::abs(a(l - 1, l - 1)) + std::abs(a(l, l));
        if (s == 0.0) s = anorm;
        if (std::abs(a(l, l - 1)) + s == s) {
          a(l, l - 1) = 0.0;
          break;
        }
      }
      x = a(nn, nn);
      if (l == nn) {
        w[nn] = {x + t, 0.0};
        --nn;
      } else {
        y = a(nn - 1, nn - 1);
        double ww = a(nn, nn - 1) * a(nn - 1, nn);
        if (l == nn - 1) {
          p = 0.5 * (y - x);
          q = p * p + ww;
          z = std::sqrt(std::abs(q));
          x += t;
          if (q >= 0.0) {
            z = p + sign_of(z, p);
            w[nn - 1].re = w[nn].re = x + z;
            if (z != 0.0) w[nn].re = x - ww / z;
            w[nn - 1].im = w[nn].im = 0.0;
          } else {
            w[nn - 1].re = w[nn].re = x + p;
            w[nn - 1].im = -z;
            w[nn].im = z;
          }
          nn -= 2;
        } else {
          if (its == 60) {
            throw NoConvergence("eigenvalues: QR iteration did not converge", 0.0);
          }
          if (its == 10 || its == 20 || its == 40) {
            t += x;
            for (int i = 1; i <= nn; ++i) a(i, i) -= x;
            s = std::abs(a(nn, nn - 1)) + std::abs(a(nn - 1, nn - 2));
            y = x = 0.75 * s;
            ww = -0.4375 * s * s;
          }
          ++its;
          int m = nn - 2;
          for (; m >= l; --m) {
            z = a(m, m);
            r = x - z;
            s = y - z;
            p = (r * s - ww) / a(m + 1, m) + a(m, m + 1);
            q = a(m + 1, m + 1) - z - r - s;
            r = a(m + 2, m + 1);
            s = std::abs(p) + std::abs(q) + std::abs(r);
            if (s == 0.0) s = 1.0;
            p /= s;
            q /= s;
            r /= s;
            if (m == l) break;
            const double u = std::abs(a(m, m - 1)) * (std::abs(q) + std::abs(r));
            const double v =
                std::abs(p) * (std::abs(a(m - 1, m - 1)) + std::abs(z) + std::abs(a(m + 1, m + 1)));
            if (u + v == v) break;
          }
          for (int i = m + 2; i <= nn; ++i) {
            a(i, i - 2) = 0.0;
            if (i != m + 2) a(i, i - 3) = 0.0;
          }
          for (int k = m; k <= nn - 1; ++k) {
            if (k != m) {
              p = a(k, k - 1);
              q = a(k + 1, k - 1);
              r = 0.0;
              if (k != nn - 1) r = a(k + 2, k - 1);
              x = std::abs(p) + std::abs(q) + std::abs(r);
              if (x != 0.0) {
                p /= x;
                q /= x;
                r /= x;
              }
            }
            s = sign_of(std::sqrt(p * p + q * q + r * r), p);
            if (s == 0.0) continue;
            if (k == m) {
              if (l != m) a(k, k - 1) = -a(k, k - 1);
            } else {
              a(k, k - 1) = -s * x;
            }
            p += s;
            x = p / s;
            y = q / s;
            z = r / s;
            q /= p;
            r /= p;
            for (int j = k; j <= nn; ++j) {
              p = a(k, j) + q * a(k + 1, j);
              if (k != nn - 1) {
                p += r * a(k + 2, j);
                a(k + 2, j) -= p * z;
              }
              a(k + 1, j) -= p * y;
              a(k, j) -= p * x;
            }
            const int mmin = nn < k + 3 ? nn : k + 3;
            for (int i = l; i <= mmin; ++i) {
              p = x * a(i, k) + y * a(i, k + 1);
              if (k != nn - 1) {
                p += z * a(i, k + 2);
                a(i, k + 2) -= p * r;
              }
              a(i, k + 1) -= p * q;
              a(i, k) -= p;
            }
          }
        }
      }
    } while (l < nn - 1);
  }
  w.erase(w.begin());
  return w;
}

struct PowerOutcome {
  double value = 0.0;
  DenseVector vector;
  std::size_t iterations = 0;
  bool bounds_closed = false;  // Collatz-Wielandt bracket met the tolerance
  bool vector_settled = false;
};

// Power iteration on A + cI from a positive seeded start. For nonnegative A
// the shifted matrix keeps every iterate strictly positive, so the
// Collatz-Wielandt quotients bracket rho(A) + c at every step.
PowerOutcome shifted_power(const DenseMatrix& a, double tol, std::size_t cap, std::uint64_t seed,
                           bool accept_settled_vector) {
  const std::size_t n = a.rows();
  PowerOutcome out;
  const double c = 0.25 * norm_inf(a);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(0.5, 1.5);
  std::vector<double> x(n), y(n);
  for (double& v : x) v = dist(rng);
  double xmax = norm_inf(std::span<const double>(x));
  for (double& v : x) v /= xmax;

  double lam_prev = 0.0;
  double best = 0.0;
  for (std::size_t it = 1; it <= cap; ++it) {
    multiply(a, x, y);
    double lo = INFINITY;
    double hi = 0.0;
    double lam = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      y[i] += c * x[i];
      lam = std::max(lam, std::abs(y[i]));
      if (x[i] > 0.0) {
        const double ratio = y[i] / x[i];
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
      }
    }
    out.iterations = it;
    best = lam - c;
    if (hi - lo <= tol * hi) {
      out.value = std::max(0.0, 0.5 * (lo + hi) - c);
      out.bounds_closed = true;
    }
    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double nx = y[i] / lam;
      change = std::max(change, std::abs(nx - x[i]));
      x[i] = nx;
    }
    if (out.bounds_closed) break;
    if (accept_settled_vector && change <= 10.0 * tol && std::abs(lam - lam_prev) <= tol * lam) {
      out.value = std::max(0.0, lam - c);
      out.vector_settled = true;
      break;
    }
    lam_prev = lam;
  }
  if (!out.bounds_closed && !out.vector_settled) out.value = std::max(0.0, best);
  out.vector = DenseVector(std::move(x));
  return out;
}

}  // namespace

std::vector<ComplexEigenvalue> eigenvalues(const DenseMatrix& a) {
  if (!a.is_square()) throw DimensionMismatch("eigenvalues: matrix not square");
  if (a.rows() == 0) return {};
  DenseMatrix h = a;
  balance(h);
  hessenberg(h);
  return hessenberg_qr(h);
}

std::vector<double> eigenvalue_moduli(const DenseMatrix& a) {
  std::vector<double> moduli;
  for (const auto& ev : eigenvalues(a)) moduli.push_back(std::hypot(ev.re, ev.im));
  std::sort(moduli.begin(), moduli.end(), std::greater<>());
  return moduli;
}

SpectralRadius spectral_radius_detailed(const DenseMatrix& a, double tol, EigenMethod method,
                                        std::size_t power_cap) {
  if (!a.is_square()) throw DimensionMismatch("spectral_radius: matrix not square");
  if (!(tol > 0.0)) throw InvalidConfig("spectral_radius: tol must be positive");
  SpectralRadius result;
  if (a.rows() == 0 || max_abs(a) == 0.0) {
    result.method = method == EigenMethod::Auto ? EigenMethod::HessenbergQr : method;
    return result;
  }
  const bool nonneg = is_entrywise_nonneg(a);
  if (method == EigenMethod::PowerIteration) {
    if (!nonneg) throw InvalidConfig("spectral_radius: power iteration needs a nonnegative matrix");
    PowerOutcome p = shifted_power(a, tol, power_cap, 0x5eed, true);
    if (!p.bounds_closed && !p.vector_settled) {
      throw NoConvergence("spectral_radius: power iteration hit its cap of " +
                              std::to_string(power_cap) + " steps",
                          p.value);
    }
    return {p.value, EigenMethod::PowerIteration, p.iterations};
  }
  if (method == EigenMethod::Auto && nonneg) {
    constexpr std::size_t kAutoPowerCap = 1000;
    PowerOutcome p = shifted_power(a, tol, std::min(power_cap, kAutoPowerCap), 0x5eed, false);
    if (p.bounds_closed) return {p.value, EigenMethod::PowerIteration, p.iterations};
  }
  const std::vector<double> moduli = eigenvalue_moduli(a);
  return {moduli.front(), EigenMethod::HessenbergQr, 0};
}

double spectral_radius(const DenseMatrix& a, double tol) {
  return spectral_radius_detailed(a, tol).value;
}

PerronPair perron_vector(const DenseMatrix& a, double tol, std::size_t max_iterations,
                         std::uint64_t seed) {
  if (!a.is_square()) throw DimensionMismatch("perron_vector: matrix not square");
  if (!is_entrywise_nonneg(a)) {
    throw InvalidConfig("perron_vector: matrix has negative entries");
  }
  const std::size_t n = a.rows();
  if (n == 0) return {};
  if (max_abs(a) == 0.0) return {0.0, DenseVector(n, 1.0), 0};
  PowerOutcome p = shifted_power(a, tol, max_iterations, seed, true);
  if (!p.bounds_closed && !p.vector_settled) {
    throw NoConvergence("perron_vector: power iteration hit its cap", p.value);
  }
  DenseVector v = std::move(p.vector);
  const double scale = norm_inf(v);
  for (std::size_t i = 0; i < n; ++i) v[i] = std::max(0.0, v[i] / scale);
  return {norm_inf(a * v), std::move(v), p.iterations};
}

std::vector<double> symmetric_eigenvalues(const DenseMatrix& a_in) {
  if (!a_in.is_square()) throw DimensionMismatch("symmetric_eigenvalues: matrix not square");
  DenseMatrix a = a_in;
  const std::size_t n = a.rows();
  const double scale = max_abs(a);
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off = std::max(off, std::abs(a(p, q)));
    if (off <= 1e-300 || off <= 1e-17 * scale) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = sign_of(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
      }
    }
  }
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = a(i, i);
  std::sort(ev.begin(), ev.end());
  return ev;
}

}  // namespace twostage
