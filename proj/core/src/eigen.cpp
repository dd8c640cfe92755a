#include "invislat/eigen.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "invislat/error.hpp"

namespace invislat {

namespace {

double cabs1(const Complex& z) { return std::abs(z.real()) + std::abs(z.imag()); }

// Eigenvalue of [[a, b], [c, d]] closest to d.
Complex wilkinson_shift(Complex a, Complex b, Complex c, Complex d) {
  const Complex half_diff = 0.5 * (a - d);
  const Complex root = std::sqrt(half_diff * half_diff + b * c);
  const Complex mid = 0.5 * (a + d);
  const Complex l1 = mid + root;
  const Complex l2 = mid - root;
  return std::abs(l1 - d) < std::abs(l2 - d) ? l1 : l2;
}

struct Rotation {
  double c = 1.0;
  Complex s = 0.0;
};

// G = [[c, s], [-conj(s), c]] with G [a; b] = [r; 0].
Rotation make_rotation(Complex a, Complex b) {
  if (b == Complex(0.0)) return {};
  const double abs_a = std::abs(a);
  const double abs_b = std::abs(b);
  if (abs_a == 0.0) return {0.0, std::conj(b) / abs_b};
  const double norm = std::hypot(abs_a, abs_b);
  const Complex phase = a / abs_a;
  return {abs_a / norm, phase * std::conj(b) / norm};
}

}  // namespace

CVector hessenberg_eigenvalues(CVector h, std::size_t n, const QrOptions& options) {
  if (h.size() != n * n) throw DimensionError("matrix storage does not match n x n");
  CVector eigenvalues(n);
  if (n == 0) return eigenvalues;
  auto at = [&h, n](std::size_t i, std::size_t j) -> Complex& { return h[i * n + j]; };

  const double eps = std::numeric_limits<double>::epsilon();
  std::vector<Rotation> rotations(n);
  long hi = static_cast<long>(n) - 1;
  int its = 0;
  while (hi >= 0) {
    long lo = hi;
    for (; lo > 0; --lo) {
      const auto l = static_cast<std::size_t>(lo);
      double scale = cabs1(at(l - 1, l - 1)) + cabs1(at(l, l));
      if (scale == 0.0) {
        scale = cabs1(at(l, l - 1));
        if (l + 1 < n) scale += cabs1(at(l + 1, l));
      }
      if (cabs1(at(l, l - 1)) <= eps * scale) {
        at(l, l - 1) = 0.0;
        break;
      }
    }
    if (lo == hi) {
      eigenvalues[static_cast<std::size_t>(hi)] = at(static_cast<std::size_t>(hi), static_cast<std::size_t>(hi));
      --hi;
      its = 0;
      continue;
    }
    if (its >= options.max_iterations_per_eigenvalue) {
      throw NumericalError("QR iteration did not converge for eigenvalue " + std::to_string(hi) + " after " +
                           std::to_string(its) + " sweeps (active block " + std::to_string(lo) + ".." +
                           std::to_string(hi) + ")");
    }

    const auto l = static_cast<std::size_t>(lo);
    const auto u = static_cast<std::size_t>(hi);
    Complex shift;
    if (its > 0 && its % options.exceptional_shift_every == 0) {
      shift = at(u, u) + 0.75 * std::abs(at(u, u - 1).real()) + Complex(0.0, 0.5 * std::abs(at(u, u - 1).imag()));
    } else {
      shift = wilkinson_shift(at(u - 1, u - 1), at(u - 1, u), at(u, u - 1), at(u, u));
    }

    for (std::size_t k = l; k <= u; ++k) at(k, k) -= shift;
    for (std::size_t k = l; k < u; ++k) {
      const Rotation g = make_rotation(at(k, k), at(k + 1, k));
      rotations[k] = g;
      for (std::size_t j = k; j <= u; ++j) {
        const Complex x = at(k, j);
        const Complex y = at(k + 1, j);
        at(k, j) = g.c * x + g.s * y;
        at(k + 1, j) = -std::conj(g.s) * x + g.c * y;
      }
      at(k + 1, k) = 0.0;
    }
    for (std::size_t k = l; k < u; ++k) {
      const Rotation& g = rotations[k];
      const std::size_t row_end = k + 1;
      for (std::size_t i = l; i <= row_end; ++i) {
        const Complex x = at(i, k);
        const Complex y = at(i, k + 1);
        at(i, k) = x * g.c + y * std::conj(g.s);
        at(i, k + 1) = -x * g.s + y * g.c;
      }
    }
    for (std::size_t k = l; k <= u; ++k) at(k, k) += shift;
    ++its;
  }
  return eigenvalues;
}

}  // namespace invislat
