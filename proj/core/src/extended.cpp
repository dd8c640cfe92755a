#include "invislat/extended.hpp"

#include <cmath>
#include <string>
#include <vector>

#include <quadmath.h>

#include "invislat/error.hpp"

namespace invislat {

namespace {

using Quad = __float128;

struct QComplex {
  Quad re = 0;
  Quad im = 0;
};

QComplex operator-(QComplex a, QComplex b) { return {a.re - b.re, a.im - b.im}; }
QComplex operator*(QComplex a, QComplex b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
QComplex operator*(Quad s, QComplex a) { return {s * a.re, s * a.im}; }
QComplex operator/(QComplex a, QComplex b) {
  const Quad d = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}
QComplex expi(Quad phase) { return {cosq(phase), sinq(phase)}; }
Quad abs2(QComplex a) { return a.re * a.re + a.im * a.im; }

struct LogValue {
  Quad log_abs;
  int sign;
};

LogValue log_hyperbolic(FamilyKind kind, Quad y) {
  const Quad a = fabsq(y);
  const Quad ln2 = logq(2);
  if (kind == FamilyKind::Cosh) return {a < 40 ? logq(coshq(a)) : a + log1pq(expq(-2 * a)) - ln2, 1};
  if (y == 0) throw ParameterError("sinh family evaluated on a node; alpha must be non-integer");
  return {a < 40 ? logq(sinhq(a)) : a + log1pq(-expq(-2 * a)) - ln2, y > 0 ? 1 : -1};
}

QComplex quad_hop(const FamilySpec& spec, long n) {
  const Quad w = spec.omega;
  const Quad big_n = spec.levels;
  const Quad x = static_cast<Quad>(n) - static_cast<Quad>(spec.alpha);
  const LogValue a = log_hyperbolic(spec.kind, w * x);
  const LogValue b = log_hyperbolic(spec.kind, w * (x - 2 * big_n - 1));
  const LogValue c = log_hyperbolic(spec.kind, w * (x - big_n));
  const LogValue d = log_hyperbolic(spec.kind, w * (x - big_n - 1));
  const Quad mag = static_cast<Quad>(spec.kappa) * expq((a.log_abs + b.log_abs - c.log_abs - d.log_abs) / 2);
  return a.sign * b.sign * c.sign * d.sign > 0 ? QComplex{mag, 0} : QComplex{0, mag};
}

Quad deviation(const FamilySpec& spec, long n) {
  const QComplex k = quad_hop(spec, n);
  return sqrtq((k.re - spec.kappa) * (k.re - spec.kappa) + k.im * k.im);
}

}  // namespace

long extended_half_width(const FamilySpec& spec, double tail_tol) {
  validate_family(spec);
  if (!(tail_tol > 0.0)) throw ParameterError("tail tolerance must be positive");
  const long center = std::lround(family_center(spec));
  constexpr long run = 8;
  long quiet = 0;
  for (long h = 1; h < 10'000'000; ++h) {
    const Quad dev = fmaxq(deviation(spec, center - h), deviation(spec, center + h));
    quiet = dev < tail_tol ? quiet + 1 : 0;
    if (quiet == run) return h - run + 1;
  }
  throw NumericalError("family tails do not reach tolerance " + std::to_string(tail_tol));
}

ScatteringResult scatter_family_numeric(const FamilySpec& spec, std::span<const double> q, double tail_tol) {
  for (double x : q) {
    if (!(x > 0.0 && x < 3.14159265358979323846)) throw ParameterError("q samples must lie in (0, pi)");
  }
  const long h = extended_half_width(spec, tail_tol);
  const long center = std::lround(family_center(spec));
  const long lo = center - h;
  const long hi = center + h;
  std::vector<QComplex> hops;
  int imaginary = 0;
  for (long n = lo; n <= hi + 1; ++n) {
    hops.push_back(quad_hop(spec, n));
    if (hops.back().re == 0) ++imaginary;
  }
  const QComplex kinf{static_cast<Quad>(spec.kappa), 0};
  auto hop = [&](long n) { return n < lo || n > hi + 1 ? kinf : hops[static_cast<std::size_t>(n - lo)]; };
  // Sign of the real part of the hop product; matches the double-precision transfer path.
  const Quad gauge = imaginary % 4 == 2 ? -1 : 1;

  ScatteringResult result;
  result.method = ScatteringMethod::TransferMatrix;
  result.q.assign(q.begin(), q.end());
  std::vector<double> raw_phase;
  for (double qd : q) {
    const Quad qk = qd;
    const QComplex energy{2 * static_cast<Quad>(spec.kappa) * cosq(qk), 0};
    QComplex next = expi(-qk * static_cast<Quad>(hi + 2));
    QComplex cur = expi(-qk * static_cast<Quad>(hi + 1));
    for (long n = hi + 1; n >= lo - 1; --n) {
      const QComplex prev = (energy * cur - hop(n + 1) * next) / hop(n);
      next = cur;
      cur = prev;
    }
    const long m1 = lo - 1;
    const QComplex a = (cur - next * expi(-qk)) / QComplex{0, 2 * sinq(qk)};
    const QComplex b = next - a;
    const QComplex amp_in = a * expi(qk * static_cast<Quad>(m1));
    const QComplex amp_back = b * expi(-qk * static_cast<Quad>(m1));
    const bool flagged = abs2(amp_in) < 1e-24;
    result.flagged.push_back(flagged);
    if (flagged) {
      const double nan = std::nan("");
      result.r.emplace_back(nan, nan);
      result.t.emplace_back(nan, nan);
      raw_phase.push_back(raw_phase.empty() ? 0.0 : raw_phase.back());
      continue;
    }
    const QComplex r = amp_back / amp_in;
    const QComplex t = gauge * (QComplex{1, 0} / amp_in);
    result.r.emplace_back(static_cast<double>(r.re), static_cast<double>(r.im));
    result.t.emplace_back(static_cast<double>(t.re), static_cast<double>(t.im));
    raw_phase.push_back(std::arg(result.t.back()));
  }
  result.phase = unwrap_phase(raw_phase);
  return result;
}

}  // namespace invislat
