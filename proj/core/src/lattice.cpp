#include "invislat/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "invislat/error.hpp"

namespace invislat {

Lattice::Lattice(long offset, CVector hops, CVector sites, double kappa_inf)
    : offset_(offset), kappa_inf_(kappa_inf), hops_(std::move(hops)), sites_(std::move(sites)) {
  if (hops_.size() != sites_.size() + 1) {
    throw DimensionError("lattice needs one more hop than sites (got " + std::to_string(hops_.size()) +
                         " hops for " + std::to_string(sites_.size()) + " sites)");
  }
  if (!(kappa_inf_ > 0.0) || !std::isfinite(kappa_inf_)) {
    throw ParameterError("kappa_inf must be positive and finite");
  }
  for (std::size_t i = 0; i < hops_.size(); ++i) {
    if (!std::isfinite(hops_[i].real()) || !std::isfinite(hops_[i].imag())) {
      throw ValidationError("non-finite hop on bond " + std::to_string(offset_ + static_cast<long>(i)));
    }
    if (hops_[i] == Complex(0.0)) {
      throw ValidationError("zero hop on bond " + std::to_string(offset_ + static_cast<long>(i)));
    }
  }
  for (std::size_t i = 0; i < sites_.size(); ++i) {
    if (!std::isfinite(sites_[i].real()) || !std::isfinite(sites_[i].imag())) {
      throw ValidationError("non-finite potential on site " + std::to_string(offset_ + static_cast<long>(i)));
    }
  }
}

Lattice Lattice::homogeneous(long first_site, std::size_t num_sites, double kappa) {
  return Lattice(first_site, CVector(num_sites + 1, Complex(kappa)), CVector(num_sites, Complex(0.0)), kappa);
}

Complex Lattice::hop(long n) const {
  const long i = n - offset_;
  if (i < 0 || i >= static_cast<long>(hops_.size())) return kappa_inf_;
  return hops_[static_cast<std::size_t>(i)];
}

Complex Lattice::site(long n) const {
  const long i = n - offset_;
  if (i < 0 || i >= static_cast<long>(sites_.size())) return 0.0;
  return sites_[static_cast<std::size_t>(i)];
}

bool Lattice::is_hermitian(double tol) const {
  auto real = [tol](const Complex& z) { return std::abs(z.imag()) <= tol; };
  return std::all_of(hops_.begin(), hops_.end(), real) && std::all_of(sites_.begin(), sites_.end(), real);
}

Lattice Lattice::crop(long first, long last) const {
  if (last < first) throw DimensionError("crop range is empty");
  CVector hops;
  CVector sites;
  for (long n = first; n <= last + 1; ++n) hops.push_back(hop(n));
  for (long n = first; n <= last; ++n) sites.push_back(site(n));
  return Lattice(first, std::move(hops), std::move(sites), kappa_inf_);
}

CVector apply_hamiltonian(const Lattice& lattice, std::span<const Complex> psi) {
  const std::size_t m = lattice.num_sites();
  if (psi.size() != m) {
    throw DimensionError("vector length " + std::to_string(psi.size()) + " does not match " +
                         std::to_string(m) + " lattice sites");
  }
  const auto hops = lattice.hops();
  const auto sites = lattice.sites();
  CVector out(m);
  for (std::size_t i = 0; i < m; ++i) {
    Complex acc = sites[i] * psi[i];
    if (i > 0) acc += hops[i] * psi[i - 1];
    if (i + 1 < m) acc += hops[i + 1] * psi[i + 1];
    out[i] = acc;
  }
  return out;
}

CVector hamiltonian_matrix(const Lattice& lattice) {
  const std::size_t m = lattice.num_sites();
  const auto hops = lattice.hops();
  const auto sites = lattice.sites();
  CVector h(m * m, Complex(0.0));
  for (std::size_t i = 0; i < m; ++i) {
    h[i * m + i] = sites[i];
    if (i + 1 < m) {
      h[i * m + i + 1] = hops[i + 1];
      h[(i + 1) * m + i] = hops[i + 1];
    }
  }
  return h;
}

IndexRange defect_window(const Lattice& lattice, double tol) {
  if (!(tol > 0.0)) throw ParameterError("defect_window tolerance must be positive");
  const double kinf = lattice.kappa_inf();
  const IndexRange bonds = lattice.bond_range();
  auto deviates = [&](long n) {
    const bool bond_off = bonds.contains(n) && std::abs(lattice.hop(n) - kinf) >= tol;
    const bool site_off = lattice.site_range().contains(n) && std::abs(lattice.site(n)) >= tol;
    return bond_off || site_off;
  };
  IndexRange window;
  bool found = false;
  for (long n = bonds.first; n <= bonds.last; ++n) {
    if (!deviates(n)) continue;
    if (!found) window.first = n;
    window.last = n;
    found = true;
  }
  if (!found) return {};
  if (window.first == bonds.first || window.last == bonds.last) {
    throw PreconditionError("lattice is not homogeneous at its edges within tolerance " + std::to_string(tol));
  }
  return window;
}

double edge_deviation(const Lattice& lattice, std::size_t edge) {
  const double kinf = lattice.kappa_inf();
  const auto hops = lattice.hops();
  const auto sites = lattice.sites();
  double worst = 0.0;
  const std::size_t eh = std::min(edge, hops.size());
  for (std::size_t i = 0; i < eh; ++i) {
    worst = std::max(worst, std::abs(hops[i] - kinf));
    worst = std::max(worst, std::abs(hops[hops.size() - 1 - i] - kinf));
  }
  const std::size_t es = std::min(edge, sites.size());
  for (std::size_t i = 0; i < es; ++i) {
    worst = std::max(worst, std::abs(sites[i]));
    worst = std::max(worst, std::abs(sites[sites.size() - 1 - i]));
  }
  return worst;
}

Complex branch_sqrt(Complex z) {
  const double mag = std::abs(z);
  if (mag == 0.0) return 0.0;
  if (z.real() < 0.0 && std::abs(z.imag()) <= 1e-12 * mag) return {0.0, std::sqrt(mag)};
  return std::sqrt(z);
}

namespace {

bool canonical(const Complex& k) {
  const double tol = 1e-12 * std::abs(k);
  if (k.real() > tol) return true;
  if (k.real() < -tol) return false;
  return k.imag() > 0.0;
}

}  // namespace

std::vector<int> canonical_gauge_signs(const Lattice& lattice) {
  const auto hops = lattice.hops();
  std::vector<int> signs(hops.size() + 1);
  signs[0] = 1;
  for (std::size_t i = 0; i < hops.size(); ++i) signs[i + 1] = canonical(hops[i]) ? signs[i] : -signs[i];
  return signs;
}

Lattice canonical_gauge(const Lattice& lattice) {
  const auto signs = canonical_gauge_signs(lattice);
  const auto hops = lattice.hops();
  CVector out(hops.begin(), hops.end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= static_cast<double>(signs[i] * signs[i + 1]);
  const auto sites = lattice.sites();
  return Lattice(lattice.offset(), std::move(out), CVector(sites.begin(), sites.end()), lattice.kappa_inf());
}

}  // namespace invislat
