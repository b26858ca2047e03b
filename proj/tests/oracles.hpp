#pragma once

// Test-only reference computations. These avoid the library's gate tables and
// physics helpers so agreement is a real cross-check.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace oracle {

using C = std::complex<double>;
using M2 = std::array<std::array<C, 2>, 2>;
using M4 = std::array<std::array<C, 4>, 4>;

inline M2 eye2() { return {{{1.0, 0.0}, {0.0, 1.0}}}; }

inline M2 mul(const M2& a, const M2& b) {
  M2 r{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) r[i][j] += a[i][k] * b[k][j];
  return r;
}

inline M4 mul(const M4& a, const M4& b) {
  M4 r{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) r[i][j] += a[i][k] * b[k][j];
  return r;
}

// exp(-i t sigma / 2) = cos(t/2) I - i sin(t/2) sigma
inline M2 pauli_rotation(char axis, double t) {
  const C c = std::cos(t / 2), s = std::sin(t / 2), i{0.0, 1.0};
  M2 sigma{};
  if (axis == 'x') sigma = {{{0.0, 1.0}, {1.0, 0.0}}};
  if (axis == 'y') sigma = {{{0.0, -i}, {i, 0.0}}};
  if (axis == 'z') sigma = {{{1.0, 0.0}, {0.0, -1.0}}};
  M2 r{};
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) r[a][b] = (a == b ? c : C{}) - i * s * sigma[a][b];
  return r;
}

/// Distance after removing the best global phase.
template <typename M>
double phase_dist(const M& a, const M& b) {
  C inner{};
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) inner += std::conj(b[i][j]) * a[i][j];
  const C ph = std::abs(inner) > 0 ? inner / std::abs(inner) : C{1.0};
  double d = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) d = std::max(d, std::abs(a[i][j] - ph * b[i][j]));
  return d;
}

/// Reduced density matrix of qubit 1 (least significant) of a 4-amplitude
/// state, by explicit sum over the qubit-0 index: rho_B[b][b'] = sum_a psi[a b] conj(psi[a b']).
inline std::array<std::array<C, 2>, 2> reduced_density_b(const std::vector<C>& psi) {
  std::array<std::array<C, 2>, 2> rho{};
  for (int b = 0; b < 2; ++b)
    for (int bp = 0; bp < 2; ++bp)
      for (int a = 0; a < 2; ++a) rho[b][bp] += psi[2 * a + b] * std::conj(psi[2 * a + bp]);
  return rho;
}

/// Constant-density evolution written as a single axis rotation in the
/// flavor basis: cos(phi/2) I - i sin(phi/2) (n . sigma) with
/// n = (sin 2theta_m, 0, cos 2theta_m), the mass-basis z axis rotated by
/// 2theta_m about y. No mixing-matrix product is formed.
inline M2 layer_evolution(double theta_m, double phi) {
  const C c = std::cos(phi / 2), s = std::sin(phi / 2), i{0.0, 1.0};
  const double nz = std::cos(2 * theta_m), nx = std::sin(2 * theta_m);
  M2 r{};
  r[0][0] = c - i * s * nz;
  r[1][1] = c + i * s * nz;
  r[0][1] = -i * s * nx;
  r[1][0] = -i * s * nx;
  return r;
}

/// Hand unit conversion for the matter potential, from N_A and hbar*c in eV cm.
/// sqrt(2) G_F N_e in eV with N_e = Ye rho N_A / cm^3, then A = 2 E V.
inline double matter_potential_ev2(double rho, double ye, double energy_gev) {
  const double gf_ev = 1.1663787e-5 * 1e-18;    // eV^-2
  const double na = 6.02214076e23;              // nucleons per gram (1 / amu)
  const double hbarc_ev_cm = 1.973269804e-5;    // eV cm
  const double ne_ev3 = ye * rho * na * std::pow(hbarc_ev_cm, 3);
  const double v_ev = std::sqrt(2.0) * gf_ev * ne_ev3;
  return 2.0 * energy_gev * 1e9 * v_ev;
}

/// phi = dm2 L / (2E) with L in km converted through hbar*c in eV m.
inline double phase_rad(double dm2_ev2, double length_km, double energy_gev) {
  const double hbarc_ev_m = 1.973269804e-7;
  return dm2_ev2 * (length_km * 1e3 / hbarc_ev_m) / (2.0 * energy_gev * 1e9);
}

/// Exact Binomial(n, p) probability that |k - np| > halfwidth.
inline double binomial_two_sided_tail(int n, double p, double halfwidth) {
  double tail = 0.0;
  const double mean = n * p;
  for (int k = 0; k <= n; ++k) {
    if (std::abs(k - mean) <= halfwidth) continue;
    tail += std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) + k * std::log(p) +
                     (n - k) * std::log1p(-p));
  }
  return tail;
}

}  // namespace oracle
