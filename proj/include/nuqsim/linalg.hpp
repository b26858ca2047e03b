#pragma once

// Dense fixed-size complex matrices for 1- and 2-qubit work.

#include <algorithm>
#include <array>
#include <complex>
#include <cstddef>

namespace nuqsim {

using Complex = std::complex<double>;

template <std::size_t N>
struct Matrix {
  std::array<Complex, N * N> a{};

  static constexpr std::size_t dim = N;

  Complex& operator()(std::size_t r, std::size_t c) { return a[r * N + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return a[r * N + c]; }

  static Matrix identity() {
    Matrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
    return m;
  }
};

using Mat2 = Matrix<2>;
using Mat4 = Matrix<4>;

template <std::size_t N>
Matrix<N> operator*(const Matrix<N>& x, const Matrix<N>& y) {
  Matrix<N> out;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t k = 0; k < N; ++k) {
      const Complex xik = x(i, k);
      for (std::size_t j = 0; j < N; ++j) out(i, j) += xik * y(k, j);
    }
  return out;
}

template <std::size_t N>
Matrix<N> operator*(Complex s, Matrix<N> m) {
  for (auto& v : m.a) v *= s;
  return m;
}

template <std::size_t N>
Matrix<N> operator+(Matrix<N> x, const Matrix<N>& y) {
  for (std::size_t i = 0; i < N * N; ++i) x.a[i] += y.a[i];
  return x;
}

template <std::size_t N>
Matrix<N> operator-(Matrix<N> x, const Matrix<N>& y) {
  for (std::size_t i = 0; i < N * N; ++i) x.a[i] -= y.a[i];
  return x;
}

template <std::size_t N>
Matrix<N> adjoint(const Matrix<N>& m) {
  Matrix<N> out;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) out(i, j) = std::conj(m(j, i));
  return out;
}

template <std::size_t N>
Complex trace(const Matrix<N>& m) {
  Complex t{};
  for (std::size_t i = 0; i < N; ++i) t += m(i, i);
  return t;
}

/// Largest absolute entry of the difference.
template <std::size_t N>
double max_abs_diff(const Matrix<N>& x, const Matrix<N>& y) {
  double d = 0.0;
  for (std::size_t i = 0; i < N * N; ++i) d = std::max(d, std::abs(x.a[i] - y.a[i]));
  return d;
}

/// Distance between two matrices after removing the relative global phase.
/// Uses the phase of the Frobenius inner product <x, y> to align y onto x.
template <std::size_t N>
double phase_aligned_diff(const Matrix<N>& x, const Matrix<N>& y) {
  Complex inner{};
  for (std::size_t i = 0; i < N * N; ++i) inner += std::conj(y.a[i]) * x.a[i];
  const double mag = std::abs(inner);
  const Complex phase = mag > 0.0 ? inner / mag : Complex{1.0, 0.0};
  double d = 0.0;
  for (std::size_t i = 0; i < N * N; ++i) d = std::max(d, std::abs(x.a[i] - phase * y.a[i]));
  return d;
}

/// Kronecker product; `hi` acts on the most-significant qubit.
inline Mat4 kron(const Mat2& hi, const Mat2& lo) {
  Mat4 out;
  for (std::size_t r1 = 0; r1 < 2; ++r1)
    for (std::size_t c1 = 0; c1 < 2; ++c1)
      for (std::size_t r2 = 0; r2 < 2; ++r2)
        for (std::size_t c2 = 0; c2 < 2; ++c2) out(2 * r1 + r2, 2 * c1 + c2) = hi(r1, c1) * lo(r2, c2);
  return out;
}

}  // namespace nuqsim
