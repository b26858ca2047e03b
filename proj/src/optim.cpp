#include "nuqsim/optim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "nuqsim/errors.hpp"
#include "nuqsim/rng.hpp"

namespace nuqsim {

namespace {

using Real4 = std::array<double, 16>;

Real4 kron_ry(double a, double b) {
  const double ca = std::cos(a / 2), sa = std::sin(a / 2);
  const double cb = std::cos(b / 2), sb = std::sin(b / 2);
  const double ra[2][2] = {{ca, -sa}, {sa, ca}};
  const double rb[2][2] = {{cb, -sb}, {sb, cb}};
  Real4 k{};
  for (int r1 = 0; r1 < 2; ++r1)
    for (int c1 = 0; c1 < 2; ++c1)
      for (int r2 = 0; r2 < 2; ++r2)
        for (int c2 = 0; c2 < 2; ++c2) k[(2 * r1 + r2) * 4 + 2 * c1 + c2] = ra[r1][c1] * rb[r2][c2];
  return k;
}

Real4 mul(const Real4& x, const Real4& y) {
  Real4 out{};
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) {
      const double v = x[i * 4 + k];
      for (int j = 0; j < 4; ++j) out[i * 4 + j] += v * y[k * 4 + j];
    }
  return out;
}

// CX with control q_A (MSB) swaps basis rows |10> and |11>.
void cx_rows(Real4& m) {
  for (int j = 0; j < 4; ++j) std::swap(m[2 * 4 + j], m[3 * 4 + j]);
}

Real4 ansatz_real(const Params6& x) {
  Real4 u = kron_ry(x[0], x[3]);
  cx_rows(u);
  u = mul(kron_ry(x[1], x[4]), u);
  cx_rows(u);
  return mul(kron_ry(x[2], x[5]), u);
}

Complex overlap(const Mat4& target, const Params6& x) {
  const Real4 r = ansatz_real(x);
  Complex t{};
  for (std::size_t i = 0; i < 16; ++i) t += std::conj(target.a[i]) * r[i];
  return t;
}

Params6 clamp(Params6 x, double lo, double hi) {
  for (auto& v : x) v = std::clamp(v, lo, hi);
  return x;
}

double dot(const Params6& a, const Params6& b) { return std::inner_product(a.begin(), a.end(), b.begin(), 0.0); }

// Components pinned at a bound with the gradient pushing outward.
std::array<bool, 6> active_set(const Params6& x, const Params6& g, double lo, double hi) {
  std::array<bool, 6> act{};
  for (std::size_t i = 0; i < 6; ++i) act[i] = (x[i] <= lo && g[i] > 0.0) || (x[i] >= hi && g[i] < 0.0);
  return act;
}

constexpr double kFloorInfidelity = 1e-15;

LocalResult bfgs(const FidelityProblem& pr, Params6 x) {
  using Mat6 = std::array<std::array<double, 6>, 6>;
  const auto identity = [] {
    Mat6 m{};
    for (std::size_t i = 0; i < 6; ++i) m[i][i] = 1.0;
    return m;
  };
  Mat6 h = identity();
  bool h_is_identity = true;

  Params6 g;
  double f = infidelity(pr.target, x, &g);
  LocalResult res;
  for (res.iterations = 0; res.iterations < pr.max_iterations; ++res.iterations) {
    if (f < kFloorInfidelity) break;
    const auto act = active_set(x, g, pr.lower, pr.upper);
    Params6 pg = g;
    for (std::size_t i = 0; i < 6; ++i)
      if (act[i]) pg[i] = 0.0;
    if (std::sqrt(dot(pg, pg)) < 1e-12) break;

    Params6 d{};
    for (std::size_t i = 0; i < 6; ++i) {
      if (act[i]) continue;
      for (std::size_t j = 0; j < 6; ++j)
        if (!act[j]) d[i] -= h[i][j] * g[j];
    }
    if (dot(d, g) >= 0.0) {
      h = identity();
      h_is_identity = true;
      for (std::size_t i = 0; i < 6; ++i) d[i] = -pg[i];
    }

    double t = 1.0;
    Params6 xn{};
    Params6 gn{};
    double fn = f;
    bool accepted = false;
    for (int ls = 0; ls < 50; ++ls, t *= 0.5) {
      for (std::size_t i = 0; i < 6; ++i) xn[i] = x[i] + t * d[i];
      xn = clamp(xn, pr.lower, pr.upper);
      Params6 step;
      for (std::size_t i = 0; i < 6; ++i) step[i] = xn[i] - x[i];
      fn = infidelity(pr.target, xn, &gn);
      if (fn <= f + 1e-4 * dot(g, step)) {
        accepted = dot(step, step) > 0.0;
        break;
      }
    }
    if (!accepted || fn >= f) {
      if (h_is_identity) break;
      h = identity();
      h_is_identity = true;
      continue;
    }

    Params6 s, y;
    for (std::size_t i = 0; i < 6; ++i) {
      s[i] = xn[i] - x[i];
      y[i] = gn[i] - g[i];
    }
    const double sy = dot(s, y);
    if (sy > 1e-14 * std::sqrt(dot(s, s) * dot(y, y))) {
      // H <- (I - r s y^T) H (I - r y s^T) + r s s^T
      const double r = 1.0 / sy;
      Params6 hy{};
      for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j) hy[i] += h[i][j] * y[j];
      const double yhy = dot(y, hy);
      for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j)
          h[i][j] += (1.0 + r * yhy) * r * s[i] * s[j] - r * (hy[i] * s[j] + s[i] * hy[j]);
      h_is_identity = false;
    }
    x = xn;
    g = gn;
    f = fn;
  }
  res.x = x;
  res.infidelity = f;
  return res;
}

LocalResult pattern_search(const FidelityProblem& pr, Params6 x) {
  double f = infidelity(pr.target, x);
  double step = 0.5;
  LocalResult res;
  const int max_sweeps = pr.max_iterations * 40;
  for (res.iterations = 0; res.iterations < max_sweeps && step > 1e-11 && f >= kFloorInfidelity; ++res.iterations) {
    bool improved = false;
    for (std::size_t i = 0; i < 6; ++i) {
      for (double sign : {1.0, -1.0}) {
        Params6 trial = x;
        trial[i] = std::clamp(x[i] + sign * step, pr.lower, pr.upper);
        if (trial[i] == x[i]) continue;
        const double ft = infidelity(pr.target, trial);
        if (ft < f) {
          x = trial;
          f = ft;
          improved = true;
          break;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  res.x = x;
  res.infidelity = f;
  return res;
}

Params6 restart_start(const FidelityProblem& pr, std::uint64_t seed, int restart) {
  Pcg32 rng = make_stream(seed, static_cast<std::uint64_t>(restart), SeedDomain::kOptimizer);
  Params6 x;
  for (auto& v : x) v = rng.uniform(pr.init_lo, pr.init_hi);
  return x;
}

}  // namespace

void FidelityProblem::validate() const {
  if (max_abs_diff(target * adjoint(target), Mat4::identity()) > 1e-10)
    throw DomainError("fidelity target is not unitary within 1e-10");
  if (restarts < 1) throw DomainError("restarts must be at least 1");
  if (!(lower < upper)) throw DomainError("empty parameter box");
  if (!(init_lo < init_hi)) throw DomainError("empty initial range");
  if (!(tol_infidelity >= 0.0)) throw DomainError("tolerance must be non-negative");
  if (max_iterations < 1) throw DomainError("max_iterations must be at least 1");
}

Mat4 ansatz_unitary(const SynthesisParams& sp) {
  const Real4 r = ansatz_real(sp.flat());
  Mat4 m;
  for (std::size_t i = 0; i < 16; ++i) m.a[i] = r[i];
  return m;
}

double fidelity(const Mat4& target, const SynthesisParams& sp) {
  return std::norm(overlap(target, sp.flat())) / 16.0;
}

double infidelity(const Mat4& target, const Params6& x, Params6* gradient) {
  const Complex t = overlap(target, x);
  if (gradient) {
    for (std::size_t k = 0; k < 6; ++k) {
      Params6 shifted = x;
      shifted[k] += M_PI;
      const Complex dt = 0.5 * overlap(target, shifted);
      // d(1 - |t|^2/16) = -2 Re(conj(t) dt) / 16
      (*gradient)[k] = -(std::conj(t) * dt).real() / 8.0;
    }
  }
  return 1.0 - std::norm(t) / 16.0;
}

LocalResult local_minimize(const FidelityProblem& problem, const Params6& start) {
  const Params6 x0 = clamp(start, problem.lower, problem.upper);
  return problem.method == LocalMethod::kQuasiNewton ? bfgs(problem, x0) : pattern_search(problem, x0);
}

OptimResult optimize(const FidelityProblem& problem, std::uint64_t seed, Execution exec) {
  problem.validate();
  const int batch = exec == Execution::kParallel ? std::max(1, parallel_threads()) : 1;

  OptimResult best;
  std::vector<LocalResult> runs(static_cast<std::size_t>(batch));
  for (int first = 0; first < problem.restarts; first += batch) {
    const int n = std::min(batch, problem.restarts - first);
#pragma omp parallel for schedule(dynamic) if (exec == Execution::kParallel && n > 1)
    for (int i = 0; i < n; ++i) runs[static_cast<std::size_t>(i)] = local_minimize(problem, restart_start(problem, seed, first + i));

    for (int i = 0; i < n; ++i) {
      const LocalResult& r = runs[static_cast<std::size_t>(i)];
      best.restarts_used = first + i + 1;
      if (r.infidelity < best.infidelity || best.restarts_used == 1) {
        best.infidelity = r.infidelity;
        best.params = SynthesisParams::from_flat(r.x);
      }
      if (best.infidelity <= problem.tol_infidelity) {
        best.converged = true;
        best.infidelity = std::max(best.infidelity, 0.0);
        return best;
      }
    }
  }
  best.infidelity = std::max(best.infidelity, 0.0);
  return best;
}

}  // namespace nuqsim
