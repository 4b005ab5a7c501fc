// Copyright 2026 The spinwitness authors
// SPDX-License-Identifier: Apache-2.0

#include "spinwitness/coupled_minimizer.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "spinwitness/spin_algebra.hpp"

namespace spinwitness {

namespace {

int sector_size(HalfInt s, HalfInt m) {
  if (m.abs() > s + s) throw std::invalid_argument("|M| exceeds 2s");
  if (((s + s).twice() - m.twice()) % 2 != 0)
    throw std::invalid_argument("M incompatible with integer total spin steps");
  return ((s + s) - m.abs()).twice() / 2 + 1;
}

void validate_amplitudes(const CoupledAmplitudes& amps, HalfInt s) {
  const int n = sector_size(s, amps.m);
  if (static_cast<int>(amps.magnitudes.size()) != n ||
      static_cast<int>(amps.phases.size()) != n)
    throw std::invalid_argument("amplitude vector length does not match the S range");
  double norm = 0;
  for (double a : amps.magnitudes) {
    if (a < 0) throw std::invalid_argument("magnitudes must be non-negative");
    norm += a * a;
  }
  if (std::abs(norm - 1.0) > 1e-9)
    throw std::invalid_argument("amplitudes must be normalized");
}

Eigen::VectorXd seeded_unit(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = normal(rng);
  v.normalize();
  return v;
}

// Signed coefficients -> magnitudes plus 0/pi phases, with the first
// non-negligible coefficient made positive.
CoupledAmplitudes to_amplitudes(HalfInt m, Eigen::VectorXd c) {
  int lead = 0;
  while (lead < c.size() - 1 && std::abs(c[lead]) < 1e-12) ++lead;
  if (c[lead] < 0) c = -c;
  CoupledAmplitudes amps;
  amps.m = m;
  amps.magnitudes.resize(c.size());
  amps.phases.resize(c.size());
  for (int i = 0; i < c.size(); ++i) {
    amps.magnitudes[i] = std::abs(c[i]);
    amps.phases[i] = c[i] < 0 ? M_PI : 0.0;
  }
  return amps;
}

// Two_m values ordered by |M| ascending, positive before negative, so that
// scans resolve exact ties toward the smallest |M|.
std::vector<int> scan_order(HalfInt s) {
  std::vector<int> order;
  const int top = (s + s).twice();
  order.push_back(0);
  for (int t = 2; t <= top; t += 2) {
    order.push_back(t);
    order.push_back(-t);
  }
  return order;
}

// One exact line search along the great circle through x in tangent
// direction u (unit, orthogonal to x), for the quadratic form q plus a
// linear-in-f coupling handled by the caller through q itself.
void great_circle_step(const Eigen::MatrixXd& q, Eigen::VectorXd& x, const Eigen::VectorXd& u) {
  const double qxx = x.dot(q * x);
  const double quu = u.dot(q * u);
  const double qxu = x.dot(q * u);
  const double theta = 0.5 * (std::atan2(qxu, 0.5 * (qxx - quu)) + M_PI);
  x = std::cos(theta) * x + std::sin(theta) * u;
  x.normalize();
}

}  // namespace

Eigen::MatrixXd pair_sz_matrix(HalfInt s, HalfInt m) {
  const int n = sector_size(s, m);
  const CGTable table(s, s);
  const auto ms = site_m_values(s);
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  const HalfInt s_min = m.abs();
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      const HalfInt sa = s_min + HalfInt::from_int(a);
      const HalfInt sb = s_min + HalfInt::from_int(b);
      double sum = 0;
      for (const auto m2 : ms) {
        const HalfInt m3 = m - m2;
        if (m3.abs() > s) continue;
        sum += table.coefficient(m2, m3, sa, m) * table.coefficient(m2, m3, sb, m) *
               m2.to_double();
      }
      w(a, b) = sum;
      w(b, a) = sum;
    }
  return w;
}

Eigen::VectorXd pair_bond_diagonal(HalfInt s, HalfInt m) {
  const int n = sector_size(s, m);
  Eigen::VectorXd g(n);
  const double casimir = s.to_double() * (s.to_double() + 1.0);
  const HalfInt s_min = m.abs();
  for (int a = 0; a < n; ++a) {
    const double sv = (s_min + HalfInt::from_int(a)).to_double();
    g[a] = 0.5 * (sv * (sv + 1.0) - 2.0 * casimir);
  }
  return g;
}

double f_m(const CoupledAmplitudes& amps, HalfInt s) {
  validate_amplitudes(amps, s);
  const auto w = pair_sz_matrix(s, amps.m);
  double sum = 0;
  for (int a = 0; a < w.rows(); ++a)
    for (int b = 0; b < w.cols(); ++b)
      sum += amps.magnitudes[a] * amps.magnitudes[b] *
             std::cos(amps.phases[a] - amps.phases[b]) * w(a, b);
  return sum;
}

double g_m(const CoupledAmplitudes& amps, HalfInt s) {
  validate_amplitudes(amps, s);
  const auto g = pair_bond_diagonal(s, amps.m);
  double sum = 0;
  for (int a = 0; a < g.size(); ++a) sum += amps.magnitudes[a] * amps.magnitudes[a] * g[a];
  return sum;
}

double rayleigh(const Eigen::MatrixXd& q, const Eigen::VectorXd& c) {
  return c.dot(q * c) / c.squaredNorm();
}

Eigen::VectorXd rayleigh_gradient(const Eigen::MatrixXd& q, const Eigen::VectorXd& c) {
  const double n2 = c.squaredNorm();
  return 2.0 / n2 * (q * c - rayleigh(q, c) * c);
}

SphereMinimum minimize_on_sphere(const Eigen::MatrixXd& q, const RunConfig& cfg,
                                 std::uint64_t seed_offset) {
  const int n = static_cast<int>(q.rows());
  SphereMinimum best;
  if (n == 1) {
    best.value = q(0, 0);
    best.argmin = Eigen::VectorXd::Ones(1);
    best.converged = true;
    return best;
  }
  for (int trial = 0; trial < cfg.cg_multistarts; ++trial) {
    Eigen::VectorXd x = seeded_unit(n, cfg.seed + 1000 * seed_offset + trial);
    Eigen::VectorXd grad = rayleigh_gradient(q, x);
    Eigen::VectorXd dir = -grad;
    int it = 0;
    bool converged = false;
    for (; it < cfg.cg_max_iterations; ++it) {
      if (grad.norm() < cfg.cg_grad_tol) {
        converged = true;
        break;
      }
      Eigen::VectorXd u = dir - dir.dot(x) * x;
      if (u.norm() < 1e-14) {
        dir = -grad;
        u = dir - dir.dot(x) * x;
      }
      u.normalize();
      great_circle_step(q, x, u);
      const Eigen::VectorXd grad_new = rayleigh_gradient(q, x);
      const double beta =
          std::max(0.0, grad_new.dot(grad_new - grad) / std::max(grad.squaredNorm(), 1e-300));
      dir = -grad_new + beta * (dir - dir.dot(x) * x);
      grad = grad_new;
    }
    const double value = rayleigh(q, x);
    if (!best.argmin.size() || value < best.value - 1e-14 ||
        (converged && !best.converged && value < best.value + 1e-12)) {
      best.value = value;
      best.argmin = x;
      best.iterations = it;
      best.converged = converged;
    }
  }
  return best;
}

TripartiteMinimum minimize_tripartite(HalfInt s, const RunConfig& cfg) {
  cfg.validate();
  if (s.twice() < 0) throw std::invalid_argument("negative spin");
  const double sv = s.to_double();
  TripartiteMinimum best;
  bool first = true;
  std::uint64_t offset = 0;
  for (int two_m : scan_order(s)) {
    const HalfInt m = HalfInt::from_twice(two_m);
    const Eigen::MatrixXd q =
        -sv * pair_sz_matrix(s, m) + Eigen::MatrixXd(pair_bond_diagonal(s, m).asDiagonal());
    const auto run = minimize_on_sphere(q, cfg, offset++);
    if (first || run.value < best.energy - 1e-12) {
      best.energy = run.value;
      best.winning_m = m;
      best.amplitudes = to_amplitudes(m, run.argmin);
      best.certified = run.converged;
      first = false;
    }
  }
  best.e12 = -sv * f_m(best.amplitudes, s);
  best.e23 = g_m(best.amplitudes, s);
  return best;
}

double closed_form_tripartite(HalfInt s) {
  if (s == HalfInt::from_twice(1)) return -(1.0 + std::sqrt(5.0)) / 4.0;
  if (s == HalfInt::from_int(1)) {
    const double phi = std::acos(1.0 / (10.0 * std::sqrt(10.0)));
    return -2.0 / 3.0 *
           (1.0 + std::sqrt(2.5) * (std::cos(phi / 3.0) + std::sqrt(3.0) * std::sin(phi / 3.0)));
  }
  throw std::invalid_argument("closed form available for s = 1/2 and s = 1 only");
}

std::array<double, 2> closed_form_tripartite_amplitudes(HalfInt s) {
  if (s != HalfInt::from_twice(1))
    throw std::invalid_argument("closed-form amplitudes available for s = 1/2 only");
  const double r = 1.0 / std::sqrt(5.0);
  return {std::sqrt(0.5 + r), std::sqrt(0.5 - r)};
}

QuadBilinearMinimum minimize_quad_22(HalfInt s, const RunConfig& cfg) {
  cfg.validate();
  if (s.twice() < 0) throw std::invalid_argument("negative spin");

  struct SectorData {
    Eigen::MatrixXd w;
    Eigen::MatrixXd g;
  };
  std::map<int, SectorData> data;
  for (int two_m : scan_order(s))
    data[two_m] = {pair_sz_matrix(s, HalfInt::from_twice(two_m)),
                   Eigen::MatrixXd(pair_bond_diagonal(s, HalfInt::from_twice(two_m)).asDiagonal())};

  auto objective = [](const SectorData& A, const SectorData& B, const Eigen::VectorXd& c,
                      const Eigen::VectorXd& d) {
    return c.dot(A.g * c) + c.dot(A.w * c) * d.dot(B.w * d) + d.dot(B.g * d);
  };

  QuadBilinearMinimum best;
  bool first = true;
  std::uint64_t offset = 0;
  for (int two_ma : scan_order(s)) {
    for (int two_mb : scan_order(s)) {
      const auto& A = data[two_ma];
      const auto& B = data[two_mb];
      const int na = static_cast<int>(A.g.rows());
      const int nb = static_cast<int>(B.g.rows());
      for (int trial = 0; trial < cfg.cg_multistarts; ++trial) {
        Eigen::VectorXd c = seeded_unit(na, cfg.seed + 7919 * offset + 2 * trial);
        Eigen::VectorXd d = seeded_unit(nb, cfg.seed + 7919 * offset + 2 * trial + 1);
        // Alternating eigensolves: with one block frozen the other is a
        // plain sphere-constrained quadratic form.
        double value = objective(A, B, c, d);
        for (int it = 0; it < 500; ++it) {
          const double fc = c.dot(A.w * c);
          Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> esd(B.g + fc * B.w);
          d = esd.eigenvectors().col(0);
          const double fd = d.dot(B.w * d);
          Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> esc(A.g + fd * A.w);
          c = esc.eigenvectors().col(0);
          const double next = objective(A, B, c, d);
          if (std::abs(next - value) < 1e-15 * std::max(1.0, std::abs(next))) {
            value = next;
            break;
          }
          value = next;
        }
        // Joint polish: conjugate-gradient steps on the product of spheres
        // with exact per-block line searches.
        bool converged = false;
        int it = 0;
        for (; it < cfg.cg_max_iterations; ++it) {
          const double fd = d.dot(B.w * d);
          const double fc = c.dot(A.w * c);
          Eigen::VectorXd gc = 2.0 * ((A.g + fd * A.w) * c);
          Eigen::VectorXd gd = 2.0 * ((B.g + fc * B.w) * d);
          gc -= gc.dot(c) * c;
          gd -= gd.dot(d) * d;
          if (std::sqrt(gc.squaredNorm() + gd.squaredNorm()) < cfg.cg_grad_tol) {
            converged = true;
            break;
          }
          if (gc.norm() > 1e-15) {
            Eigen::VectorXd u = -gc;
            u -= u.dot(c) * c;
            u.normalize();
            great_circle_step(A.g + fd * A.w, c, u);
          }
          const double fc2 = c.dot(A.w * c);
          if (gd.norm() > 1e-15) {
            Eigen::VectorXd u = -gd;
            u -= u.dot(d) * d;
            u.normalize();
            great_circle_step(B.g + fc2 * B.w, d, u);
          }
        }
        value = objective(A, B, c, d);
        if (first || value < best.energy - 1e-12) {
          first = false;
          best.energy = value;
          best.m_a = HalfInt::from_twice(two_ma);
          best.m_b = HalfInt::from_twice(two_mb);
          best.certified = converged;
          // Canonical form at M = M' = 0: block A carries the alternating
          // (f >= 0) pattern; an alternation flip of both blocks leaves the
          // energy invariant there because the sz matrix is purely
          // off-diagonal.
          if (two_ma == 0 && two_mb == 0 && c.dot(A.w * c) < 0) {
            for (int i = 1; i < na; i += 2) c[i] = -c[i];
            for (int i = 1; i < nb; i += 2) d[i] = -d[i];
          }
          best.a = to_amplitudes(best.m_a, c);
          best.b = to_amplitudes(best.m_b, d);
        }
      }
      ++offset;
    }
  }
  return best;
}

}  // namespace spinwitness
