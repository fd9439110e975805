#pragma once

// Classical kicked top on the unit sphere:
//
//   x' =  sin(a x) y + cos(a x) z
//   y' =  cos(a x) y - sin(a x) z
//   z' = -x
//
// In the frame of this map, z = +1 is the spin-coherent state with every
// qubit in |1> and (x, y) = (<sigma_x>, <sigma_y>). Equivalently z_classical
// = -<sigma_z>: the mean-field limit of the quantum step lands on exactly this
// map in that frame.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "qhd/types.hpp"

namespace qhd {

template <typename Real = double>
using ClassicalSpin = Vector3<Real>;

template <typename Real>
ClassicalSpin<Real> classical_step(const ClassicalSpin<Real>& r, Real alpha) {
  const Real s = std::sin(alpha * r.x());
  const Real c = std::cos(alpha * r.x());
  ClassicalSpin<Real> next(s * r.y() + c * r.z(), c * r.y() - s * r.z(), -r.x());
  const Real norm = next.norm();
  if (std::abs(norm - Real(1)) > Real(1e-12)) next /= norm;
  return next;
}

/// r_0, ..., r_t.
template <typename Real>
std::vector<ClassicalSpin<Real>> classical_orbit(const ClassicalSpin<Real>& r0, Real alpha, int t) {
  if (t < 0) throw std::invalid_argument("classical_orbit: step count must be >= 0");
  std::vector<ClassicalSpin<Real>> out;
  out.reserve(static_cast<std::size_t>(t) + 1);
  out.push_back(r0);
  for (int s = 0; s < t; ++s) out.push_back(classical_step(out.back(), alpha));
  return out;
}

/// arg(x + i y) in (-pi, pi]; 0 at the poles.
template <typename Real>
Real azimuth(const ClassicalSpin<Real>& r) {
  if (r.x() == Real(0) && r.y() == Real(0)) return Real(0);
  const Real phi = std::atan2(r.y(), r.x());
  return phi <= -pi_v<Real> ? pi_v<Real> : phi;
}

template <typename Real = double>
struct PhasePoint {
  Real phi = 0;
  Real z = 0;
};

/// The orbit in (phi, z) coordinates.
template <typename Real>
std::vector<PhasePoint<Real>> trajectory(const ClassicalSpin<Real>& r0, Real alpha, int t) {
  std::vector<PhasePoint<Real>> out;
  for (const auto& r : classical_orbit(r0, alpha, t)) out.push_back({azimuth(r), r.z()});
  return out;
}

/// Direction (cos phi sin theta, sin phi sin theta, cos theta).
template <typename Real>
ClassicalSpin<Real> quantum_to_classical(Real theta, Real phi) {
  return {std::cos(phi) * std::sin(theta), std::sin(phi) * std::sin(theta), std::cos(theta)};
}

/// Some unit vector orthogonal to r.
template <typename Real>
Vector3<Real> orthogonal_direction(const Vector3<Real>& r) {
  const Vector3<Real> helper = std::abs(r.x()) < Real(0.9) ? Vector3<Real>::UnitX() : Vector3<Real>::UnitY();
  return r.cross(helper).normalized();
}

template <typename Real>
Real angle_between(const Vector3<Real>& a, const Vector3<Real>& b) {
  return std::atan2(a.cross(b).norm(), a.dot(b));
}

template <typename Real = double>
struct DivergenceProbe {
  bool chaotic = false;
  int crossing_step = -1;  // first step whose separation exceeded the threshold
  Real final_separation = 0;
};

/// Two-point divergence test: iterate r0 and a copy displaced by
/// `displacement` and call the orbit chaotic once their angular separation
/// exceeds `threshold` within `steps` steps.
template <typename Real>
DivergenceProbe<Real> divergence_probe(const ClassicalSpin<Real>& r0, Real alpha, Real displacement = Real(1e-8),
                                       Real threshold = Real(1e-2), int steps = 200) {
  ClassicalSpin<Real> a = r0.normalized();
  ClassicalSpin<Real> b = (a + displacement * orthogonal_direction(a)).normalized();
  DivergenceProbe<Real> probe;
  for (int t = 1; t <= steps; ++t) {
    a = classical_step(a, alpha);
    b = classical_step(b, alpha);
    probe.final_separation = angle_between(a, b);
    if (probe.final_separation > threshold) {
      probe.chaotic = true;
      probe.crossing_step = t;
      return probe;
    }
  }
  return probe;
}

/// Finite-time Lyapunov exponent from a renormalized two-point separation.
template <typename Real>
Real finite_time_lyapunov(const ClassicalSpin<Real>& r0, Real alpha, int steps = 200,
                          Real displacement = Real(1e-8)) {
  ClassicalSpin<Real> a = r0.normalized();
  ClassicalSpin<Real> b = (a + displacement * orthogonal_direction(a)).normalized();
  Real log_growth = 0;
  for (int t = 0; t < steps; ++t) {
    a = classical_step(a, alpha);
    b = classical_step(b, alpha);
    Vector3<Real> d = b - a;
    d -= a * a.dot(d);
    const Real sep = d.norm();
    log_growth += std::log(sep / displacement);
    b = (a + d * (displacement / sep)).normalized();
  }
  return log_growth / Real(steps);
}

}  // namespace qhd
