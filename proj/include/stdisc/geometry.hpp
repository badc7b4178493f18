#pragma once

// Straight discs of the unit ball B^2 through an exterior point, their lifts
// to the projectivized cotangent bundle, and the lift manifolds of the
// families of lines through p and parallel to the coordinate axes.

#include <array>
#include <complex>
#include <optional>

#include "stdisc/circle.hpp"

namespace stdisc {

struct Point2 {
  cplx z1{};
  cplx z2{};

  friend Point2 operator+(Point2 a, Point2 b) { return {a.z1 + b.z1, a.z2 + b.z2}; }
  friend Point2 operator-(Point2 a, Point2 b) { return {a.z1 - b.z1, a.z2 - b.z2}; }
  friend Point2 operator*(cplx s, Point2 a) { return {s * a.z1, s * a.z2}; }
  friend bool operator==(const Point2&, const Point2&) = default;
};

/// Hermitian pairing a . conj(b) = a1 conj(b1) + a2 conj(b2).
inline cplx hdot(Point2 a, Point2 b) { return a.z1 * std::conj(b.z1) + a.z2 * std::conj(b.z2); }
inline double norm2(Point2 a) { return std::norm(a.z1) + std::norm(a.z2); }
inline double norm(Point2 a) { return std::sqrt(norm2(a)); }
inline Point2 conj(Point2 a) { return {std::conj(a.z1), std::conj(a.z2)}; }
inline bool finite(Point2 a) {
  return std::isfinite(a.z1.real()) && std::isfinite(a.z1.imag()) && std::isfinite(a.z2.real()) &&
         std::isfinite(a.z2.imag());
}

/// A point strictly outside the closed unit ball.
class ExteriorPoint {
 public:
  explicit ExteriorPoint(Point2 p);
  const Point2& point() const noexcept { return p_; }
  /// |p1| > 1 and |p2| > 1, the configuration the attached-disc family needs.
  bool both_coordinates_exterior() const noexcept {
    return std::abs(p_.z1) > 1.0 && std::abs(p_.z2) > 1.0;
  }

 private:
  Point2 p_;
};

/// A point [w1 : w2] of the projective line, stored with its larger-modulus
/// component scaled to modulus 1 (the phase is kept).
class ProjectiveCovector {
 public:
  ProjectiveCovector(cplx w1, cplx w2);
  explicit ProjectiveCovector(Point2 w) : ProjectiveCovector(w.z1, w.z2) {}

  cplx w1() const noexcept { return w_.z1; }
  cplx w2() const noexcept { return w_.z2; }
  Point2 vector() const noexcept { return w_; }

 private:
  Point2 w_;
};

/// |a1 b2 - a2 b1| / (|a| |b|); zero iff the classes coincide.
double projective_distance(Point2 a, Point2 b);
double projective_distance(const ProjectiveCovector& a, const ProjectiveCovector& b);

/// A_z(tau) = z + (R tau + C)(p - z): the slice of B^2 by the line through p and z.
struct StationaryDisc {
  ExteriorPoint p;
  Point2 z;
  double R;
  cplx C;

  /// Parameter of the anchor: A_z(center_tau()) = z.
  cplx center_tau() const { return -C / R; }
};

StationaryDisc disc_coefficients(const ExteriorPoint& p, Point2 z);

/// Residuals of the two quadratic relations satisfied by R and C.
struct RelationResiduals {
  double rel1;
  double rel2;
};
RelationResiduals relation_residuals(const StationaryDisc& d);

Point2 disc_eval(const StationaryDisc& d, cplx tau);

/// tau times the meromorphic lift: conj(z) tau + (R + conj(C) tau) conj(p - z).
/// Holomorphic in tau; projectively equal to the lift wherever tau != 0.
Point2 lift_numerator(const StationaryDisc& d, cplx tau);

/// Lift of the disc at a boundary parameter. Requires |tau| = 1 to 1e-12.
ProjectiveCovector disc_lift_boundary(const StationaryDisc& d, cplx tau);

/// Lift at an interior parameter, evaluated through lift_numerator.
ProjectiveCovector disc_lift_projective(const StationaryDisc& d, cplx tau);

/// Unnormalized lift vector of M_p over z: conj(z)(z.conj(p) - 1) + conj(p)(1 - |z|^2).
Point2 mp_lift_vector(const ExteriorPoint& p, Point2 z);
ProjectiveCovector mp_lift_at(const ExteriorPoint& p, Point2 z);

/// |z . conj(p) - 1|; zero exactly on the CR-singular locus of M_p.
double mp_singular_residual(const ExteriorPoint& p, Point2 z);

enum class Axis {
  Z1,  ///< lines parallel to the z1-axis, point at infinity (1,0)
  Z2,  ///< lines parallel to the z2-axis, point at infinity (0,1)
};

/// Lift vector of the coordinate-direction manifold over q:
/// Z1: [1 - |q2|^2 : q1 conj(q2)],  Z2: [q2 conj(q1) : 1 - |q1|^2].
Point2 minf_lift_vector(Point2 q, Axis which);

/// Projective distance between the chart point [zeta : 1] and the manifold's
/// covector over q. Requires |q| <= 1.
double minf_residual(Point2 q, cplx zeta, Axis which);

/// zeta = w1 / w2.
cplx zeta_chart(const ProjectiveCovector& w);

struct QPoint {
  Point2 z;                  ///< t p
  ProjectiveCovector lift;   ///< the class [conj(p)]
  double printed_scalar;     ///< t + 1 - 2 t^2 |p|^2
  double substituted_scalar; ///< 1 - t, from substituting z = t p into the M_p lift
};

/// The point of M_p over t p, for t in [1/|p|^2, 1/|p|).
QPoint q_point(const ExteriorPoint& p, double t);

/// The disc A o phi with phi(tau) = alpha (tau - a) / (1 - tau conj(a)), sampled
/// on the grid, together with the negative-mode energy of the rescaled lift
/// tau |tau - a|^2 conj(A(phi(tau))).
struct MobiusDisc {
  ComplexSamples z1;
  ComplexSamples z2;
  double stationarity_residual;
};
MobiusDisc mobius_compose(const StationaryDisc& d, cplx a, cplx alpha, const CircleGrid& grid);

/// Negative-mode energy of tau conj(A(tau)) on the grid; zero for a stationary disc.
double stationarity_residual(const StationaryDisc& d, const CircleGrid& grid);

}  // namespace stdisc
