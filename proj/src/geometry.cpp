#include "stdisc/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace stdisc {

namespace {

constexpr double kZeroVector = 1e-300;

}  // namespace

ExteriorPoint::ExteriorPoint(Point2 p) : p_(p) {
  if (!finite(p)) throw Error(ErrorKind::InvalidArgument, "p has non-finite components");
  if (!(norm2(p) > 1.0)) throw Error(ErrorKind::InvalidArgument, "p inside closed ball");
}

ProjectiveCovector::ProjectiveCovector(cplx w1, cplx w2) {
  const double m = std::max(std::abs(w1), std::abs(w2));
  if (!(m > kZeroVector) || !std::isfinite(m))
    throw Error(ErrorKind::InvalidArgument, "projective covector must be finite and nonzero");
  w_ = {w1 / m, w2 / m};
}

double projective_distance(Point2 a, Point2 b) {
  const double den = norm(a) * norm(b);
  if (!(den > 0.0)) throw Error(ErrorKind::InvalidArgument, "projective distance of a zero vector");
  return std::abs(a.z1 * b.z2 - a.z2 * b.z1) / den;
}

double projective_distance(const ProjectiveCovector& a, const ProjectiveCovector& b) {
  return projective_distance(a.vector(), b.vector());
}

StationaryDisc disc_coefficients(const ExteriorPoint& ep, Point2 z) {
  if (!finite(z) || !(norm2(z) < 1.0))
    throw Error(ErrorKind::AnchorNotInterior, "disc anchor z must lie in the open unit ball");
  const Point2 p = ep.point();
  const Point2 v = p - z;
  const double v2 = norm2(v);
  const cplx pz = hdot(p, z);
  const double z2 = norm2(z);
  const double p2 = norm2(p);
  const double num = p2 + z2 + std::norm(pz) - z2 * p2 - 2.0 * pz.real();
  const double R = std::sqrt(num / (v2 * v2));
  const cplx C = -hdot(z, v) / v2;
  return {ep, z, R, C};
}

RelationResiduals relation_residuals(const StationaryDisc& d) {
  const Point2 p = d.p.point();
  const Point2 v = p - d.z;
  const double v2 = norm2(v);
  const double z2 = norm2(d.z);
  const double R2 = d.R * d.R;
  const double rhs1 = -(z2 - 1.0) / v2 + std::norm(hdot(p, d.z) - z2) / (v2 * v2);
  const double rhs2 = (z2 - 1.0) / v2;
  return {std::abs(R2 - rhs1), std::abs(-R2 + std::norm(d.C) - rhs2)};
}

Point2 disc_eval(const StationaryDisc& d, cplx tau) {
  // R (tau - tau_c) equals R tau + C and vanishes exactly at tau = tau_c.
  const cplx w = d.R * (tau - d.center_tau());
  return d.z + w * (d.p.point() - d.z);
}

Point2 lift_numerator(const StationaryDisc& d, cplx tau) {
  const Point2 vbar = conj(d.p.point() - d.z);
  return tau * conj(d.z) + (d.R + std::conj(d.C) * tau) * vbar;
}

ProjectiveCovector disc_lift_boundary(const StationaryDisc& d, cplx tau) {
  if (std::abs(std::abs(tau) - 1.0) > 1e-12)
    throw Error(ErrorKind::InvalidArgument, "boundary lift requires |tau| = 1");
  const Point2 w = (1.0 / tau) * lift_numerator(d, tau);
  if (!(norm(w) > 1e-14 * (1.0 + norm(d.p.point()))))
    throw Error(ErrorKind::DegenerateLift, "lift vector is numerically zero");
  return ProjectiveCovector(w);
}

ProjectiveCovector disc_lift_projective(const StationaryDisc& d, cplx tau) {
  const Point2 w = lift_numerator(d, tau);
  if (!(norm(w) > 1e-14 * (1.0 + norm(d.p.point()))))
    throw Error(ErrorKind::DegenerateLift, "lift vector is numerically zero");
  return ProjectiveCovector(w);
}

Point2 mp_lift_vector(const ExteriorPoint& ep, Point2 z) {
  const Point2 p = ep.point();
  return (hdot(z, p) - 1.0) * conj(z) + cplx(1.0 - norm2(z)) * conj(p);
}

ProjectiveCovector mp_lift_at(const ExteriorPoint& p, Point2 z) {
  if (!finite(z) || !(norm2(z) < 1.0))
    throw Error(ErrorKind::AnchorNotInterior, "M_p lift requires |z| < 1");
  const Point2 w = mp_lift_vector(p, z);
  if (!(norm(w) > kZeroVector)) throw Error(ErrorKind::Internal, "M_p lift vanished inside the ball");
  return ProjectiveCovector(w);
}

double mp_singular_residual(const ExteriorPoint& p, Point2 z) { return std::abs(hdot(z, p.point()) - 1.0); }

Point2 minf_lift_vector(Point2 q, Axis which) {
  if (which == Axis::Z1) return {1.0 - std::norm(q.z2), q.z1 * std::conj(q.z2)};
  return {q.z2 * std::conj(q.z1), 1.0 - std::norm(q.z1)};
}

double minf_residual(Point2 q, cplx zeta, Axis which) {
  if (!finite(q) || norm2(q) > 1.0 + 1e-12)
    throw Error(ErrorKind::InvalidArgument, "manifold membership requires |q| <= 1");
  const Point2 w = minf_lift_vector(q, which);
  if (!(norm(w) > kZeroVector))
    throw Error(ErrorKind::DegenerateLift, "coordinate-direction covector vanishes at q");
  return projective_distance(Point2{zeta, 1.0}, w);
}

cplx zeta_chart(const ProjectiveCovector& w) {
  // Normalized storage puts the larger component at modulus 1.
  if (std::abs(w.w2()) < 1e-15)
    throw Error(ErrorKind::ChartPointAtInfinity, "covector [w1 : 0] is the point at infinity of the chart");
  return w.w1() / w.w2();
}

QPoint q_point(const ExteriorPoint& ep, double t) {
  const Point2 p = ep.point();
  const double p2 = norm2(p);
  const double lo = 1.0 / p2;
  const double hi = 1.0 / std::sqrt(p2);
  if (!(t >= lo * (1.0 - 1e-14) && t < hi))
    throw Error(ErrorKind::ParameterOutOfRange,
                "t must lie in [1/|p|^2, 1/|p|) = [" + std::to_string(lo) + ", " + std::to_string(hi) + ")");
  return {cplx(t) * p, ProjectiveCovector(conj(p)), t + 1.0 - 2.0 * t * t * p2, 1.0 - t};
}

MobiusDisc mobius_compose(const StationaryDisc& d, cplx a, cplx alpha, const CircleGrid& grid) {
  if (!(std::abs(a) < 1.0)) throw Error(ErrorKind::InvalidArgument, "Mobius center must satisfy |a| < 1");
  if (std::abs(std::abs(alpha) - 1.0) > 1e-12)
    throw Error(ErrorKind::InvalidArgument, "Mobius rotation must satisfy |alpha| = 1");
  const std::size_t n = grid.size();
  std::vector<cplx> z1(n), z2(n), g1(n), g2(n);
  for (std::size_t k = 0; k < n; ++k) {
    const cplx tau = grid.node(k);
    const cplx phi = alpha * (tau - a) / (1.0 - tau * std::conj(a));
    const Point2 A = disc_eval(d, phi);
    z1[k] = A.z1;
    z2[k] = A.z2;
    const double weight = std::norm(tau - a);
    g1[k] = tau * weight * std::conj(A.z1);
    g2[k] = tau * weight * std::conj(A.z2);
  }
  const std::array specs{spectrum(ComplexSamples(grid, std::move(g1))),
                         spectrum(ComplexSamples(grid, std::move(g2)))};
  return {ComplexSamples(grid, std::move(z1)), ComplexSamples(grid, std::move(z2)),
          negative_energy(std::span<const FourierSpectrum>(specs))};
}

double stationarity_residual(const StationaryDisc& d, const CircleGrid& grid) {
  return mobius_compose(d, 0.0, 1.0, grid).stationarity_residual;
}

}  // namespace stdisc
