#include "stdisc/extension.hpp"

#include <cmath>
#include <string>

#include "stdisc/io.hpp"
#include "stdisc/parallel.hpp"

namespace stdisc {

namespace {

constexpr double kIncidenceTol = 1e-10;

std::vector<cplx> polar_grid(std::size_t radial, std::size_t angular) {
  if (radial == 0 || angular == 0) throw Error(ErrorKind::InvalidArgument, "anchor grid counts must be positive");
  std::vector<cplx> out;
  out.reserve(radial * angular);
  for (std::size_t i = 0; i < radial; ++i) {
    const double rad = kMaxThroughPointAnchor * (static_cast<double>(i) + 0.5) / static_cast<double>(radial);
    for (std::size_t j = 0; j < angular; ++j)
      out.push_back(std::polar(rad, 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(angular)));
  }
  return out;
}

cplx checked_parameter(cplx tau) {
  if (!(std::abs(tau) <= 1.0 - 1e-9))
    throw Error(ErrorKind::IncidenceViolation, "point is not in the interior of the slice disc");
  return tau;
}

}  // namespace

BoundaryFunction to_function(const expr::Expr& e) {
  return [e](Point2 q) { return expr::eval(e, q.z1, q.z2); };
}

const char* to_string(FamilyKind kind) noexcept {
  switch (kind) {
    case FamilyKind::Vertical: return "vertical";
    case FamilyKind::Horizontal: return "horizontal";
    case FamilyKind::ThroughPoint: return "throughpoint";
  }
  return "?";
}

const char* to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Degenerate: return "degenerate";
  }
  return "?";
}

SliceFamily SliceFamily::vertical(std::span<const cplx> z1_anchors) {
  SliceFamily f{FamilyKind::Vertical, std::nullopt, {}};
  for (cplx a : z1_anchors) {
    if (!(std::abs(a) < 1.0)) throw Error(ErrorKind::InvalidArgument, "vertical anchors need |z1| < 1");
    f.anchors.push_back({a, 0.0});
  }
  return f;
}

SliceFamily SliceFamily::horizontal(std::span<const cplx> z2_anchors) {
  SliceFamily f{FamilyKind::Horizontal, std::nullopt, {}};
  for (cplx a : z2_anchors) {
    if (!(std::abs(a) < 1.0)) throw Error(ErrorKind::InvalidArgument, "horizontal anchors need |z2| < 1");
    f.anchors.push_back({0.0, a});
  }
  return f;
}

SliceFamily SliceFamily::through_point(const ExteriorPoint& p, std::vector<Point2> anchors) {
  for (const auto& a : anchors)
    if (!(norm(a) <= kMaxThroughPointAnchor))
      throw Error(ErrorKind::InvalidArgument, "anchors of lines through p need |z| <= 0.95");
  return {FamilyKind::ThroughPoint, p, std::move(anchors)};
}

SliceFamily SliceFamily::vertical_grid(std::size_t radial, std::size_t angular) {
  const auto g = polar_grid(radial, angular);
  return vertical(g);
}

SliceFamily SliceFamily::horizontal_grid(std::size_t radial, std::size_t angular) {
  const auto g = polar_grid(radial, angular);
  return horizontal(g);
}

SliceFamily SliceFamily::through_point_grid(const ExteriorPoint& p, std::size_t radial, std::size_t angular) {
  const Point2 pp = p.point();
  const double pn = norm(pp);
  const Point2 e{-std::conj(pp.z2) / pn, std::conj(pp.z1) / pn};
  std::vector<Point2> anchors;
  for (cplx w : polar_grid(radial, angular)) anchors.push_back(w * e);
  return through_point(p, std::move(anchors));
}

SliceCircle::SliceCircle(FamilyKind kind, Point2 anchor, std::optional<StationaryDisc> disc, CircleGrid grid,
                         std::vector<Point2> points)
    : kind_(kind), anchor_(anchor), disc_(std::move(disc)), grid_(grid), points_(std::move(points)) {
  if (points_.size() != grid_.size()) throw Error(ErrorKind::InvalidArgument, "slice samples do not match grid");
}

cplx SliceCircle::parameter_of(Point2 q) const {
  switch (kind_) {
    case FamilyKind::Vertical: {
      if (std::abs(q.z1 - anchor_.z1) > kIncidenceTol)
        throw Error(ErrorKind::IncidenceViolation, "point is not on this vertical slice");
      return checked_parameter(q.z2 / std::sqrt(1.0 - std::norm(anchor_.z1)));
    }
    case FamilyKind::Horizontal: {
      if (std::abs(q.z2 - anchor_.z2) > kIncidenceTol)
        throw Error(ErrorKind::IncidenceViolation, "point is not on this horizontal slice");
      return checked_parameter(q.z1 / std::sqrt(1.0 - std::norm(anchor_.z2)));
    }
    case FamilyKind::ThroughPoint: {
      const auto& d = *disc_;
      const Point2 v = d.p.point() - d.z;
      const cplx w = hdot(q - d.z, v) / norm2(v);
      if (norm(q - d.z - w * v) > kIncidenceTol * (1.0 + norm(q)))
        throw Error(ErrorKind::IncidenceViolation, "point is not on the line through p and the anchor");
      return checked_parameter(d.center_tau() + w / d.R);
    }
  }
  throw Error(ErrorKind::Internal, "unknown family kind");
}

SliceCircle slice_circle(const SliceFamily& family, Point2 anchor, const CircleGrid& grid) {
  const std::size_t n = grid.size();
  std::vector<Point2> pts(n);
  switch (family.kind) {
    case FamilyKind::Vertical: {
      if (!(std::abs(anchor.z1) < 1.0)) throw Error(ErrorKind::AnchorNotInterior, "vertical anchor needs |z1| < 1");
      const double s = std::sqrt(1.0 - std::norm(anchor.z1));
      for (std::size_t k = 0; k < n; ++k) pts[k] = {anchor.z1, s * grid.node(k)};
      return SliceCircle(family.kind, {anchor.z1, 0.0}, std::nullopt, grid, std::move(pts));
    }
    case FamilyKind::Horizontal: {
      if (!(std::abs(anchor.z2) < 1.0)) throw Error(ErrorKind::AnchorNotInterior, "horizontal anchor needs |z2| < 1");
      const double s = std::sqrt(1.0 - std::norm(anchor.z2));
      for (std::size_t k = 0; k < n; ++k) pts[k] = {s * grid.node(k), anchor.z2};
      return SliceCircle(family.kind, {0.0, anchor.z2}, std::nullopt, grid, std::move(pts));
    }
    case FamilyKind::ThroughPoint: {
      if (!family.p) throw Error(ErrorKind::InvalidArgument, "through-point family has no exterior point");
      auto d = disc_coefficients(*family.p, anchor);
      for (std::size_t k = 0; k < n; ++k) pts[k] = disc_eval(d, grid.node(k));
      return SliceCircle(family.kind, anchor, d, grid, std::move(pts));
    }
  }
  throw Error(ErrorKind::Internal, "unknown family kind");
}

namespace {

FourierSpectrum slice_spectrum(const BoundaryFunction& f, const SliceCircle& s) {
  std::vector<cplx> v(s.grid().size());
  const auto pts = s.points();
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = f(pts[k]);
  return spectrum(ComplexSamples(s.grid(), std::move(v)));
}

}  // namespace

double test_slice(const BoundaryFunction& f, const SliceCircle& s) { return negative_energy(slice_spectrum(f, s)); }

ExtensionReport test_family(const BoundaryFunction& f, const SliceFamily& family, double tolerance,
                            const CircleGrid& grid) {
  if (family.anchors.empty()) throw Error(ErrorKind::InvalidArgument, "slice family has no anchors");
  auto slices = parallel_map(family.anchors.size(), [&](std::size_t i) {
    const auto circle = slice_circle(family, family.anchors[i], grid);
    try {
      return SliceResult{family.anchors[i], test_slice(f, circle), false};
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::DegenerateInput) throw;
      return SliceResult{family.anchors[i], 0.0, true};
    }
  });

  ExtensionReport rep{family.kind, std::move(slices), 0.0, 0, tolerance, Verdict::Pass};
  bool all_degenerate = true;
  for (std::size_t i = 0; i < rep.slices.size(); ++i) {
    const auto& s = rep.slices[i];
    all_degenerate = all_degenerate && s.degenerate;
    if (s.residual > rep.max_residual) {
      rep.max_residual = s.residual;
      rep.worst_slice = i;
    }
  }
  if (rep.max_residual > tolerance) rep.verdict = Verdict::Fail;
  else if (all_degenerate) rep.verdict = Verdict::Degenerate;
  return rep;
}

Reconstruction reconstruct_at(const BoundaryFunction& f, Point2 q, std::span<const SliceCircle> discs) {
  Reconstruction out{{}, {}, 0.0};
  for (const auto& d : discs) {
    const cplx tau = d.parameter_of(q);
    const auto spec = slice_spectrum(f, d);
    double residual = 0.0;
    try {
      residual = negative_energy(spec);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::DegenerateInput) throw;
    }
    out.values.push_back(extend_eval(spec, tau));
    out.residuals.push_back(residual);
  }
  for (std::size_t i = 0; i < out.values.size(); ++i)
    for (std::size_t j = i + 1; j < out.values.size(); ++j)
      out.spread = std::max(out.spread, std::abs(out.values[i] - out.values[j]));
  return out;
}

nlohmann::json report_json(const ExtensionReport& rep) {
  auto slices = nlohmann::json::array();
  for (const auto& s : rep.slices)
    slices.push_back({{"anchor", point_json(s.anchor)}, {"residual", s.residual}, {"degenerate", s.degenerate}});
  return {{"family", to_string(rep.kind)},
          {"tolerance", rep.tolerance},
          {"max_residual", rep.max_residual},
          {"worst_slice", rep.worst_slice},
          {"verdict", to_string(rep.verdict)},
          {"slices", std::move(slices)}};
}

std::string report_csv(const ExtensionReport& rep) {
  std::string out = "anchor_z1_re,anchor_z1_im,anchor_z2_re,anchor_z2_im,residual,degenerate\n";
  for (const auto& s : rep.slices) {
    for (double x : {s.anchor.z1.real(), s.anchor.z1.imag(), s.anchor.z2.real(), s.anchor.z2.imag(), s.residual})
      out += format_double(x) + ',';
    out += s.degenerate ? "1\n" : "0\n";
  }
  return out;
}

}  // namespace stdisc
