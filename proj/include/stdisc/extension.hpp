#pragma once

// Numerical extendibility tests of a boundary function on the sphere along
// families of complex lines: lines parallel to either coordinate axis and
// lines through an exterior point p.

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "stdisc/circle.hpp"
#include "stdisc/expr.hpp"
#include "stdisc/geometry.hpp"

namespace stdisc {

using BoundaryFunction = std::function<cplx(Point2)>;

BoundaryFunction to_function(const expr::Expr& e);

enum class FamilyKind {
  Vertical,      ///< lines parallel to the z2-axis, anchored by z1
  Horizontal,    ///< lines parallel to the z1-axis, anchored by z2
  ThroughPoint,  ///< lines through an exterior point p, anchored by an interior point
};

const char* to_string(FamilyKind kind) noexcept;

/// Anchor radius cap for lines through p; nearly tangent slices are excluded.
inline constexpr double kMaxThroughPointAnchor = 0.95;

/// Default verdict tolerance on the relative negative-mode energy.
inline constexpr double kDefaultTolerance = 1e-8;

struct SliceFamily {
  FamilyKind kind;
  std::optional<ExteriorPoint> p;
  std::vector<Point2> anchors;

  static SliceFamily vertical(std::span<const cplx> z1_anchors);
  static SliceFamily horizontal(std::span<const cplx> z2_anchors);
  static SliceFamily through_point(const ExteriorPoint& p, std::vector<Point2> anchors);

  /// Polar anchor grids: radii 0.95 (i + 1/2) / radial, angles 2 pi j / angular.
  /// For ThroughPoint the grid lives on the complex line through 0 orthogonal to p.
  static SliceFamily vertical_grid(std::size_t radial, std::size_t angular);
  static SliceFamily horizontal_grid(std::size_t radial, std::size_t angular);
  static SliceFamily through_point_grid(const ExteriorPoint& p, std::size_t radial, std::size_t angular);
};

/// The boundary circle of one slice disc, tau -> A(tau) on the sphere.
class SliceCircle {
 public:
  SliceCircle(FamilyKind kind, Point2 anchor, std::optional<StationaryDisc> disc, CircleGrid grid,
              std::vector<Point2> points);

  FamilyKind kind() const noexcept { return kind_; }
  Point2 anchor() const noexcept { return anchor_; }
  const CircleGrid& grid() const noexcept { return grid_; }
  std::span<const Point2> points() const noexcept { return points_; }

  /// Disc parameter tau with A(tau) = q, |tau| < 1. Throws IncidenceViolation
  /// when q is not an interior point of this disc.
  cplx parameter_of(Point2 q) const;

 private:
  FamilyKind kind_;
  Point2 anchor_;
  std::optional<StationaryDisc> disc_;
  CircleGrid grid_;
  std::vector<Point2> points_;
};

SliceCircle slice_circle(const SliceFamily& family, Point2 anchor, const CircleGrid& grid);

/// Negative-mode energy of theta -> f(A(e^{i theta})). Throws DegenerateInput
/// when f vanishes identically on the slice.
double test_slice(const BoundaryFunction& f, const SliceCircle& s);

enum class Verdict { Pass, Fail, Degenerate };
const char* to_string(Verdict v) noexcept;

struct SliceResult {
  Point2 anchor;
  double residual;  ///< 0 for degenerate slices
  bool degenerate;  ///< f vanished identically on the slice
};

struct ExtensionReport {
  FamilyKind kind;
  std::vector<SliceResult> slices;  ///< in anchor order
  double max_residual;
  std::size_t worst_slice;
  double tolerance;
  Verdict verdict;  ///< Fail iff some residual > tolerance; Degenerate iff every slice is
};

ExtensionReport test_family(const BoundaryFunction& f, const SliceFamily& family, double tolerance,
                            const CircleGrid& grid);

struct Reconstruction {
  std::vector<cplx> values;      ///< extension of f along each disc evaluated at q
  std::vector<double> residuals; ///< test_slice residual of each disc
  double spread;                 ///< max pairwise |values_i - values_j|
};

/// Evaluates the one-variable extension of f along each disc at q.
Reconstruction reconstruct_at(const BoundaryFunction& f, Point2 q, std::span<const SliceCircle> discs);

nlohmann::json report_json(const ExtensionReport& rep);
/// CSV with header `anchor_z1_re,anchor_z1_im,anchor_z2_re,anchor_z2_im,residual,degenerate`.
std::string report_csv(const ExtensionReport& rep);

}  // namespace stdisc
