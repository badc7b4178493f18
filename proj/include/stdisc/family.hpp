#pragma once

// The family of analytic discs B_t with boundaries on the regular parts of the
// two coordinate-direction lift manifolds and centers on the lift of the line
// through p. Each disc is phi(r, rho1, eta1, rho2, eta2) with
//   z1 = r h1,  z2 = sqrt(1 - r^2) h2,  zeta = r / sqrt(1 - r^2) * h2 / h1,
// where h_j = rho_j e^{i eta_j} are nonvanishing holomorphic boundary values.

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "stdisc/circle.hpp"
#include "stdisc/geometry.hpp"

namespace stdisc {

/// Nonpositive bump supported on one open half of the circle:
///   b(theta) = -amplitude * sin(pi s)^(2m) * w(s),  s = position in the half-interval,
/// with w(s) = exp(1 - 1/(4 s (1 - s))) when `windowed` (a C-infinity cutoff).
/// Profile 1 lives on (pi, 2pi), profile 2 on (0, pi).
struct BumpSpec {
  int m = 4;
  double amplitude = 1.0;
  bool windowed = true;
};

/// Bump values on the grid for profile j in {1, 2}.
RealSamples bump_samples(const BumpSpec& bump, int j, const CircleGrid& grid);

struct FamilyParams {
  ExteriorPoint p;
  double t;
  std::size_t n = 1024;
  BumpSpec bump1{};
  BumpSpec bump2{};

  /// r = |p1| / |p|.
  double r() const;
  /// Throws unless |p1| > 1, |p2| > 1 and t in [1/|p|^2, 1/|p|).
  void validate() const;
};

/// rho_j = exp(c_j b_j) with c_j fixed by mean(log rho_j) = log_mean_target.
RealSamples rho_profile(const BumpSpec& bump, int j, double log_mean_target, const CircleGrid& grid);
/// Profile with log-mean log(t |p|) on the grid of size params.n.
RealSamples rho_profile(const FamilyParams& params, int j);

/// arg(p_j) - mean(T1 log rho_j).
double psi_offset(const RealSamples& rho, cplx pj);

/// eta_j = T1 log rho_j + psi_j.
RealSamples eta_profile(const RealSamples& rho, double psi);

struct AttachedDisc {
  FamilyParams params;   ///< params.n is the grid size actually used
  RealSamples rho1, rho2;
  RealSamples eta1, eta2;
  FourierSpectrum log_h1, log_h2;  ///< holomorphic completions H_j, h_j = exp(H_j)
  ComplexSamples z1, z2, zeta;     ///< boundary values
  FourierSpectrum z1_spec, z2_spec, zeta_spec;
  Point2 center;                   ///< (z1(0), z2(0))
  cplx center_zeta;
  double profile_tail;             ///< worst tail energy among log rho_j and h_j
};

/// Tail energy above which a grid is considered too coarse.
inline constexpr double kProfileTailThreshold = 1e-12;
/// Largest grid tried by build_disc.
inline constexpr std::size_t kMaxGrid = 16384;

/// Builds B_t. Doubles params.n until the profile tail is below
/// kProfileTailThreshold; throws GridTooCoarse past kMaxGrid and
/// VanishingFactor if |h_j| drops below 1e-12 on the circle.
AttachedDisc build_disc(const FamilyParams& params);

/// sqrt(1 - r^2) / r * spectrum(h2/h1) computed from exp(H2 - H1) synthesized
/// out of the completions; an independent route to zeta_spec.
FourierSpectrum zeta_spectrum_from_completions(const AttachedDisc& disc);

enum class Membership { Z1Manifold, Z2Manifold, Both };

struct NodeResidual {
  std::size_t node;
  double theta;
  Membership required;
  double residual_z1_manifold;  ///< minf_residual(., ., Axis::Z1), or 0 when not required
  double residual_z2_manifold;  ///< minf_residual(., ., Axis::Z2), or 0 when not required
};

struct AttachmentReport {
  std::vector<NodeResidual> nodes;
  double max_residual;
  std::size_t worst_node;
  double min_abs_z1;  ///< regularity margin away from the singular locus of the z2-direction manifold
  double min_abs_z2;  ///< regularity margin away from the singular locus of the z1-direction manifold
};

/// Tolerance for boundary membership in the coordinate-direction manifolds.
inline constexpr double kAttachmentTolerance = 1e-8;

/// Node-by-node membership check. Where rho1 = 1 (theta in [0, pi]) the point
/// must lie on the z2-direction manifold; where rho2 = 1 (theta in [pi, 2pi])
/// on the z1-direction manifold; both at theta in {0, pi}. Throws
/// AttachmentFailure naming the worst node when a residual exceeds `tolerance`.
AttachmentReport attachment_report(const AttachedDisc& disc, double tolerance = kAttachmentTolerance);

/// The point the discs shrink to as t -> 1/|p|: (p/|p|, conj(p1)/conj(p2)).
struct LimitPoint {
  Point2 z;
  cplx zeta;
};
LimitPoint limit_point(const ExteriorPoint& p);

struct SweepRow {
  double t;
  std::size_t n;
  double diameter;
  double dist_to_limit;
  double center_error;
  double center_sing_residual;
  double max_attach_residual;
  double neg_energy_z1;
  double neg_energy_z2;
  double neg_energy_zeta;
  double zeta_two_route;
};

struct SweepTolerances {
  double center = 1e-8;
  double holomorphy = 1e-8;
  double attachment = kAttachmentTolerance;
};

bool row_passes(const SweepRow& row, const SweepTolerances& tol = {});

/// Evenly spaced t values from start to stop inclusive.
std::vector<double> linspace(double start, double stop, std::size_t count);

/// Default t-grid: count points from 1/|p|^2 to (1/|p|)(1 - 1e-3).
std::vector<double> default_t_grid(const ExteriorPoint& p, std::size_t count);

/// Builds and measures B_t for each t. Rows come back in t_grid order;
/// the builds run concurrently.
std::vector<SweepRow> family_sweep(const ExteriorPoint& p, const std::vector<double>& t_grid,
                                   const BumpSpec& bump1, const BumpSpec& bump2, std::size_t n);

/// Max pairwise distance among boundary points in C^2 x chart.
double boundary_diameter(const AttachedDisc& disc);

SweepRow measure(const AttachedDisc& disc);

/// CSV with header
/// `t,diameter,dist_to_limit,center_sing_residual,max_attach_residual,neg_energy_z1,neg_energy_z2,neg_energy_zeta`.
std::string sweep_csv(const std::vector<SweepRow>& rows);
/// The CSV columns plus n, center_error, zeta_two_route and a pass flag per row.
nlohmann::json sweep_json(const std::vector<SweepRow>& rows, const SweepTolerances& tol = {});

/// Boundary curve of B_t in the disc-curve CSV layout.
std::string disc_curve_csv(const AttachedDisc& disc);

}  // namespace stdisc
