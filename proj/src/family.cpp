#include "stdisc/family.hpp"

#include "stdisc/io.hpp"
#include "stdisc/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace stdisc {

namespace {

double bump_shape(const BumpSpec& bump, double s) {
  if (!(s > 0.0 && s < 1.0)) return 0.0;
  double w = std::pow(std::sin(std::numbers::pi * s), 2 * bump.m);
  if (bump.windowed) w *= std::exp(1.0 - 1.0 / (4.0 * s * (1.0 - s)));
  return -bump.amplitude * w;
}

ComplexSamples times(const ComplexSamples& a, cplx s) {
  std::vector<cplx> v(a.values().begin(), a.values().end());
  for (auto& x : v) x *= s;
  return ComplexSamples(a.grid(), std::move(v));
}

double max_abs_diff(std::span<const cplx> a, std::span<const cplx> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double max_abs(std::span<const cplx> a) {
  double m = 0.0;
  for (auto x : a) m = std::max(m, std::abs(x));
  return m;
}

RealSamples log_of(const RealSamples& rho) {
  std::vector<double> lr(rho.size());
  for (std::size_t k = 0; k < lr.size(); ++k) {
    if (!(rho[k] > 0.0)) throw Error(ErrorKind::InvalidArgument, "rho must be positive");
    lr[k] = std::log(rho[k]);
  }
  return RealSamples(rho.grid(), std::move(lr));
}

struct ChartPoint {
  cplx z1, z2, zeta;
};

double dist(const ChartPoint& a, const ChartPoint& b) {
  return std::sqrt(std::norm(a.z1 - b.z1) + std::norm(a.z2 - b.z2) + std::norm(a.zeta - b.zeta));
}

}  // namespace

RealSamples bump_samples(const BumpSpec& bump, int j, const CircleGrid& grid) {
  if (j != 1 && j != 2) throw Error(ErrorKind::InvalidArgument, "profile index must be 1 or 2");
  if (bump.m < 1) throw Error(ErrorKind::InvalidArgument, "bump smoothness exponent m must be >= 1");
  const double start = j == 1 ? std::numbers::pi : 0.0;
  return RealSamples::from_function(grid, [&](double th) { return bump_shape(bump, (th - start) / std::numbers::pi); });
}

double FamilyParams::r() const { return std::abs(p.point().z1) / norm(p.point()); }

void FamilyParams::validate() const {
  if (!p.both_coordinates_exterior())
    throw Error(ErrorKind::InvalidArgument, "attached-disc family requires |p1| > 1 and |p2| > 1");
  const double pn = norm(p.point());
  if (!(t >= (1.0 / norm2(p.point())) * (1.0 - 1e-14) && t < 1.0 / pn))
    throw Error(ErrorKind::ParameterOutOfRange, "t must lie in [1/|p|^2, 1/|p|)");
  (void)CircleGrid(n);
}

RealSamples rho_profile(const BumpSpec& bump, int j, double log_mean_target, const CircleGrid& grid) {
  if (log_mean_target > 0.0)
    throw Error(ErrorKind::InvalidArgument, "profile log-mean must be <= 0 so that rho <= 1");
  const auto b = bump_samples(bump, j, grid);
  const double mb = mean(b);
  if (!(mb < 0.0)) throw Error(ErrorKind::DegenerateBump, "bump has zero mean; cannot meet the log-mean constraint");
  const double c = log_mean_target / mb;
  std::vector<double> rho(grid.size());
  for (std::size_t k = 0; k < rho.size(); ++k) rho[k] = std::exp(c * b[k]);
  return RealSamples(grid, std::move(rho));
}

RealSamples rho_profile(const FamilyParams& params, int j) {
  params.validate();
  const double target = std::log(params.t * norm(params.p.point()));
  return rho_profile(j == 1 ? params.bump1 : params.bump2, j, target, CircleGrid(params.n));
}

double psi_offset(const RealSamples& rho, cplx pj) { return std::arg(pj) - mean(hilbert_t1(log_of(rho))); }

RealSamples eta_profile(const RealSamples& rho, double psi) {
  const auto v = hilbert_t1(log_of(rho));
  std::vector<double> eta(v.values().begin(), v.values().end());
  for (auto& x : eta) x += psi;
  return RealSamples(rho.grid(), std::move(eta));
}

AttachedDisc build_disc(const FamilyParams& params_in) {
  params_in.validate();
  FamilyParams params = params_in;
  const Point2 p = params.p.point();
  const double r = params.r();
  const double s = std::sqrt(1.0 - r * r);

  for (;;) {
    const CircleGrid grid(params.n);
    const double target = std::log(params.t * norm(p));
    auto rho1 = rho_profile(params.bump1, 1, target, grid);
    auto rho2 = rho_profile(params.bump2, 2, target, grid);
    auto eta1 = eta_profile(rho1, psi_offset(rho1, p.z1));
    auto eta2 = eta_profile(rho2, psi_offset(rho2, p.z2));

    const auto u1 = log_of(rho1);
    const auto u2 = log_of(rho2);
    auto H1 = holomorphic_completion(u1, mean(eta1));
    auto H2 = holomorphic_completion(u2, mean(eta2));

    std::vector<cplx> h1(grid.size()), h2(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
      h1[k] = std::polar(rho1[k], eta1[k]);
      h2[k] = std::polar(rho2[k], eta2[k]);
    }
    const ComplexSamples h1s(grid, std::move(h1));
    const ComplexSamples h2s(grid, std::move(h2));
    const auto h1_spec = spectrum(h1s);
    const auto h2_spec = spectrum(h2s);

    const double tail = std::max({tail_energy(spectrum(u1)), tail_energy(spectrum(u2)), tail_energy(h1_spec),
                                  tail_energy(h2_spec)});
    if (tail > kProfileTailThreshold) {
      if (params.n >= kMaxGrid)
        throw Error(ErrorKind::GridTooCoarse, "profile tail energy " + std::to_string(tail) +
                                                  " still above threshold at grid size " + std::to_string(params.n));
      params.n *= 2;
      continue;
    }

    double min_h = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < grid.size(); ++k) min_h = std::min({min_h, std::abs(h1s[k]), std::abs(h2s[k])});
    if (min_h < 1e-12) throw Error(ErrorKind::VanishingFactor, "holomorphic factor h_j nearly vanishes on the circle");

    std::vector<cplx> zeta(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) zeta[k] = (r / s) * h2s[k] / h1s[k];
    auto z1 = times(h1s, r);
    auto z2 = times(h2s, s);
    ComplexSamples zetas(grid, std::move(zeta));
    auto z1_spec = spectrum(z1);
    auto z2_spec = spectrum(z2);
    auto zeta_spec = spectrum(zetas);
    const Point2 center{z1_spec[0], z2_spec[0]};
    const cplx center_zeta = zeta_spec[0];

    return AttachedDisc{params,
                        std::move(rho1),
                        std::move(rho2),
                        std::move(eta1),
                        std::move(eta2),
                        std::move(H1),
                        std::move(H2),
                        std::move(z1),
                        std::move(z2),
                        std::move(zetas),
                        std::move(z1_spec),
                        std::move(z2_spec),
                        std::move(zeta_spec),
                        center,
                        center_zeta,
                        tail};
  }
}

FourierSpectrum zeta_spectrum_from_completions(const AttachedDisc& disc) {
  const auto& grid = disc.log_h1.grid();
  std::vector<cplx> diff(grid.size());
  const auto c1 = disc.log_h1.coefficients();
  const auto c2 = disc.log_h2.coefficients();
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = c2[i] - c1[i];
  const auto d = synthesize(FourierSpectrum(grid, std::move(diff)));
  const double r = disc.params.r();
  const double scale = r / std::sqrt(1.0 - r * r);
  std::vector<cplx> q(grid.size());
  for (std::size_t k = 0; k < q.size(); ++k) q[k] = scale * std::exp(d[k]);
  return spectrum(ComplexSamples(grid, std::move(q)));
}

AttachmentReport attachment_report(const AttachedDisc& disc, double tolerance) {
  const auto& grid = disc.z1.grid();
  AttachmentReport rep{{}, 0.0, 0, std::numeric_limits<double>::infinity(),
                       std::numeric_limits<double>::infinity()};
  rep.nodes.reserve(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const bool on1 = disc.rho1[k] == 1.0;
    const bool on2 = disc.rho2[k] == 1.0;
    if (!on1 && !on2)
      throw Error(ErrorKind::AttachmentFailure,
                  "node " + std::to_string(k) + " has neither profile equal to 1; boundary is not attached");
    const Point2 q{disc.z1[k], disc.z2[k]};
    NodeResidual nr{k, grid.theta(k), on1 && on2 ? Membership::Both : (on1 ? Membership::Z2Manifold : Membership::Z1Manifold),
                    0.0, 0.0};
    if (on2) nr.residual_z1_manifold = minf_residual(q, disc.zeta[k], Axis::Z1);
    if (on1) nr.residual_z2_manifold = minf_residual(q, disc.zeta[k], Axis::Z2);
    const double worst = std::max(nr.residual_z1_manifold, nr.residual_z2_manifold);
    if (worst > rep.max_residual || k == 0) {
      rep.max_residual = worst;
      rep.worst_node = k;
    }
    rep.min_abs_z1 = std::min(rep.min_abs_z1, std::abs(q.z1));
    rep.min_abs_z2 = std::min(rep.min_abs_z2, std::abs(q.z2));
    rep.nodes.push_back(nr);
  }
  if (rep.max_residual > tolerance)
    throw Error(ErrorKind::AttachmentFailure,
                "attachment residual " + std::to_string(rep.max_residual) + " at node " +
                    std::to_string(rep.worst_node) + " exceeds tolerance");
  return rep;
}

LimitPoint limit_point(const ExteriorPoint& ep) {
  const Point2 p = ep.point();
  return {cplx(1.0 / norm(p)) * p, std::conj(p.z1) / std::conj(p.z2)};
}

double boundary_diameter(const AttachedDisc& disc) {
  const std::size_t n = disc.z1.size();
  std::vector<ChartPoint> pts(n);
  for (std::size_t k = 0; k < n; ++k) pts[k] = {disc.z1[k], disc.z2[k], disc.zeta[k]};
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) best = std::max(best, dist(pts[i], pts[j]));
  return best;
}

SweepRow measure(const AttachedDisc& disc) {
  const Point2 p = disc.params.p.point();
  const double t = disc.params.t;
  const auto lim = limit_point(disc.params.p);
  const ChartPoint limit{lim.z.z1, lim.z.z2, lim.zeta};

  double dlim = 0.0;
  for (std::size_t k = 0; k < disc.z1.size(); ++k)
    dlim = std::max(dlim, dist({disc.z1[k], disc.z2[k], disc.zeta[k]}, limit));

  const Point2 tp = cplx(t) * p;
  const double center_error =
      std::max(norm(disc.center - tp), std::abs(disc.center_zeta - std::conj(p.z1) / std::conj(p.z2)));

  const auto rep = attachment_report(disc, std::numeric_limits<double>::infinity());
  const auto alt = zeta_spectrum_from_completions(disc);
  const double two_route =
      max_abs_diff(alt.coefficients(), disc.zeta_spec.coefficients()) / max_abs(disc.zeta_spec.coefficients());

  return {t,
          disc.params.n,
          boundary_diameter(disc),
          dlim,
          center_error,
          mp_singular_residual(disc.params.p, disc.center),
          rep.max_residual,
          negative_energy(disc.z1_spec),
          negative_energy(disc.z2_spec),
          negative_energy(disc.zeta_spec),
          two_route};
}

bool row_passes(const SweepRow& row, const SweepTolerances& tol) {
  return row.center_error <= tol.center && row.neg_energy_z1 <= tol.holomorphy &&
         row.neg_energy_z2 <= tol.holomorphy && row.neg_energy_zeta <= tol.holomorphy &&
         row.max_attach_residual <= tol.attachment && row.zeta_two_route <= 1e-9;
}

std::vector<double> linspace(double start, double stop, std::size_t count) {
  if (count == 0) return {};
  if (count == 1) return {start};
  std::vector<double> out(count);
  const double step = (stop - start) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) out[i] = start + step * static_cast<double>(i);
  out.back() = stop;
  return out;
}

std::vector<double> default_t_grid(const ExteriorPoint& p, std::size_t count) {
  const double pn = norm(p.point());
  return linspace(1.0 / norm2(p.point()), (1.0 / pn) * (1.0 - 1e-3), count);
}

std::vector<SweepRow> family_sweep(const ExteriorPoint& p, const std::vector<double>& t_grid, const BumpSpec& bump1,
                                   const BumpSpec& bump2, std::size_t n) {
  std::vector<FamilyParams> jobs;
  jobs.reserve(t_grid.size());
  for (double t : t_grid) {
    FamilyParams fp{p, t, n, bump1, bump2};
    fp.validate();
    jobs.push_back(fp);
  }

  return parallel_map(jobs.size(), [&](std::size_t i) { return measure(build_disc(jobs[i])); });
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out =
      "t,diameter,dist_to_limit,center_sing_residual,max_attach_residual,neg_energy_z1,neg_energy_z2,neg_energy_zeta\n";
  for (const auto& r : rows) {
    const double cols[] = {r.t, r.diameter, r.dist_to_limit, r.center_sing_residual, r.max_attach_residual,
                           r.neg_energy_z1, r.neg_energy_z2, r.neg_energy_zeta};
    for (std::size_t i = 0; i < std::size(cols); ++i) {
      if (i) out += ',';
      out += format_double(cols[i]);
    }
    out += '\n';
  }
  return out;
}

nlohmann::json sweep_json(const std::vector<SweepRow>& rows, const SweepTolerances& tol) {
  auto arr = nlohmann::json::array();
  for (const auto& r : rows)
    arr.push_back({{"t", r.t},
                   {"n", r.n},
                   {"diameter", r.diameter},
                   {"dist_to_limit", r.dist_to_limit},
                   {"center_error", r.center_error},
                   {"center_sing_residual", r.center_sing_residual},
                   {"max_attach_residual", r.max_attach_residual},
                   {"neg_energy_z1", r.neg_energy_z1},
                   {"neg_energy_z2", r.neg_energy_z2},
                   {"neg_energy_zeta", r.neg_energy_zeta},
                   {"zeta_two_route", r.zeta_two_route},
                   {"pass", row_passes(r, tol)}});
  return arr;
}

std::string disc_curve_csv(const AttachedDisc& disc) {
  std::vector<Point2> pts(disc.z1.size());
  for (std::size_t k = 0; k < pts.size(); ++k) pts[k] = {disc.z1[k], disc.z2[k]};
  return curve_csv(disc.z1.grid(), pts, disc.zeta.values());
}

}  // namespace stdisc
