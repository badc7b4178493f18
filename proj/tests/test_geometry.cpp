#include <doctest.h>

#include "stdisc/geometry.hpp"
#include "support.hpp"

using namespace stdisc;

namespace {

constexpr double kPi = std::numbers::pi;

template <class F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an stdisc::Error");
  return ErrorKind::Internal;
}

const ExteriorPoint p20{{2.0, 0.0}};
const ExteriorPoint p22{{2.0, 2.0}};

}  // namespace

TEST_CASE("exterior point and projective covector construction") {
  CHECK(kind_of([] { ExteriorPoint({0.5, 0.0}); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { ExteriorPoint({1.0, 0.0}); }) == ErrorKind::InvalidArgument);
  CHECK(p22.both_coordinates_exterior());
  CHECK_FALSE(ExteriorPoint({1.0, 2.0}).both_coordinates_exterior());

  const ProjectiveCovector w({0.0, 3.0}, {1.5, 0.0});
  CHECK(std::abs(w.w1()) == doctest::Approx(1.0));
  CHECK(w.w1() == cplx(0.0, 1.0));  // phase kept
  CHECK(projective_distance(w, ProjectiveCovector({0.0, 2.0}, 1.0)) < 1e-15);
  CHECK_THROWS_AS(ProjectiveCovector(0.0, 0.0), Error);
}

TEST_CASE("disc_coefficients") {
  SUBCASE("z = 0 forces C = 0 and R = 1/|p|") {
    const auto d = disc_coefficients(p20, {});
    CHECK(d.R == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(d.C == cplx(0.0));
  }
  SUBCASE("p = (2,2), z = (0.5,0)") {
    // Oracle by hand: v = p - z = (1.5, 2), |v|^2 = 6.25, C = -0.75/6.25 and R^2 = |C|^2 - (0.25 - 1)/6.25.
    const auto d = disc_coefficients(p22, {0.5, 0.0});
    CHECK(std::abs(d.C - cplx(-0.12)) < 1e-15);
    CHECK(d.R == doctest::Approx(std::sqrt(0.0144 + 0.12)).epsilon(1e-14));
    CHECK(d.R == doctest::Approx(0.36661).epsilon(1e-5));
    CHECK(-d.R * d.R + std::norm(d.C) == doctest::Approx(-0.12).epsilon(1e-14));
  }
  SUBCASE("anchor outside the ball") {
    CHECK(kind_of([] { disc_coefficients(p22, {1.0, 0.0}); }) == ErrorKind::AnchorNotInterior);
    CHECK(kind_of([] { disc_coefficients(p22, {0.8, 0.7}); }) == ErrorKind::AnchorNotInterior);
  }
}

TEST_CASE("relations hold over random pairs") {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 1000; ++i) {
    const auto p = testing::random_exterior(rng);
    const auto d = disc_coefficients(p, testing::random_interior(rng));
    const auto res = relation_residuals(d);
    CHECK(res.rel1 <= 1e-12);
    CHECK(res.rel2 <= 1e-12);
    CHECK(d.R > 0.0);
  }
}

TEST_CASE("disc_eval") {
  const auto d0 = disc_coefficients(p20, {});
  CHECK(norm(disc_eval(d0, 1.0) - Point2{1.0, 0.0}) < 1e-15);
  CHECK(norm(disc_eval(d0, {0.0, 1.0}) - Point2{{0.0, 1.0}, 0.0}) < 1e-15);

  std::mt19937_64 rng(99);
  const CircleGrid g(256);
  for (int i = 0; i < 50; ++i) {
    const auto d = disc_coefficients(testing::random_exterior(rng), testing::random_interior(rng));
    CHECK(disc_eval(d, d.center_tau()) == d.z);  // exact
    double worst = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) worst = std::max(worst, std::abs(norm2(disc_eval(d, g.node(k))) - 1.0));
    CHECK(worst <= 1e-12);
    CHECK(std::abs(d.center_tau()) < 1.0);
  }
}

TEST_CASE("boundary lift is conormal with a positive real factor") {
  const auto d0 = disc_coefficients(p20, {});
  const auto w0 = disc_lift_boundary(d0, 1.0);
  CHECK(w0.w2() == cplx(0.0));
  CHECK(projective_distance(w0.vector(), Point2{1.0, 0.0}) < 1e-15);

  const auto d = disc_coefficients(p22, {0.5, 0.0});
  const cplx tau = std::polar(1.0, kPi / 3);
  CHECK(projective_distance(disc_lift_boundary(d, tau).vector(), conj(disc_eval(d, tau))) <= 1e-10);

  // Factor lambda = <L, A> / |A|^2 scanned over the circle.
  const CircleGrid g(256);
  for (std::size_t k = 0; k < g.size(); ++k) {
    const cplx t = g.node(k);
    const Point2 A = disc_eval(d, t);
    const auto L = disc_lift_boundary(d, t);
    const cplx lambda = (L.w1() * A.z1 + L.w2() * A.z2) / norm2(A);
    CHECK(lambda.real() > 0.0);
    CHECK(std::abs(lambda.imag()) <= 1e-10 * std::abs(lambda));
  }
  CHECK_THROWS_AS(disc_lift_boundary(d, 0.5), Error);
}

TEST_CASE("lift of M_p") {
  CHECK(projective_distance(mp_lift_at(p22, {}), ProjectiveCovector(conj(p22.point()))) < 1e-15);
  // (0.25, 0.25) . conj(2, 2) = 1: CR-singular locus.
  CHECK(mp_singular_residual(p22, {0.25, 0.25}) == 0.0);
  CHECK(projective_distance(mp_lift_at(p22, {0.25, 0.25}), ProjectiveCovector(conj(p22.point()))) < 1e-15);
  CHECK(mp_singular_residual(p20, {0.5, 0.0}) == 0.0);
  CHECK(mp_singular_residual(p22, {}) == 1.0);

  const Point2 z{0.3, 0.1};
  const auto d = disc_coefficients(p22, z);
  CHECK(projective_distance(mp_lift_at(p22, z), disc_lift_projective(d, d.center_tau())) <= 1e-10);
  // Off the locus the lift moves away from [conj p].
  CHECK(projective_distance(mp_lift_at(p22, z), ProjectiveCovector(conj(p22.point()))) > 1e-3);

  std::mt19937_64 rng(17);
  for (int i = 0; i < 100; ++i) {
    const auto p = testing::random_exterior(rng);
    const auto zz = testing::random_interior(rng);
    const auto dd = disc_coefficients(p, zz);
    CHECK(projective_distance(mp_lift_at(p, zz), disc_lift_projective(dd, dd.center_tau())) <= 1e-10);
  }
}

TEST_CASE("singular locus carries the constant covector") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    const auto p = testing::random_exterior(rng, 1.2, 4.0);
    const Point2 pp = p.point();
    // z = p/|p|^2 + w e with e orthogonal to p lies on z . conj(p) = 1.
    const Point2 e{-std::conj(pp.z2) / norm(pp), std::conj(pp.z1) / norm(pp)};
    const double room = std::sqrt(1.0 - 1.0 / norm2(pp));
    const Point2 z = cplx(1.0 / norm2(pp)) * pp + testing::random_in_disc(rng, 0.9 * room) * e;
    CHECK(mp_singular_residual(p, z) <= 1e-14);
    CHECK(projective_distance(mp_lift_at(p, z), ProjectiveCovector(conj(pp))) <= 1e-12);
  }
}

TEST_CASE("coordinate-direction manifolds") {
  const Point2 q{0.3, 0.4};
  CHECK(minf_residual(q, (1.0 - 0.16) / (0.3 * 0.4), Axis::Z1) < 1e-15);
  CHECK(minf_residual(q, (0.4 * 0.3) / (1.0 - 0.09), Axis::Z2) < 1e-15);
  CHECK(minf_residual(q, 1.0, Axis::Z1) > 0.1);
  CHECK(kind_of([] { minf_residual({0.9, 0.9}, 1.0, Axis::Z1); }) == ErrorKind::InvalidArgument);

  // Both manifolds contain the conormal set over the sphere, in the chart zeta = r e^{i(eta2 - eta1)} / sqrt(1 - r^2).
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> ur(0.05, 0.95), ua(0.0, 2 * kPi);
  for (int i = 0; i < 100; ++i) {
    const double r = ur(rng), e1 = ua(rng), e2 = ua(rng);
    const Point2 b{std::polar(r, e1), std::polar(std::sqrt(1 - r * r), e2)};
    const cplx zeta = std::polar(r / std::sqrt(1 - r * r), e2 - e1);
    CHECK(minf_residual(b, zeta, Axis::Z1) <= 1e-14);
    CHECK(minf_residual(b, zeta, Axis::Z2) <= 1e-14);
  }
}

TEST_CASE("zeta chart") {
  CHECK(zeta_chart(ProjectiveCovector(1.0, 1.0)) == cplx(1.0));
  CHECK(zeta_chart(ProjectiveCovector(0.0, 1.0)) == cplx(0.0));
  CHECK(kind_of([] { zeta_chart(ProjectiveCovector(1.0, 0.0)); }) == ErrorKind::ChartPointAtInfinity);
}

TEST_CASE("q_point") {
  const auto q = q_point(p22, 0.125);
  CHECK(q.z == Point2{0.25, 0.25});
  CHECK(projective_distance(q.lift, ProjectiveCovector(1.0, 1.0)) < 1e-15);
  CHECK(mp_singular_residual(p22, q.z) == 0.0);

  const auto q3 = q_point(p22, 0.3);
  CHECK(norm(q3.z - Point2{0.6, 0.6}) < 1e-15);
  CHECK(q3.substituted_scalar == doctest::Approx(0.7));
  // Substituting z = t p into the M_p formula leaves conj(p) (1 - t).
  const Point2 w = mp_lift_vector(p22, q3.z);
  CHECK(norm(w - cplx(1.0 - 0.3) * conj(p22.point())) < 1e-14);
  CHECK(projective_distance(mp_lift_at(p22, q3.z), q3.lift) < 1e-15);
  CHECK(zeta_chart(q3.lift) == cplx(1.0));
  CHECK(q3.printed_scalar == doctest::Approx(0.3 + 1.0 - 2 * 0.09 * 8));

  const ExteriorPoint p32({3.0, 2.0});
  CHECK(std::abs(zeta_chart(q_point(p32, 0.1).lift) - cplx(1.5)) < 1e-15);

  CHECK(kind_of([] { q_point(p22, 0.1); }) == ErrorKind::ParameterOutOfRange);
  CHECK(kind_of([] { q_point(p22, 1.0 / std::sqrt(8.0)); }) == ErrorKind::ParameterOutOfRange);
}

TEST_CASE("Mobius reparametrization preserves stationarity") {
  const CircleGrid g(256);
  const auto d0 = disc_coefficients(p20, {});

  const auto id = mobius_compose(d0, 0.0, 1.0, g);
  for (std::size_t k = 0; k < g.size(); ++k) CHECK(norm(Point2{id.z1[k], id.z2[k]} - disc_eval(d0, g.node(k))) == 0.0);

  CHECK(mobius_compose(d0, 0.0, {0.0, 1.0}, g).stationarity_residual <= 1e-10);
  CHECK(mobius_compose(d0, 0.4, 1.0, g).stationarity_residual <= 1e-9);

  std::mt19937_64 rng(31);
  for (int i = 0; i < 20; ++i) {
    const auto d = disc_coefficients(testing::random_exterior(rng), testing::random_interior(rng));
    const auto m = mobius_compose(d, testing::random_in_disc(rng, 0.8), testing::random_unit(rng), g);
    CHECK(m.stationarity_residual <= 1e-9);
  }

  // Unreparametrized disc.
  CHECK(stationarity_residual(d0, g) <= 1e-12);
}
