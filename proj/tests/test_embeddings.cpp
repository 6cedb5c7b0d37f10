#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "embeddings.hpp"
#include "potentials.hpp"
#include "rng.hpp"

using namespace bsdgeo;

namespace {

MetricField standard_metric(const DomainSpec& d) {
  return MetricField(d, standard_potential(d));
}

}  // namespace

TEST_CASE("diagonal disc construction") {
  const auto u = diagonal_disc(3, 2);
  const CVector z = u.map(Complex(0.5, 0.0));
  CHECK(z(0) == Complex(0.5, 0.0));
  CHECK(z(1) == Complex(0.5, 0.0));
  CHECK(z(2) == Complex(0.0, 0.0));
  CHECK(u.declared_rank == 2);

  const auto id = diagonal_disc(1, 1);
  CHECK(id.map(Complex(0.3, 0.2))(0) == Complex(0.3, 0.2));

  CHECK_THROWS_AS(diagonal_disc(3, 0), Error);
  CHECK_THROWS_AS(diagonal_disc(3, 4), Error);
}

TEST_CASE("pullback of the polydisc metric through diagonal discs") {
  // lambda(zeta) = 2k / (K (1 - |zeta|^2)^2), checked at 20 points
  SampleRng rng(73);
  for (const auto& [n, k, K] : {std::tuple<int, int, double>{3, 2, 1.0}, {4, 4, 2.0}}) {
    const auto d = DomainSpec::polydisc(n, K);
    const auto m = standard_metric(d);
    const auto u = diagonal_disc(n, k);
    for (int i = 0; i < 20; ++i) {
      const Complex zeta = rng.disc_point(0.85);
      const double expect = 2.0 * k / (K * std::pow(1.0 - std::norm(zeta), 2));
      CHECK(pullback_metric_1d(u, m, zeta) == doctest::Approx(expect).epsilon(1e-8));
    }
  }

  // diagonal_disc(3,2), K=1, zeta=0 -> 4
  const auto d = DomainSpec::polydisc(3);
  CHECK(pullback_metric_1d(diagonal_disc(3, 2), standard_metric(d), Complex(0, 0)) ==
        doctest::Approx(4.0).epsilon(1e-10));
}

TEST_CASE("gauss curvature of diagonal discs is -K/k") {
  SampleRng rng(79);
  for (const auto& [n, k, K] : {std::tuple<int, int, double>{2, 1, 1.0},
                                {3, 2, 1.0},
                                {4, 4, 2.0}}) {
    const auto d = DomainSpec::polydisc(n, K);
    const auto m = standard_metric(d);
    const auto u = diagonal_disc(n, k);
    Disc1dField lam = [&](Complex w) { return pullback_metric_1d(u, m, w); };
    for (int i = 0; i < 5; ++i) {
      const Complex zeta = rng.disc_point(0.6);
      CHECK(gauss_curvature_1d(lam, zeta) == doctest::Approx(-K / k).epsilon(1e-6));
    }
  }
}

TEST_CASE("maximal polydisc of typeI") {
  const auto e = maximal_polydisc_typeI(2, 2);
  CHECK(e.r == 2);
  CVector zeta(2);
  zeta << Complex(0.5, 0.0), Complex(1.0 / 3.0, 0.0);
  const CVector z = e.map(zeta);
  // row-major diag(1/2, 1/3)
  CHECK(z(0) == Complex(0.5, 0.0));
  CHECK(z(3) == Complex(1.0 / 3.0, 0.0));
  CHECK(z(1) == Complex(0.0, 0.0));
  CHECK(z(2) == Complex(0.0, 0.0));

  // p=q=1 is the identity disc
  const auto e1 = maximal_polydisc_typeI(1, 1);
  CHECK(e1.map(CVector::Constant(1, Complex(0.4, 0.1)))(0) == Complex(0.4, 0.1));
}

TEST_CASE("typeI coordinate discs carry the induced polydisc metric") {
  // lambda(0) = 2/K_m with K_m = 2K/(p+q); for typeI(2,2), K=1: lambda(0) = 4
  const auto d = DomainSpec::type_i(2, 2, 1.0);
  const auto m = standard_metric(d);
  const auto poly = maximal_polydisc_typeI(2, 2);
  const auto u0 = coordinate_disc(poly, 0);
  CHECK(pullback_metric_1d(u0, m, Complex(0, 0)) == doctest::Approx(4.0).epsilon(1e-6));

  // and the coefficient matches 2/(K_m (1-|zeta|^2)^2) away from 0
  const double km = 2.0 * 1.0 / 4.0;
  const Complex zeta(0.3, -0.2);
  const double expect = 2.0 / (km * std::pow(1.0 - std::norm(zeta), 2));
  CHECK(pullback_metric_1d(u0, m, zeta) == doctest::Approx(expect).epsilon(1e-5));
}

TEST_CASE("maximal polydisc of a product domain") {
  const auto d = DomainSpec::parse("ball:2xpolydisc:2", 1.0);
  const auto poly = maximal_polydisc(d);
  CHECK(poly.r == 3);
  CVector zeta(3);
  zeta << Complex(0.1, 0.0), Complex(0.2, 0.0), Complex(0.3, 0.0);
  const CVector z = poly.map(zeta);
  CHECK(z(0) == Complex(0.1, 0.0));  // ball axis disc
  CHECK(z(1) == Complex(0.0, 0.0));
  CHECK(z(2) == Complex(0.2, 0.0));
  CHECK(z(3) == Complex(0.3, 0.0));
}

TEST_CASE("disc rank measurement") {
  const auto p3 = DomainSpec::polydisc(3, 1.0);
  CHECK(disc_rank_measured(diagonal_disc(3, 2), standard_metric(p3)) == 2);

  const auto p5 = DomainSpec::polydisc(5, 3.0);
  CHECK(disc_rank_measured(diagonal_disc(5, 5), standard_metric(p5)) == 5);

  // an embedding that is not totally geodesic: zeta -> (zeta, zeta^2/2)
  DiscEmbedding crooked;
  crooked.label = "crooked";
  crooked.target_dim = 2;
  crooked.declared_rank = 1;
  crooked.map = [](Complex zeta) {
    CVector z(2);
    z << zeta + Complex(0.3, 0.0), 0.5 * zeta * zeta;
    return z;
  };
  const auto p2 = DomainSpec::polydisc(2, 1.0);
  CHECK_THROWS_AS(disc_rank_measured(crooked, standard_metric(p2)), Error);

  // rank recovery is polydisc-only
  CHECK_THROWS_AS(
      disc_rank_measured(diagonal_disc(2, 1), standard_metric(DomainSpec::ball(2))),
      Error);
}

TEST_CASE("mixed-curvature polydisc metric recovers the harmonic-mean curvature") {
  // product of disc potentials with K = (2, 1): full diagonal has
  // K_u = (1/2 + 1/1)^{-1} = 2/3, curvature -2/3... kappa = -K_u
  const auto d = DomainSpec::polydisc(2, 1.0);  // domain K is unused by the parts
  const auto part1 = ko_potential_polydisc(1, {}, 2.0);
  const auto part2 = ko_potential_polydisc(1, {}, 1.0);
  const MetricField m(d, product_potential({part1, part2}));
  const auto u = diagonal_disc(2, 2);
  Disc1dField lam = [&](Complex w) { return pullback_metric_1d(u, m, w); };
  const double ku = 1.0 / (0.5 + 1.0);
  SampleRng rng(83);
  for (int i = 0; i < 5; ++i) {
    CHECK(gauss_curvature_1d(lam, rng.disc_point(0.6)) ==
          doctest::Approx(-ku).epsilon(1e-6));
  }
  // and the constant gradient length is sum of 2/K_alpha
  for (const auto& z : sample_interior(d, 87, 10, 0.05)) {
    CHECK(gradient_length_sq(m, z) == doctest::Approx(1.0 + 2.0).epsilon(1e-10));
  }
}

TEST_CASE("schwarz-pick residual") {
  // the identity map
  CHECK(schwarz_pick_residual([](Complex z) { return z; }, Complex(0.3, 0.1)) < 1e-12);

  // a Moebius automorphism
  const MoebiusMap u{Complex(0.3, 0.0), 1.0};
  CHECK(schwarz_pick_residual(u, Complex(0.2, 0.1)) <= 1e-12);

  // 50 random automorphisms and points
  SampleRng rng(89);
  for (int i = 0; i < 50; ++i) {
    const MoebiusMap v{rng.disc_point(0.8), rng.uniform(0.0, 2.0 * M_PI)};
    CHECK(schwarz_pick_residual(v, rng.disc_point(0.8)) <= 1e-10);
  }

  // a strict contraction is not an isometry
  CHECK(schwarz_pick_residual([](Complex z) { return 0.5 * z; }, Complex(0, 0)) > 0.1);
}

TEST_CASE("gradient flow of the ko polydisc potential") {
  const auto d = DomainSpec::polydisc(2, 1.0);
  const MetricField m(d, ko_potential(d, {}));

  // starting on the diagonal keeps all coordinates equal
  const CVector z0 = CVector::Constant(2, Complex(0.3, 0.0));
  const auto flow = flow_gradient(m, z0, 2.0, 1e-3, 0.05);
  CHECK_FALSE(flow.escaped);
  CHECK(flow.points.size() == 2001);
  double spread = 0.0;
  for (const auto& z : flow.points) spread = std::max(spread, std::abs(z(0) - z(1)));
  CHECK(spread <= 1e-8);

  // all points interior
  for (const auto& z : flow.points) CHECK(contains(d, z, 0.05));

  // a critical point of the standard potential stays put
  const auto ms = standard_metric(d);
  const auto fixed = flow_gradient(ms, CVector::Zero(2), 0.5, 1e-2, 0.05);
  for (const auto& z : fixed.points) CHECK(z.cwiseAbs().maxCoeff() < 1e-14);

  // an outward start with a short margin escapes and reports a partial path
  const auto escaping = flow_gradient(m, CVector::Constant(2, Complex(-0.9, 0.0)), 2.0,
                                      1e-3, 0.08);
  CHECK(escaping.escaped);
  CHECK(escaping.points.size() < 2001);
  CHECK(escaping.points.size() >= 1);
}

TEST_CASE("flow rejects a non-interior start") {
  const auto d = DomainSpec::disc();
  const MetricField m(d, standard_potential(d));
  CHECK_THROWS_AS(flow_gradient(m, CVector::Constant(1, Complex(0.99, 0.0)), 1.0, 1e-3, 0.05),
                  Error);
}
