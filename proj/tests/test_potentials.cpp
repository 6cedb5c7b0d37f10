#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "calculus.hpp"
#include "potentials.hpp"
#include "rng.hpp"

using namespace bsdgeo;

namespace {

CVector pt(std::initializer_list<Complex> cs) {
  CVector z(static_cast<int>(cs.size()));
  int i = 0;
  for (auto c : cs) z(i++) = c;
  return z;
}

void check_closed_forms_match_fd(const DomainSpec& d, const PotentialFn& phi,
                                 std::uint64_t seed, int count, double margin) {
  REQUIRE(phi.has_grad());
  REQUIRE(phi.has_hess());
  FdConfig cfg;
  for (const auto& z : sample_interior(d, seed, count, margin)) {
    const CVector g_fd = wirtinger_grad(phi.eval, z, cfg);
    const CVector g_cf = phi.grad(z);
    const double gscale = std::max(1.0, g_cf.cwiseAbs().maxCoeff());
    CHECK((g_fd - g_cf).cwiseAbs().maxCoeff() <= 1e-6 * gscale);

    const CMatrix h_fd = mixed_hessian(phi.eval, z, cfg).matrix();
    const CMatrix h_cf = phi.hess(z);
    const double hscale = std::max(1.0, h_cf.cwiseAbs().maxCoeff());
    CHECK((h_fd - h_cf).cwiseAbs().maxCoeff() <= 1e-4 * hscale);
  }
}

}  // namespace

TEST_CASE("standard potential values") {
  const auto disc = DomainSpec::disc();
  const auto phi = standard_potential(disc);
  CHECK(phi.eval(pt({0.5})) == doctest::Approx(-2.0 * std::log(0.75)).epsilon(1e-15));

  // polydisc(2), K=2: hessian at 0 is the identity
  const auto p2 = DomainSpec::polydisc(2, 2.0);
  const auto phip = standard_potential(p2);
  CHECK((phip.hess(pt({0.0, 0.0})) - CMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() <
        1e-15);

  // ball(2), K=1: hessian at 0 is 3 I
  const auto b2 = DomainSpec::ball(2);
  const auto phib = standard_potential(b2);
  CHECK((phib.hess(pt({0.0, 0.0})) - 3.0 * CMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() <
        1e-15);
}

TEST_CASE("standard potential closed forms agree with finite differences") {
  for (const char* desc : {"disc", "ball:2", "polydisc:3", "ball:2xpolydisc:2"}) {
    const auto d = DomainSpec::parse(desc, 1.5);
    check_closed_forms_match_fd(d, standard_potential(d), 21, 50, 0.1);
  }
}

TEST_CASE("standard potential matches the log kernel potential") {
  const auto d = DomainSpec::parse("ball:2xdisc", 2.0);
  const auto a = standard_potential(d);
  const auto b = log_kernel_potential(d);
  for (const auto& z : sample_interior(d, 9, 30, 0.05)) {
    CHECK(a.eval(z) == doctest::Approx(b.eval(z)).epsilon(1e-13));
  }
}

TEST_CASE("ko polydisc potential examples") {
  KoParams params;
  const auto phi1 = ko_potential_polydisc(1, params, 1.0);
  CHECK(phi1.eval(pt({0.0})) == doctest::Approx(0.0));

  // n=2, theta=(0,pi), K=2: phi_a(0) = (-1, +1)
  KoParams params2;
  params2.thetas = {0.0, M_PI};
  const auto phi2 = ko_potential_polydisc(2, params2, 2.0);
  const CVector g = phi2.grad(pt({0.0, 0.0}));
  CHECK(std::abs(g(0) - Complex(-1.0, 0.0)) < 1e-14);
  CHECK(std::abs(g(1) - Complex(1.0, 0.0)) < 1e-14);

  // boundary pole at z = e^{-i theta}
  CHECK_THROWS_AS(phi1.eval(pt({1.0})), Error);
}

TEST_CASE("ko polydisc closed forms agree with finite differences") {
  KoParams params;
  params.thetas = {0.3, -1.2, 2.0};
  const auto d = DomainSpec::polydisc(3, 2.0);
  check_closed_forms_match_fd(d, ko_potential_polydisc(3, params, 2.0), 31, 50, 0.1);
}

TEST_CASE("ko ball closed forms agree with finite differences") {
  KoParams params;
  params.direction = pt({Complex(0.6, 0.0), Complex(0.0, 0.8)});
  const auto d = DomainSpec::ball(2, 1.0);
  check_closed_forms_match_fd(d, ko_potential_ball(2, params, 1.0), 41, 50, 0.1);
}

TEST_CASE("ko ball reduces to the ko disc at n = 1") {
  KoParams params;  // b = 1, theta = 0
  const auto ball = ko_potential_ball(1, params, 1.0);
  const auto disc = ko_potential_polydisc(1, params, 1.0);
  SampleRng rng(13);
  for (int i = 0; i < 30; ++i) {
    const CVector z = pt({rng.disc_point(0.9)});
    CHECK(ball.eval(z) == doctest::Approx(disc.eval(z)).epsilon(1e-12));
  }
}

TEST_CASE("ko ball potential differs from the standard one by a pluriharmonic term") {
  // dd^c of both agree; compare finite-difference hessians of the raw
  // evaluations rather than the (shared) closed forms.
  const auto d = DomainSpec::ball(2, 1.0);
  const auto ko = ko_potential_ball(2, KoParams{}, 1.0);
  const auto std_pot = standard_potential(d);
  FdConfig cfg;
  for (const auto& z : sample_interior(d, 17, 20, 0.1)) {
    const CMatrix a = mixed_hessian(ko.eval, z, cfg).matrix();
    const CMatrix b = mixed_hessian(std_pot.eval, z, cfg).matrix();
    CHECK((a - b).cwiseAbs().maxCoeff() < 1e-6 * std::max(1.0, b.cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("ko potential rejects typeI factors") {
  const auto d = DomainSpec::type_i(2, 2);
  CHECK_THROWS_AS(ko_potential(d, KoParams{}), Error);
}

TEST_CASE("pluriharmonic perturbation changes the gradient but not the hessian") {
  const auto d = DomainSpec::disc();
  const auto base = standard_potential(d);

  // empty coefficient list is the identity
  const auto same = perturb_pluriharmonic(base, {});
  const CVector z0 = pt({Complex(0.2, 0.1)});
  CHECK(same.eval(z0) == base.eval(z0));

  // h = zeta^2 / 10
  PluriharmonicCoeffs coeffs;
  coeffs.push_back({{2}, Complex(0.1, 0.0)});
  const auto pert = perturb_pluriharmonic(base, coeffs);
  const CVector zero = pt({0.0});
  CHECK(pert.eval(zero) == doctest::Approx(base.eval(zero)));
  CHECK(std::abs(pert.grad(zero)(0) - base.grad(zero)(0)) < 1e-15);  // h'(0) = 0
  const CVector z1 = pt({0.3});
  CHECK(std::abs(pert.grad(z1)(0) - base.grad(z1)(0) - Complex(0.06, 0.0)) < 1e-15);

  // mixed hessian of the raw evaluation unchanged within 1e-6
  FdConfig cfg;
  for (const auto& z : sample_interior(d, 19, 20, 0.1)) {
    const CMatrix a = mixed_hessian(pert.eval, z, cfg).matrix();
    const CMatrix b = base.hess(z);
    CHECK((a - b).cwiseAbs().maxCoeff() < 1e-6 * std::max(1.0, b.cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("product potential assembles blocks") {
  const auto disc = standard_potential(DomainSpec::disc());
  const auto ball = standard_potential(DomainSpec::ball(2));
  const auto prod = product_potential({disc, ball});
  CHECK(prod.dim == 3);
  const CVector z = pt({0.2, Complex(0.1, -0.3), 0.4});
  CHECK(prod.eval(z) ==
        doctest::Approx(disc.eval(z.head(1)) + ball.eval(z.tail(2))).epsilon(1e-15));
  const CMatrix h = prod.hess(z);
  CHECK(std::abs(h(0, 1)) == 0.0);
  CHECK(std::abs(h(2, 0)) == 0.0);

  // single part is returned as-is
  const auto single = product_potential({disc});
  CHECK(single.eval(pt({0.3})) == disc.eval(pt({0.3})));
}
