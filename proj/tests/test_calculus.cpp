#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "calculus.hpp"
#include "rng.hpp"

using namespace bsdgeo;

namespace {

CVector pt(std::initializer_list<Complex> cs) {
  CVector z(static_cast<int>(cs.size()));
  int i = 0;
  for (auto c : cs) z(i++) = c;
  return z;
}

// |z|^2 on C^1
double abs_sq(const CVector& z) { return std::norm(z(0)); }

// disc log-kernel potential at K = 1
double disc_potential(const CVector& z) { return -2.0 * std::log(1.0 - std::norm(z(0))); }

// 2 Re(h) for the holomorphic polynomial h = z1^2 z2 + 3 z2
double pluriharmonic(const CVector& z) {
  const Complex h = z(0) * z(0) * z(1) + 3.0 * z(1);
  return 2.0 * h.real();
}

}  // namespace

TEST_CASE("wirtinger gradient basics") {
  FdConfig cfg;
  const CVector a = pt({Complex(0.3, -0.2)});

  // d(z zbar)/dz = zbar
  const CVector g1 = wirtinger_grad(abs_sq, a, cfg);
  CHECK(std::abs(g1(0) - std::conj(a(0))) < 1e-10);

  // d(Re z)/dz = 1/2
  const CVector g2 = wirtinger_grad([](const CVector& z) { return z(0).real(); }, a, cfg);
  CHECK(std::abs(g2(0) - 0.5) < 1e-10);

  // disc potential: phi_zeta = 2 zbar / (1 - |z|^2) -> 4/3 at 1/2
  const CVector half = pt({0.5});
  const CVector g3 = wirtinger_grad(disc_potential, half, cfg);
  CHECK(std::abs(g3(0) - 4.0 / 3.0) < 1e-9);
}

TEST_CASE("mixed hessian basics") {
  FdConfig cfg;
  const CVector a = pt({Complex(0.1, 0.4)});
  const auto h1 = mixed_hessian(abs_sq, a, cfg);
  CHECK(std::abs(h1.matrix()(0, 0) - 1.0) < 1e-7);

  // disc potential at 0: 2/(1-|z|^2)^2 -> 2
  const auto h2 = mixed_hessian(disc_potential, pt({0.0}), cfg);
  CHECK(std::abs(h2.matrix()(0, 0) - 2.0) < 1e-7);
}

TEST_CASE("pluriharmonic functions have vanishing mixed hessian") {
  FdConfig cfg;
  SampleRng rng(5);
  for (int i = 0; i < 20; ++i) {
    const CVector z = pt({rng.disc_point(0.9), rng.disc_point(0.9)});
    const auto h = mixed_hessian(pluriharmonic, z, cfg);
    CHECK(h.matrix().cwiseAbs().maxCoeff() < 1e-6);
  }
}

TEST_CASE("closed form vs finite differences on the disc potential") {
  FdConfig cfg;
  SampleRng rng(7);
  for (int i = 0; i < 50; ++i) {
    const Complex zeta = rng.disc_point(0.85);
    const CVector z = pt({zeta});
    const double s = std::norm(zeta);
    const Complex grad_exact = 2.0 * std::conj(zeta) / (1.0 - s);
    const double hess_exact = 2.0 / ((1.0 - s) * (1.0 - s));
    const CVector g = wirtinger_grad(disc_potential, z, cfg);
    const auto h = mixed_hessian(disc_potential, z, cfg);
    CHECK(std::abs(g(0) - grad_exact) <= 1e-6 * std::max(1.0, std::abs(grad_exact)));
    CHECK(std::abs(h.matrix()(0, 0) - hess_exact) <= 1e-4 * std::max(1.0, hess_exact));
  }
}

TEST_CASE("richardson extrapolation raises the observed convergence order") {
  const CVector z = pt({Complex(0.4, 0.1)});
  // d/dx phi = 2 Re(phi_z)
  const double exact = 2.0 * (2.0 * std::conj(z(0)) / (1.0 - std::norm(z(0)))).real();

  auto err_at = [&](double h, bool rich) {
    return std::abs(fd_first(disc_potential, z, 0, h, rich) - exact);
  };
  const double h = 2e-2;
  const double order_plain = std::log2(err_at(h, false) / err_at(h / 2, false));
  const double order_rich = std::log2(err_at(h, true) / err_at(h / 2, true));
  CHECK(order_plain > 1.5);
  CHECK(order_plain < 2.5);
  CHECK(order_rich >= 3.5);
}

TEST_CASE("holomorphic hessian of the disc potential") {
  // phi_{zz} = 2 zbar^2 / (1-|z|^2)^2
  FdConfig cfg;
  const Complex zeta(0.3, 0.2);
  const CVector z = pt({zeta});
  const Complex expected =
      2.0 * std::conj(zeta) * std::conj(zeta) / std::pow(1.0 - std::norm(zeta), 2);
  const CMatrix s = holomorphic_hessian(disc_potential, z, cfg);
  CHECK(std::abs(s(0, 0) - expected) < 1e-7);
}

TEST_CASE("hermitian form services") {
  const CMatrix id = CMatrix::Identity(2, 2);
  CHECK((HermitianForm(id).inverse() - id).cwiseAbs().maxCoeff() < 1e-14);

  CMatrix diag = CMatrix::Zero(2, 2);
  diag(0, 0) = 2.0;
  diag(1, 1) = 4.0;
  const HermitianForm d(diag);
  CHECK(std::abs(d.inverse()(0, 0).real() - 0.5) < 1e-14);
  CHECK(std::abs(d.inverse()(1, 1).real() - 0.25) < 1e-14);
  CHECK(d.determinant() == doctest::Approx(8.0));
  CHECK(d.log_determinant() == doctest::Approx(std::log(8.0)));

  // disc metric at 1/2 with K=1: g = 2/(9/16)... = 32/9, inverse 9/32
  CMatrix g(1, 1);
  g(0, 0) = 2.0 / std::pow(1.0 - 0.25, 2);
  CHECK(std::abs(HermitianForm(g).inverse()(0, 0).real() - 9.0 / 32.0) < 1e-14);

  CMatrix indef = CMatrix::Identity(2, 2);
  indef(1, 1) = -1.0;
  const HermitianForm bad(indef);
  CHECK_FALSE(bad.positive_definite());
  CHECK_THROWS_AS(bad.inverse(), Error);

  // G * G^-1 = I within 1e-10 on a random hermitian PD matrix
  SampleRng rng(3);
  CMatrix a(3, 3);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) a(r, c) = Complex(rng.uniform(-1, 1), rng.uniform(-1, 1));
  const CMatrix pd = a * a.adjoint() + 0.5 * CMatrix::Identity(3, 3);
  const HermitianForm h(pd);
  CHECK((pd * h.inverse() - CMatrix::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("asymmetry diagnostic") {
  CMatrix raw(2, 2);
  raw << Complex(1, 0), Complex(0.5, 0.1), Complex(0.5, -0.1 + 2e-7), Complex(2, 0);
  const HermitianForm h(raw);
  CHECK(h.asymmetry() > 0.0);
  CHECK(h.asymmetry() < 2e-7);
  CHECK((h.matrix() - h.matrix().adjoint().eval()).cwiseAbs().maxCoeff() < 1e-16);
}
