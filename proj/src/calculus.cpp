#include "calculus.hpp"

#include <cmath>

#include <Eigen/Cholesky>

namespace bsdgeo {

HermitianForm::HermitianForm(CMatrix raw, bool symmetrize) {
  if (symmetrize) {
    const CMatrix anti = 0.5 * (raw - raw.adjoint().eval());
    asymmetry_ = anti.cwiseAbs().maxCoeff();
    g_ = 0.5 * (raw + raw.adjoint().eval());
  } else {
    g_ = std::move(raw);
  }
}

bool HermitianForm::positive_definite() const {
  Eigen::LLT<CMatrix> llt(g_);
  return llt.info() == Eigen::Success;
}

CMatrix HermitianForm::inverse() const {
  Eigen::LLT<CMatrix> llt(g_);
  require(llt.info() == Eigen::Success, ErrorCode::DegenerateMetric,
          "hermitian form is not positive definite");
  return llt.solve(CMatrix::Identity(dim(), dim()));
}

double HermitianForm::determinant() const {
  return g_.determinant().real();
}

double HermitianForm::log_determinant() const {
  Eigen::LLT<CMatrix> llt(g_);
  require(llt.info() == Eigen::Success, ErrorCode::DegenerateMetric,
          "log det of a non-positive hermitian form");
  double s = 0.0;
  const auto& l = llt.matrixLLT();
  for (int i = 0; i < dim(); ++i) s += std::log(l(i, i).real());
  return 2.0 * s;
}

HermitianForm hermitian_inverse(const HermitianForm& g) {
  return HermitianForm(g.inverse(), false);
}

namespace {

CVector shifted(const CVector& z, int i, double t) {
  CVector out = z;
  out(i / 2) += (i % 2 == 0) ? Complex(t, 0.0) : Complex(0.0, t);
  return out;
}

double first_plain(const ScalarField& f, const CVector& z, int i, double h) {
  return (f(shifted(z, i, h)) - f(shifted(z, i, -h))) / (2.0 * h);
}

double second_plain(const ScalarField& f, const CVector& z, int i, int j, double h) {
  if (i == j) {
    return (f(shifted(z, i, h)) - 2.0 * f(z) + f(shifted(z, i, -h))) / (h * h);
  }
  const double pp = f(shifted(shifted(z, i, h), j, h));
  const double pm = f(shifted(shifted(z, i, h), j, -h));
  const double mp = f(shifted(shifted(z, i, -h), j, h));
  const double mm = f(shifted(shifted(z, i, -h), j, -h));
  return (pp - pm - mp + mm) / (4.0 * h * h);
}

Complex cfirst_plain(const ComplexField& f, const CVector& z, int i, double h) {
  return (f(shifted(z, i, h)) - f(shifted(z, i, -h))) / (2.0 * h);
}

}  // namespace

double fd_first(const ScalarField& f, const CVector& z, int i, double h,
                bool richardson) {
  require(h > 0.0, ErrorCode::InvalidArgument, "step must be positive");
  const double d = first_plain(f, z, i, h);
  if (!richardson) return d;
  return (4.0 * first_plain(f, z, i, 0.5 * h) - d) / 3.0;
}

double fd_second(const ScalarField& f, const CVector& z, int i, int j, double h,
                 bool richardson) {
  require(h > 0.0, ErrorCode::InvalidArgument, "step must be positive");
  const double d = second_plain(f, z, i, j, h);
  if (!richardson) return d;
  return (4.0 * second_plain(f, z, i, j, 0.5 * h) - d) / 3.0;
}

Complex wirtinger_dz(const ComplexField& F, const CVector& z, int a, double h,
                     bool richardson) {
  auto d = [&](double hh) {
    const Complex dx = cfirst_plain(F, z, 2 * a, hh);
    const Complex dy = cfirst_plain(F, z, 2 * a + 1, hh);
    return 0.5 * (dx - Complex(0.0, 1.0) * dy);
  };
  const Complex v = d(h);
  if (!richardson) return v;
  return (4.0 * d(0.5 * h) - v) / 3.0;
}

CVector wirtinger_grad(const ScalarField& f, const CVector& z, const FdConfig& cfg) {
  const int n = static_cast<int>(z.size());
  const double h = cfg.step * std::max(1.0, z.norm());
  CVector grad(n);
  for (int a = 0; a < n; ++a) {
    const double dx = fd_first(f, z, 2 * a, h, cfg.richardson);
    const double dy = fd_first(f, z, 2 * a + 1, h, cfg.richardson);
    grad(a) = 0.5 * Complex(dx, -dy);
  }
  return grad;
}

HermitianForm mixed_hessian(const ScalarField& f, const CVector& z, const FdConfig& cfg) {
  return mixed_hessian(f, z, cfg, cfg.hess_step * std::max(1.0, z.norm()));
}

HermitianForm mixed_hessian(const ScalarField& f, const CVector& z, const FdConfig& cfg,
                            double abs_step) {
  const int n = static_cast<int>(z.size());
  const double h = abs_step;
  CMatrix hess(n, n);
  for (int a = 0; a < n; ++a) {
    hess(a, a) = 0.25 * (fd_second(f, z, 2 * a, 2 * a, h, cfg.richardson) +
                         fd_second(f, z, 2 * a + 1, 2 * a + 1, h, cfg.richardson));
    for (int b = a + 1; b < n; ++b) {
      const double xx = fd_second(f, z, 2 * a, 2 * b, h, cfg.richardson);
      const double yy = fd_second(f, z, 2 * a + 1, 2 * b + 1, h, cfg.richardson);
      const double xy = fd_second(f, z, 2 * a, 2 * b + 1, h, cfg.richardson);
      const double yx = fd_second(f, z, 2 * a + 1, 2 * b, h, cfg.richardson);
      // d/dz^a d/dzbar^b = (dxx + dyy + i(dxy - dyx)) / 4
      hess(a, b) = 0.25 * Complex(xx + yy, xy - yx);
      hess(b, a) = std::conj(hess(a, b));
    }
  }
  return HermitianForm(std::move(hess), cfg.symmetrize);
}

CMatrix holomorphic_hessian(const ScalarField& f, const CVector& z, const FdConfig& cfg) {
  const int n = static_cast<int>(z.size());
  const double h = cfg.hess_step * std::max(1.0, z.norm());
  CMatrix hess(n, n);
  for (int a = 0; a < n; ++a) {
    const double xx = fd_second(f, z, 2 * a, 2 * a, h, cfg.richardson);
    const double yy = fd_second(f, z, 2 * a + 1, 2 * a + 1, h, cfg.richardson);
    const double xy = fd_second(f, z, 2 * a, 2 * a + 1, h, cfg.richardson);
    hess(a, a) = 0.25 * Complex(xx - yy, -2.0 * xy);
    for (int b = a + 1; b < n; ++b) {
      const double xx2 = fd_second(f, z, 2 * a, 2 * b, h, cfg.richardson);
      const double yy2 = fd_second(f, z, 2 * a + 1, 2 * b + 1, h, cfg.richardson);
      const double xy2 = fd_second(f, z, 2 * a, 2 * b + 1, h, cfg.richardson);
      const double yx2 = fd_second(f, z, 2 * a + 1, 2 * b, h, cfg.richardson);
      // d/dz^a d/dz^b = (dxx - dyy - i(dxy + dyx)) / 4
      hess(a, b) = 0.25 * Complex(xx2 - yy2, -(xy2 + yx2));
      hess(b, a) = hess(a, b);
    }
  }
  return hess;
}

}  // namespace bsdgeo
