#include "geometry.hpp"

#include <cmath>
#include <utility>

namespace bsdgeo {

namespace {

constexpr Complex kI(0.0, 1.0);

CVector shifted(const CVector& z, int i, double t) {
  CVector out = z;
  out(i / 2) += (i % 2 == 0) ? Complex(t, 0.0) : Complex(0.0, t);
  return out;
}

// d/dz^a of a matrix-valued field, sharing stencil evaluations per direction.
CMatrix matrix_dz(const std::function<CMatrix(const CVector&)>& field, const CVector& z,
                  int a, double h, bool richardson) {
  auto at = [&](double hh) {
    const CMatrix dx =
        (field(shifted(z, 2 * a, hh)) - field(shifted(z, 2 * a, -hh))) / (2.0 * hh);
    const CMatrix dy =
        (field(shifted(z, 2 * a + 1, hh)) - field(shifted(z, 2 * a + 1, -hh))) / (2.0 * hh);
    return CMatrix(0.5 * (dx - kI * dy));
  };
  const CMatrix v = at(h);
  if (!richardson) return v;
  return (4.0 * at(0.5 * h) - v) / 3.0;
}

CVector vector_dz(const std::function<CVector(const CVector&)>& field, const CVector& z,
                  int a, double h, bool richardson) {
  auto at = [&](double hh) {
    const CVector dx =
        (field(shifted(z, 2 * a, hh)) - field(shifted(z, 2 * a, -hh))) / (2.0 * hh);
    const CVector dy =
        (field(shifted(z, 2 * a + 1, hh)) - field(shifted(z, 2 * a + 1, -hh))) / (2.0 * hh);
    return CVector(0.5 * (dx - kI * dy));
  };
  const CVector v = at(h);
  if (!richardson) return v;
  return (4.0 * at(0.5 * h) - v) / 3.0;
}

// d/dz^a g_{b d-bar} for all directions a.
std::vector<CMatrix> metric_dz(const MetricField& m, const CVector& z) {
  const int n = m.potential.dim;
  const double h = m.derived_first_step(z);
  auto field = [&m](const CVector& w) { return m.metric_at(w).matrix(); };
  std::vector<CMatrix> d;
  d.reserve(n);
  for (int a = 0; a < n; ++a) d.push_back(matrix_dz(field, z, a, h, m.cfg.richardson));
  return d;
}

// phi_{ab} (holomorphic second derivatives).
CMatrix potential_holo_hessian(const MetricField& m, const CVector& z) {
  const int n = m.potential.dim;
  if (m.potential.has_grad()) {
    const double h = m.cfg.step * std::max(1.0, z.norm());
    auto field = [&m](const CVector& w) { return CVector(m.potential.grad(w)); };
    CMatrix s(n, n);
    for (int b = 0; b < n; ++b) s.col(b) = vector_dz(field, z, b, h, m.cfg.richardson);
    return CMatrix(0.5 * (s + s.transpose().eval()));
  }
  return holomorphic_hessian(m.potential.eval, z, m.cfg);
}

}  // namespace

MetricField::MetricField(DomainSpec d, PotentialFn phi, FdConfig c)
    : domain(std::move(d)), potential(std::move(phi)), cfg(c) {
  require(domain.dim() == potential.dim, ErrorCode::DimensionMismatch,
          "potential dimension does not match the domain");
}

CVector MetricField::potential_grad(const CVector& z) const {
  if (potential.has_grad()) return potential.grad(z);
  return wirtinger_grad(potential.eval, z, cfg);
}

HermitianForm MetricField::metric_at(const CVector& z) const {
  HermitianForm g = potential.has_hess() ? HermitianForm(potential.hess(z), cfg.symmetrize)
                                         : mixed_hessian(potential.eval, z, cfg);
  require(g.positive_definite(), ErrorCode::DegenerateMetric,
          "metric is not positive definite (bad potential or boundary proximity)");
  return g;
}

double MetricField::derived_first_step(const CVector& z) const {
  if (closed_form()) return cfg.step * std::max(1.0, z.norm());
  return cfg.nested_first_scale * boundary_gap(domain, z);
}

double MetricField::derived_second_step(const CVector& z) const {
  if (closed_form()) return cfg.hess_step * std::max(1.0, z.norm());
  return cfg.nested_second_scale * boundary_gap(domain, z);
}

HermitianForm metric_at(const MetricField& m, const CVector& z) { return m.metric_at(z); }

TangentVector gradient_vector(const MetricField& m, const CVector& z) {
  const CMatrix ginv = m.metric_at(z).inverse();
  const CVector p = m.potential_grad(z);
  return {z, (ginv * p).conjugate()};
}

double gradient_length_sq(const MetricField& m, const CVector& z) {
  const CMatrix ginv = m.metric_at(z).inverse();
  const CVector p = m.potential_grad(z);
  return std::max(0.0, (p.adjoint() * ginv * p)(0, 0).real());
}

double dc_length_sq(const MetricField& m, const CVector& z) {
  return 0.5 * gradient_length_sq(m, z);
}

std::vector<CMatrix> christoffel(const MetricField& m, const CVector& z) {
  const int n = m.potential.dim;
  const CMatrix ginv = m.metric_at(z).inverse();
  const auto dg = metric_dz(m, z);
  // Gamma^c_{ab} = (dG_a * Ginv)(b, c)
  std::vector<CMatrix> gamma(n, CMatrix(n, n));
  for (int a = 0; a < n; ++a) {
    const CMatrix prod = dg[a] * ginv;
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) gamma[c](a, b) = prod(b, c);
  }
  return gamma;
}

CMatrix covariant_hessian(const MetricField& m, const CVector& z) {
  const CMatrix ginv = m.metric_at(z).inverse();
  const CVector p = m.potential_grad(z);
  const auto dg = metric_dz(m, z);
  const CMatrix holo = potential_holo_hessian(m, z);
  const int n = m.potential.dim;
  CMatrix s(n, n);
  for (int a = 0; a < n; ++a) s.row(a) = holo.row(a) - (dg[a] * ginv * p).transpose();
  return CMatrix(0.5 * (s + s.transpose().eval()));
}

CMatrix gradient_covariant_jacobian(const MetricField& m, const CVector& z) {
  const int n = m.potential.dim;
  const CMatrix ginv = m.metric_at(z).inverse();
  const CVector v = gradient_vector(m, z).components;
  const auto dg = metric_dz(m, z);
  const double h = m.derived_first_step(z);
  auto v_field = [&m](const CVector& w) { return gradient_vector(m, w).components; };
  CMatrix jac(n, n);
  for (int b = 0; b < n; ++b) {
    const CVector dv = vector_dz(v_field, z, b, h, m.cfg.richardson);
    // sum_c Gamma^a_{bc} V^c = (Ginv^T dG_b^T V)^a
    const CVector conn = ginv.transpose() * (dg[b].transpose() * v);
    jac.col(b) = dv + conn;
  }
  return jac;
}

double covariant_hessian_norm_sq(const MetricField& m, const CVector& z) {
  const CMatrix ginv = m.metric_at(z).inverse();
  const CMatrix s = covariant_hessian(m, z);
  const CMatrix t = ginv * s * ginv.transpose();
  return (s.cwiseProduct(t.conjugate())).sum().real();
}

HermitianForm ricci_at(const MetricField& m, const CVector& z) {
  auto log_det = [&m](const CVector& w) { return m.metric_at(w).log_determinant(); };
  const HermitianForm h = mixed_hessian(log_det, z, m.cfg, m.derived_second_step(z));
  return HermitianForm(-h.matrix(), false);
}

double laplace_beltrami(const ScalarField& f, const MetricField& m, const CVector& z) {
  const CMatrix ginv = m.metric_at(z).inverse();
  const HermitianForm hf = mixed_hessian(f, z, m.cfg);
  return (ginv * hf.matrix()).trace().real();
}

double gauss_curvature_1d(const Disc1dField& lambda, Complex zeta, const FdConfig& cfg) {
  const double lam0 = lambda(zeta);
  require(lam0 > 0.0, ErrorCode::DegenerateMetric, "nonpositive metric coefficient");
  const double h = cfg.curvature_scale * (1.0 - std::norm(zeta));
  require(h > 0.0, ErrorCode::Boundary, "curvature stencil outside the disc");
  ScalarField log_lam = [&lambda](const CVector& w) {
    const double v = lambda(w(0));
    require(v > 0.0, ErrorCode::DegenerateMetric, "nonpositive metric coefficient");
    return std::log(v);
  };
  CVector base(1);
  base(0) = zeta;
  const double ddbar = 0.25 * (fd_second(log_lam, base, 0, 0, h, cfg.richardson) +
                               fd_second(log_lam, base, 1, 1, h, cfg.richardson));
  return -ddbar / lam0;
}

}  // namespace bsdgeo
