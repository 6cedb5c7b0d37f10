#pragma once

#include <vector>

#include "calculus.hpp"
#include "domains.hpp"
#include "potential_fn.hpp"

namespace bsdgeo {

/// A Kahler metric g_{a b-bar}(z) = d2(phi)/dz^a dzbar^b realized from a
/// potential. Uses the potential's closed-form derivatives when present and
/// finite differences otherwise. Immutable after construction.
struct MetricField {
  DomainSpec domain;
  PotentialFn potential;
  FdConfig cfg;

  MetricField(DomainSpec d, PotentialFn phi, FdConfig c = {});

  bool closed_form() const { return potential.has_hess(); }

  double potential_value(const CVector& z) const { return potential.eval(z); }

  /// phi_a(z), closed form or Wirtinger finite differences.
  CVector potential_grad(const CVector& z) const;

  /// g(z); throws DegenerateMetric when the result is not positive definite.
  HermitianForm metric_at(const CVector& z) const;

  // Stencil steps for derivatives of fields derived from the metric
  // (metric entries, gradient vector, log det g). Boundary-gap scaled when
  // the metric itself is a finite-difference result.
  double derived_first_step(const CVector& z) const;
  double derived_second_step(const CVector& z) const;
};

struct TangentVector {
  CVector base;
  CVector components;  // V^a
};

HermitianForm metric_at(const MetricField& m, const CVector& z);

/// V^a = g^{a b-bar} phi_{b-bar}, the (1,0) gradient field of the potential.
TangentVector gradient_vector(const MetricField& m, const CVector& z);

/// |d(phi)|^2_omega = phi_a phi_{b-bar} g^{a b-bar} = <V, V>_g.
double gradient_length_sq(const MetricField& m, const CVector& z);

/// |d^c phi|^2_omega = |d(phi)|^2_omega / 2.
double dc_length_sq(const MetricField& m, const CVector& z);

/// Gamma[c](a, b) = g^{c d-bar} d_a g_{b d-bar}; symmetric in (a, b) up to
/// stencil error (not symmetrized here).
std::vector<CMatrix> christoffel(const MetricField& m, const CVector& z);

/// phi_{a;b} = phi_{ab} - Gamma^c_{ab} phi_c, symmetrized in (a, b).
CMatrix covariant_hessian(const MetricField& m, const CVector& z);

/// V^a_{;b} = d_b V^a + Gamma^a_{bc} V^c; equals the identity matrix for
/// any Kahler potential of the metric.
CMatrix gradient_covariant_jacobian(const MetricField& m, const CVector& z);

/// phi_{a;b} phi^{a;b}, the squared metric norm of the covariant hessian.
double covariant_hessian_norm_sq(const MetricField& m, const CVector& z);

/// R_{a b-bar}(z) as the negative mixed hessian of log det g.
HermitianForm ricci_at(const MetricField& m, const CVector& z);

/// g^{a b-bar} f_{a b-bar}; the second-order term of the Laplace-Beltrami
/// operator (all of it, when f is evaluated on a Kahler manifold).
double laplace_beltrami(const ScalarField& f, const MetricField& m, const CVector& z);

/// Gaussian curvature of the hermitian disc metric with coefficient
/// lambda: kappa = -(1/lambda) d2(log lambda)/dzeta dzetabar. The stencil
/// step is cfg.curvature_scale * (1 - |zeta|^2).
double gauss_curvature_1d(const Disc1dField& lambda, Complex zeta, const FdConfig& cfg = {});

}  // namespace bsdgeo
