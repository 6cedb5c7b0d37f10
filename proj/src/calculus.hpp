#pragma once

#include "error.hpp"
#include "types.hpp"

namespace bsdgeo {

/// Step/extrapolation settings for the finite-difference engine.
///
/// All fields are real scalars on C^n, so derivatives are taken as central
/// differences in the underlying real coordinates and combined into
/// Wirtinger derivatives; complex-step differentiation does not apply.
/// Richardson extrapolation (h and h/2) raises the order from 2 to 4.
///
/// The `nested_*` and `curvature` scales apply to derivatives of fields that
/// are themselves finite-difference results (metric entries of potentials
/// without closed forms, log det g, pullback coefficients). Those fields
/// carry rounding noise far above machine epsilon, so their stencils use a
/// step proportional to the distance to the domain boundary instead of a
/// fixed tiny one.
struct FdConfig {
  double step = 1e-5;       // first-order Wirtinger derivatives
  double hess_step = 1e-4;  // second-order stencils
  bool richardson = true;
  bool symmetrize = true;

  double nested_first_scale = 0.02;  // x boundary gap
  double nested_second_scale = 0.1;  // x boundary gap
  double curvature_scale = 0.01;     // x (1 - |zeta|^2) on the disc
};

/// The matrix (g_{a b-bar}) of a hermitian form at a point, with
/// inverse/determinant services. Construction optionally hermitian-
/// symmetrizes and records the discarded asymmetry as a diagnostic.
class HermitianForm {
public:
  HermitianForm() = default;
  explicit HermitianForm(CMatrix raw, bool symmetrize = true);

  int dim() const { return static_cast<int>(g_.rows()); }
  const CMatrix& matrix() const { return g_; }
  double asymmetry() const { return asymmetry_; }

  bool positive_definite() const;
  /// Inverse via Cholesky; requires positive definiteness.
  CMatrix inverse() const;
  double determinant() const;
  double log_determinant() const;

private:
  CMatrix g_;
  double asymmetry_ = 0.0;
};

HermitianForm hermitian_inverse(const HermitianForm& g);

// Real-coordinate central differences. Index i addresses Re z^a (i = 2a)
// or Im z^a (i = 2a+1).
double fd_first(const ScalarField& f, const CVector& z, int i, double h,
                bool richardson);
double fd_second(const ScalarField& f, const CVector& z, int i, int j, double h,
                 bool richardson);

/// Vector of d(f)/dz^a = (d/dx^a - i d/dy^a) f / 2.
CVector wirtinger_grad(const ScalarField& f, const CVector& z, const FdConfig& cfg);

/// Matrix of d2(f)/dz^a dzbar^b.
HermitianForm mixed_hessian(const ScalarField& f, const CVector& z, const FdConfig& cfg);

/// Same, with an explicit absolute stencil step.
HermitianForm mixed_hessian(const ScalarField& f, const CVector& z, const FdConfig& cfg,
                            double abs_step);

/// Matrix of d2(f)/dz^a dz^b (both indices holomorphic); symmetrized.
CMatrix holomorphic_hessian(const ScalarField& f, const CVector& z, const FdConfig& cfg);

/// d(F)/dz^a for a complex-valued field F.
Complex wirtinger_dz(const ComplexField& F, const CVector& z, int a, double h,
                     bool richardson);

}  // namespace bsdgeo
