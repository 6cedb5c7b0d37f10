#pragma once

#include <complex>
#include <functional>

#include <Eigen/Dense>

namespace bsdgeo {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// Real scalar field on C^n (points passed as complex coordinate vectors).
using ScalarField = std::function<double(const CVector&)>;
/// Complex-valued field on C^n.
using ComplexField = std::function<Complex(const CVector&)>;
/// Positive coefficient field on the unit disc.
using Disc1dField = std::function<double(Complex)>;

}  // namespace bsdgeo
