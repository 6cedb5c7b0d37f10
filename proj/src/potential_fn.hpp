#pragma once

#include <functional>
#include <string>

#include "types.hpp"

namespace bsdgeo {

/// A real Kahler potential on a domain. `grad` holds the Wirtinger
/// derivatives d(phi)/dz^a, `hess` the mixed hessian d2(phi)/dz^a dzbar^b.
/// Either may be absent, in which case callers fall back to finite
/// differences of `eval`. Potentials are defined up to additive constants.
struct PotentialFn {
  std::string label;
  int dim = 0;
  std::function<double(const CVector&)> eval;
  std::function<CVector(const CVector&)> grad;  // optional closed form
  std::function<CMatrix(const CVector&)> hess;  // optional closed form

  bool has_grad() const { return static_cast<bool>(grad); }
  bool has_hess() const { return static_cast<bool>(hess); }
};

}  // namespace bsdgeo
