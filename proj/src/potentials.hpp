#pragma once

#include <utility>
#include <vector>

#include "domains.hpp"
#include "potential_fn.hpp"

namespace bsdgeo {

/// Parameters of the constant-gradient-length potentials: one boundary
/// angle per disc coordinate and a unit boundary direction for ball factors.
struct KoParams {
  std::vector<double> thetas;  // defaults to 0 per disc coordinate
  CVector direction;           // |b| = 1; defaults to the first basis vector
};

/// Monomial coefficients of a holomorphic polynomial h; the perturbation
/// adds 2 Re(h). Each entry is (exponent multi-index, coefficient).
using PluriharmonicCoeffs = std::vector<std::pair<std::vector<int>, Complex>>;

/// The log-kernel potential of the domain with closed-form gradient and
/// mixed hessian attached for Disc/Ball/Polydisc factors. TypeI factors are
/// evaluation-only (their derivatives come from finite differences).
PotentialFn standard_potential(const DomainSpec& domain);

/// phi = (1/K) log prod_a |1 - e^{i theta_a} z^a|^4 / (1 - |z^a|^2)^2 on the
/// n-polydisc: a potential of the Kahler-Einstein metric with constant
/// gradient length 2n/K. Poles at z^a = e^{-i theta_a} on the boundary.
PotentialFn ko_potential_polydisc(int n, const KoParams& params, double ricci_constant);

/// phi = ((n+1)/K) log(|1 - <z,b>|^2 / (1 - |z|^2)) on the n-ball, |b| = 1:
/// a potential of the Kahler-Einstein metric with constant gradient length
/// (n+1)/K. Pole at z = b on the boundary.
PotentialFn ko_potential_ball(int n, const KoParams& params, double ricci_constant);

/// Per-factor constant-gradient-length potential for domains whose factors
/// are all discs, polydiscs, or balls. TypeI factors are rejected.
PotentialFn ko_potential(const DomainSpec& domain, const KoParams& params);

/// base + 2 Re(h) for the holomorphic polynomial h given by `coeffs`;
/// the mixed hessian (and hence dd^c) is unchanged by construction.
PotentialFn perturb_pluriharmonic(const PotentialFn& base, const PluriharmonicCoeffs& coeffs);

/// Blockwise sum of the parts; closed-form derivatives concatenate and are
/// present exactly when every part carries them.
PotentialFn product_potential(const std::vector<PotentialFn>& parts);

}  // namespace bsdgeo
