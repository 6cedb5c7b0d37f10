#pragma once

#include <functional>
#include <string>
#include <vector>

#include "geometry.hpp"

namespace bsdgeo {

/// A holomorphic map from the unit disc into a domain. Built-in maps are
/// componentwise affine or Mobius; their componentwise derivatives are
/// either identically zero or nowhere zero.
struct DiscEmbedding {
  std::string label;
  int target_dim = 0;
  int declared_rank = 1;  // number of polydisc coordinates moved by the map
  std::function<CVector(Complex)> map;
};

/// A holomorphic embedding of the r-polydisc into a domain.
struct PolydiscEmbedding {
  std::string label;
  int target_dim = 0;
  int r = 1;
  std::function<CVector(const CVector&)> map;
};

/// zeta -> (zeta, ..., zeta, 0, ..., 0) with k moving coordinates, a rank-k
/// totally geodesic disc in the n-polydisc.
DiscEmbedding diagonal_disc(int n, int k);

/// (zeta^1, ..., zeta^r) -> the p x q matrix with diag(zeta^1, ..., zeta^r)
/// in the leading block, r = min(p, q): the standard maximal polydisc.
PolydiscEmbedding maximal_polydisc_typeI(int p, int q);

/// Maximal polydisc of any registered domain, assembled factorwise
/// (identity on disc/polydisc factors, a coordinate axis disc in each ball
/// factor, the diagonal block in each TypeI factor).
PolydiscEmbedding maximal_polydisc(const DomainSpec& domain);

/// The full-diagonal disc of a polydisc embedding: zeta -> P(zeta, ..., zeta).
DiscEmbedding full_diagonal_disc(const PolydiscEmbedding& poly);

/// The j-th coordinate disc of a polydisc embedding: zeta -> P(0,..,zeta,..,0).
DiscEmbedding coordinate_disc(const PolydiscEmbedding& poly, int j);

/// u'(zeta) by central differences (u is holomorphic, so the real-direction
/// central difference converges to the complex derivative).
CVector disc_map_derivative(const DiscEmbedding& u, Complex zeta, double step = 1e-4,
                            bool richardson = true);

/// lambda(zeta) = sum_{a,b} g_{a b-bar}(u(zeta)) u'^a(zeta) conj(u'^b(zeta)),
/// the coefficient of the pulled-back metric on the disc.
double pullback_metric_1d(const DiscEmbedding& u, const MetricField& m, Complex zeta);

/// Recovers the rank k of a disc embedded in a polydisc (uniform Ricci
/// constant K) from lambda(0) = 2k/K; errors when the recovered value is
/// farther than `window` from an integer.
int disc_rank_measured(const DiscEmbedding& u, const MetricField& m, double window = 0.05);

/// | |u'|^2 - ((1-|u|^2)/(1-|zeta|^2))^2 |, zero exactly when u is a disc
/// automorphism (the invariance of the Poincare metric).
double schwarz_pick_residual(const std::function<Complex(Complex)>& u, Complex zeta,
                             double step = 1e-4);

/// Disc automorphism zeta -> e^{i theta} (zeta - a) / (1 - conj(a) zeta).
struct MoebiusMap {
  Complex a;
  double theta = 0.0;
  Complex operator()(Complex zeta) const;
};

struct FlowResult {
  std::vector<double> times;
  std::vector<CVector> points;
  bool escaped = false;  // trajectory left the margin-shrunk domain early
};

/// Fixed-step RK4 integration of dz/dt = V(z) for the gradient field V of
/// the metric's potential. On escape the partial trajectory is returned
/// with the flag set.
FlowResult flow_gradient(const MetricField& m, const CVector& z0, double t_max,
                         double dt, double margin = 0.05);

}  // namespace bsdgeo
