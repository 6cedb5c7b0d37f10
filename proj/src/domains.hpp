#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "error.hpp"
#include "potential_fn.hpp"
#include "types.hpp"

namespace bsdgeo {

enum class FactorKind { Disc, Ball, Polydisc, TypeI };

/// One irreducible block of a product domain in its standard bounded
/// (circular, convex) matrix realization.
///
/// Supported kinds and their invariants:
///   Disc         dim 1,   rank 1,        genus 2
///   Ball(n)      dim n,   rank 1,        genus n+1
///   Polydisc(n)  dim n,   rank n,        genus 2 (per disc factor)
///   TypeI(p,q)   dim p*q, rank min(p,q), genus p+q
struct IrreducibleFactor {
  FactorKind kind = FactorKind::Disc;
  int n = 1;         // size for Ball / Polydisc
  int p = 0, q = 0;  // matrix shape for TypeI (entries stored row-major)

  static IrreducibleFactor disc();
  static IrreducibleFactor ball(int n);
  static IrreducibleFactor polydisc(int n);
  static IrreducibleFactor type_i(int p, int q);

  int dim() const;
  int rank() const;
  int genus() const;
  std::string descriptor() const;

  /// Generic norm N(z, w) of the factor; hermitian, N(z, z) > 0 inside.
  Complex generic_norm(const CVector& z, const CVector& w) const;

  /// 1 - (membership measure): positive inside the open domain, 0 on the
  /// boundary. Disc/Ball use the euclidean norm, Polydisc the max modulus,
  /// TypeI the spectral norm.
  double boundary_gap(const CVector& z) const;
};

/// A product of irreducible factors together with the Ricci normalization K
/// of its complete Kahler-Einstein metric, Ric(omega) = -K omega.
struct DomainSpec {
  std::vector<IrreducibleFactor> factors;
  double ricci_constant = 1.0;

  int dim() const;
  int rank() const;
  double khl_length_sq() const;  // L^2 = sum over factors of rank * genus
  std::string descriptor() const;

  int block_offset(int j) const;
  CVector block(const CVector& z, int j) const;

  /// Parses the compact grammar: `disc`, `ball:n`, `polydisc:n`,
  /// `typeI:p,q`, products joined by `x` (e.g. "ball:2xpolydisc:3").
  static DomainSpec parse(const std::string& descriptor, double ricci_constant = 1.0);

  static DomainSpec disc(double K = 1.0);
  static DomainSpec ball(int n, double K = 1.0);
  static DomainSpec polydisc(int n, double K = 1.0);
  static DomainSpec type_i(int p, int q, double K = 1.0);
};

Complex generic_norm(const DomainSpec& d, const CVector& z, const CVector& w);

double khl_length_sq(const DomainSpec& d);

/// True iff every factor satisfies its membership condition with the given
/// slack: the factor's boundary gap is >= margin.
bool contains(const DomainSpec& d, const CVector& z, double margin);

/// Minimum factor boundary gap; the natural length scale for stencils near z.
double boundary_gap(const DomainSpec& d, const CVector& z);

/// Seed-reproducible interior points, all satisfying contains(d, z, margin).
std::vector<CVector> sample_interior(const DomainSpec& d, std::uint64_t seed,
                                     int count, double margin);

/// phi(z) = -(1/K) sum_j c_j log N_j(z_j, z_j), a global potential of the
/// Kahler-Einstein metric with Ric = -K omega. The kernel's multiplicative
/// normalization is dropped (an additive constant in log). Evaluation only;
/// closed-form derivatives are attached by potentials::standard_potential.
PotentialFn log_kernel_potential(const DomainSpec& d);

}  // namespace bsdgeo
