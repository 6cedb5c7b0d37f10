#include "embeddings.hpp"

#include <cmath>

namespace bsdgeo {

namespace {

constexpr Complex kI(0.0, 1.0);

// Derivative of a holomorphic curve by real-direction central differences.
CVector holo_derivative(const std::function<CVector(Complex)>& map, Complex zeta,
                        double h, bool richardson) {
  auto at = [&](double hh) {
    const CVector dx = (map(zeta + hh) - map(zeta - hh)) / (2.0 * hh);
    const CVector dy = (map(zeta + kI * hh) - map(zeta - kI * hh)) / (2.0 * hh);
    return CVector(0.5 * (dx - kI * dy));
  };
  const CVector v = at(h);
  if (!richardson) return v;
  return (4.0 * at(0.5 * h) - v) / 3.0;
}

Complex scalar_holo_derivative(const std::function<Complex(Complex)>& f, Complex zeta,
                               double h) {
  auto at = [&](double hh) {
    const Complex dx = (f(zeta + hh) - f(zeta - hh)) / (2.0 * hh);
    const Complex dy = (f(zeta + kI * hh) - f(zeta - kI * hh)) / (2.0 * hh);
    return 0.5 * (dx - kI * dy);
  };
  return (4.0 * at(0.5 * h) - at(h)) / 3.0;
}

}  // namespace

DiscEmbedding diagonal_disc(int n, int k) {
  require(n >= 1 && k >= 1 && k <= n, ErrorCode::InvalidArgument,
          "diagonal disc needs 1 <= k <= n");
  DiscEmbedding u;
  u.label = "diagonal(" + std::to_string(n) + "," + std::to_string(k) + ")";
  u.target_dim = n;
  u.declared_rank = k;
  u.map = [n, k](Complex zeta) {
    CVector z = CVector::Zero(n);
    for (int a = 0; a < k; ++a) z(a) = zeta;
    return z;
  };
  return u;
}

PolydiscEmbedding maximal_polydisc_typeI(int p, int q) {
  require(p >= 1 && q >= 1, ErrorCode::InvalidArgument, "typeI shape must be positive");
  PolydiscEmbedding e;
  e.label = "maximal-polydisc(typeI:" + std::to_string(p) + "," + std::to_string(q) + ")";
  e.target_dim = p * q;
  e.r = std::min(p, q);
  const int r = e.r;
  e.map = [p, q, r](const CVector& zeta) {
    require(zeta.size() == r, ErrorCode::DimensionMismatch,
            "polydisc parameter has wrong dimension");
    CVector z = CVector::Zero(p * q);
    for (int j = 0; j < r; ++j) z(j * q + j) = zeta(j);  // row-major diag
    return z;
  };
  return e;
}

PolydiscEmbedding maximal_polydisc(const DomainSpec& domain) {
  struct FactorMap {
    int rank;
    int dim;
    std::function<void(const CVector&, Eigen::Ref<CVector>)> place;
  };
  std::vector<FactorMap> pieces;
  int total_rank = 0;
  for (const auto& f : domain.factors) {
    FactorMap fm;
    fm.rank = f.rank();
    fm.dim = f.dim();
    switch (f.kind) {
      case FactorKind::Disc:
      case FactorKind::Polydisc:
        fm.place = [](const CVector& zeta, Eigen::Ref<CVector> out) { out = zeta; };
        break;
      case FactorKind::Ball:
        fm.place = [](const CVector& zeta, Eigen::Ref<CVector> out) {
          out.setZero();
          out(0) = zeta(0);
        };
        break;
      case FactorKind::TypeI: {
        const int q = f.q;
        fm.place = [q](const CVector& zeta, Eigen::Ref<CVector> out) {
          out.setZero();
          for (int j = 0; j < zeta.size(); ++j) out(j * q + j) = zeta(j);
        };
        break;
      }
    }
    total_rank += fm.rank;
    pieces.push_back(std::move(fm));
  }

  PolydiscEmbedding e;
  e.label = "maximal-polydisc(" + domain.descriptor() + ")";
  e.target_dim = domain.dim();
  e.r = total_rank;
  const int dim = domain.dim();
  e.map = [pieces, total_rank, dim](const CVector& zeta) {
    require(zeta.size() == total_rank, ErrorCode::DimensionMismatch,
            "polydisc parameter has wrong dimension");
    CVector z(dim);
    int zoff = 0, coff = 0;
    for (const auto& fm : pieces) {
      fm.place(zeta.segment(coff, fm.rank), z.segment(zoff, fm.dim));
      zoff += fm.dim;
      coff += fm.rank;
    }
    return z;
  };
  return e;
}

DiscEmbedding full_diagonal_disc(const PolydiscEmbedding& poly) {
  DiscEmbedding u;
  u.label = "full-diagonal*" + poly.label;
  u.target_dim = poly.target_dim;
  u.declared_rank = poly.r;
  const auto map = poly.map;
  const int r = poly.r;
  u.map = [map, r](Complex zeta) { return map(CVector::Constant(r, zeta)); };
  return u;
}

DiscEmbedding coordinate_disc(const PolydiscEmbedding& poly, int j) {
  require(j >= 0 && j < poly.r, ErrorCode::InvalidArgument, "coordinate index out of range");
  DiscEmbedding u;
  u.label = "coordinate(" + std::to_string(j) + ")*" + poly.label;
  u.target_dim = poly.target_dim;
  u.declared_rank = 1;
  const auto map = poly.map;
  const int r = poly.r;
  u.map = [map, r, j](Complex zeta) {
    CVector param = CVector::Zero(r);
    param(j) = zeta;
    return map(param);
  };
  return u;
}

CVector disc_map_derivative(const DiscEmbedding& u, Complex zeta, double step,
                            bool richardson) {
  return holo_derivative(u.map, zeta, step, richardson);
}

double pullback_metric_1d(const DiscEmbedding& u, const MetricField& m, Complex zeta) {
  require(u.target_dim == m.potential.dim, ErrorCode::DimensionMismatch,
          "embedding target does not match the metric domain");
  const CVector point = u.map(zeta);
  const CVector du = disc_map_derivative(u, zeta);
  require(du.norm() > 0.0, ErrorCode::InconsistentEmbedding,
          "embedding is degenerate at this point");
  const CMatrix g = m.metric_at(point).matrix();
  const double lambda = (du.adjoint() * g * du)(0, 0).real();
  require(lambda > 0.0, ErrorCode::DegenerateMetric, "pullback coefficient not positive");
  return lambda;
}

int disc_rank_measured(const DiscEmbedding& u, const MetricField& m, double window) {
  for (const auto& f : m.domain.factors) {
    require(f.kind == FactorKind::Disc || f.kind == FactorKind::Polydisc,
            ErrorCode::InvalidArgument, "rank recovery requires a polydisc target");
  }
  const double lambda0 = pullback_metric_1d(u, m, Complex(0.0, 0.0));
  const double k = lambda0 * m.domain.ricci_constant / 2.0;
  const double rounded = std::round(k);
  require(rounded >= 1.0 && std::abs(k - rounded) <= window, ErrorCode::InconsistentEmbedding,
          "pullback coefficient does not correspond to an integer rank");
  return static_cast<int>(rounded);
}

Complex MoebiusMap::operator()(Complex zeta) const {
  return std::exp(kI * theta) * (zeta - a) / (1.0 - std::conj(a) * zeta);
}

double schwarz_pick_residual(const std::function<Complex(Complex)>& u, Complex zeta,
                             double step) {
  require(std::abs(zeta) < 1.0, ErrorCode::InvalidArgument, "point outside the disc");
  const Complex du = scalar_holo_derivative(u, zeta, step);
  const double lhs = std::norm(du);
  const double ratio = (1.0 - std::norm(u(zeta))) / (1.0 - std::norm(zeta));
  return std::abs(lhs - ratio * ratio);
}

FlowResult flow_gradient(const MetricField& m, const CVector& z0, double t_max,
                         double dt, double margin) {
  require(dt > 0.0 && t_max >= 0.0, ErrorCode::InvalidArgument, "bad flow time grid");
  require(contains(m.domain, z0, margin), ErrorCode::InvalidArgument,
          "flow start is not interior at the given margin");

  auto velocity = [&m](const CVector& z) { return gradient_vector(m, z).components; };
  auto inside = [&](const CVector& z) { return contains(m.domain, z, margin); };

  FlowResult out;
  out.times.push_back(0.0);
  out.points.push_back(z0);
  const int steps = static_cast<int>(std::llround(t_max / dt));
  CVector z = z0;
  for (int i = 0; i < steps; ++i) {
    CVector next;
    try {
      const CVector k1 = velocity(z);
      const CVector k2 = velocity(z + 0.5 * dt * k1);
      const CVector k3 = velocity(z + 0.5 * dt * k2);
      const CVector k4 = velocity(z + dt * k3);
      next = z + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    } catch (const Error&) {
      out.escaped = true;
      return out;
    }
    if (!inside(next)) {
      out.escaped = true;
      return out;
    }
    z = next;
    out.times.push_back(dt * (i + 1));
    out.points.push_back(z);
  }
  return out;
}

}  // namespace bsdgeo
