#include "potentials.hpp"

#include <cmath>

namespace bsdgeo {

namespace {

constexpr Complex kI(0.0, 1.0);

double log_positive(double x, const char* where) {
  require(x > 0.0, ErrorCode::Boundary, std::string("evaluation outside the domain: ") + where);
  return std::log(x);
}

// Poincare-type factor: phi = -(c/K) sum_a log(1 - |z^a|^2). Covers the
// disc (n=1, c=2), the polydisc (c=2), and the ball's radial part (c=n+1,
// with the cross terms handled separately below).
PotentialFn poincare_product(int n, double c_over_k) {
  PotentialFn phi;
  phi.dim = n;
  phi.eval = [n, c_over_k](const CVector& z) {
    double v = 0.0;
    for (int a = 0; a < n; ++a)
      v -= c_over_k * log_positive(1.0 - std::norm(z(a)), "polydisc factor");
    return v;
  };
  phi.grad = [n, c_over_k](const CVector& z) {
    CVector g(n);
    for (int a = 0; a < n; ++a)
      g(a) = c_over_k * std::conj(z(a)) / (1.0 - std::norm(z(a)));
    return g;
  };
  phi.hess = [n, c_over_k](const CVector& z) {
    CMatrix h = CMatrix::Zero(n, n);
    for (int a = 0; a < n; ++a) {
      const double d = 1.0 - std::norm(z(a));
      h(a, a) = c_over_k / (d * d);
    }
    return h;
  };
  return phi;
}

PotentialFn ball_standard(int n, double K) {
  PotentialFn phi;
  phi.dim = n;
  const double c = (n + 1.0) / K;
  phi.eval = [c](const CVector& z) {
    return -c * log_positive(1.0 - z.squaredNorm(), "ball factor");
  };
  phi.grad = [c](const CVector& z) {
    return CVector(c / (1.0 - z.squaredNorm()) * z.conjugate());
  };
  phi.hess = [n, c](const CVector& z) {
    const double d = 1.0 - z.squaredNorm();
    CMatrix h = (c / (d * d)) * (d * CMatrix::Identity(n, n) +
                                 z.conjugate() * z.transpose());
    return h;
  };
  return phi;
}

PotentialFn type_i_standard(const IrreducibleFactor& f, double K) {
  PotentialFn phi;
  phi.dim = f.dim();
  const double c = static_cast<double>(f.genus()) / K;
  phi.eval = [f, c](const CVector& z) {
    return -c * log_positive(f.generic_norm(z, z).real(), "typeI factor");
  };
  return phi;
}

PotentialFn factor_standard(const IrreducibleFactor& f, double K) {
  switch (f.kind) {
    case FactorKind::Disc: return poincare_product(1, 2.0 / K);
    case FactorKind::Polydisc: return poincare_product(f.n, 2.0 / K);
    case FactorKind::Ball: return ball_standard(f.n, K);
    case FactorKind::TypeI: return type_i_standard(f, K);
  }
  fail(ErrorCode::InvalidArgument, "unknown factor kind");
}

std::vector<double> resolve_thetas(const KoParams& params, int n) {
  if (params.thetas.empty()) return std::vector<double>(n, 0.0);
  require(static_cast<int>(params.thetas.size()) == n, ErrorCode::InvalidArgument,
          "need one theta per disc coordinate");
  return params.thetas;
}

CVector resolve_direction(const KoParams& params, int n) {
  CVector b;
  if (params.direction.size() == 0) {
    b = CVector::Zero(n);
    b(0) = 1.0;
  } else {
    require(params.direction.size() == n, ErrorCode::InvalidArgument,
            "direction dimension does not match the ball factor");
    b = params.direction;
  }
  require(std::abs(b.norm() - 1.0) < 1e-12, ErrorCode::InvalidArgument,
          "direction must be a unit vector");
  return b;
}

}  // namespace

PotentialFn standard_potential(const DomainSpec& domain) {
  std::vector<PotentialFn> parts;
  parts.reserve(domain.factors.size());
  for (const auto& f : domain.factors) parts.push_back(factor_standard(f, domain.ricci_constant));
  PotentialFn phi = product_potential(parts);
  phi.label = "standard";
  return phi;
}

PotentialFn ko_potential_polydisc(int n, const KoParams& params, double ricci_constant) {
  require(n >= 1, ErrorCode::InvalidArgument, "polydisc size must be positive");
  require(ricci_constant > 0.0, ErrorCode::InvalidArgument, "K must be positive");
  const double K = ricci_constant;
  const auto thetas = resolve_thetas(params, n);
  CVector phases(n);
  for (int a = 0; a < n; ++a) phases(a) = std::exp(kI * thetas[a]);

  PotentialFn phi;
  phi.label = "ko";
  phi.dim = n;
  phi.eval = [n, K, phases](const CVector& z) {
    double v = 0.0;
    for (int a = 0; a < n; ++a) {
      const double num = std::norm(1.0 - phases(a) * z(a));
      const double den = 1.0 - std::norm(z(a));
      require(num > 0.0, ErrorCode::Boundary, "ko potential pole");
      v += (2.0 / K) * (log_positive(num, "ko numerator") - log_positive(den, "disc factor"));
    }
    return v;
  };
  phi.grad = [n, K, phases](const CVector& z) {
    CVector g(n);
    for (int a = 0; a < n; ++a) {
      const Complex w = 1.0 - phases(a) * z(a);
      const double den = 1.0 - std::norm(z(a));
      require(std::norm(w) > 0.0 && den > 0.0, ErrorCode::Boundary, "ko potential pole");
      g(a) = (2.0 / K) * (std::conj(z(a)) - phases(a)) / (den * w);
    }
    return g;
  };
  phi.hess = poincare_product(n, 2.0 / K).hess;  // the numerator is pluriharmonic
  return phi;
}

PotentialFn ko_potential_ball(int n, const KoParams& params, double ricci_constant) {
  require(n >= 1, ErrorCode::InvalidArgument, "ball size must be positive");
  require(ricci_constant > 0.0, ErrorCode::InvalidArgument, "K must be positive");
  const double K = ricci_constant;
  const double c = (n + 1.0) / K;
  const CVector b = resolve_direction(params, n);

  PotentialFn phi;
  phi.label = "ko";
  phi.dim = n;
  phi.eval = [c, b](const CVector& z) {
    const Complex w = 1.0 - b.dot(z);  // 1 - <z, b>
    const double num = std::norm(w);
    require(num > 0.0, ErrorCode::Boundary, "ko potential pole");
    return c * (std::log(num) - log_positive(1.0 - z.squaredNorm(), "ball factor"));
  };
  phi.grad = [c, b](const CVector& z) {
    const Complex w = 1.0 - b.dot(z);
    const double den = 1.0 - z.squaredNorm();
    require(std::norm(w) > 0.0 && den > 0.0, ErrorCode::Boundary, "ko potential pole");
    return CVector(c * (z.conjugate() / den - b.conjugate() / w));
  };
  phi.hess = ball_standard(n, K).hess;  // log|1 - <z,b>|^2 is pluriharmonic
  return phi;
}

PotentialFn ko_potential(const DomainSpec& domain, const KoParams& params) {
  std::vector<PotentialFn> parts;
  std::size_t theta_cursor = 0;
  auto take_thetas = [&](int count) {
    KoParams sub;
    if (!params.thetas.empty()) {
      require(theta_cursor + count <= params.thetas.size(), ErrorCode::InvalidArgument,
              "need one theta per disc coordinate");
      sub.thetas.assign(params.thetas.begin() + theta_cursor,
                        params.thetas.begin() + theta_cursor + count);
    }
    theta_cursor += count;
    return sub;
  };
  for (const auto& f : domain.factors) {
    switch (f.kind) {
      case FactorKind::Disc:
        parts.push_back(ko_potential_polydisc(1, take_thetas(1), domain.ricci_constant));
        break;
      case FactorKind::Polydisc:
        parts.push_back(ko_potential_polydisc(f.n, take_thetas(f.n), domain.ricci_constant));
        break;
      case FactorKind::Ball: {
        KoParams sub;
        if (params.direction.size() == f.n) sub.direction = params.direction;
        parts.push_back(ko_potential_ball(f.n, sub, domain.ricci_constant));
        break;
      }
      case FactorKind::TypeI:
        fail(ErrorCode::InvalidArgument,
             "no built-in constant-gradient-length potential for " + f.descriptor());
    }
  }
  if (!params.thetas.empty()) {
    require(theta_cursor == params.thetas.size(), ErrorCode::InvalidArgument,
            "more thetas than disc coordinates");
  }
  PotentialFn phi = product_potential(parts);
  phi.label = "ko";
  return phi;
}

PotentialFn perturb_pluriharmonic(const PotentialFn& base, const PluriharmonicCoeffs& coeffs) {
  const int n = base.dim;
  for (const auto& [expo, coeff] : coeffs) {
    require(static_cast<int>(expo.size()) == n, ErrorCode::InvalidArgument,
            "multi-index length does not match the potential dimension");
    (void)coeff;
  }
  auto holo = [coeffs, n](const CVector& z) {
    Complex h = 0.0;
    for (const auto& [expo, coeff] : coeffs) {
      Complex term = coeff;
      for (int a = 0; a < n; ++a)
        for (int e = 0; e < expo[a]; ++e) term *= z(a);
      h += term;
    }
    return h;
  };
  auto holo_grad = [coeffs, n](const CVector& z) {
    CVector g = CVector::Zero(n);
    for (const auto& [expo, coeff] : coeffs) {
      for (int a = 0; a < n; ++a) {
        if (expo[a] == 0) continue;
        Complex term = coeff * static_cast<double>(expo[a]);
        for (int b = 0; b < n; ++b) {
          const int e = expo[b] - (b == a ? 1 : 0);
          for (int k = 0; k < e; ++k) term *= z(b);
        }
        g(a) += term;
      }
    }
    return g;
  };

  PotentialFn out;
  out.label = base.label + "+2Re(h)";
  out.dim = n;
  const auto base_eval = base.eval;
  out.eval = [base_eval, holo](const CVector& z) {
    return base_eval(z) + 2.0 * holo(z).real();
  };
  if (base.has_grad()) {
    const auto base_grad = base.grad;
    out.grad = [base_grad, holo_grad](const CVector& z) {
      return CVector(base_grad(z) + holo_grad(z));
    };
  }
  out.hess = base.hess;  // dd^c of 2 Re(h) vanishes identically
  return out;
}

PotentialFn product_potential(const std::vector<PotentialFn>& parts) {
  require(!parts.empty(), ErrorCode::InvalidArgument, "product of no potentials");
  if (parts.size() == 1) return parts.front();

  int dim = 0;
  bool all_grad = true;
  bool all_hess = true;
  std::string label;
  for (const auto& p : parts) {
    dim += p.dim;
    all_grad = all_grad && p.has_grad();
    all_hess = all_hess && p.has_hess();
    if (!label.empty() && !p.label.empty()) label += "x";
    label += p.label;
  }

  PotentialFn out;
  out.label = label;
  out.dim = dim;
  out.eval = [parts](const CVector& z) {
    double v = 0.0;
    int off = 0;
    for (const auto& p : parts) {
      v += p.eval(z.segment(off, p.dim));
      off += p.dim;
    }
    return v;
  };
  if (all_grad) {
    out.grad = [parts, dim](const CVector& z) {
      CVector g(dim);
      int off = 0;
      for (const auto& p : parts) {
        g.segment(off, p.dim) = p.grad(z.segment(off, p.dim));
        off += p.dim;
      }
      return g;
    };
  }
  if (all_hess) {
    out.hess = [parts, dim](const CVector& z) {
      CMatrix h = CMatrix::Zero(dim, dim);
      int off = 0;
      for (const auto& p : parts) {
        h.block(off, off, p.dim, p.dim) = p.hess(z.segment(off, p.dim));
        off += p.dim;
      }
      return h;
    };
  }
  return out;
}

}  // namespace bsdgeo
