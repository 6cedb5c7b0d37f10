#include "domains.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/SVD>

#include "rng.hpp"

namespace bsdgeo {

namespace {

constexpr int kRejectionCap = 100000;

Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
as_matrix(const CVector& z, int p, int q) {
  return {z.data(), p, q};
}

double spectral_norm(const CVector& z, int p, int q) {
  Eigen::JacobiSVD<CMatrix> svd(as_matrix(z, p, q));
  return svd.singularValues()(0);
}

}  // namespace

IrreducibleFactor IrreducibleFactor::disc() { return {FactorKind::Disc, 1, 0, 0}; }

IrreducibleFactor IrreducibleFactor::ball(int n) {
  require(n >= 1, ErrorCode::InvalidArgument, "ball size must be positive");
  return {FactorKind::Ball, n, 0, 0};
}

IrreducibleFactor IrreducibleFactor::polydisc(int n) {
  require(n >= 1, ErrorCode::InvalidArgument, "polydisc size must be positive");
  return {FactorKind::Polydisc, n, 0, 0};
}

IrreducibleFactor IrreducibleFactor::type_i(int p, int q) {
  require(p >= 1 && q >= 1, ErrorCode::InvalidArgument, "typeI shape must be positive");
  return {FactorKind::TypeI, 0, p, q};
}

int IrreducibleFactor::dim() const {
  switch (kind) {
    case FactorKind::Disc: return 1;
    case FactorKind::Ball:
    case FactorKind::Polydisc: return n;
    case FactorKind::TypeI: return p * q;
  }
  return 0;
}

int IrreducibleFactor::rank() const {
  switch (kind) {
    case FactorKind::Disc: return 1;
    case FactorKind::Ball: return 1;
    case FactorKind::Polydisc: return n;
    case FactorKind::TypeI: return std::min(p, q);
  }
  return 0;
}

int IrreducibleFactor::genus() const {
  switch (kind) {
    case FactorKind::Disc: return 2;
    case FactorKind::Ball: return n + 1;
    case FactorKind::Polydisc: return 2;
    case FactorKind::TypeI: return p + q;
  }
  return 0;
}

std::string IrreducibleFactor::descriptor() const {
  std::ostringstream out;
  switch (kind) {
    case FactorKind::Disc: out << "disc"; break;
    case FactorKind::Ball: out << "ball:" << n; break;
    case FactorKind::Polydisc: out << "polydisc:" << n; break;
    case FactorKind::TypeI: out << "typeI:" << p << "," << q; break;
  }
  return out.str();
}

Complex IrreducibleFactor::generic_norm(const CVector& z, const CVector& w) const {
  require(z.size() == dim() && w.size() == dim(), ErrorCode::DimensionMismatch,
          "factor block has wrong dimension");
  switch (kind) {
    case FactorKind::Disc:
      return 1.0 - z(0) * std::conj(w(0));
    case FactorKind::Ball:
      // 1 - <z, w> with the hermitian pairing sum z^a conj(w^a)
      return 1.0 - w.dot(z);
    case FactorKind::Polydisc: {
      Complex prod = 1.0;
      for (int a = 0; a < n; ++a) prod *= 1.0 - z(a) * std::conj(w(a));
      return prod;
    }
    case FactorKind::TypeI: {
      const CMatrix zm = as_matrix(z, p, q);
      const CMatrix wm = as_matrix(w, p, q);
      return (CMatrix::Identity(p, p) - zm * wm.adjoint()).determinant();
    }
  }
  return 0.0;
}

double IrreducibleFactor::boundary_gap(const CVector& z) const {
  switch (kind) {
    case FactorKind::Disc: return 1.0 - std::abs(z(0));
    case FactorKind::Ball: return 1.0 - z.norm();
    case FactorKind::Polydisc: return 1.0 - z.cwiseAbs().maxCoeff();
    case FactorKind::TypeI: return 1.0 - spectral_norm(z, p, q);
  }
  return 0.0;
}

int DomainSpec::dim() const {
  int d = 0;
  for (const auto& f : factors) d += f.dim();
  return d;
}

int DomainSpec::rank() const {
  int r = 0;
  for (const auto& f : factors) r += f.rank();
  return r;
}

double DomainSpec::khl_length_sq() const {
  double s = 0.0;
  for (const auto& f : factors) s += static_cast<double>(f.rank()) * f.genus();
  return s;
}

std::string DomainSpec::descriptor() const {
  std::string out;
  for (std::size_t j = 0; j < factors.size(); ++j) {
    if (j > 0) out += "x";
    out += factors[j].descriptor();
  }
  return out;
}

int DomainSpec::block_offset(int j) const {
  int off = 0;
  for (int i = 0; i < j; ++i) off += factors[i].dim();
  return off;
}

CVector DomainSpec::block(const CVector& z, int j) const {
  return z.segment(block_offset(j), factors[j].dim());
}

namespace {

IrreducibleFactor parse_factor(const std::string& tok) {
  const auto colon = tok.find(':');
  const std::string name = tok.substr(0, colon);
  const std::string args = colon == std::string::npos ? "" : tok.substr(colon + 1);
  auto parse_int = [&tok](const std::string& s) {
    try {
      std::size_t pos = 0;
      const int v = std::stoi(s, &pos);
      require(pos == s.size() && v >= 1, ErrorCode::InvalidArgument,
              "bad domain descriptor: " + tok);
      return v;
    } catch (const Error&) {
      throw;
    } catch (const std::exception&) {
      fail(ErrorCode::InvalidArgument, "bad domain descriptor: " + tok);
    }
  };
  if (name == "disc") {
    require(args.empty(), ErrorCode::InvalidArgument, "disc takes no arguments");
    return IrreducibleFactor::disc();
  }
  if (name == "ball") return IrreducibleFactor::ball(parse_int(args));
  if (name == "polydisc") return IrreducibleFactor::polydisc(parse_int(args));
  if (name == "typeI" || name == "typei") {
    const auto comma = args.find(',');
    require(comma != std::string::npos, ErrorCode::InvalidArgument,
            "typeI needs p,q: " + tok);
    return IrreducibleFactor::type_i(parse_int(args.substr(0, comma)),
                                     parse_int(args.substr(comma + 1)));
  }
  fail(ErrorCode::InvalidArgument, "unknown domain kind: " + name);
}

}  // namespace

DomainSpec DomainSpec::parse(const std::string& descriptor, double ricci_constant) {
  require(ricci_constant > 0.0, ErrorCode::InvalidArgument, "K must be positive");
  require(!descriptor.empty(), ErrorCode::InvalidArgument, "empty domain descriptor");
  DomainSpec d;
  d.ricci_constant = ricci_constant;
  std::size_t start = 0;
  while (start <= descriptor.size()) {
    auto sep = descriptor.find('x', start);
    if (sep == std::string::npos) sep = descriptor.size();
    require(sep > start, ErrorCode::InvalidArgument,
            "bad domain descriptor: " + descriptor);
    d.factors.push_back(parse_factor(descriptor.substr(start, sep - start)));
    start = sep + 1;
    if (sep == descriptor.size()) break;
  }
  return d;
}

DomainSpec DomainSpec::disc(double K) { return {{IrreducibleFactor::disc()}, K}; }
DomainSpec DomainSpec::ball(int n, double K) { return {{IrreducibleFactor::ball(n)}, K}; }
DomainSpec DomainSpec::polydisc(int n, double K) {
  return {{IrreducibleFactor::polydisc(n)}, K};
}
DomainSpec DomainSpec::type_i(int p, int q, double K) {
  return {{IrreducibleFactor::type_i(p, q)}, K};
}

Complex generic_norm(const DomainSpec& d, const CVector& z, const CVector& w) {
  require(z.size() == d.dim() && w.size() == d.dim(), ErrorCode::DimensionMismatch,
          "point dimension does not match the domain");
  Complex prod = 1.0;
  for (std::size_t j = 0; j < d.factors.size(); ++j) {
    const int jj = static_cast<int>(j);
    prod *= d.factors[j].generic_norm(d.block(z, jj), d.block(w, jj));
  }
  return prod;
}

double khl_length_sq(const DomainSpec& d) { return d.khl_length_sq(); }

bool contains(const DomainSpec& d, const CVector& z, double margin) {
  require(margin >= 0.0 && margin < 1.0, ErrorCode::InvalidArgument,
          "margin must lie in [0,1)");
  return boundary_gap(d, z) >= margin;
}

double boundary_gap(const DomainSpec& d, const CVector& z) {
  require(z.size() == d.dim(), ErrorCode::DimensionMismatch,
          "point dimension does not match the domain");
  double gap = 1.0;
  for (std::size_t j = 0; j < d.factors.size(); ++j) {
    gap = std::min(gap, d.factors[j].boundary_gap(d.block(z, static_cast<int>(j))));
  }
  return gap;
}

std::vector<CVector> sample_interior(const DomainSpec& d, std::uint64_t seed,
                                     int count, double margin) {
  require(count > 0, ErrorCode::InvalidArgument, "count must be positive");
  require(margin > 0.0 && margin < 1.0, ErrorCode::InvalidArgument,
          "margin must lie in (0,1)");
  SampleRng rng(seed);
  const double radius = 1.0 - margin;
  std::vector<CVector> points;
  points.reserve(count);
  for (int i = 0; i < count; ++i) {
    CVector z(d.dim());
    int off = 0;
    for (const auto& f : d.factors) {
      CVector blk;
      switch (f.kind) {
        case FactorKind::Disc:
          blk = CVector::Constant(1, rng.disc_point(radius));
          break;
        case FactorKind::Ball:
          blk = rng.ball_point(f.n, radius);
          break;
        case FactorKind::Polydisc:
          blk.resize(f.n);
          for (int a = 0; a < f.n; ++a) blk(a) = rng.disc_point(radius);
          break;
        case FactorKind::TypeI: {
          // Draw from the ambient (Frobenius) ball and reject on the
          // spectral-norm membership condition.
          const double ambient = radius * std::sqrt(static_cast<double>(f.rank()));
          int tries = 0;
          for (;;) {
            blk = rng.ball_point(f.dim(), ambient);
            if (f.boundary_gap(blk) >= margin) break;
            require(++tries < kRejectionCap, ErrorCode::Sampling,
                    "rejection sampling cap exceeded for " + f.descriptor());
          }
          break;
        }
      }
      z.segment(off, f.dim()) = blk;
      off += f.dim();
    }
    points.push_back(std::move(z));
  }
  return points;
}

PotentialFn log_kernel_potential(const DomainSpec& d) {
  PotentialFn phi;
  phi.label = "log-kernel";
  phi.dim = d.dim();
  const double k_inv = 1.0 / d.ricci_constant;
  phi.eval = [d, k_inv](const CVector& z) {
    double value = 0.0;
    for (std::size_t j = 0; j < d.factors.size(); ++j) {
      const auto& f = d.factors[j];
      const CVector blk = d.block(z, static_cast<int>(j));
      const double norm = f.generic_norm(blk, blk).real();
      require(norm > 0.0, ErrorCode::Boundary,
              "potential evaluated outside " + f.descriptor());
      value -= k_inv * f.genus() * std::log(norm);
    }
    return value;
  };
  return phi;
}

}  // namespace bsdgeo
