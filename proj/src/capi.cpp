#include "bsdgeo.h"

#include <cstring>
#include <new>
#include <string>

#include "domains.hpp"
#include "geometry.hpp"
#include "embeddings.hpp"
#include "potentials.hpp"
#include "verify.hpp"

using namespace bsdgeo;

struct bsdgeo_domain {
  DomainSpec spec;
};

struct bsdgeo_potential {
  PotentialFn fn;
};

namespace {

thread_local std::string g_last_error;

bsdgeo_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return BSDGEO_EINVAL;
    case ErrorCode::DimensionMismatch: return BSDGEO_EDIM;
    case ErrorCode::Boundary: return BSDGEO_EBOUNDARY;
    case ErrorCode::DegenerateMetric: return BSDGEO_EDEGENERATE;
    case ErrorCode::Sampling: return BSDGEO_ESAMPLING;
    case ErrorCode::InconsistentEmbedding: return BSDGEO_EEMBED;
    case ErrorCode::Config: return BSDGEO_ECONFIG;
    case ErrorCode::Io: return BSDGEO_EIO;
  }
  return BSDGEO_EINTERNAL;
}

template <typename Fn>
bsdgeo_status guarded(Fn&& fn) {
  try {
    fn();
    return BSDGEO_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return BSDGEO_EINTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return BSDGEO_EINTERNAL;
  }
}

bsdgeo_status invalid(const char* msg) {
  g_last_error = msg;
  return BSDGEO_EINVAL;
}

CVector to_cvector(const double* data, int dim) {
  CVector z(dim);
  for (int i = 0; i < dim; ++i) z(i) = Complex(data[2 * i], data[2 * i + 1]);
  return z;
}

void from_cvector(const CVector& z, double* out) {
  for (int i = 0; i < z.size(); ++i) {
    out[2 * i] = z(i).real();
    out[2 * i + 1] = z(i).imag();
  }
}

void from_cmatrix(const CMatrix& m, double* out) {
  int k = 0;
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) {
      out[k++] = m(r, c).real();
      out[k++] = m(r, c).imag();
    }
}

FdConfig fd_config(const bsdgeo_fd_opts* fd) {
  FdConfig cfg;
  if (fd) {
    if (fd->step > 0.0) cfg.step = fd->step;
    if (fd->hess_step > 0.0) cfg.hess_step = fd->hess_step;
    cfg.richardson = fd->richardson != 0;
  }
  return cfg;
}

MetricField make_metric(const bsdgeo_domain* d, const bsdgeo_potential* p,
                        const bsdgeo_fd_opts* fd) {
  return MetricField(d->spec, p->fn, fd_config(fd));
}

}  // namespace

extern "C" {

const char* bsdgeo_version(void) { return "0.1.0"; }

const char* bsdgeo_last_error(void) { return g_last_error.c_str(); }

bsdgeo_status bsdgeo_domain_create(const char* descriptor, double ricci_k,
                                   bsdgeo_domain** out) {
  if (!descriptor || !out) return invalid("null argument");
  return guarded([&] {
    auto* d = new bsdgeo_domain{DomainSpec::parse(descriptor, ricci_k)};
    *out = d;
  });
}

void bsdgeo_domain_free(bsdgeo_domain* d) { delete d; }

int bsdgeo_domain_dim(const bsdgeo_domain* d) { return d ? d->spec.dim() : 0; }

int bsdgeo_domain_rank(const bsdgeo_domain* d) { return d ? d->spec.rank() : 0; }

double bsdgeo_domain_ricci(const bsdgeo_domain* d) {
  return d ? d->spec.ricci_constant : 0.0;
}

double bsdgeo_domain_khl_length_sq(const bsdgeo_domain* d) {
  return d ? d->spec.khl_length_sq() : 0.0;
}

int bsdgeo_domain_factor_count(const bsdgeo_domain* d) {
  return d ? static_cast<int>(d->spec.factors.size()) : 0;
}

bsdgeo_status bsdgeo_domain_factor_info(const bsdgeo_domain* d, int index, int* kind,
                                        int* dim, int* rank, int* genus) {
  if (!d) return invalid("null domain");
  if (index < 0 || index >= static_cast<int>(d->spec.factors.size()))
    return invalid("factor index out of range");
  const auto& f = d->spec.factors[index];
  if (kind) *kind = static_cast<int>(f.kind);
  if (dim) *dim = f.dim();
  if (rank) *rank = f.rank();
  if (genus) *genus = f.genus();
  return BSDGEO_OK;
}

bsdgeo_status bsdgeo_generic_norm(const bsdgeo_domain* d, const double* z,
                                  const double* w, double out[2]) {
  if (!d || !z || !w || !out) return invalid("null argument");
  return guarded([&] {
    const Complex n = generic_norm(d->spec, to_cvector(z, d->spec.dim()),
                                   to_cvector(w, d->spec.dim()));
    out[0] = n.real();
    out[1] = n.imag();
  });
}

bsdgeo_status bsdgeo_contains(const bsdgeo_domain* d, const double* z, double margin,
                              int* out) {
  if (!d || !z || !out) return invalid("null argument");
  return guarded([&] {
    *out = contains(d->spec, to_cvector(z, d->spec.dim()), margin) ? 1 : 0;
  });
}

bsdgeo_status bsdgeo_sample_interior(const bsdgeo_domain* d, uint64_t seed, int count,
                                     double margin, double* out) {
  if (!d || !out) return invalid("null argument");
  return guarded([&] {
    const auto points = sample_interior(d->spec, seed, count, margin);
    for (std::size_t i = 0; i < points.size(); ++i)
      from_cvector(points[i], out + i * 2 * d->spec.dim());
  });
}

bsdgeo_status bsdgeo_potential_create(const bsdgeo_domain* d, const char* selector,
                                      const double* theta, int theta_count,
                                      const double* direction, const char* perturb,
                                      bsdgeo_potential** out) {
  if (!d || !selector || !out) return invalid("null argument");
  return guarded([&] {
    KoParams params;
    if (theta && theta_count > 0) params.thetas.assign(theta, theta + theta_count);
    if (direction) {
      // Interpret as one unit vector over the whole ball factor; callers
      // pass 2 * (ball dim) doubles. The factor dimension is recovered at
      // construction, so collect the longest prefix that fits some factor.
      for (const auto& f : d->spec.factors) {
        if (f.kind == FactorKind::Ball) {
          params.direction = to_cvector(direction, f.n);
          break;
        }
      }
    }
    auto* p = new bsdgeo_potential{potential_from_selector(
        d->spec, selector, params, perturb ? std::string(perturb) : std::string())};
    *out = p;
  });
}

void bsdgeo_potential_free(bsdgeo_potential* p) { delete p; }

bsdgeo_status bsdgeo_potential_eval(const bsdgeo_domain* d, const bsdgeo_potential* p,
                                    const double* z, double* out) {
  if (!d || !p || !z || !out) return invalid("null argument");
  return guarded([&] { *out = p->fn.eval(to_cvector(z, d->spec.dim())); });
}

bsdgeo_status bsdgeo_potential_grad(const bsdgeo_domain* d, const bsdgeo_potential* p,
                                    const double* z, const bsdgeo_fd_opts* fd,
                                    double* out) {
  if (!d || !p || !z || !out) return invalid("null argument");
  return guarded([&] {
    const MetricField m = make_metric(d, p, fd);
    from_cvector(m.potential_grad(to_cvector(z, d->spec.dim())), out);
  });
}

bsdgeo_status bsdgeo_metric(const bsdgeo_domain* d, const bsdgeo_potential* p,
                            const double* z, const bsdgeo_fd_opts* fd, double* out) {
  if (!d || !p || !z || !out) return invalid("null argument");
  return guarded([&] {
    const MetricField m = make_metric(d, p, fd);
    from_cmatrix(m.metric_at(to_cvector(z, d->spec.dim())).matrix(), out);
  });
}

bsdgeo_status bsdgeo_ricci(const bsdgeo_domain* d, const bsdgeo_potential* p,
                           const double* z, const bsdgeo_fd_opts* fd, double* out) {
  if (!d || !p || !z || !out) return invalid("null argument");
  return guarded([&] {
    const MetricField m = make_metric(d, p, fd);
    from_cmatrix(ricci_at(m, to_cvector(z, d->spec.dim())).matrix(), out);
  });
}

bsdgeo_status bsdgeo_gradient_length_sq(const bsdgeo_domain* d, const bsdgeo_potential* p,
                                        const double* z, const bsdgeo_fd_opts* fd,
                                        double* out) {
  if (!d || !p || !z || !out) return invalid("null argument");
  return guarded([&] {
    const MetricField m = make_metric(d, p, fd);
    *out = gradient_length_sq(m, to_cvector(z, d->spec.dim()));
  });
}

bsdgeo_status bsdgeo_dc_length_sq(const bsdgeo_domain* d, const bsdgeo_potential* p,
                                  const double* z, const bsdgeo_fd_opts* fd, double* out) {
  if (!d || !p || !z || !out) return invalid("null argument");
  return guarded([&] {
    const MetricField m = make_metric(d, p, fd);
    *out = dc_length_sq(m, to_cvector(z, d->spec.dim()));
  });
}

bsdgeo_status bsdgeo_flow(const bsdgeo_domain* d, const bsdgeo_potential* p,
                          const double* z0, double t_max, double dt, double margin,
                          const bsdgeo_fd_opts* fd, double* out_times, double* out_points,
                          int* out_count, int* escaped) {
  if (!d || !p || !z0 || !out_times || !out_points || !out_count)
    return invalid("null argument");
  return guarded([&] {
    const MetricField m = make_metric(d, p, fd);
    const auto result =
        flow_gradient(m, to_cvector(z0, d->spec.dim()), t_max, dt, margin);
    const int dim = d->spec.dim();
    for (std::size_t i = 0; i < result.points.size(); ++i) {
      out_times[i] = result.times[i];
      from_cvector(result.points[i], out_points + i * 2 * dim);
    }
    *out_count = static_cast<int>(result.points.size());
    if (escaped) *escaped = result.escaped ? 1 : 0;
  });
}

bsdgeo_status bsdgeo_run_checks(const char* config, const char* format, char** out,
                                int* all_passed_out) {
  if (!config || !out) return invalid("null argument");
  return guarded([&] {
    const auto reports = run_config(config);
    const std::string fmt = format ? format : "json";
    std::string text;
    if (fmt == "json") {
      text = reports_to_ndjson(reports);
    } else if (fmt == "csv") {
      text = reports_to_csv(reports);
    } else {
      fail(ErrorCode::Config, "unknown report format: " + fmt);
    }
    char* buf = new char[text.size() + 1];
    std::memcpy(buf, text.c_str(), text.size() + 1);
    *out = buf;
    if (all_passed_out) *all_passed_out = all_passed(reports) ? 1 : 0;
  });
}

void bsdgeo_string_free(char* s) { delete[] s; }

}  // extern "C"
