#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "embeddings.hpp"
#include "potentials.hpp"

namespace bsdgeo {

/// Structured pass/fail record of one verification run. `status` refines
/// `passed` for one-sided statements: "confirmed" means the sampled evidence
/// reaches the claimed bound, "inconclusive" that the samples neither reach
/// nor contradict it.
struct CheckReport {
  std::string statement_id;
  std::string domain;
  int sample_count = 0;
  double max_residual = 0.0;
  double mean_value = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string status;  // passed | failed | confirmed | inconclusive
  std::uint64_t seed = 0;
  std::int64_t runtime_ms = 0;
};

std::string report_to_json(const CheckReport& r);
std::string reports_to_ndjson(const std::vector<CheckReport>& reports);
std::string reports_to_csv(const std::vector<CheckReport>& reports);
bool all_passed(const std::vector<CheckReport>& reports);

/// Per-check knobs; zero-valued fields fall back to the check's defaults.
struct CheckOptions {
  int samples = 0;
  std::uint64_t seed = 42;
  double margin = 0.0;
  double tolerance = 0.0;
  FdConfig fd;
};

/// Ric(omega) + K g == 0, relative to the metric scale; doubles as the
/// genus oracle (`genus_offset` mis-sets TypeI genera to prove the check
/// has the power to fail).
CheckReport check_kahler_einstein(const DomainSpec& domain, const CheckOptions& opts = {},
                                  int type_i_genus_offset = 0);

/// |d(phi)|^2 constant equal to L^2/K for constant-gradient-length potentials.
CheckReport check_rigidity(const DomainSpec& domain, const PotentialFn& potential,
                           const CheckOptions& opts = {});

/// sup |d(phi)|^2 >= L^2/K, one-sided: reports the sampled maximum, flags
/// "confirmed" only when it reaches (1 - eps) L^2/K. For the standard ball
/// potential additionally checks the pointwise law |d(phi)|^2 = L^2 |z|^2 / K.
CheckReport check_lower_bound(const DomainSpec& domain, const PotentialFn& potential,
                              const CheckOptions& opts = {});

/// Measured Gaussian curvature of an embedded disc against its expected
/// constant value.
CheckReport check_disc_curvature(const DiscEmbedding& u, const MetricField& m,
                                 double expected_kappa, const CheckOptions& opts = {},
                                 const std::string& statement_id = "disc-curvature");

/// Covariant identities of the gradient field: nabla_v V = v always, and
/// phi_{a;b} phi^b = -phi_a when the gradient length is constant.
std::vector<CheckReport> check_gradient_identities(const DomainSpec& domain,
                                                   const PotentialFn& potential,
                                                   bool expect_constant_length,
                                                   const CheckOptions& opts = {});

/// RK4 gradient flow of a constant-gradient-length polydisc potential from a
/// symmetric start: stays on the full diagonal, and the induced disc metric
/// along it has curvature -2K/L^2.
std::vector<CheckReport> check_flow_foliation(const DomainSpec& polydisc,
                                              const PotentialFn& potential,
                                              const CheckOptions& opts = {});

/// Poincare-metric invariance of random disc automorphisms.
CheckReport check_schwarz_pick(const CheckOptions& opts = {});

/// Laplacian identity for the gradient length of a Kahler-Einstein potential:
/// Delta |d(phi)|^2 = |phi_{a;b}|^2_g + n - K |d(phi)|^2.
CheckReport check_bochner(const DomainSpec& domain, const PotentialFn& potential,
                          const CheckOptions& opts = {});

/// |d^c phi|^2 == |d(phi)|^2 / 2, exact.
CheckReport check_dc_relation(const DomainSpec& domain, const PotentialFn& potential,
                              const CheckOptions& opts = {});

struct SuiteConfig {
  std::vector<std::string> checks;  // empty -> full battery; else filter by name
  std::uint64_t seed = 42;
  FdConfig fd;
  int samples_override = 0;
  double margin_override = 0.0;
  std::map<std::string, double> tolerance_overrides;  // by statement id
  int type_i_genus_offset = 0;  // negative-control knob, consumed by the KE check
};

/// Runs the default battery over the registered domains; reports are sorted
/// by statement id then domain, each check seeded as seed + check index.
std::vector<CheckReport> run_suite(const SuiteConfig& config);

/// JSON-driven entry point shared by the C API and the CLI; accepts either
/// {"command":"suite", ...} or {"command":"check","check":NAME,...}.
std::vector<CheckReport> run_config(const std::string& config_json);

/// Builds the potential selected by "standard" | "ko" | "ko-perturbed".
PotentialFn potential_from_selector(const DomainSpec& domain, const std::string& selector,
                                    const KoParams& params = {},
                                    const std::string& perturb_spec = "");

/// Parses the perturbation grammar "re,im:e1,...,en[;...]" into monomial
/// coefficients of the holomorphic polynomial h.
PluriharmonicCoeffs parse_perturbation(const std::string& spec, int dim);

}  // namespace bsdgeo
