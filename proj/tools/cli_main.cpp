// bsdgeo command-line front end. Links the C API only.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bsdgeo.h"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

struct CommonOpts {
  std::string domain;
  double ricci_k = 1.0;
  std::string potential = "standard";
  std::vector<double> thetas;
  std::string direction;  // interleaved re,im
  std::string perturb;
  std::optional<std::uint64_t> seed;
  int samples = 0;
  double margin = 0.0;
  double fd_step = 0.0;
  double fd_hess_step = 0.0;
  bool no_richardson = false;
  std::string format = "json";
  std::string output;
};

std::uint64_t resolve_seed(const CommonOpts& o) {
  if (o.seed) return *o.seed;
  if (const char* env = std::getenv("BSD_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "warning: ignoring malformed BSD_SEED\n";
    }
  }
  return 42;
}

std::vector<double> parse_doubles(const std::string& csv) {
  std::vector<double> out;
  std::istringstream in(csv);
  std::string tok;
  while (std::getline(in, tok, ',')) out.push_back(std::stod(tok));
  return out;
}

int emit(const std::string& text, const std::string& output) {
  if (output.empty()) {
    std::cout << text;
    return kExitOk;
  }
  std::ofstream f(output);
  if (!f) {
    std::cerr << "error: cannot open " << output << "\n";
    return kExitUsage;
  }
  f << text;
  return kExitOk;
}

struct Domain {
  bsdgeo_domain* d = nullptr;
  ~Domain() { bsdgeo_domain_free(d); }
};

struct Potential {
  bsdgeo_potential* p = nullptr;
  ~Potential() { bsdgeo_potential_free(p); }
};

int open_domain(const CommonOpts& o, Domain& dom) {
  if (o.domain.empty()) {
    std::cerr << "error: --domain is required\n";
    return kExitUsage;
  }
  if (bsdgeo_domain_create(o.domain.c_str(), o.ricci_k, &dom.d) != BSDGEO_OK) {
    std::cerr << "error: " << bsdgeo_last_error() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}

int open_potential(const CommonOpts& o, const Domain& dom, Potential& pot) {
  std::vector<double> dir;
  if (!o.direction.empty()) dir = parse_doubles(o.direction);
  if (bsdgeo_potential_create(dom.d, o.potential.c_str(),
                              o.thetas.empty() ? nullptr : o.thetas.data(),
                              static_cast<int>(o.thetas.size()),
                              dir.empty() ? nullptr : dir.data(),
                              o.perturb.empty() ? nullptr : o.perturb.c_str(),
                              &pot.p) != BSDGEO_OK) {
    std::cerr << "error: " << bsdgeo_last_error() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}

bsdgeo_fd_opts fd_opts(const CommonOpts& o) {
  return {o.fd_step, o.fd_hess_step, o.no_richardson ? 0 : 1};
}

json config_json(const CommonOpts& o) {
  json cfg;
  cfg["seed"] = resolve_seed(o);
  if (!o.domain.empty()) cfg["domain"] = o.domain;
  cfg["K"] = o.ricci_k;
  cfg["potential"] = o.potential;
  if (!o.thetas.empty()) cfg["theta"] = o.thetas;
  if (!o.direction.empty()) cfg["direction"] = parse_doubles(o.direction);
  if (!o.perturb.empty()) cfg["perturb"] = o.perturb;
  if (o.samples > 0) cfg["samples"] = o.samples;
  if (o.margin > 0.0) cfg["margin"] = o.margin;
  json fd;
  if (o.fd_step > 0.0) fd["step"] = o.fd_step;
  if (o.fd_hess_step > 0.0) fd["hess_step"] = o.fd_hess_step;
  if (o.no_richardson) fd["richardson"] = false;
  if (!fd.empty()) cfg["fd"] = fd;
  return cfg;
}

int run_checks_config(const json& cfg, const std::string& format,
                      const std::string& output) {
  char* text = nullptr;
  int ok = 0;
  const auto status = bsdgeo_run_checks(cfg.dump().c_str(), format.c_str(), &text, &ok);
  if (status != BSDGEO_OK) {
    std::cerr << "error: " << bsdgeo_last_error() << "\n";
    return kExitUsage;
  }
  const int rc = emit(text, output);
  bsdgeo_string_free(text);
  if (rc != kExitOk) return rc;
  return ok ? kExitOk : kExitCheckFailed;
}

int cmd_list_domains(const CommonOpts& o, const std::string& format) {
  std::vector<std::string> descriptors = {"disc",        "ball:2",    "ball:3",
                                          "polydisc:2",  "polydisc:3", "typeI:2,2",
                                          "typeI:2,3"};
  if (!o.domain.empty()) descriptors = {o.domain};

  json rows = json::array();
  for (const auto& desc : descriptors) {
    Domain dom;
    if (bsdgeo_domain_create(desc.c_str(), o.ricci_k, &dom.d) != BSDGEO_OK) {
      std::cerr << "error: " << bsdgeo_last_error() << "\n";
      return kExitUsage;
    }
    std::string genus;
    for (int i = 0; i < bsdgeo_domain_factor_count(dom.d); ++i) {
      int g = 0;
      bsdgeo_domain_factor_info(dom.d, i, nullptr, nullptr, nullptr, &g);
      if (!genus.empty()) genus += "x";
      genus += std::to_string(g);
    }
    json row;
    row["domain"] = desc;
    row["dim"] = bsdgeo_domain_dim(dom.d);
    row["rank"] = bsdgeo_domain_rank(dom.d);
    row["genus"] = genus;
    row["khl_length_sq"] = bsdgeo_domain_khl_length_sq(dom.d);
    rows.push_back(row);
  }

  if (format == "json") {
    std::string text;
    for (const auto& row : rows) text += row.dump() + "\n";
    return emit(text, o.output);
  }
  std::ostringstream table;
  table << "domain        dim  rank  genus  L^2\n";
  for (const auto& row : rows) {
    char line[128];
    std::snprintf(line, sizeof(line), "%-13s %3d  %4d  %-5s  %g\n",
                  row["domain"].get<std::string>().c_str(), row["dim"].get<int>(),
                  row["rank"].get<int>(), row["genus"].get<std::string>().c_str(),
                  row["khl_length_sq"].get<double>());
    table << line;
  }
  return emit(table.str(), o.output);
}

int cmd_eval(const CommonOpts& o, const std::string& point_csv) {
  Domain dom;
  if (int rc = open_domain(o, dom); rc != kExitOk) return rc;
  Potential pot;
  if (int rc = open_potential(o, dom, pot); rc != kExitOk) return rc;

  const int dim = bsdgeo_domain_dim(dom.d);
  std::vector<double> z;
  try {
    z = parse_doubles(point_csv);
  } catch (const std::exception&) {
    std::cerr << "error: malformed --point\n";
    return kExitUsage;
  }
  if (static_cast<int>(z.size()) != 2 * dim) {
    std::cerr << "error: --point wants " << 2 * dim
              << " comma-separated values (re,im per coordinate)\n";
    return kExitUsage;
  }

  const auto fd = fd_opts(o);
  double phi = 0.0, len = 0.0, dc = 0.0;
  std::vector<double> metric(2 * dim * dim);
  if (bsdgeo_potential_eval(dom.d, pot.p, z.data(), &phi) != BSDGEO_OK ||
      bsdgeo_gradient_length_sq(dom.d, pot.p, z.data(), &fd, &len) != BSDGEO_OK ||
      bsdgeo_dc_length_sq(dom.d, pot.p, z.data(), &fd, &dc) != BSDGEO_OK ||
      bsdgeo_metric(dom.d, pot.p, z.data(), &fd, metric.data()) != BSDGEO_OK) {
    std::cerr << "error: " << bsdgeo_last_error() << "\n";
    return kExitUsage;
  }

  std::ostringstream out;
  char buf[160];
  std::snprintf(buf, sizeof(buf), "phi = %.12g\n", phi);
  out << buf;
  std::snprintf(buf, sizeof(buf), "gradient_length_sq = %.12g\n", len);
  out << buf;
  std::snprintf(buf, sizeof(buf), "dc_length_sq = %.12g\n", dc);
  out << buf;
  out << "metric =";
  for (int r = 0; r < dim; ++r) {
    out << (r == 0 ? " [" : "         [");
    for (int c = 0; c < dim; ++c) {
      std::snprintf(buf, sizeof(buf), "%s%.9g%+.9gi", c == 0 ? "" : ", ",
                    metric[2 * (r * dim + c)], metric[2 * (r * dim + c) + 1]);
      out << buf;
    }
    out << "]\n";
  }
  return emit(out.str(), o.output);
}

int cmd_flow(const CommonOpts& o, const std::string& start_csv, double t_max, double dt) {
  Domain dom;
  if (int rc = open_domain(o, dom); rc != kExitOk) return rc;
  Potential pot;
  if (int rc = open_potential(o, dom, pot); rc != kExitOk) return rc;

  const int dim = bsdgeo_domain_dim(dom.d);
  std::vector<double> z0;
  try {
    z0 = parse_doubles(start_csv);
  } catch (const std::exception&) {
    std::cerr << "error: malformed --start\n";
    return kExitUsage;
  }
  if (static_cast<int>(z0.size()) != 2 * dim) {
    std::cerr << "error: --start wants " << 2 * dim << " comma-separated values\n";
    return kExitUsage;
  }
  if (dt <= 0.0 || t_max < 0.0) {
    std::cerr << "error: need --dt > 0 and --t-max >= 0\n";
    return kExitUsage;
  }

  const int max_points = static_cast<int>(t_max / dt) + 2;
  std::vector<double> times(max_points);
  std::vector<double> traj(static_cast<std::size_t>(max_points) * 2 * dim);
  int count = 0, escaped = 0;
  const auto fd = fd_opts(o);
  const double margin = o.margin > 0.0 ? o.margin : 0.05;
  if (bsdgeo_flow(dom.d, pot.p, z0.data(), t_max, dt, margin, &fd, times.data(),
                  traj.data(), &count, &escaped) != BSDGEO_OK) {
    std::cerr << "error: " << bsdgeo_last_error() << "\n";
    return kExitUsage;
  }

  std::ostringstream csv;
  csv << "t";
  for (int a = 0; a < dim; ++a) csv << ",re" << a << ",im" << a;
  csv << "\n";
  csv.precision(17);
  for (int i = 0; i < count; ++i) {
    csv << times[i];
    for (int a = 0; a < 2 * dim; ++a) csv << "," << traj[i * 2 * dim + a];
    csv << "\n";
  }
  if (escaped) std::cerr << "note: trajectory left the margin-shrunk domain early\n";
  return emit(csv.str(), o.output);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical geometry of bounded symmetric domains"};
  app.require_subcommand(1);

  CommonOpts o;
  std::string point_csv, start_csv, check_name;
  std::vector<std::string> suite_checks;
  std::vector<std::string> tol_overrides;
  double tolerance = 0.0;
  double t_max = 2.0, dt = 1e-3;
  int genus_offset = 0;
  bool csv_flag = false;

  auto add_common = [&](CLI::App* cmd, bool with_potential) {
    cmd->add_option("--domain", o.domain,
                    "domain descriptor (disc, ball:n, polydisc:n, typeI:p,q, joined by x)");
    cmd->add_option("--K", o.ricci_k, "Ricci constant K > 0")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", o.seed, "sample seed (falls back to BSD_SEED, then 42)");
    cmd->add_option("--margin", o.margin, "interior sampling margin in (0,1)");
    cmd->add_option("--fd-step", o.fd_step, "finite-difference step for first derivatives");
    cmd->add_option("--fd-hess-step", o.fd_hess_step,
                    "finite-difference step for second derivatives");
    cmd->add_flag("--no-richardson", o.no_richardson, "disable Richardson extrapolation");
    cmd->add_option("--output", o.output, "write output to a file instead of stdout");
    if (with_potential) {
      cmd->add_option("--potential", o.potential, "standard | ko | ko-perturbed");
      cmd->add_option("--theta", o.thetas, "boundary angles, one per disc coordinate");
      cmd->add_option("--direction", o.direction,
                      "unit boundary vector for ball factors (re,im,...)");
      cmd->add_option("--perturb", o.perturb, "pluriharmonic term: re,im:e1,...,en[;...]");
    }
  };

  std::string list_format = "table";
  auto* list = app.add_subcommand("list-domains", "print the domain registry");
  add_common(list, false);
  list->add_option("--format", list_format, "json | table");

  auto* eval =
      app.add_subcommand("eval", "evaluate potential and metric quantities at a point");
  add_common(eval, true);
  eval->add_option("--point", point_csv, "interleaved re,im per coordinate")->required();

  auto* check = app.add_subcommand("check", "run one verification check");
  add_common(check, true);
  check->add_option("name", check_name,
                    "ke | rigidity | lower-bound | disc-curvature | polydisc-curvature | "
                    "gradient-identities | flow | schwarz-pick | bochner | dc")
      ->required();
  check->add_option("--samples", o.samples, "sample count");
  check->add_option("--tol", tolerance, "tolerance override");
  check->add_option("--format", o.format, "json | csv");
  check->add_flag("--csv", csv_flag, "shorthand for --format csv");
  check->add_option("--genus-offset", genus_offset,
                    "mis-set TypeI genus by this amount (negative control)");

  auto* suite = app.add_subcommand("suite", "run the default verification battery");
  add_common(suite, false);
  suite->add_option("--checks", suite_checks, "restrict to these check names");
  suite->add_option("--samples", o.samples, "per-check sample override");
  suite->add_option("--tol", tol_overrides, "statement-id=value tolerance overrides");
  suite->add_option("--format", o.format, "json | csv");
  suite->add_flag("--csv", csv_flag, "shorthand for --format csv");
  suite->add_option("--genus-offset", genus_offset,
                    "mis-set TypeI genus in the KE check (negative control)");

  auto* flow =
      app.add_subcommand("flow", "integrate the gradient flow and emit a CSV trajectory");
  add_common(flow, true);
  flow->add_option("--start", start_csv, "interleaved re,im per coordinate")->required();
  flow->add_option("--t-max", t_max, "flow time horizon");
  flow->add_option("--dt", dt, "RK4 step");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (csv_flag) o.format = "csv";

  if (list->parsed()) return cmd_list_domains(o, list_format);
  if (eval->parsed()) return cmd_eval(o, point_csv);
  if (flow->parsed()) return cmd_flow(o, start_csv, t_max, dt);

  if (check->parsed()) {
    json cfg = config_json(o);
    cfg["command"] = "check";
    cfg["check"] = check_name;
    if (tolerance > 0.0) cfg["tolerance"] = tolerance;
    if (genus_offset != 0) cfg["genus_offset"] = genus_offset;
    if (check_name == "ke" || check_name == "schwarz-pick") cfg.erase("potential");
    return run_checks_config(cfg, o.format, o.output);
  }

  if (suite->parsed()) {
    json cfg = config_json(o);
    cfg["command"] = "suite";
    cfg.erase("potential");
    cfg.erase("domain");
    cfg.erase("K");
    if (!suite_checks.empty()) cfg["checks"] = suite_checks;
    if (genus_offset != 0) cfg["genus_offset"] = genus_offset;
    if (!tol_overrides.empty()) {
      json tols;
      for (const auto& kv : tol_overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) {
          std::cerr << "error: --tol wants statement-id=value\n";
          return kExitUsage;
        }
        try {
          tols[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
        } catch (const std::exception&) {
          std::cerr << "error: malformed --tol value\n";
          return kExitUsage;
        }
      }
      cfg["tolerances"] = tols;
    }
    return run_checks_config(cfg, o.format, o.output);
  }

  return kExitUsage;
}
