#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "carleson/halfplane.h"
#include "carleson/harness.h"
#include "carleson/io.h"
#include "carleson/measure.h"
#include "carleson/spaces.h"
#include "carleson/spectral.h"
#include "carleson/sumnorm.h"

using namespace carleson;
using io::Json;

namespace {

constexpr int kExitInput = 2;
constexpr int kExitNoConvergence = 3;

struct Config {
  std::string measure = "lebesgue-disk";
  std::uint64_t seed = 42;
  int n_max = 128;
  std::size_t grid = 512;
  double tol = 1e-5;
  int count = 100;
  long max_iters = 200000;
  double smoothness = 1.0;
  std::string out;
  std::string format = "json";
  std::string plot;
  std::vector<int> n_list{2, 64, 1024};
  std::vector<double> eps_list;
  std::string coeffs;
  std::size_t index = 0;
  double eps = 0.1;
  double r = 10.0;
  double c_b = 1.0;
};

struct NotConverged : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// "name:k=v,k=v" for the built-in measures.
std::map<std::string, double> builtin_params(const std::string& spec, std::string& name) {
  std::map<std::string, double> params;
  const auto colon = spec.find(':');
  name = spec.substr(0, colon);
  if (colon == std::string::npos) return params;
  std::stringstream rest(spec.substr(colon + 1));
  std::string item;
  while (std::getline(rest, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw io::ParseError("--measure: expected key=value in '" + item + "'");
    const std::string key = item.substr(0, eq);
    try {
      std::size_t used = 0;
      params[key] = std::stod(item.substr(eq + 1), &used);
      if (used != item.size() - eq - 1) throw std::invalid_argument(key);
    } catch (const std::logic_error&) {
      throw io::ParseError("--measure: bad number for '" + key + "'");
    }
  }
  return params;
}

double param(const std::map<std::string, double>& params, const std::string& key, double fallback, bool required) {
  const auto it = params.find(key);
  if (it != params.end()) return it->second;
  if (required) throw io::ParseError("--measure: missing parameter '" + key + "'");
  return fallback;
}

void check_keys(const std::map<std::string, double>& params, std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : params) {
    bool ok = false;
    for (const char* a : allowed) ok |= key == a;
    if (!ok) throw io::ParseError("--measure: unknown parameter '" + key + "'");
  }
}

RadialMeasure load_radial(const std::string& spec) {
  std::string name;
  const auto params = builtin_params(spec, name);
  if (name == "lebesgue-disk") {
    check_keys(params, {});
    return RadialMeasure::lebesgue_disk();
  }
  if (name == "atom") {
    check_keys(params, {"r", "w"});
    return RadialMeasure::atom(param(params, "r", 0.0, true), param(params, "w", 1.0, false));
  }
  if (name == "power") {
    check_keys(params, {"p", "a", "b", "c"});
    return RadialMeasure::power(param(params, "p", 0.0, true), param(params, "a", 0.0, false),
                                param(params, "b", 1.0, false), param(params, "c", 1.0, false));
  }
  return io::radial_measure_from_json(io::read_json_file(spec));
}

VerticalMeasure load_vertical(const std::string& spec) {
  std::string name;
  const auto params = builtin_params(spec, name);
  if (name == "lebesgue-halfplane") {
    check_keys(params, {});
    return VerticalMeasure::lebesgue();
  }
  if (name == "atom") {
    check_keys(params, {"y", "w"});
    return VerticalMeasure::atom(param(params, "y", 0.0, true), param(params, "w", 1.0, false));
  }
  return io::vertical_measure_from_json(io::read_json_file(spec));
}

LineMeasure load_line(const std::string& spec) {
  std::string name;
  const auto params = builtin_params(spec, name);
  if (name == "lebesgue-line") {
    check_keys(params, {});
    return LineMeasure::lebesgue();
  }
  if (name == "atom") {
    check_keys(params, {"t", "w"});
    return LineMeasure::atom(param(params, "t", 0.0, true), param(params, "w", 1.0, false));
  }
  return io::line_measure_from_json(io::read_json_file(spec));
}

struct Output {
  Json json;
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  std::vector<double> plot_x;
  std::vector<double> plot_y;
};

void emit(const Config& cfg, const Output& result) {
  std::ofstream file;
  if (!cfg.out.empty()) {
    file.open(cfg.out);
    if (!file) throw io::ParseError("--out: cannot write " + cfg.out);
  }
  std::ostream& out = cfg.out.empty() ? std::cout : file;
  if (cfg.format == "csv") {
    io::write_csv(out, result.header, result.rows);
  } else {
    io::write_json(out, result.json);
  }
  if (!cfg.plot.empty()) {
    if (result.plot_x.empty()) throw io::ParseError("--plot: this command has no plot data");
    std::ofstream plot(cfg.plot);
    if (!plot) throw io::ParseError("--plot: cannot write " + cfg.plot);
    io::write_columns(plot, result.plot_x, result.plot_y);
  }
}

SumNormOptions solver_options(const Config& cfg) {
  SumNormOptions o;
  o.m = cfg.grid;
  o.tol = cfg.tol;
  o.max_iterations = cfg.max_iters;
  return o;
}

void require_grid(const Config& cfg) {
  if (cfg.grid < 2 * static_cast<std::size_t>(cfg.n_max) + 1) {
    throw io::ParseError("--grid must be at least 2 * n-max + 1");
  }
}

Output run_moments(const Config& cfg) {
  const RadialMeasure mu = load_radial(cfg.measure);
  const auto sigma = moments(mu, cfg.n_max);
  Output o;
  o.json = {{"measure", io::to_json(mu)}, {"n_max", cfg.n_max}};
  Json list = Json::array();
  o.header = {"n", "sigma"};
  for (std::size_t n = 0; n < sigma.size(); ++n) {
    list.push_back(io::number(sigma[n]));
    o.rows.push_back({static_cast<double>(n), sigma[n]});
    o.plot_x.push_back(static_cast<double>(n));
    o.plot_y.push_back(sigma[n]);
  }
  o.json["moments"] = std::move(list);
  return o;
}

Output run_carleson(const Config& cfg) {
  Output o;
  if (cfg.measure.starts_with("lebesgue-halfplane")) {
    const auto v = vertical_carleson(load_vertical(cfg.measure));
    o.json = io::to_json(v);
    o.header = {"is_carleson", "sup_ratio"};
    o.rows.push_back({v.is_carleson ? 1.0 : 0.0, v.sup_ratio});
    return o;
  }
  const RadialMeasure mu = load_radial(cfg.measure);
  const auto v = radial_carleson(mu);
  o.json = io::to_json(v);
  o.json["singular_integral"] = io::number(singular_integral(mu));
  o.json["boundary_accessible"] = boundary_accessible(mu);
  o.header = {"is_carleson", "sup_ratio", "singular_integral"};
  o.rows.push_back({v.is_carleson ? 1.0 : 0.0, v.sup_ratio, singular_integral(mu)});
  return o;
}

Output run_sumnorm(const Config& cfg) {
  const RadialMeasure mu = load_radial(cfg.measure);
  CoeffVector u;
  if (!cfg.coeffs.empty()) {
    u = io::coeff_vector_from_json(io::read_json_file(cfg.coeffs));
  } else {
    u = corpus_sample({cfg.n_max, cfg.smoothness, false}, cfg.seed, cfg.index);
  }
  if (cfg.grid < 2 * static_cast<std::size_t>(u.n_max()) + 1) {
    throw io::ParseError("--grid must be at least 2 * n_max + 1 of the input");
  }
  const CertifiedNorm norm = sum_norm(u, mu, solver_options(cfg));
  Output o;
  o.json = {{"input", io::to_json(u)}, {"norm", io::to_json(norm)}};
  o.header = {"upper", "lower", "gap", "iterations", "converged"};
  o.rows.push_back({norm.upper, norm.lower, norm.gap, static_cast<double>(norm.iterations),
                    norm.converged ? 1.0 : 0.0});
  if (!norm.converged) {
    emit(cfg, o);
    throw NotConverged("sum norm did not reach the requested gap");
  }
  return o;
}

void add_report_rows(Output& o, const InequalityReport& r, double tag) {
  for (std::size_t i = 0; i < r.ratios.size(); ++i) {
    o.rows.push_back({tag, static_cast<double>(i), r.ratios[i], r.ceilings[i]});
  }
}

bool report_converged(const InequalityReport& r, double tol) { return r.max_relative_gap <= 2.0 * tol; }

Output run_corpus(const Config& cfg, RatioKind kind) {
  if (cfg.n_max < 1) throw io::ParseError("--n-max must be at least 1 for corpus runs");
  require_grid(cfg);
  const RadialMeasure base = load_radial(cfg.measure);
  const CorpusSpec spec{cfg.n_max, cfg.smoothness, false};
  Output o;
  o.header = {"eps", "index", "ratio", "ceiling"};
  bool converged = true;
  if (cfg.eps_list.empty()) {
    const auto r = corpus_scan(spec, base, cfg.count, cfg.seed, kind, solver_options(cfg));
    converged = report_converged(r, cfg.tol);
    o.json = io::to_json(r);
    add_report_rows(o, r, 0.0);
  } else {
    Json runs = Json::array();
    for (double eps : cfg.eps_list) {
      if (!(eps > 0.0 && eps < 1.0)) throw io::ParseError("--eps-list entries must lie in (0, 1)");
      const auto r = corpus_scan(spec, base.restricted(1.0 - eps), cfg.count, cfg.seed, kind, solver_options(cfg));
      converged = converged && report_converged(r, cfg.tol);
      runs.push_back({{"eps", io::number(eps)}, {"report", io::to_json(r)}});
      add_report_rows(o, r, eps);
      o.plot_x.push_back(eps);
      o.plot_y.push_back(r.max_ratio);
    }
    o.json = {{"kind", to_string(kind)}, {"runs", std::move(runs)}};
  }
  if (!converged) {
    emit(cfg, o);
    throw NotConverged("some certificates did not reach the requested gap");
  }
  return o;
}

Output run_fejer(const Config& cfg) {
  const RadialMeasure mu = load_radial(cfg.measure);
  for (int n : cfg.n_list) {
    if (n < 1) throw io::ParseError("--n-list entries must be at least 1");
  }
  const auto rows = fejer_experiment(mu, cfg.n_list);
  Output o;
  o.json = io::to_json(rows);
  o.header = {"n", "h1_norm", "a2_norm_sq", "partial_moment_sum"};
  for (const auto& r : rows) {
    o.rows.push_back({static_cast<double>(r.n), r.h1_norm, r.a2_norm_sq, r.partial_moment_sum});
    o.plot_x.push_back(r.n);
    o.plot_y.push_back(std::sqrt(r.a2_norm_sq));
  }
  return o;
}

Output run_wsigma(const Config& cfg) {
  const RadialMeasure mu = load_radial(cfg.measure);
  const GridFunction w = w_sigma(mu, cfg.grid);
  Output o;
  o.json = {{"samples", io::to_json(w)}, {"cauchy_kernel_bound", io::number(cauchy_kernel_bound(mu))}};
  o.header = {"theta", "im_w"};
  for (std::size_t k = 0; k < w.m(); ++k) {
    const double theta = GridFunction::node(k, w.m());
    o.rows.push_back({theta, w.samples[k].imag()});
    o.plot_x.push_back(theta);
    o.plot_y.push_back(w.samples[k].imag());
  }
  return o;
}

Output run_halfplane(const Config& cfg) {
  const std::string spec = cfg.measure == "lebesgue-disk" ? "lebesgue-halfplane" : cfg.measure;
  const VerticalMeasure pi = load_vertical(spec);
  const WeightSup sup = w_pi_sup_report(pi);
  Output o;
  o.json = {{"w_pi_sup", io::number(sup.value)},
            {"is_carleson", sup.is_carleson},
            {"const_bpi", io::number(const_bpi(cfg.c_b, pi))},
            {"c_b", io::number(cfg.c_b)}};
  o.header = {"xi", "numeric", "exact"};
  if (!(cfg.eps > 0.0 && cfg.eps < cfg.r)) throw io::ParseError("--eps and --R must satisfy 0 < eps < R");
  const FourierCheck check = w_pi_truncated_fourier_report(pi, cfg.eps, cfg.r);
  o.json["truncated_check"] = {{"eps", io::number(cfg.eps)}, {"R", io::number(cfg.r)}, {"check", io::to_json(check)}};
  for (std::size_t i = 0; i < check.xi.size(); ++i) {
    o.rows.push_back({check.xi[i], check.numeric[i], check.exact[i]});
    o.plot_x.push_back(check.xi[i]);
    o.plot_y.push_back(check.numeric[i]);
  }
  return o;
}

Output run_garnett(const Config& cfg) {
  const std::string spec = cfg.measure == "lebesgue-disk" ? "lebesgue-line" : cfg.measure;
  const GarnettReport r = garnett_check(load_line(spec));
  Output o;
  o.json = io::to_json(r);
  o.header = {"poisson_sup", "box_sup", "poisson_grid_max", "box_grid_max", "integrable"};
  o.rows.push_back({r.poisson_sup, r.box_sup, r.poisson_grid_max, r.box_grid_max, r.integrable ? 1.0 : 0.0});
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical experiments on radial and half-plane Carleson measures"};
  app.require_subcommand(1);
  Config cfg;

  const auto common = [&](CLI::App* sub) {
    sub->add_option("--measure", cfg.measure,
                    "JSON file or built-in: lebesgue-disk, atom:r=R[,w=W], power:p=P[,a,b,c], "
                    "lebesgue-halfplane, lebesgue-line");
    sub->add_option("--out", cfg.out, "write the report here instead of stdout");
    sub->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--plot", cfg.plot, "two-column plot data file");
  };
  const auto solver = [&](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "corpus seed");
    sub->add_option("--n-max", cfg.n_max, "trigonometric degree")->check(CLI::Range(0, 1 << 20));
    sub->add_option("--grid", cfg.grid, "boundary grid size M")->check(CLI::Range(std::size_t{1}, std::size_t{1} << 24));
    sub->add_option("--tol", cfg.tol, "relative duality gap target")->check(CLI::Range(1e-12, 0.5));
    sub->add_option("--max-iters", cfg.max_iters, "iteration cap per certificate")->check(CLI::PositiveNumber);
    sub->add_option("--smoothness", cfg.smoothness, "corpus variance exponent s in (1+|n|)^-s");
  };

  std::map<std::string, std::function<Output()>> commands;

  auto* moments_cmd = app.add_subcommand("moments", "radial moments sigma_n");
  common(moments_cmd);
  moments_cmd->add_option("--n-max", cfg.n_max, "highest moment")->check(CLI::Range(0, 1 << 20));
  commands["moments"] = [&] { return run_moments(cfg); };

  auto* carleson_cmd = app.add_subcommand("carleson", "Carleson box test");
  common(carleson_cmd);
  commands["carleson"] = [&] { return run_carleson(cfg); };

  auto* sumnorm_cmd = app.add_subcommand("sumnorm", "certified H_mu + L1 norm");
  common(sumnorm_cmd);
  solver(sumnorm_cmd);
  sumnorm_cmd->add_option("--coeffs", cfg.coeffs, "coefficient JSON; default is a corpus sample");
  sumnorm_cmd->add_option("--index", cfg.index, "corpus sample index");
  commands["sumnorm"] = [&] { return run_sumnorm(cfg); };

  for (const auto& [name, kind, help] :
       {std::tuple{"bbb", RatioKind::Bbb, "Bergman-weighted two-term ratio over a corpus"},
        std::tuple{"adapted", RatioKind::Adapted, "adapted-pair ratio over a corpus"},
        std::tuple{"embedding", RatioKind::Embedding, "A2 embedding ratio over an analytic corpus"}}) {
    auto* sub = app.add_subcommand(name, help);
    common(sub);
    solver(sub);
    sub->add_option("--count", cfg.count, "corpus size")->check(CLI::PositiveNumber);
    sub->add_option("--eps-list", cfg.eps_list, "truncate the measure at 1 - eps for each entry")->delimiter(',');
    commands[name] = [&cfg, kind = kind] { return run_corpus(cfg, kind); };
  }

  auto* fejer_cmd = app.add_subcommand("fejer", "Fejer kernel norms");
  common(fejer_cmd);
  fejer_cmd->add_option("--n-list", cfg.n_list, "comma-separated N values")->delimiter(',');
  commands["fejer"] = [&] { return run_fejer(cfg); };

  auto* wsigma_cmd = app.add_subcommand("wsigma", "boundary weight w_sigma on the grid");
  common(wsigma_cmd);
  wsigma_cmd->add_option("--grid", cfg.grid, "grid size")->check(CLI::Range(std::size_t{1}, std::size_t{1} << 24));
  commands["wsigma"] = [&] { return run_wsigma(cfg); };

  auto* halfplane_cmd = app.add_subcommand("halfplane", "W^Pi bound, constant and truncated transform check");
  common(halfplane_cmd);
  halfplane_cmd->add_option("--eps", cfg.eps, "lower truncation height");
  halfplane_cmd->add_option("--R", cfg.r, "upper truncation height");
  halfplane_cmd->add_option("--c-b", cfg.c_b, "multiplier bound C_b")->check(CLI::Range(1.0, 1e300));
  commands["halfplane"] = [&] { return run_halfplane(cfg); };

  auto* garnett_cmd = app.add_subcommand("garnett", "Poisson and box suprema of a line measure");
  common(garnett_cmd);
  commands["garnett"] = [&] { return run_garnett(cfg); };

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    emit(cfg, commands.at(name)());
    return 0;
  } catch (const NotConverged& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNoConvergence;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
