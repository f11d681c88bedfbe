#include "rabistark/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "rabistark/analytic.hpp"
#include "rabistark/eigensolve.hpp"
#include "rabistark/serialize.hpp"
#include "rabistark/version.hpp"

namespace rabistark {

namespace {

const std::vector<std::string> kCommands = {
    "analyze",   "spectrum",    "sweep",     "boundaries", "collapse",
    "jc-exact",  "variational", "quadruple", "wavefunction"};

AxisSpec parse_axis(const std::string& text) {
  std::istringstream in(text);
  std::string name, smin, smax, ssteps;
  if (!std::getline(in, name, ':') || !std::getline(in, smin, ':') ||
      !std::getline(in, smax, ':') || !std::getline(in, ssteps))
    throw Error(errc::bad_config,
                "grid must be param:min:max:steps, got '" + text + "'");
  const auto axis = axis_from_name(name);
  if (!axis)
    throw Error(errc::bad_config, "unknown grid parameter '" + name + "'");
  AxisSpec ax;
  ax.param = *axis;
  try {
    ax.min = std::stod(smin);
    ax.max = std::stod(smax);
    ax.steps = std::stoi(ssteps);
  } catch (const std::exception&) {
    throw Error(errc::bad_config, "malformed grid '" + text + "'");
  }
  if (ax.steps < 2)
    throw Error(errc::bad_config, "grid needs at least 2 steps");
  return ax;
}

// key=value lines with '#' comments, translated to flags; command-line
// flags come later and take precedence.
std::vector<std::string> read_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(errc::bad_config, "cannot read config " + path);
  std::vector<std::string> args;
  std::string line;
  while (std::getline(f, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      args.push_back("--" + trim(line));
      continue;
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "no-timestamp") {
      if (value == "true" || value == "1" || value.empty())
        args.push_back("--no-timestamp");
      continue;
    }
    args.push_back("--" + key);
    if (!value.empty()) args.push_back(value);
  }
  return args;
}

int default_threads() {
  if (const char* env = std::getenv("RABI_STARK_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  return 1;
}

std::string usage_text() {
  std::string s = "usage: rabistark <command> [flags]\n  commands:";
  for (const auto& c : kCommands) s += " " + c;
  s +=
      "\n  common flags: --omega W --g G --lambda L --chi X --grid "
      "param:min:max:steps\n"
      "                --tol T --law NAME --out PATH --format csv|json "
      "--threads N\n"
      "                --config FILE --no-timestamp\n"
      "  units: --omega in units of Omega, --g in units of g_s\n";
  return s;
}

}  // namespace

JobConfig parse_args(const std::vector<std::string>& argv) {
  if (argv.empty())
    throw Error(errc::bad_config, "missing command\n" + usage_text());
  JobConfig cfg;
  cfg.command = argv[0];
  if (std::find(kCommands.begin(), kCommands.end(), cfg.command) ==
      kCommands.end())
    throw Error(errc::bad_config,
                "unknown command '" + cfg.command + "'\n" + usage_text());

  // Pull --config occurrences out first; its entries are parsed before the
  // remaining flags so the command line overrides the file.
  std::vector<std::string> rest;
  std::vector<std::string> from_config;
  for (size_t i = 1; i < argv.size(); ++i) {
    const std::string& a = argv[i];
    if (a == "--config") {
      if (i + 1 >= argv.size())
        throw Error(errc::bad_config, "--config needs a path");
      auto f = read_config_file(argv[++i]);
      from_config.insert(from_config.end(), f.begin(), f.end());
    } else if (a.rfind("--config=", 0) == 0) {
      auto f = read_config_file(a.substr(9));
      from_config.insert(from_config.end(), f.begin(), f.end());
    } else {
      rest.push_back(a);
    }
  }
  std::vector<std::string> all = std::move(from_config);
  all.insert(all.end(), rest.begin(), rest.end());

  const bool is_point_command = cfg.command == "analyze" ||
                                cfg.command == "spectrum" ||
                                cfg.command == "wavefunction";
  const bool needs_omega = cfg.command != "quadruple";

  CLI::App app{std::string("rabistark ") + cfg.command};
  app.allow_extras(false);
  cfg.threads = default_threads();

  std::vector<std::string> grids;
  double omega = -1.0;
  bool have_omega = false, have_g = false, have_lambda = false,
       have_chi = false;
  double g = 0.0, lambda = 1.0, chi = 0.0;

  auto take_last = [](CLI::Option* o) {
    o->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    return o;
  };

  take_last(app.add_option("--omega", omega, "boson frequency, units of Omega"))
      ->each([&](const std::string&) { have_omega = true; });
  take_last(app.add_option("--g", g, "coupling, units of g_s"))
      ->each([&](const std::string&) { have_g = true; });
  take_last(app.add_option("--lambda", lambda, "anisotropy ratio"))
      ->each([&](const std::string&) { have_lambda = true; });
  take_last(app.add_option("--chi", chi, "Stark coupling ratio"))
      ->each([&](const std::string&) { have_chi = true; });
  app.add_option("--grid", grids, "axis spec param:min:max:steps (max twice)");
  take_last(app.add_option("--tol", cfg.tol, "energy tolerance"));
  take_last(app.add_option("--law", cfg.law, "scaling law name"));
  take_last(app.add_option("--out", cfg.out, "output path, '-' for stdout"));
  take_last(app.add_option("--format", cfg.format, "csv or json")
                ->check(CLI::IsMember({"csv", "json"})));
  take_last(app.add_option("--threads", cfg.threads, "worker threads"));
  app.add_flag("--no-timestamp", cfg.no_timestamp,
               "omit the timestamp metadata line");
  take_last(app.add_option("--levels", cfg.levels, "states for spectrum"));
  take_last(app.add_option("--onset-threshold", cfg.onset_threshold,
                           "second-order onset on <x^2>/x_s^2"));
  take_last(app.add_option("--gap-ceiling", cfg.gap_ceiling,
                           "gap minimum ceiling, units of Omega"));
  std::string scan;
  take_last(app.add_option("--scan-x", scan,
                           "variational profile range min:max:samples"));

  try {
    std::vector<std::string> reversed(all.rbegin(), all.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    throw Error(errc::bad_config,
                std::string(e.what()) + "\n" + usage_text());
  }

  if (needs_omega && !have_omega) {
    // A grid over omega also fixes it.
    bool omega_on_grid = false;
    for (const auto& s : grids)
      if (s.rfind("omega:", 0) == 0) omega_on_grid = true;
    if (!omega_on_grid)
      throw Error(errc::bad_config, "--omega is required\n" + usage_text());
  }
  if (is_point_command && !have_g)
    throw Error(errc::bad_config, "--g is required\n" + usage_text());

  cfg.point.omega = have_omega ? omega : 0.5;
  cfg.point.g = g;
  cfg.point.lambda = lambda;
  cfg.point.chi = chi;
  if (cfg.command == "quadruple") {
    if (have_chi) cfg.quad_chi = chi;
    if (have_lambda) cfg.quad_lambda = lambda;
  }

  if (grids.size() > 2)
    grids.erase(grids.begin(), grids.end() - 2);
  if (!grids.empty()) cfg.grid1 = parse_axis(grids[0]);
  if (grids.size() > 1) cfg.grid2 = parse_axis(grids[1]);

  if (!scan.empty()) {
    std::istringstream in(scan);
    std::string a, b, c;
    if (!std::getline(in, a, ':') || !std::getline(in, b, ':') ||
        !std::getline(in, c))
      throw Error(errc::bad_config, "--scan-x must be min:max:samples");
    cfg.scan_x = {std::stod(a), std::stod(b)};
    cfg.scan_samples = std::stoi(c);
  }
  if (cfg.threads < 1) cfg.threads = 1;
  return cfg;
}

namespace {

void add_timestamp(Table& t, bool suppress) {
  if (suppress) return;
  std::time_t now = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  t.meta.insert(t.meta.begin(), {"timestamp", buf});
}

void emit(const JobConfig& cfg, Table t) {
  add_timestamp(t, cfg.no_timestamp);
  write_output(cfg.out, cfg.format == "json" ? to_json(t) : to_csv(t));
}

GridSpec grid_spec_of(const JobConfig& cfg) {
  if (!cfg.grid1 || !cfg.grid2)
    throw Error(errc::bad_config, "this command needs two --grid axes");
  GridSpec spec;
  spec.x_axis = *cfg.grid1;
  spec.y_axis = *cfg.grid2;
  spec.fixed = cfg.point;
  spec.tol = cfg.tol;
  return spec;
}

int run_analyze(const JobConfig& cfg) {
  const GroundStateAnalysis a = analyze(to_model(cfg.point), cfg.tol);
  emit(cfg, table_from_analysis(a));
  return kExitOk;
}

int run_spectrum(const JobConfig& cfg) {
  const ModelParams p = to_model(cfg.point);
  SolveOptions opt;
  opt.tol = cfg.tol;
  opt.k = std::max(2, cfg.levels);
  const SpectralResult res = ground_solve(p, opt);
  const Truncation trunc{res.n_max_used};
  Table t;
  add_params_meta(t, p);
  t.meta.emplace_back("n_max_used", std::to_string(res.n_max_used));
  t.columns = {"level", "energy", "parity"};
  for (size_t i = 0; i < res.energies.size(); ++i) {
    const double par = parity_expectation(res.states[i], trunc);
    t.rows.push_back({cell(double(i)), cell(res.energies[i]),
                      cell(par > 0 ? 1.0 : -1.0)});
  }
  emit(cfg, t);
  return kExitOk;
}

int run_sweep_cmd(const JobConfig& cfg, bool with_boundaries) {
  const GridSpec spec = grid_spec_of(cfg);
  PhaseDiagram d = run_sweep(spec, cfg.threads);
  if (with_boundaries) {
    DetectOptions opt;
    opt.onset_threshold = cfg.onset_threshold;
    opt.gap_ceiling = cfg.gap_ceiling;
    d = detect_boundaries(std::move(d), opt);
    Table t = table_from_boundaries(d);
    t.meta.emplace_back("onset_threshold", format_double(opt.onset_threshold));
    t.meta.emplace_back("gap_ceiling", format_double(opt.gap_ceiling));
    emit(cfg, std::move(t));
  } else {
    emit(cfg, table_from_diagram(d));
  }
  return kExitOk;
}

int run_collapse(const JobConfig& cfg) {
  const auto law = law_from_name(cfg.law);
  if (!law)
    throw Error(errc::bad_config, "unknown or missing --law '" + cfg.law + "'");
  if (!cfg.grid1 || !cfg.grid2)
    throw Error(errc::bad_config,
                "collapse needs a family --grid (lambda or chi) and a g --grid");
  const AxisSpec* family = nullptr;
  const AxisSpec* gaxis = nullptr;
  for (const AxisSpec* ax : {&*cfg.grid1, &*cfg.grid2}) {
    if (ax->param == Axis::g)
      gaxis = ax;
    else if (ax->param == Axis::lambda || ax->param == Axis::chi)
      family = ax;
  }
  if (!family || !gaxis)
    throw Error(errc::bad_config,
                "collapse grids must cover g and lambda (or chi)");
  std::vector<std::pair<double, double>> sets;
  for (int i = 0; i < family->steps; ++i) {
    const double v = family->min +
                     (family->max - family->min) * i / double(family->steps - 1);
    if (family->param == Axis::lambda)
      sets.emplace_back(v, cfg.point.chi);
    else
      sets.emplace_back(cfg.point.lambda, v);
  }
  CollapseOptions opt;
  opt.tol = cfg.tol;
  opt.threads = cfg.threads;
  const CollapseDataset d =
      build_collapse(*law, sets, {gaxis->min, gaxis->max}, gaxis->steps,
                     cfg.point.omega, opt);
  Table t = table_from_collapse(d);
  t.meta.emplace_back("omega", format_double(cfg.point.omega));
  emit(cfg, std::move(t));
  return kExitOk;
}

int run_jc_exact(const JobConfig& cfg) {
  Table t;
  t.meta.emplace_back("version", kVersion);
  t.meta.emplace_back("omega", format_double(cfg.point.omega));
  t.meta.emplace_back("chi", format_double(cfg.point.chi));
  t.columns = {"g", "E_GS", "n_star"};
  auto row_for = [&](double gratio) {
    const ModelParams p =
        params_from_ratios(cfg.point.omega, gratio, 0.0, cfg.point.chi);
    const JCGround gs = jc_ground_energy(p);
    t.rows.push_back({cell(gratio), cell(gs.E_GS),
                      cell(gs.n_star ? double(*gs.n_star) : -1.0)});
  };
  if (cfg.grid1 && cfg.grid1->param == Axis::g) {
    for (int i = 0; i < cfg.grid1->steps; ++i)
      row_for(cfg.grid1->min + (cfg.grid1->max - cfg.grid1->min) * i /
                                   double(cfg.grid1->steps - 1));
  } else {
    row_for(cfg.point.g);
  }
  emit(cfg, std::move(t));
  return kExitOk;
}

int run_variational(const JobConfig& cfg) {
  Table t;
  if (cfg.grid1 && cfg.grid1->param == Axis::g) {
    t.meta.emplace_back("version", kVersion);
    t.meta.emplace_back("omega", format_double(cfg.point.omega));
    t.meta.emplace_back("lambda", format_double(cfg.point.lambda));
    t.meta.emplace_back("chi", format_double(cfg.point.chi));
    t.columns = {"g", "x_A", "E_SC_A", "E_SC_B"};
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (int i = 0; i < cfg.grid1->steps; ++i) {
      const double gratio =
          cfg.grid1->min + (cfg.grid1->max - cfg.grid1->min) * i /
                               double(cfg.grid1->steps - 1);
      const ModelParams p = params_from_ratios(cfg.point.omega, gratio,
                                               cfg.point.lambda, cfg.point.chi);
      const VariationalMinima m = variational_minima(p);
      t.rows.push_back({cell(gratio), cell(m.x_A ? *m.x_A : nan),
                        cell(m.E_SC_A ? *m.E_SC_A : nan), cell(m.E_SC_B)});
    }
    emit(cfg, std::move(t));
    return kExitOk;
  }

  const ModelParams p = to_model(cfg.point);
  const VariationalMinima m = variational_minima(p);
  const DerivedScales s = derived_scales(p);
  add_params_meta(t, p);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  t.meta.emplace_back("x_A", format_double(m.x_A ? *m.x_A : nan));
  t.meta.emplace_back("E_SC_A", format_double(m.E_SC_A ? *m.E_SC_A : nan));
  t.meta.emplace_back("E_SC_B", format_double(m.E_SC_B));
  t.meta.emplace_back(
      "g_c", format_double(critical_coupling(p.lambda, p.chi)));
  double lo, hi;
  int samples = cfg.scan_samples;
  if (cfg.scan_x) {
    lo = cfg.scan_x->first;
    hi = cfg.scan_x->second;
  } else {
    const double reach = std::max({4.0, m.x_A ? 1.6 * *m.x_A : 0.0,
                                   1.2 * std::fabs(s.gp_z),
                                   1.2 * std::fabs(s.gp_y)});
    lo = -reach;
    hi = reach;
  }
  t.columns = {"x", "epsilon"};
  for (int i = 0; i < samples; ++i) {
    const double x = lo + (hi - lo) * i / double(samples - 1);
    t.rows.push_back({cell(x), cell(variational_energy(x, p))});
  }
  emit(cfg, std::move(t));
  return kExitOk;
}

int run_quadruple(const JobConfig& cfg) {
  QuadruplePoint q;
  if (cfg.quad_chi && !cfg.quad_lambda)
    q = quadruple_point_fixed_chi(*cfg.quad_chi);
  else if (cfg.quad_lambda && !cfg.quad_chi)
    q = quadruple_point_fixed_lambda(*cfg.quad_lambda);
  else
    throw Error(errc::bad_config,
                "quadruple needs exactly one of --chi or --lambda");
  Table t;
  t.meta.emplace_back("version", kVersion);
  t.columns = {"g_TQ", "lambda_TQ", "chi_TQ"};
  t.rows.push_back({cell(q.g), cell(q.lambda), cell(q.chi)});
  emit(cfg, std::move(t));
  return kExitOk;
}

int run_wavefunction(const JobConfig& cfg) {
  const ModelParams p = to_model(cfg.point);
  SolveOptions opt;
  opt.tol = cfg.tol;
  opt.k = 2;
  const SpectralResult res = ground_solve(p, opt);
  const Truncation trunc{res.n_max_used};
  const std::vector<double>* gs = &res.states[0];
  if (excitation_gap(res) < 1e-9 * p.Omega &&
      parity_expectation(res.states[0], trunc) < 0.0 &&
      parity_expectation(res.states[1], trunc) > 0.0)
    gs = &res.states[1];
  const double mean_n = expectation_number(*gs, trunc);
  const PositionWaveFunction wf =
      position_representation(*gs, trunc, default_grid(p, mean_n));
  Table t;
  add_params_meta(t, p);
  t.meta.emplace_back("n_max_used", std::to_string(res.n_max_used));
  t.columns = {"x", "psi_plus", "psi_minus"};
  for (size_t i = 0; i < wf.grid.size(); ++i)
    t.rows.push_back(
        {cell(wf.grid[i]), cell(wf.psi_plus[i]), cell(wf.psi_minus[i])});
  emit(cfg, std::move(t));
  return kExitOk;
}

}  // namespace

int run_job(const JobConfig& cfg) {
  if (cfg.command == "analyze") return run_analyze(cfg);
  if (cfg.command == "spectrum") return run_spectrum(cfg);
  if (cfg.command == "sweep") return run_sweep_cmd(cfg, false);
  if (cfg.command == "boundaries") return run_sweep_cmd(cfg, true);
  if (cfg.command == "collapse") return run_collapse(cfg);
  if (cfg.command == "jc-exact") return run_jc_exact(cfg);
  if (cfg.command == "variational") return run_variational(cfg);
  if (cfg.command == "quadruple") return run_quadruple(cfg);
  if (cfg.command == "wavefunction") return run_wavefunction(cfg);
  throw Error(errc::bad_config, "unknown command " + cfg.command);
}

int cli_main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  if (!args.empty() && (args[0] == "--help" || args[0] == "-h")) {
    std::cout << usage_text();
    return kExitOk;
  }
  if (!args.empty() && args[0] == "--version") {
    std::cout << "rabistark " << kVersion << "\n";
    return kExitOk;
  }
  try {
    const JobConfig cfg = parse_args(args);
    return run_job(cfg);
  } catch (const Error& e) {
    std::cerr << "rabistark: " << e.what() << "\n";
    switch (e.code()) {
      case errc::io_error:
        return kExitIo;
      case errc::truncation_ceiling:
      case errc::convergence_failure:
      case errc::reconstruction_mismatch:
      case errc::impure_parity:
        return kExitNumerical;
      default:
        return kExitUsage;
    }
  } catch (const std::exception& e) {
    std::cerr << "rabistark: " << e.what() << "\n";
    return kExitNumerical;
  }
}

}  // namespace rabistark
