#include "heatlab/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "heatlab/csv.hpp"
#include "heatlab/drive.hpp"
#include "heatlab/error.hpp"
#include "heatlab/expression.hpp"
#include "heatlab/heat_forward.hpp"
#include "heatlab/laplace.hpp"
#include "heatlab/profile.hpp"
#include "heatlab/property_c.hpp"
#include "heatlab/reconstruct.hpp"
#include "heatlab/spectrum.hpp"

namespace heatlab::cli {

namespace fs = std::filesystem;

namespace {

std::string output_path(const ExperimentConfig& cfg, const std::string& name) {
  std::error_code ec;
  fs::create_directories(cfg.output_dir, ec);
  if (ec) throw FileError(cfg.output_dir, "cannot create output directory");
  return (fs::path(cfg.output_dir) / name).string();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FileError(path, "cannot open file for writing");
  out << text;
  if (!out) throw FileError(path, "write failed");
}

// Plots columns 1:2 of each CSV in one gnuplot script.
void gnuplot_script(RunResult& result, const ExperimentConfig& cfg, const std::string& name,
                    const std::string& xlabel, const std::string& ylabel,
                    const std::vector<std::string>& csv_names, bool log_x = false) {
  if (!cfg.gnuplot) return;
  std::ostringstream s;
  s << "set datafile separator ','\n"
    << "set key autotitle columnhead\n"
    << "set xlabel '" << xlabel << "'\n"
    << "set ylabel '" << ylabel << "'\n";
  if (log_x) s << "set logscale x\n";
  s << "plot ";
  for (std::size_t i = 0; i < csv_names.size(); ++i) {
    if (i) s << ", \\\n     ";
    s << "'" << csv_names[i] << "' using 1:2 with linespoints title '" << csv_names[i] << "'";
  }
  s << "\npause mouse close\n";
  auto path = output_path(cfg, name);
  write_text(path, s.str());
  result.files.push_back(path);
}

SpaceTimeGrid grid_of(const ExperimentConfig& cfg) {
  return SpaceTimeGrid(cfg.nx, cfg.nt, cfg.t_final);
}

std::vector<double> lambda_grid(const ExperimentConfig& cfg) {
  if (!(cfg.lambda_min > 0.0) || !(cfg.lambda_max > cfg.lambda_min))
    throw InvalidInput("lambda range must satisfy 0 < lambda-min < lambda-max");
  if (cfg.lambda_count < 2) throw InvalidInput("lambda-count must be at least 2");
  if (cfg.lambda_spacing == "log") return log_spaced(cfg.lambda_min, cfg.lambda_max, cfg.lambda_count);
  if (cfg.lambda_spacing == "linear") {
    std::vector<double> l(cfg.lambda_count);
    for (std::size_t i = 0; i < l.size(); ++i)
      l[i] = cfg.lambda_min + (cfg.lambda_max - cfg.lambda_min) * static_cast<double>(i) /
                                  static_cast<double>(l.size() - 1);
    return l;
  }
  throw InvalidInput("lambda-spacing must be log or linear, got '" + cfg.lambda_spacing + "'");
}

FluxEnd end_of(const std::string& s) {
  if (s == "right") return FluxEnd::right;
  if (s == "left") return FluxEnd::left;
  throw InvalidInput("end must be right or left, got '" + s + "'");
}

std::string flux_name(FluxEnd end) { return end == FluxEnd::right ? "g" : "h"; }

void write_series(const std::string& path, const TimeSeries& s) {
  write_csv(path, {"t", "value"}, {s.t, s.y});
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// key=value lines become "--key value" arguments. Blank lines and lines
// starting with '#' or ';' are skipped; "flag=true" becomes a bare "--flag".
std::vector<std::string> config_arguments(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FileError(path, "cannot open file");
  auto trim = [](std::string v) {
    auto b = v.find_first_not_of(" \t\r");
    if (b == std::string::npos) return std::string{};
    auto e = v.find_last_not_of(" \t\r");
    return v.substr(b, e - b + 1);
  };
  std::vector<std::string> args;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw FileError(path, "line " + std::to_string(lineno) + ": expected key=value");
    auto key = trim(line.substr(0, eq));
    auto value = trim(line.substr(eq + 1));
    if (key.rfind("--", 0) == 0) key.erase(0, 2);
    if (key.empty() || key == "config")
      throw FileError(path, "line " + std::to_string(lineno) + ": bad key");
    if (value == "true") {
      args.push_back("--" + key);
    } else if (value != "false") {
      args.push_back("--" + key);
      args.push_back(value);
    }
  }
  return args;
}

std::string strip_prefix(std::string s, std::string_view prefix) {
  if (s.rfind(prefix, 0) == 0) s.erase(0, prefix.size());
  return s;
}

}  // namespace

RunResult run_forward(const ExperimentConfig& cfg) {
  auto a = make_profile(cfg.profile);
  auto f = make_drive(cfg.drive);
  auto grid = grid_of(cfg);
  auto field = solve_forward(a, f, grid);
  auto g = flux_right(field, a);
  auto h = flux_left(field, a);

  RunResult r;
  auto gp = output_path(cfg, "g.csv");
  auto hp = output_path(cfg, "h.csv");
  write_series(gp, g);
  write_series(hp, h);
  r.files = {gp, hp};

  // u at a handful of times, one column per snapshot.
  std::vector<std::string> header{"x"};
  std::vector<std::vector<double>> cols(1);
  for (std::size_t i = 0; i < grid.nx(); ++i) cols[0].push_back(grid.x(i));
  for (int q = 1; q <= 4; ++q) {
    std::size_t k = grid.nt() * static_cast<std::size_t>(q) / 4;
    header.push_back("u_t" + format_number(grid.t(k)));
    auto row = field.row(k);
    cols.emplace_back(row.begin(), row.end());
  }
  auto up = output_path(cfg, "u_snapshots.csv");
  write_csv(up, header, cols);
  r.files.push_back(up);

  std::ostringstream s;
  s << "profile: " << a.describe() << "\n"
    << "drive: " << f.describe() << "\n"
    << "grid: nx=" << grid.nx() << " nt=" << grid.nt() << " T=" << format_number(grid.t_final())
    << "\n"
    << "g(T): " << format_number(g.y.back()) << "\n"
    << "h(T): " << format_number(h.y.back()) << "\n"
    << "max|g|: " << format_number(max_abs(g.y)) << "\n"
    << "max|h|: " << format_number(max_abs(h.y)) << "\n"
    << "max|u|: " << format_number(max_abs(field.row(grid.nt()))) << " at T\n"
    << "thermal resistance: " << format_number(thermal_resistance(a)) << "\n";
  auto sp = output_path(cfg, "forward_summary.txt");
  write_text(sp, s.str());
  r.files.push_back(sp);
  r.notes.push_back("g(T) = " + format_number(g.y.back()));
  gnuplot_script(r, cfg, "fluxes.gp", "t", "flux", {"g.csv", "h.csv"});
  return r;
}

RunResult run_laplace(const ExperimentConfig& cfg) {
  TimeSeries series;
  if (!cfg.series.empty()) {
    auto table = read_csv(cfg.series);
    series = {table.column("t"), table.column("value")};
    series.validate();
  } else {
    auto f = make_drive(cfg.drive);
    auto grid = grid_of(cfg);
    series.t = grid.times();
    for (double t : series.t) series.y.push_back(f(t));
  }
  TailModel tail;
  if (cfg.tail == "zero")
    tail = TailModel::zero;
  else if (cfg.tail == "constant")
    tail = TailModel::constant;
  else
    throw InvalidInput("tail must be zero or constant, got '" + cfg.tail + "'");

  auto lambdas = lambda_grid(cfg);
  auto F = laplace_transform(series, lambdas, tail);
  RunResult r;
  auto p = output_path(cfg, "laplace.csv");
  write_csv(p, {"lambda", "value"}, {F.lambdas, F.values});
  r.files.push_back(p);
  if (F.truncation_warning)
    r.notes.push_back("warning: lambda_min * T < 5, truncated tail may matter");
  gnuplot_script(r, cfg, "laplace.gp", "lambda", "transform", {"laplace.csv"}, true);
  return r;
}

RunResult run_spectrum(const ExperimentConfig& cfg) {
  auto a = make_profile(cfg.profile);
  auto report = spectrum_symmetry_report(a, cfg.n_eigen);
  const auto& s = report.original;
  std::vector<double> j(s.eigenvalues.size());
  for (std::size_t i = 0; i < j.size(); ++i) j[i] = static_cast<double>(i);

  RunResult r;
  auto p = output_path(cfg, "spectrum.csv");
  write_csv(p, {"j", "lambda"}, {j, s.eigenvalues});
  r.files.push_back(p);
  auto pr = output_path(cfg, "spectrum_reflected.csv");
  write_csv(pr, {"j", "lambda"}, {j, report.reflected.eigenvalues});
  r.files.push_back(pr);

  std::ostringstream t;
  t << "profile: " << a.describe() << "\n"
    << "liouville length: " << format_number(liouville_length(a)) << "\n"
    << "eigenvalues: " << s.eigenvalues.size() << "\n"
    << "max |lambda_j(a) - lambda_j(reflect(a))|: " << format_number(report.max_difference())
    << "\n";
  for (const auto& flag : s.flags) t << "flag: " << flag << "\n";
  auto rp = output_path(cfg, "spectrum_report.txt");
  write_text(rp, t.str());
  r.files.push_back(rp);
  r.notes.push_back("reflection max difference " + format_number(report.max_difference()));
  gnuplot_script(r, cfg, "spectrum.gp", "j", "lambda_j",
                 {"spectrum.csv", "spectrum_reflected.csv"});
  return r;
}

RunResult run_nonuniq(const ExperimentConfig& cfg) {
  auto a = make_profile(cfg.profile);
  auto f = make_drive(cfg.drive);
  auto grid = grid_of(cfg);
  auto lambdas = lambda_grid(cfg);
  auto rep = ambiguity_experiment(a, f, grid, lambdas);

  RunResult r;
  std::ostringstream t;
  t << "profile: " << a.describe() << "\n"
    << "reflection: " << reflect(a).describe() << "\n"
    << "drive: " << f.describe() << "\n"
    << "asymmetry max|a(x) - a(1-x)|: " << format_number(rep.asymmetry) << "\n";
  if (rep.vacuous) {
    t << "vacuous: profile symmetric\n";
    r.notes.push_back("vacuous: profile symmetric");
  } else {
    t << "lambda domain max relative |H_a - H_reflected|: "
      << format_number(rep.max_H_relative_difference) << "\n"
      << "time domain max |h_a - h_reflected|: " << format_number(rep.max_left_flux_difference)
      << "\n"
      << "time domain max |g_a - g_reflected|: " << format_number(rep.max_right_flux_difference)
      << "\n";
    r.notes.push_back("H relative difference " + format_number(rep.max_H_relative_difference) +
                      ", right flux difference " + format_number(rep.max_right_flux_difference));
  }
  auto rp = output_path(cfg, "nonuniq_report.txt");
  write_text(rp, t.str());
  r.files.push_back(rp);
  if (!rep.vacuous) {
    auto hp = output_path(cfg, "H.csv");
    write_csv(hp, {"lambda", "H_a", "H_reflected"},
              {rep.H_original.lambdas, rep.H_original.values, rep.H_reflected.values});
    r.files.push_back(hp);
    gnuplot_script(r, cfg, "H.gp", "lambda", "H", {"H.csv"}, true);
  }
  return r;
}

RunResult run_propc(const ExperimentConfig& cfg) {
  auto a1 = make_profile(cfg.profile);
  auto a2 = make_profile(cfg.profile2);
  auto target_fn = Expression::parse(strip_prefix(cfg.target, "poly:"));
  auto lambdas = lambda_grid(cfg);
  auto dict = build_product_dictionary(a1, a2, lambdas, cfg.points);
  std::vector<double> target(dict.x.size());
  for (std::size_t i = 0; i < target.size(); ++i) target[i] = target_fn(dict.x[i]);
  auto curve = completeness_residual(dict, target);

  std::vector<double> n(curve.residual.size());
  for (std::size_t i = 0; i < n.size(); ++i) n[i] = static_cast<double>(i + 1);
  RunResult r;
  auto p = output_path(cfg, "residual.csv");
  write_csv(p, {"N", "residual"}, {n, curve.residual});
  r.files.push_back(p);

  std::ostringstream t;
  t << "a1: " << a1.describe() << "\n"
    << "a2: " << a2.describe() << "\n"
    << "target: " << target_fn.text() << "\n"
    << "target norm: " << format_number(curve.target_norm) << "\n"
    << "r_1: " << format_number(curve.residual.front()) << "\n"
    << "r_N: " << format_number(curve.residual.back()) << "\n"
    << "r_N / r_1: " << format_number(curve.residual.back() / curve.residual.front()) << "\n"
    << "dropped columns:";
  for (auto d : curve.dropped) t << " " << d + 1;
  t << "\n";
  auto rp = output_path(cfg, "propc_report.txt");
  write_text(rp, t.str());
  r.files.push_back(rp);
  r.notes.push_back("r_N / r_1 = " + format_number(curve.residual.back() / curve.residual.front()));
  gnuplot_script(r, cfg, "residual.gp", "N", "residual", {"residual.csv"});
  return r;
}

RunResult run_reconstruct(const ExperimentConfig& cfg) {
  auto f = make_drive(cfg.drive);
  auto grid = grid_of(cfg);
  auto end = end_of(cfg.end);

  ReconstructionConfig rc;
  rc.m = cfg.m;
  rc.alpha = cfg.alpha;
  rc.max_iters = cfg.max_iters;
  rc.data_end = end;
  rc.init = make_profile(cfg.init);
  rc.validate();

  TimeSeries data;
  std::optional<ConductivityProfile> truth;
  std::string source;
  if (!cfg.data.empty()) {
    auto table = read_csv(cfg.data);
    TimeSeries raw{table.column("t"), table.column("value")};
    raw.validate();
    data.t = grid.times();
    for (double t : data.t) data.y.push_back(raw.at(t));
    source = "file " + cfg.data;
  } else {
    truth = make_profile(cfg.profile);
    data = observe_flux(*truth, f, grid, end);
    source = "synthetic (inverse crime) from " + truth->describe();
  }
  if (cfg.noise > 0.0) {
    data = add_uniform_noise(data, cfg.noise, cfg.seed);
    source += ", uniform noise " + format_number(cfg.noise) + " seed " + std::to_string(cfg.seed);
  }

  auto res = reconstruct(data, f, grid, rc);

  RunResult r;
  auto pp = output_path(cfg, "profile.csv");
  write_profile_csv(pp, res.profile, 101);
  r.files.push_back(pp);

  std::ostringstream t;
  t << "data: " << flux_name(end) << " at " << cfg.end << " end, " << source << "\n"
    << "drive: " << f.describe() << "\n"
    << "grid: nx=" << grid.nx() << " nt=" << grid.nt() << " T=" << format_number(grid.t_final())
    << "\n"
    << "init: " << rc.init.describe() << "\n"
    << "m: " << rc.m << " alpha: " << format_number(rc.alpha) << "\n"
    << "converged: " << (res.converged ? "yes" : "no") << "\n"
    << "stop: " << res.stop_reason << "\n"
    << "iterations: " << res.iterations << "\n"
    << "final misfit: " << format_number(res.final_misfit) << "\n"
    << "nodes:";
  for (double v : res.log_nodes) t << " " << format_number(std::exp(v));
  t << "\n";
  if (truth) {
    t << "relative L2 error vs truth: " << format_number(relative_l2_error(res.profile, *truth))
      << "\n"
      << "relative L2 error vs reflected truth: "
      << format_number(relative_l2_error(res.profile, reflect(*truth))) << "\n";
  }
  t << "misfit history:\n";
  for (std::size_t i = 0; i < res.misfit_history.size(); ++i)
    t << i << " " << format_number(res.misfit_history[i]) << "\n";
  auto rp = output_path(cfg, "reconstruct_report.txt");
  write_text(rp, t.str());
  r.files.push_back(rp);
  r.notes.push_back(std::string(res.converged ? "converged" : "not converged") + ": " +
                    res.stop_reason + ", misfit " + format_number(res.final_misfit));
  gnuplot_script(r, cfg, "profile.gp", "x", "a", {"profile.csv"});
  return r;
}

int main(int argc, char** argv) {
  ExperimentConfig cfg;
  CLI::App app{"heatlab: forward and inverse experiments for u_t = (a u_x)_x"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  std::string config_path;
  auto common = [&cfg, &config_path](CLI::App* s, bool grid) {
    s->add_option("--config", config_path, "key=value file; flags given on the command line win");
    s->add_option("--out", cfg.output_dir, "output directory")->capture_default_str();
    s->add_flag("--gnuplot", cfg.gnuplot, "also write gnuplot scripts");
    if (grid) {
      s->add_option("--nx", cfg.nx, "spatial nodes")->capture_default_str();
      s->add_option("--nt", cfg.nt, "time steps")->capture_default_str();
      s->add_option("--T", cfg.t_final, "final time")->capture_default_str();
    }
  };
  auto lambdas = [&cfg](CLI::App* s) {
    s->add_option("--lambda-min", cfg.lambda_min)->capture_default_str();
    s->add_option("--lambda-max", cfg.lambda_max)->capture_default_str();
    s->add_option("--lambda-count", cfg.lambda_count)->capture_default_str();
    s->add_option("--lambda-spacing", cfg.lambda_spacing, "log or linear")->capture_default_str();
  };

  auto* fwd = app.add_subcommand("forward", "forward solve; writes g.csv, h.csv and a summary");
  common(fwd, true);
  fwd->add_option("--profile", cfg.profile, "conductivity a(x)")->capture_default_str();
  fwd->add_option("--drive", cfg.drive, "boundary temperature f(t)")->capture_default_str();

  auto* lap = app.add_subcommand("laplace", "Laplace transform of a series or drive");
  common(lap, true);
  lambdas(lap);
  lap->add_option("--series", cfg.series, "CSV with header t,value");
  lap->add_option("--drive", cfg.drive, "sampled on the grid when no series is given")
      ->capture_default_str();
  lap->add_option("--tail", cfg.tail, "zero or constant")->capture_default_str();

  auto* spec = app.add_subcommand("spectrum", "Neumann eigenvalues of a and its reflection");
  common(spec, false);
  spec->add_option("--profile", cfg.profile)->capture_default_str();
  spec->add_option("--n", cfg.n_eigen, "number of eigenvalues")->capture_default_str();

  auto* non = app.add_subcommand("nonuniq", "left-flux comparison of a and its reflection");
  common(non, true);
  lambdas(non);
  non->add_option("--profile", cfg.profile)->capture_default_str();
  non->add_option("--drive", cfg.drive)->capture_default_str();

  auto* pc = app.add_subcommand("propc", "completeness residual of the product dictionary");
  common(pc, false);
  lambdas(pc);
  pc->add_option("--profile,--a1", cfg.profile, "a1")->default_str("const:1");
  pc->add_option("--profile2,--a2", cfg.profile2, "a2")->capture_default_str();
  pc->add_option("--target", cfg.target, "expression in x, optional poly: prefix")
      ->capture_default_str();
  pc->add_option("--nl", cfg.lambda_count, "number of lambdas")->default_str("40");
  pc->add_option("--points", cfg.points, "x-grid size (odd)")->capture_default_str();

  auto* rec = app.add_subcommand("reconstruct", "Gauss-Newton recovery of a from flux data");
  common(rec, true);
  rec->add_option("--truth,--profile", cfg.profile, "profile generating synthetic data")
      ->capture_default_str();
  rec->add_option("--drive", cfg.drive)->capture_default_str();
  rec->add_option("--end", cfg.end, "right (g) or left (h)")->capture_default_str();
  rec->add_option("--init", cfg.init)->capture_default_str();
  rec->add_option("--data", cfg.data, "measured flux CSV t,value instead of synthetic data");
  rec->add_option("--m", cfg.m, "nodes")->capture_default_str();
  rec->add_option("--alpha", cfg.alpha, "second-difference penalty")->capture_default_str();
  rec->add_option("--max-iters", cfg.max_iters)->capture_default_str();
  rec->add_option("--noise", cfg.noise, "uniform noise level relative to max|data|")
      ->capture_default_str();
  rec->add_option("--seed", cfg.seed)->capture_default_str();

  // Per-command defaults that differ from the struct's.
  bool propc_profile = false;
  std::size_t command_at = 0;
  for (int i = 1; i < argc; ++i) {
    std::string_view s = argv[i];
    if (s == "reconstruct") {
      cfg.nx = 81;
      cfg.nt = 400;
      cfg.t_final = 1.0;
    } else if (s == "nonuniq") {
      cfg.nx = 201;
      cfg.nt = 2000;
    } else if (s == "propc") {
      propc_profile = true;
    }
    if (s == "forward" || s == "laplace" || s == "spectrum" || s == "nonuniq" || s == "propc" ||
        s == "reconstruct") {
      command_at = static_cast<std::size_t>(i);
      break;
    }
  }
  if (propc_profile) cfg.profile = "const:1";

  // Config values go right after the subcommand so that later flags override them.
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    for (std::size_t i = 0; i + 1 < args.size(); ++i) {
      if (args[i] != "--config") continue;
      auto extra = config_arguments(args[i + 1]);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i),
                 args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
      args.insert(args.begin() + static_cast<std::ptrdiff_t>(command_at), extra.begin(),
                  extra.end());
      break;
    }
  } catch (const FileError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  std::reverse(args.begin(), args.end());

  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  cfg.command = app.get_subcommands().front()->get_name();
  try {
    RunResult r;
    if (*fwd) r = run_forward(cfg);
    else if (*lap) r = run_laplace(cfg);
    else if (*spec) r = run_spectrum(cfg);
    else if (*non) r = run_nonuniq(cfg);
    else if (*pc) r = run_propc(cfg);
    else if (*rec) r = run_reconstruct(cfg);
    for (const auto& n : r.notes) std::cout << n << "\n";
    for (const auto& f : r.files) std::cout << "wrote " << f << "\n";
    return 0;
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n" << app.get_subcommands().front()->help();
    return 2;
  } catch (const FileError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace heatlab::cli
