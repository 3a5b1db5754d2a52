// Copyright 2026 The ratprog Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "ratprog/codegen.hpp"
#include "ratprog/configspace.hpp"
#include "ratprog/errors.hpp"
#include "ratprog/expr_parser.hpp"
#include "ratprog/fitting.hpp"
#include "ratprog/history.hpp"
#include "ratprog/ir.hpp"
#include "ratprog/occupancy.hpp"
#include "ratprog/pipeline.hpp"
#include "ratprog/profile.hpp"
#include "ratprog/program.hpp"

namespace ratprog::cli {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
  if (!out) throw InputError("failed writing '" + path + "'");
}

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return "";
  auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::pair<std::string, std::string> split_binding(const std::string& text, const char* what) {
  auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) throw ParseError(std::string(what) + " '" + text + "' is not NAME=VALUE");
  return {trim(text.substr(0, eq)), trim(text.substr(eq + 1))};
}

std::int64_t parse_int(const std::string& text, const char* what) {
  Rational q = parse_rational(text);
  if (!is_integer(q)) throw ParseError(std::string(what) + " must be an integer, got '" + text + "'");
  return static_cast<std::int64_t>(numerator(q));
}

std::vector<unsigned> parse_degrees(const std::string& text, std::size_t n_vars) {
  std::vector<unsigned> out;
  for (const auto& part : split(text, ',')) {
    std::int64_t d = parse_int(part, "degree");
    if (d < 0) throw DomainError("degree must be non-negative, got " + part);
    out.push_back(static_cast<unsigned>(d));
  }
  if (out.size() == 1 && n_vars > 1) out.assign(n_vars, out.front());
  if (out.size() != n_vars)
    throw DimensionError("degree list '" + text + "' has " + std::to_string(out.size()) + " entries for " +
                         std::to_string(n_vars) + " variables");
  return out;
}

DegreeBounds parse_bounds(const std::string& num, const std::string& den, std::size_t n_vars) {
  DegreeBounds b = DegreeBounds::uniform(n_vars, 2);
  if (!num.empty()) b.numerator = parse_degrees(num, n_vars);
  if (!den.empty()) b.denominator = parse_degrees(den, n_vars);
  b.check();
  return b;
}

// "lo..hi*k", "lo..hi+k" or "a,b,c".
std::vector<double> parse_axis(const std::string& text) {
  std::vector<double> values;
  auto dots = text.find("..");
  if (dots == std::string::npos) {
    for (const auto& p : split(text, ',')) values.push_back(static_cast<double>(parse_int(p, "grid value")));
    return values;
  }
  std::string rest = text.substr(dots + 2);
  auto step_pos = rest.find_first_of("*+");
  if (step_pos == std::string::npos) throw ParseError("grid range '" + text + "' needs a step (*k or +k)");
  std::int64_t lo = parse_int(trim(text.substr(0, dots)), "grid bound");
  std::int64_t hi = parse_int(trim(rest.substr(0, step_pos)), "grid bound");
  std::int64_t step = parse_int(trim(rest.substr(step_pos + 1)), "grid step");
  bool geometric = rest[step_pos] == '*';
  if (lo < 1 && geometric) throw DomainError("geometric grid range must start at >= 1: '" + text + "'");
  if ((geometric && step < 2) || (!geometric && step < 1)) throw DomainError("grid range '" + text + "' does not advance");
  for (std::int64_t v = lo; v <= hi; v = geometric ? v * step : v + step) values.push_back(static_cast<double>(v));
  return values;
}

struct GridSpec {
  std::vector<std::string> vars;
  std::vector<std::vector<double>> points;
};

GridSpec parse_grid_spec(const std::string& text, const std::vector<std::string>& where) {
  GridSpec g;
  std::vector<std::vector<double>> axes;
  for (const auto& part : split(text, ';')) {
    if (part.empty()) continue;
    auto [name, range] = split_binding(part, "grid axis");
    g.vars.push_back(name);
    axes.push_back(parse_axis(range));
  }
  if (axes.empty()) throw ParseError("empty grid specification");
  std::vector<Expr> filters;
  for (const auto& w : where) filters.push_back(parse_condition(w));

  std::vector<std::size_t> idx(axes.size(), 0);
  while (true) {
    std::vector<double> p;
    Valuation env;
    for (std::size_t k = 0; k < axes.size(); ++k) {
      p.push_back(axes[k][idx[k]]);
      env[g.vars[k]] = Rational(static_cast<long long>(axes[k][idx[k]]));
    }
    bool keep = true;
    for (const auto& f : filters) keep = keep && evaluate_bool(f, env);
    if (keep) g.points.push_back(std::move(p));
    std::size_t k = axes.size();
    while (k > 0 && ++idx[k - 1] == axes[k - 1].size()) idx[--k] = 0;
    if (k == 0) break;
  }
  if (g.points.empty()) throw DomainError("grid specification selects no points");
  return g;
}

std::string fmt_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string block_text(const BlockDims& b) {
  return std::to_string(b.bx) + "x" + std::to_string(b.by) + "x" + std::to_string(b.bz);
}

void override_space(DriverProgram& driver, const std::string& constraints, const std::string& grid,
                    const std::string& mode, int dim) {
  if (!constraints.empty()) driver.constraints.block_constraints = configspace::parse_constraint_file(read_file(constraints));
  if (!grid.empty()) driver.constraints.grid_formulas = configspace::parse_grid_file(read_file(grid));
  if (!mode.empty()) driver.policy.mode = parse_mode(mode);
  if (dim != 0) driver.policy.dimensionality = dim;
  driver.policy.check();
}

struct Inputs {
  // occupancy
  std::string device;
  std::int64_t regs = 0, shmem = 0, threads = 0;
  std::string emit_ir;
  // eval / emit-c / pieces
  std::string program;
  std::vector<std::string> sets;
  std::string name = "ratprog_eval";
  // fit / build
  std::string data, metric, num_deg, den_deg;
  double holdout = 0;
  std::uint64_t seed = 0;
  std::string out;
  std::string tmpl;
  std::vector<std::string> bounds;
  std::string constraints, grid, mode;
  int dim = 0;
  // select / compare
  std::string driver;
  std::int64_t n = 0;
  std::string cache;
  bool json = false;
  std::string tie_margin;
  bool ignore_corrupt = false;
  std::string oracle;
  std::string n_list;
  // simulate
  std::vector<std::string> models;
  std::string grid_spec;
  std::vector<std::string> where;
  double noise = 0;
};

int cmd_occupancy(const Inputs& in, std::ostream& out) {
  DeviceSpec spec = device_from_json(parse_json(read_file(in.device)));
  KernelResourceUsage usage{in.regs, in.shmem};
  if (in.threads < 1) throw DomainError("threads per block must be >= 1, got " + std::to_string(in.threads));
  auto blocks = occupancy::active_blocks(spec, usage, in.threads);
  auto warps = occupancy::active_warps(spec, usage, in.threads);
  Rational ratio = occupancy::occupancy_ratio(spec, usage, in.threads);
  out << "B_active=" << blocks << " W_active=" << warps << " occupancy=" << to_string(ratio) << " ("
      << to_decimal(ratio) << ")\n";
  if (!in.emit_ir.empty()) write_file(in.emit_ir, emit_ir(occupancy::build_occupancy_program()));
  return kSuccess;
}

int cmd_eval(const Inputs& in, std::ostream& out) {
  RationalProgram prog = parse_ir(read_file(in.program));
  Valuation env;
  for (const auto& s : in.sets) {
    auto [name, value] = split_binding(s, "--set");
    env[name] = parse_rational(value);
  }
  for (const auto& v : prog.input_vars)
    if (!env.count(v)) throw BindingError("input '" + v + "' has no --set value");
  for (const auto& [k, _] : env)
    if (std::find(prog.input_vars.begin(), prog.input_vars.end(), k) == prog.input_vars.end())
      throw BindingError("--set names '" + k + "', which is not an input of the program");
  Rational y = evaluate(prog, env);
  out << prog.output_var << "=" << to_string(y) << " (" << to_decimal(y) << ")\n";
  return kSuccess;
}

int cmd_pieces(const Inputs& in, std::ostream& out) {
  RationalProgram prog = parse_ir(read_file(in.program));
  auto pieces = piecewise_decomposition(prog);
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    out << "piece " << i << ": ";
    if (pieces[i].predicates.empty()) out << "true";
    for (std::size_t k = 0; k < pieces[i].predicates.size(); ++k)
      out << (k ? " and " : "") << "(" << to_string(pieces[i].predicates[k]) << ")";
    out << " -> " << to_string(pieces[i].value) << "\n";
  }
  return kSuccess;
}

int cmd_emit_c(const Inputs& in, std::ostream& out) {
  std::string src = emit_c_source(parse_ir(read_file(in.program)), in.name);
  if (in.out.empty())
    out << src;
  else
    write_file(in.out, src);
  return kSuccess;
}

void print_fit(const std::string& metric, const fitting::FitResult& r, const std::vector<std::string>& vars,
               std::ostream& out, std::ostream& err) {
  out << metric << " = " << r.function.to_string(vars) << "\n";
  out << "  residual_rms=" << fmt_double(r.residual_rms) << " rank=" << r.rank
      << " min_singular=" << fmt_double(r.min_singular_value) << " condition=" << fmt_double(r.condition_estimate);
  if (r.holdout_relative_error) out << " holdout_error=" << fmt_double(*r.holdout_relative_error);
  out << "\n";
  for (const auto& w : r.warnings) err << "warning: " << metric << ": " << w << "\n";
}

int cmd_fit(const Inputs& in, std::ostream& out, std::ostream& err) {
  ProfileDataset data = load_profile(read_file(in.data));
  std::string metric = in.metric;
  if (metric.empty()) {
    if (data.metric_order.size() != 1) throw InputError("dataset has several metrics; choose one with --metric");
    metric = data.metric_order.front();
  }
  DegreeBounds bounds = parse_bounds(in.num_deg, in.den_deg, data.var_names.size());
  auto result = fitting::fit_rational(data.samples(metric), bounds, {in.holdout, in.seed});
  print_fit(metric, result, data.var_names, out, err);
  if (!in.out.empty()) write_file(in.out, ratfunc_to_json(result.function, data.var_names).dump(2) + "\n");
  return kSuccess;
}

int cmd_build(const Inputs& in, std::ostream& out, std::ostream& err) {
  ModelTemplate tmpl = template_from_json(parse_json(read_file(in.tmpl)));
  ProfileDataset data = load_profile(read_file(in.data));
  DeviceSpec device = device_from_json(parse_json(read_file(in.device)));
  BuildOptions opts;
  opts.fit = {in.holdout, in.seed};
  opts.usage = {in.regs, in.shmem};
  for (const auto& b : in.bounds) {
    // METRIC=NUM/DEN with comma-separated degree lists
    auto [metric, spec] = split_binding(b, "--bounds");
    auto slash = spec.find('/');
    if (slash == std::string::npos) throw ParseError("--bounds '" + b + "' is not METRIC=NUM/DEN");
    opts.bounds[metric] = parse_bounds(spec.substr(0, slash), spec.substr(slash + 1), data.var_names.size());
  }
  if (!in.constraints.empty())
    opts.constraints.block_constraints = configspace::parse_constraint_file(read_file(in.constraints));
  if (!in.grid.empty()) opts.constraints.grid_formulas = configspace::parse_grid_file(read_file(in.grid));
  if (!in.mode.empty()) opts.policy.mode = parse_mode(in.mode);
  opts.policy.dimensionality = in.dim == 0 ? 2 : in.dim;
  opts.policy.check();

  DriverBuild build = build_driver(tmpl, data, device, opts);
  for (const auto& [metric, fit] : build.fits) print_fit(metric, fit, data.var_names, out, err);
  std::string doc = driver_to_json(build.driver).dump(2) + "\n";
  if (in.out.empty())
    out << doc;
  else
    write_file(in.out, doc);
  return kSuccess;
}

HistoryCache open_cache(const std::string& path, bool ignore_corrupt, std::ostream& err) {
  if (path.empty() || !std::filesystem::exists(path)) return {};
  try {
    return HistoryCache::load(read_file(path));
  } catch (const ParseError& e) {
    if (!ignore_corrupt) throw;
    err << "warning: " << e.what() << "; starting from an empty cache\n";
    return {};
  }
}

int cmd_select(const Inputs& in, std::ostream& out, std::ostream& err) {
  DriverProgram driver = driver_from_json(parse_json(read_file(in.driver)));
  override_space(driver, in.constraints, in.grid, in.mode, in.dim);
  HistoryCache cache = open_cache(in.cache, in.ignore_corrupt, err);
  pipeline::SelectOptions opts;
  if (!in.tie_margin.empty()) {
    opts.tie_margin = parse_rational(in.tie_margin);
    if (opts.tie_margin < 0) throw DomainError("--tie-margin must be non-negative");
  }
  auto report = pipeline::select_config(driver, in.n, in.cache.empty() ? nullptr : &cache, opts);
  if (report.source == pipeline::Source::Cache) err << "cache hit for N=" << in.n << "\n";
  if (!in.cache.empty()) write_file(in.cache, cache.persist());
  if (in.json) {
    out << pipeline::report_to_json(report).dump(2) << "\n";
  } else {
    const auto& g = report.chosen.grid;
    const auto& b = report.chosen.block;
    out << g.gx << " " << g.gy << " " << g.gz << " " << b.bx << " " << b.by << " " << b.bz << "\n";
  }
  return kSuccess;
}

int cmd_compare(const Inputs& in, std::ostream& out) {
  DriverProgram driver = driver_from_json(parse_json(read_file(in.driver)));
  override_space(driver, in.constraints, in.grid, in.mode, in.dim);
  Expr oracle = parse_arithmetic(in.oracle);
  for (const auto& v : free_variables(oracle))
    if (v != "N" && v != "bx" && v != "by" && v != "bz")
      throw EvalError("oracle reads '" + v + "'; only N, bx, by and bz are defined");
  auto fn = [&](const Valuation& env) { return evaluate_number(oracle, env); };
  std::vector<std::int64_t> ns;
  for (const auto& p : split(in.n_list, ',')) ns.push_back(parse_int(p, "N"));
  out << "N predicted_block oracle_block cost_at_predicted best_cost regret\n";
  for (auto n : ns) {
    auto c = pipeline::compare_exhaustive(driver, fn, n);
    out << n << " " << block_text(c.predicted_choice) << " " << block_text(c.oracle_choice) << " "
        << to_decimal(c.oracle_at_predicted) << " " << to_decimal(c.oracle_best) << " " << to_decimal(c.regret)
        << "\n";
  }
  return kSuccess;
}

int cmd_simulate(const Inputs& in, std::ostream& out) {
  GridSpec grid = parse_grid_spec(in.grid_spec, in.where);
  std::vector<std::pair<std::string, AnalyticFunction>> model;
  for (const auto& m : in.models) {
    auto [name, text] = split_binding(m, "--model");
    model.emplace_back(name, analytic_from_expr(parse_arithmetic(text), grid.vars));
  }
  if (in.noise < 0) throw DomainError("--noise must be non-negative");
  std::string csv = to_csv(simulate_profile(model, grid.vars, grid.points, in.noise, in.seed));
  if (in.out.empty())
    out << csv;
  else
    write_file(in.out, csv);
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Build and query rational performance programs for GPU kernel launch selection", "ratprog"};
  app.require_subcommand(1);
  Inputs in;

  auto* occ = app.add_subcommand("occupancy", "Occupancy of a thread block size on a device");
  occ->add_option("--device", in.device, "Device JSON")->required();
  occ->add_option("--regs", in.regs, "Registers per thread")->required();
  occ->add_option("--shmem", in.shmem, "Shared-memory words per block")->required();
  occ->add_option("--threads", in.threads, "Threads per block")->required();
  occ->add_option("--emit-ir", in.emit_ir, "Write the occupancy program IR here");

  auto* eval = app.add_subcommand("eval", "Evaluate a program IR");
  eval->add_option("--program", in.program, "Program IR")->required();
  eval->add_option("--set", in.sets, "Input binding NAME=VALUE (repeatable)");

  auto* pieces = app.add_subcommand("pieces", "Print a program as a piecewise rational function");
  pieces->add_option("--program", in.program, "Program IR")->required();

  auto* emitc = app.add_subcommand("emit-c", "Emit C source for a program IR");
  emitc->add_option("--program", in.program, "Program IR")->required();
  emitc->add_option("--name", in.name, "C function name");
  emitc->add_option("--out", in.out, "Output file (default stdout)");

  auto* fit = app.add_subcommand("fit", "Fit a rational function to one profiled metric");
  fit->add_option("--data", in.data, "Profile CSV")->required();
  fit->add_option("--metric", in.metric, "Metric name (optional for single-metric data)");
  fit->add_option("--num-deg", in.num_deg, "Numerator degree per variable, comma separated");
  fit->add_option("--den-deg", in.den_deg, "Denominator degree per variable, comma separated");
  fit->add_option("--holdout", in.holdout, "Fraction of samples held out")->check(CLI::Range(0.0, 0.9));
  fit->add_option("--seed", in.seed, "Holdout shuffle seed");
  fit->add_option("--out", in.out, "Write the function as an IR fragment");

  auto* build = app.add_subcommand("build", "Fit a template's metrics and write a driver program");
  build->add_option("--template", in.tmpl, "Template IR")->required();
  build->add_option("--data", in.data, "Profile CSV")->required();
  build->add_option("--device", in.device, "Device JSON")->required();
  build->add_option("--regs", in.regs, "Registers per thread");
  build->add_option("--shmem", in.shmem, "Shared-memory words per block");
  build->add_option("--bounds", in.bounds, "METRIC=NUM/DEN degree lists (repeatable)");
  build->add_option("--holdout", in.holdout, "Fraction of samples held out")->check(CLI::Range(0.0, 0.9));
  build->add_option("--seed", in.seed, "Holdout shuffle seed");
  build->add_option("--constraints", in.constraints, "Block constraint file");
  build->add_option("--grid", in.grid, "Grid formula file");
  build->add_option("--mode", in.mode, "pow2 or mult32");
  build->add_option("--dim", in.dim, "Block dimensionality (default 2)")->check(CLI::Range(1, 3));
  build->add_option("--out", in.out, "Driver IR output (default stdout)");

  auto* select = app.add_subcommand("select", "Choose launch parameters for a data size");
  select->add_option("--driver", in.driver, "Driver IR")->required();
  select->add_option("--n", in.n, "Data size N")->required();
  select->add_option("--constraints", in.constraints, "Block constraint file (overrides the driver's)");
  select->add_option("--grid", in.grid, "Grid formula file (overrides the driver's)");
  select->add_option("--cache", in.cache, "History cache file, created if absent");
  select->add_option("--mode", in.mode, "pow2 or mult32");
  select->add_option("--dim", in.dim, "Block dimensionality")->check(CLI::Range(1, 3));
  select->add_option("--tie-margin", in.tie_margin, "Relative tie margin (default 1e-9)");
  select->add_flag("--json", in.json, "Print the full report as JSON");
  select->add_flag("--ignore-corrupt", in.ignore_corrupt, "Start from an empty cache if the file is corrupt");

  auto* compare = app.add_subcommand("compare", "Regret of the driver's choices against a cost oracle");
  compare->add_option("--driver", in.driver, "Driver IR")->required();
  compare->add_option("--oracle", in.oracle, "Cost expression over N, bx, by, bz")->required();
  compare->add_option("--n-list", in.n_list, "Comma-separated data sizes")->required();
  compare->add_option("--constraints", in.constraints, "Block constraint file (overrides the driver's)");
  compare->add_option("--grid", in.grid, "Grid formula file (overrides the driver's)");
  compare->add_option("--mode", in.mode, "pow2 or mult32");
  compare->add_option("--dim", in.dim, "Block dimensionality")->check(CLI::Range(1, 3));

  auto* sim = app.add_subcommand("simulate", "Generate a profile from closed-form metric models");
  sim->add_option("--model", in.models, "METRIC=EXPR (repeatable)")->required();
  sim->add_option("--grid", in.grid_spec, "Axes like 'N=32..512*2;bx=1..1024*2'")->required();
  sim->add_option("--where", in.where, "Keep only points satisfying this condition (repeatable)");
  sim->add_option("--noise", in.noise, "Relative noise sigma");
  sim->add_option("--seed", in.seed, "Noise seed");
  sim->add_option("--out", in.out, "Output CSV (default stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kSuccess : kUsage;
  }

  try {
    if (*occ) return cmd_occupancy(in, out);
    if (*eval) return cmd_eval(in, out);
    if (*pieces) return cmd_pieces(in, out);
    if (*emitc) return cmd_emit_c(in, out);
    if (*fit) return cmd_fit(in, out, err);
    if (*build) return cmd_build(in, out, err);
    if (*select) return cmd_select(in, out, err);
    if (*compare) return cmd_compare(in, out);
    if (*sim) return cmd_simulate(in, out);
  } catch (const NoFeasibleConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kInfeasible;
  } catch (const NumericalError& e) {
    err << "error: " << e.what() << "\n";
    return kNumerical;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInput;
  }
  return kUsage;
}

}  // namespace ratprog::cli
