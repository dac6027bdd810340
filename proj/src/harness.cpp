#include "mppdg/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "mppdg/errors.hpp"
#include "mppdg/time_integrator.hpp"

namespace mppdg {

using nlohmann::json;

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  if (t == "inf" || t == "infinity") return std::numeric_limits<double>::infinity();
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty())
    throw InvalidArgument("'" + key + "' expects a number, got '" + text + "'");
  return v;
}

long long parse_integer(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty())
    throw InvalidArgument("'" + key + "' expects an integer, got '" + text + "'");
  return v;
}

bool parse_switch(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  if (t == "on" || t == "true" || t == "1" || t == "yes") return true;
  if (t == "off" || t == "false" || t == "0" || t == "no") return false;
  throw InvalidArgument("'" + key + "' expects on/off, got '" + text + "'");
}

const char* form_name(DiffusiveFluxForm f) {
  return f == DiffusiveFluxForm::standard ? "standard" : "scaled-penalty";
}

// Runs fn(0..count-1) on up to worker_threads() threads; rethrows the first failure.
template <class Fn>
void parallel_for(std::size_t count, Fn&& fn) {
  const std::size_t width = std::min(worker_threads(), count);
  if (width <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < width; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream os(path);
  if (!os) throw InvalidArgument("cannot write '" + path.string() + "'");
  os << text;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json number_or_null(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

std::size_t worker_threads() {
  const char* env = std::getenv("MPPDG_THREADS");
  long long n = 0;
  if (env != nullptr && *env != '\0') {
    n = parse_integer("MPPDG_THREADS", env);
    if (n < 0) throw InvalidArgument("MPPDG_THREADS must be >= 0");
  }
  if (n == 0) return std::max(1u, std::thread::hardware_concurrency());
  return static_cast<std::size_t>(n);
}

void RunConfig::validate() const {
  const Problem p = get_problem(problem, params);
  if (order && (*order < 0 || *order > 5)) throw InvalidArgument("order must be in [0, 5]");
  if (cells && *cells < 1) throw InvalidArgument("cells must be >= 1");
  if (t_final && (!(*t_final >= 0.0) || !std::isfinite(*t_final)))
    throw InvalidArgument("final time must be finite and >= 0");
  if (cflc && !(*cflc > 0.0)) throw InvalidArgument("cflc must be positive");
  if (cfld && !(*cfld > 0.0)) throw InvalidArgument("cfld must be positive");
  if (tvb && !(*tvb >= 0.0)) throw InvalidArgument("tvb must be >= 0");
  if (alpha && !(*alpha > 0.0)) throw InvalidArgument("alpha must be positive");
  if (dimension(p) == 2) {
    const auto& q = std::get<Problem2D>(p);
    if (q.convection == ConvectionKind::vorticity_stream && !q.boundary.is_periodic())
      throw InvalidArgument("vorticity-stream problems need periodic boundaries");
  }
}

void apply_setting(RunConfig& c, const std::string& raw_key, const std::string& raw_value) {
  const std::string key = trim(raw_key);
  const std::string value = trim(raw_value);
  if (key == "problem") {
    c.problem = value;
  } else if (key == "param") {
    const auto eq = value.find('=');
    if (eq == std::string::npos) throw InvalidArgument("param expects key=value, got '" + value + "'");
    const std::string name = trim(value.substr(0, eq));
    c.params[name] = parse_double(name, value.substr(eq + 1));
  } else if (key == "order") {
    c.order = static_cast<int>(parse_integer(key, value));
  } else if (key == "cells") {
    const auto n = parse_integer(key, value);
    if (n < 1) throw InvalidArgument("cells must be >= 1");
    c.cells = static_cast<std::size_t>(n);
  } else if (key == "tfinal") {
    c.t_final = parse_double(key, value);
  } else if (key == "cflc") {
    c.cflc = parse_double(key, value);
  } else if (key == "cfld") {
    c.cfld = parse_double(key, value);
  } else if (key == "p3-dt") {
    c.p3_time_scaling = parse_switch(key, value);
  } else if (key == "mpp") {
    c.mpp = parse_switch(key, value);
  } else if (key == "tvb") {
    if (value == "off" || value == "none") {
      c.tvb_off = true;
      c.tvb.reset();
    } else {
      c.tvb_off = false;
      c.tvb = parse_double(key, value);
    }
  } else if (key == "flux-form") {
    if (value == "standard")
      c.flux_form = DiffusiveFluxForm::standard;
    else if (value == "scaled-penalty")
      c.flux_form = DiffusiveFluxForm::scaled_penalty;
    else
      throw InvalidArgument("flux-form must be standard or scaled-penalty, got '" + value + "'");
  } else if (key == "alpha") {
    c.alpha = parse_double(key, value);
  } else if (key == "out") {
    c.out = value;
  } else if (key == "seed") {
    c.seed = static_cast<std::uint64_t>(parse_integer(key, value));
  } else {
    throw InvalidArgument("unknown setting '" + key + "'");
  }
}

RunConfig load_config(const std::filesystem::path& path, RunConfig base) {
  std::ifstream is(path);
  if (!is) throw InvalidArgument("cannot read config file '" + path.string() + "'");
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw InvalidArgument(path.string() + ":" + std::to_string(lineno) + ": expected key=value");
    apply_setting(base, line.substr(0, eq), line.substr(eq + 1));
  }
  return base;
}

namespace {

struct Resolved {
  int order;
  std::size_t cells;
  double t_final;
  SchemeOptions options;
};

template <class P>
Resolved resolve(const RunConfig& c, const P& p) {
  Resolved r;
  r.order = c.order.value_or(p.default_order);
  r.cells = c.cells.value_or(p.default_cells);
  r.t_final = c.t_final.value_or(p.default_tfinal);
  r.options = SchemeOptions::for_degree(r.order);
  r.options.mpp = c.mpp;
  r.options.flux.form = c.flux_form;
  if (c.alpha) r.options.flux.alpha = *c.alpha;
  if (c.cflc) r.options.cfl.cflc = *c.cflc;
  if (c.cfld) r.options.cfl.cfld = *c.cfld;
  r.options.cfl.p3_time_scaling = c.p3_time_scaling;
  if (!c.tvb_off) r.options.tvb = c.tvb ? c.tvb : p.default_tvb;
  return r;
}

template <class Field>
double mass(const Field& f, double cell_volume) {
  double s = 0.0;
  for (double v : f.averages()) s += v * cell_volume;
  return s;
}

std::string solution_csv(const RunResult& r) {
  std::ostringstream os;
  const auto& rep = r.report;
  os << "# problem=" << rep["problem"].get<std::string>() << "\n";
  os << "# dimension=" << rep["dimension"].get<int>() << "\n";
  os << "# order=" << rep["order"].get<int>() << "\n";
  os << "# cells=" << rep["cells"].get<std::size_t>() << "\n";
  os << "# time=" << fmt(rep["time"].get<double>()) << "\n";
  os << "# mpp=" << (rep["mpp"].get<bool>() ? "on" : "off") << "\n";
  if (r.y_center.empty()) {
    os << "x_center,u_bar\n";
    for (std::size_t i = 0; i < r.averages.size(); ++i)
      os << fmt(r.x_center[i]) << "," << fmt(r.averages[i]) << "\n";
  } else {
    os << "x_center,y_center,u_bar\n";
    for (std::size_t i = 0; i < r.averages.size(); ++i)
      os << fmt(r.x_center[i]) << "," << fmt(r.y_center[i]) << "," << fmt(r.averages[i]) << "\n";
  }
  return os.str();
}

}  // namespace

RunResult run_single(const RunConfig& config) {
  config.validate();
  const Problem problem = get_problem(config.problem, config.params);
  const auto start = std::chrono::steady_clock::now();
  RunResult result;
  json& rep = result.report;
  rep["kind"] = "run";
  rep["problem"] = config.problem;
  rep["dimension"] = dimension(problem);
  rep["params"] = json::object();
  for (const auto& [k, v] : config.params) rep["params"][k] = v;

  auto fill = [&](const auto& p, auto& field, const Resolved& r, double cell_volume) {
    const double m0 = mass(field, cell_volume);
    const EvolveStats st = evolve(field, p, r.t_final, r.options);
    const double m1 = mass(field, cell_volume);
    rep["order"] = r.order;
    rep["cells"] = r.cells;
    rep["t_final"] = r.t_final;
    rep["time"] = st.time;
    rep["steps"] = st.steps;
    rep["mpp"] = r.options.mpp;
    rep["tvb"] = number_or_null(r.options.tvb);
    rep["cflc"] = r.options.cfl.cflc;
    rep["cfld"] = r.options.cfl.cfld;
    rep["p3_time_scaling"] = r.options.cfl.p3_time_scaling;
    rep["flux_form"] = form_name(r.options.flux.form);
    rep["alpha"] = r.options.flux.alpha;
    rep["bounds"] = {{"lower", p.bounds.lower}, {"upper", p.bounds.upper}};
    rep["min"] = st.final_min;
    rep["max"] = st.final_max;
    rep["run_min"] = st.run_min;
    rep["run_max"] = st.run_max;
    if (p.exact) {
      const auto e = exact_error(field, p, st.time);
      rep["errors"] = {{"l1", e.l1}, {"linf", e.linf}};
    } else {
      rep["errors"] = nullptr;
    }
    rep["mass"] = {{"initial", m0},
                   {"final", m1},
                   {"relative_change", m0 != 0.0 ? std::abs(m1 - m0) / std::abs(m0) : std::abs(m1 - m0)}};
    rep["limiter"] = {{"limited_interfaces", st.limited_interfaces},
                      {"limited_steps", st.limited_steps},
                      {"min_theta", st.min_theta}};
    rep["tvb_cells"] = st.tvb_cells;
    rep["mean_removed"] = st.max_mean_removed;
  };

  if (const auto* p1 = std::get_if<Problem1D>(&problem)) {
    const Resolved r = resolve(config, *p1);
    DGField1D field = initial_field(*p1, r.cells, r.order);
    fill(*p1, field, r, field.grid().h());
    for (std::size_t j = 0; j < field.cells(); ++j) result.x_center.push_back(field.grid().center(j));
    result.averages = field.averages();
  } else {
    const auto& p2 = std::get<Problem2D>(problem);
    const Resolved r = resolve(config, p2);
    DGField2D field = initial_field(p2, r.cells, r.order);
    fill(p2, field, r, field.grid().hx() * field.grid().hy());
    const Grid2D& g = field.grid();
    for (std::size_t j = 0; j < g.ny(); ++j)
      for (std::size_t i = 0; i < g.nx(); ++i) {
        result.x_center.push_back(g.x().center(i));
        result.y_center.push_back(g.y().center(j));
      }
    result.averages = field.averages();
  }
  rep["wall_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (!config.out.empty()) {
    write_text(config.out / "report.json", rep.dump(2) + "\n");
    write_text(config.out / "solution.csv", solution_csv(result));
  }
  return result;
}

double observed_order(double coarse, double fine) { return std::log2(coarse / fine); }

json ConvergenceTable::to_json() const {
  json rows_json = json::array();
  for (const auto& r : rows)
    rows_json.push_back({{"cells", r.cells},
                         {"l1", r.l1},
                         {"l1_order", number_or_null(r.l1_order)},
                         {"linf", r.linf},
                         {"linf_order", number_or_null(r.linf_order)},
                         {"min", r.min},
                         {"max", r.max},
                         {"steps", r.steps}});
  return {{"kind", "convergence"}, {"problem", problem}, {"order", order}, {"mpp", mpp}, {"rows", rows_json}};
}

std::string ConvergenceTable::to_csv() const {
  std::ostringstream os;
  os << "# problem=" << problem << "\n# order=" << order << "\n# mpp=" << (mpp ? "on" : "off") << "\n";
  os << "cells,l1,l1_order,linf,linf_order,min,max\n";
  for (const auto& r : rows) {
    os << r.cells << "," << fmt(r.l1) << "," << (r.l1_order ? fmt(*r.l1_order) : "") << ","
       << fmt(r.linf) << "," << (r.linf_order ? fmt(*r.linf_order) : "") << "," << fmt(r.min) << ","
       << fmt(r.max) << "\n";
  }
  return os.str();
}

ConvergenceTable run_convergence(const RunConfig& config, const std::vector<std::size_t>& meshes) {
  if (meshes.empty()) throw InvalidArgument("convergence sweep needs at least one mesh");
  config.validate();
  const Problem problem = get_problem(config.problem, config.params);
  const bool has_exact = std::visit([](const auto& p) { return static_cast<bool>(p.exact); }, problem);
  if (!has_exact) throw Unsupported("problem '" + config.problem + "' has no exact solution");

  std::vector<RunResult> results(meshes.size());
  parallel_for(meshes.size(), [&](std::size_t i) {
    RunConfig c = config;
    c.cells = meshes[i];
    c.out.clear();
    results[i] = run_single(c);
  });

  ConvergenceTable table;
  table.problem = config.problem;
  table.order = results.front().report["order"].get<int>();
  table.mpp = config.mpp;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& rep = results[i].report;
    ConvergenceRow row;
    row.cells = meshes[i];
    row.l1 = rep["errors"]["l1"].get<double>();
    row.linf = rep["errors"]["linf"].get<double>();
    row.min = rep["min"].get<double>();
    row.max = rep["max"].get<double>();
    row.steps = rep["steps"].get<std::size_t>();
    if (i > 0) {
      const auto& prev = table.rows.back();
      const double ratio = std::log2(static_cast<double>(meshes[i]) / static_cast<double>(meshes[i - 1]));
      row.l1_order = observed_order(prev.l1, row.l1) / ratio;
      row.linf_order = observed_order(prev.linf, row.linf) / ratio;
    }
    table.rows.push_back(row);
  }
  if (!config.out.empty()) {
    write_text(config.out / "table.csv", table.to_csv());
    write_text(config.out / "report.json", table.to_json().dump(2) + "\n");
  }
  return table;
}

namespace {

struct SuiteCase {
  std::string label;
  RunConfig config;
};

std::vector<SuiteCase> suite_cases(const std::string& suite, const std::vector<std::size_t>& meshes) {
  std::vector<SuiteCase> cases;
  auto sweep = [&](const RunConfig& base, std::vector<std::size_t> defaults) {
    for (std::size_t n : meshes.empty() ? defaults : meshes) {
      RunConfig c = base;
      c.cells = n;
      cases.push_back({std::to_string(n) + "x" + std::to_string(n), c});
    }
  };
  RunConfig base;
  if (suite == "porous-1d") {
    for (double m : {2.0, 3.0, 5.0, 8.0}) {
      RunConfig c;
      c.problem = "porous-medium";
      c.params["m"] = m;
      c.order = 3;
      c.cells = meshes.empty() ? 80 : meshes.front();
      c.t_final = 2.0;
      c.tvb = 1.0;
      cases.push_back({"m=" + std::to_string(static_cast<int>(m)), c});
    }
  } else if (suite == "bl-1d") {
    for (int k : {1, 2, 3}) {
      RunConfig c;
      c.problem = "buckley-leverett-1d";
      c.order = k;
      c.cells = meshes.empty() ? 100 : meshes.front();
      c.t_final = 0.2;
      c.tvb = 10.0;
      cases.push_back({"k=" + std::to_string(k), c});
    }
  } else if (suite == "bl-2d") {
    base.problem = "buckley-leverett-2d";
    base.order = 2;
    base.t_final = 0.5;
    base.tvb = 50.0;
    sweep(base, {16, 32, 64, 128});
  } else if (suite == "rigid" || suite == "swirl") {
    base.problem = suite == "rigid" ? "rigid-rotation" : "swirling";
    base.params["inv_re"] = 0.01;
    base.order = 2;
    base.t_final = 0.1;
    base.tvb = 50.0;
    sweep(base, {8, 16, 32, 64, 128});
  } else if (suite == "vortex") {
    base.problem = "vortex-patch";
    base.order = 2;
    base.t_final = 0.1;
    base.tvb_off = true;
    sweep(base, {8, 16, 32, 64});
  } else {
    throw NotFound("unknown bounds suite '" + suite + "'");
  }
  return cases;
}

}  // namespace

std::vector<std::string> bounds_suites() { return {"porous-1d", "bl-1d", "bl-2d", "rigid", "swirl", "vortex"}; }

json run_bounds_suite(const std::string& suite, const std::vector<std::size_t>& meshes,
                      const std::filesystem::path& out) {
  const auto cases = suite_cases(suite, meshes);
  std::vector<json> reports(cases.size() * 2);
  parallel_for(reports.size(), [&](std::size_t i) {
    RunConfig c = cases[i / 2].config;
    c.mpp = (i % 2 == 1);
    reports[i] = run_single(c).report;
  });

  auto summary = [](const json& r) {
    return json{{"min", r["min"]},       {"max", r["max"]},
                {"run_min", r["run_min"]}, {"run_max", r["run_max"]},
                {"steps", r["steps"]},     {"limited_interfaces", r["limiter"]["limited_interfaces"]}};
  };
  json rows = json::array();
  for (std::size_t c = 0; c < cases.size(); ++c) {
    const json& dg = reports[2 * c];
    const json& mpp = reports[2 * c + 1];
    rows.push_back({{"label", cases[c].label},
                    {"problem", dg["problem"]},
                    {"params", dg["params"]},
                    {"order", dg["order"]},
                    {"cells", dg["cells"]},
                    {"t_final", dg["t_final"]},
                    {"tvb", dg["tvb"]},
                    {"bounds", dg["bounds"]},
                    {"dg", summary(dg)},
                    {"mppdg", summary(mpp)}});
  }
  json report = {{"kind", "bounds"}, {"suite", suite}, {"rows", rows}};
  if (!out.empty()) {
    write_text(out / "report.json", report.dump(2) + "\n");
    std::ostringstream os;
    os << "# suite=" << suite << "\n";
    os << "label,cells,order,dg_min,dg_max,mppdg_min,mppdg_max\n";
    for (const auto& r : rows)
      os << r["label"].get<std::string>() << "," << r["cells"].get<std::size_t>() << ","
         << r["order"].get<int>() << "," << fmt(r["dg"]["min"].get<double>()) << ","
         << fmt(r["dg"]["max"].get<double>()) << "," << fmt(r["mppdg"]["min"].get<double>()) << ","
         << fmt(r["mppdg"]["max"].get<double>()) << "\n";
    write_text(out / "table.csv", os.str());
  }
  return report;
}

}  // namespace mppdg
