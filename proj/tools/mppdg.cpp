// mppdg command-line front end: run, converge, bounds, list-problems.
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "mppdg/errors.hpp"
#include "mppdg/harness.hpp"
#include "mppdg/problem.hpp"

namespace {

struct SchemeFlags {
  std::string problem;
  std::vector<std::string> params;
  std::string config;
  int order = -1;
  long long cells = -1;
  std::string tfinal, cflc, cfld, mpp, tvb, flux_form, alpha, p3dt;
  std::string out;
};

void add_scheme_flags(CLI::App* app, SchemeFlags& f) {
  app->add_option("--config", f.config, "key=value config file (flags override it)");
  app->add_option("--problem", f.problem, "problem name (see list-problems)");
  app->add_option("--param", f.params, "problem parameter key=val (repeatable)");
  app->add_option("--order", f.order, "polynomial degree k");
  app->add_option("--cells", f.cells, "cells per direction");
  app->add_option("--tfinal", f.tfinal, "final time");
  app->add_option("--cflc", f.cflc, "convective CFL number");
  app->add_option("--cfld", f.cfld, "diffusive CFL number");
  app->add_option("--mpp", f.mpp, "MPP flux limiter on|off")->check(CLI::IsMember({"on", "off"}));
  app->add_option("--tvb", f.tvb, "TVB constant M, or off");
  app->add_option("--flux-form", f.flux_form, "diffusive flux form")
      ->check(CLI::IsMember({"standard", "scaled-penalty"}));
  app->add_option("--alpha", f.alpha, "diffusive penalty");
  app->add_option("--p3-dt", f.p3dt, "h^(4/3) time step scaling for k=3 on|off");
  app->add_option("--out", f.out, "output directory");
}

mppdg::RunConfig to_config(const SchemeFlags& f) {
  mppdg::RunConfig c;
  if (!f.config.empty()) c = mppdg::load_config(f.config);
  auto set = [&](const char* key, const std::string& v) {
    if (!v.empty()) mppdg::apply_setting(c, key, v);
  };
  set("problem", f.problem);
  for (const auto& p : f.params) set("param", p);
  if (f.order >= 0) set("order", std::to_string(f.order));
  if (f.cells >= 0) set("cells", std::to_string(f.cells));
  set("tfinal", f.tfinal);
  set("cflc", f.cflc);
  set("cfld", f.cfld);
  set("mpp", f.mpp);
  set("tvb", f.tvb);
  set("flux-form", f.flux_form);
  set("alpha", f.alpha);
  set("p3-dt", f.p3dt);
  set("out", f.out);
  return c;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"High-order DG solver with a maximum-principle-preserving flux limiter"};
  app.require_subcommand(1);

  SchemeFlags run_flags;
  auto* run = app.add_subcommand("run", "run one simulation");
  add_scheme_flags(run, run_flags);

  SchemeFlags conv_flags;
  std::vector<std::size_t> meshes;
  auto* converge = app.add_subcommand("converge", "mesh refinement study against the exact solution");
  add_scheme_flags(converge, conv_flags);
  converge->add_option("--meshes", meshes, "cell counts (default: 4 doublings from --cells)");

  std::string suite;
  std::vector<std::size_t> suite_meshes;
  std::string suite_out;
  auto* bounds = app.add_subcommand("bounds", "bounds-preservation suite, with and without the limiter");
  bounds->add_option("suite", suite, "suite name")->required()->check(CLI::IsMember(mppdg::bounds_suites()));
  bounds->add_option("--meshes", suite_meshes, "override mesh list");
  bounds->add_option("--out", suite_out, "output directory");

  auto* list = app.add_subcommand("list-problems", "list registered problems");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      const auto result = mppdg::run_single(to_config(run_flags));
      std::cout << result.report.dump(2) << "\n";
    } else if (converge->parsed()) {
      const mppdg::RunConfig c = to_config(conv_flags);
      if (meshes.empty()) {
        std::size_t n = c.cells.value_or(16);
        for (int i = 0; i < 4; ++i, n *= 2) meshes.push_back(n);
      }
      const auto table = mppdg::run_convergence(c, meshes);
      std::cout << "cells        L1     order      Linf     order\n";
      for (const auto& r : table.rows) {
        std::printf("%5zu %9s %9s %9s %9s\n", r.cells, fmt(r.l1).c_str(),
                    r.l1_order ? std::to_string(*r.l1_order).substr(0, 5).c_str() : "-",
                    fmt(r.linf).c_str(),
                    r.linf_order ? std::to_string(*r.linf_order).substr(0, 5).c_str() : "-");
      }
    } else if (bounds->parsed()) {
      const auto report = mppdg::run_bounds_suite(suite, suite_meshes, suite_out);
      for (const auto& r : report["rows"]) {
        std::cout << r["label"].get<std::string>() << "  DG [" << fmt(r["dg"]["min"].get<double>()) << ", "
                  << fmt(r["dg"]["max"].get<double>()) << "]  MPP [" << fmt(r["mppdg"]["min"].get<double>())
                  << ", " << fmt(r["mppdg"]["max"].get<double>()) << "]\n";
      }
    } else if (list->parsed()) {
      for (const auto& p : mppdg::list_problems()) {
        std::cout << p.name << " (" << p.dimension << "D): " << p.description;
        if (!p.parameters.empty()) {
          std::cout << " [";
          for (std::size_t i = 0; i < p.parameters.size(); ++i) std::cout << (i ? ", " : "") << p.parameters[i];
          std::cout << "]";
        }
        std::cout << "\n";
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "mppdg: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
