#include <cstdio>
#include <iostream>

#include <CLI11.hpp>

#include "rd/driver.hpp"

namespace {

void add_run_options(CLI::App* cmd, rd::RunConfig& rc, std::string& config_file) {
  cmd->add_option("--config", config_file, "key=value config file (flags override it)");
  cmd->add_option("--problem", rc.problem, "benchmark name (see list-problems)");
  cmd->add_option("--degree", rc.degree, "Bernstein degree (1, 2 or 3)");
  cmd->add_option("--cells", rc.cells, "1D cell count");
  cmd->add_option("--nx", rc.nx, "2D resolution (quads / disk sectors)");
  cmd->add_option("--ny", rc.ny, "2D resolution (quads / disk rings)");
  cmd->add_option("--mesh", rc.mesh_file, "Gmsh MSH 2.2 ASCII mesh file");
  cmd->add_option("--cfl", rc.cfl, "CFL number");
  cmd->add_option("--M", rc.M, "sub-timesteps (default per degree)");
  cmd->add_option("--R", rc.R, "corrections (default per degree)");
  cmd->add_option("--theta1", rc.theta1, "gradient-jump coefficient override");
  cmd->add_option("--theta2", rc.theta2, "second-derivative-jump coefficient override");
  cmd->add_option("--tfinal", rc.t_final, "final time override");
  cmd->add_option("--out", rc.out_dir, "output directory");
  cmd->add_option("--every", rc.output_every, "write solution every N steps");
  cmd->add_option("--limiter", rc.limiter, "characteristic | scalar");
  cmd->add_option("--lxf", rc.lxf, "subcell | classic");
}

rd::RunConfig finalize_config(const CLI::App* cmd, rd::RunConfig cli_rc,
                              const std::string& config_file) {
  if (config_file.empty()) return cli_rc;
  rd::RunConfig rc;
  rd::apply_config_file(rc, config_file);
  // command-line flags take precedence over file entries
  for (const auto* opt : cmd->get_options()) {
    if (opt->count() == 0) continue;
    const std::string name = opt->get_name();
    if (name == "--config") continue;
    rc.apply(name.substr(2) == "tfinal" ? "tfinal" : name.substr(2),
             opt->results().back());
  }
  if (!cli_rc.problem.empty() && cmd->count("--problem")) rc.problem = cli_rc.problem;
  return rc;
}

int do_run(const rd::RunConfig& rc) {
  auto s = rd::run_simulation(rc);
  std::printf("problem=%s degree=%d elements=%ld dofs=%ld\n", s.problem.c_str(), s.degree,
              s.n_elements, s.n_dofs);
  std::printf("steps=%ld t=%.10g min_rho=%.6g min_p=%.6g drift=%.3e\n", s.steps, s.t, s.min_rho,
              s.min_p, s.conservation_drift);
  if (!s.l1_errors.empty()) {
    std::printf("L1 errors:");
    for (size_t v = 0; v < s.l1_errors.size(); ++v)
      std::printf(" %s=%.6e", s.var_names[v].c_str(), s.l1_errors[v]);
    std::printf("\n");
  }
  if (s.failed) {
    std::fprintf(stderr, "run failed at t=%.10g: %s\n", s.t, s.error.c_str());
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"high-order residual distribution solver (deferred-correction time stepping)"};
  app.require_subcommand(1);

  rd::RunConfig rc;
  std::string config_file;
  auto* run = app.add_subcommand("run", "run one benchmark");
  add_run_options(run, rc, config_file);

  rd::RunConfig crc;
  std::string cconfig;
  std::vector<int> resolutions;
  std::vector<int> degrees{1, 2, 3};
  std::string report_csv;
  auto* conv = app.add_subcommand("converge", "grid-convergence study");
  add_run_options(conv, crc, cconfig);
  conv->add_option("--resolutions", resolutions, "mesh resolutions, e.g. 100 200 400")
      ->required();
  conv->add_option("--degrees", degrees, "degrees to study");
  conv->add_option("--report", report_csv, "write the study table to this CSV");

  auto* list = app.add_subcommand("list-problems", "list registered benchmarks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (list->parsed()) {
      for (const auto& p : rd::problem_registry())
        std::printf("%-18s %s\n", p.name.c_str(), p.description.c_str());
      return 0;
    }
    if (run->parsed()) {
      return do_run(finalize_config(run, rc, config_file));
    }
    if (conv->parsed()) {
      rd::RunConfig base = finalize_config(conv, crc, cconfig);
      for (int deg : degrees) {
        base.degree = deg;
        auto rep = rd::convergence_study(base, resolutions);
        std::fputs(rd::report_to_string(rep).c_str(), stdout);
        if (!report_csv.empty()) {
          std::string path = report_csv;
          if (degrees.size() > 1) {
            const auto dot = path.rfind('.');
            path = path.substr(0, dot) + "_B" + std::to_string(deg) +
                   (dot == std::string::npos ? "" : path.substr(dot));
          }
          rd::write_report_csv(rep, path);
        }
      }
      return 0;
    }
  } catch (const rd::ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 2;
}
