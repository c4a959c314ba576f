#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "vdwshape/scan.hpp"

namespace {

struct SubOpts {
  std::string config;
  std::string out;
};

using Runner = vdw::ScanResult (*)(const vdw::Config&, int);

void add_scan(CLI::App& app, std::vector<std::pair<SubOpts*, Runner>>& jobs,
              SubOpts& opts, const char* name, const char* desc, Runner run) {
  CLI::App* sub = app.add_subcommand(name, desc);
  opts.out = std::string(name) + ".csv";
  sub->add_option("--config", opts.config, "configuration file (INI-style)");
  sub->add_option("--out", opts.out, "output CSV path")->capture_default_str();
  sub->callback([&jobs, &opts, run] { jobs.emplace_back(&opts, run); });
}

}  // namespace

int main(int argc, char** argv) {
  // Eigen drives BLAS from our own worker threads; keep BLAS single-threaded
  setenv("OPENBLAS_NUM_THREADS", "1", 0);
  setenv("OMP_NUM_THREADS", "1", 0);

  CLI::App app{"van der Waals interactions between finite bodies"};
  app.require_subcommand(0, 1);
  int threads = 1;
  bool print_defaults = false;
  app.add_option("--threads", threads, "worker threads for scan points")
      ->capture_default_str();
  app.add_flag("--print-defaults", print_defaults,
               "print the built-in configuration and exit");

  SubOpts o_sphere, o_prism, o_lateral, o_rotation, o_pfa;
  std::vector<std::pair<SubOpts*, Runner>> jobs;
  add_scan(app, jobs, o_sphere, "sphere-scan",
           "coated/shell sphere above a substrate (multipolar)",
           &vdw::run_sphere_scan);
  add_scan(app, jobs, o_prism, "prism-scan",
           "prisms above a substrate (boundary integral)", &vdw::run_prism_scan);
  add_scan(app, jobs, o_lateral, "lateral-scan",
           "laterally displaced stacked prisms", &vdw::run_lateral_scan);
  add_scan(app, jobs, o_rotation, "rotation-scan",
           "rotated horizontal cylinders", &vdw::run_rotation_scan);
  add_scan(app, jobs, o_pfa, "pfa", "planar / proximity-force baselines",
           &vdw::run_pfa);

  CLI11_PARSE(app, argc, argv);

  if (print_defaults) {
    std::cout << vdw::default_config_text();
    return 0;
  }
  if (jobs.empty()) {
    std::cerr << app.help() << "\n";
    return 2;
  }
  if (threads < 1) {
    std::cerr << "error: --threads must be at least 1\n";
    return 2;
  }

  const auto& [opts, run] = jobs.front();
  try {
    vdw::Config cfg = opts->config.empty()
                          ? vdw::Config::parse_text(vdw::default_config_text(),
                                                    "<defaults>")
                          : vdw::Config::parse_file(opts->config);
    const vdw::ScanResult res = run(cfg, threads);
    if (res.n_points > 0 && res.n_failed == res.n_points) {
      res.write(std::cerr);
      std::cerr << "error: all " << res.n_points << " scan points failed\n";
      return 3;
    }
    res.write_file(opts->out);
    std::cerr << "wrote " << opts->out << " (" << res.n_points << " points";
    if (res.n_failed > 0) std::cerr << ", " << res.n_failed << " failed";
    std::cerr << ")\n";
    return 0;
  } catch (const vdw::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
