#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "maclaurin_cli/commands.hpp"
#include "maclaurin_cli/config.hpp"

int main(int argc, char** argv) {
  using namespace maclaurin;
  using namespace maclaurin::cli;

  CLI::App app{"maclaurin-lab: symmetric means, Maclaurin ratios and their limit laws"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  std::uint64_t seed = 0;
  std::string out = ".";
  auto* seed_opt = app.add_option("--seed", seed, "Root seed (overrides configs)")->envname("MLAB_SEED");
  app.add_option("--threads", g.threads, "Worker threads, 0 = all cores")->envname("MLAB_THREADS");
  app.add_option("--out", out, "Output directory")->envname("MLAB_OUT");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "json"}))->envname("MLAB_FORMAT");

  double p = 2.0;
  std::size_t n = 8, k = 1, count = 10;
  std::string measure_name = "cone";

  auto* constants = app.add_subcommand("constants", "Print m_p, s_p^2, rho_p^2 with provenance");
  constants->add_option("--p", p, "Exponent p >= 1")->envname("MLAB_P");

  std::string binary;
  auto* sample = app.add_subcommand("sample", "Draw points from a measure");
  sample->add_option("--measure", measure_name, "cone, surface, uniform-ball, bgmn-w, custom-radial");
  sample->add_option("--n", n, "Dimension");
  sample->add_option("--p", p, "Exponent p >= 1");
  sample->add_option("--count", count, "Number of points");
  sample->add_option("--binary", binary, "Also write a binary sample matrix here");

  std::vector<double> values;
  auto* means = app.add_subcommand("means", "Symmetric-mean profile log S_1..log S_n");
  means->add_option("--values", values, "Explicit coordinates (otherwise one draw)")->delimiter(',');
  means->add_option("--measure", measure_name, "Measure for the random draw");
  means->add_option("--n", n, "Dimension of the random draw");
  means->add_option("--p", p, "Exponent p >= 1");

  auto* ustat = app.add_subcommand("ustat-check", "Hoeffding identity and related algebra on random values");
  ustat->add_option("--n", n, "Sample size");
  ustat->add_option("--k", k, "Kernel order");

  std::string config;
  auto* experiment = app.add_subcommand("experiment", "Run the experiments of a config file");
  experiment->add_option("--config", config, "YAML or JSON config")->required()->envname("MLAB_CONFIG");

  double scale = 1.0;
  std::vector<int> only;
  auto* acceptance = app.add_subcommand("all-acceptance", "Run the acceptance criteria");
  acceptance->add_option("--scale", scale, "Multiplier on Monte Carlo sample counts");
  acceptance->add_option("--only", only, "Criterion ids to run")->delimiter(',');

  CLI11_PARSE(app, argc, argv);
  if (seed_opt->count() > 0) g.seed = seed;
  g.out = out;

  try {
    if (*constants) return run_constants(p, g, std::cout);
    if (*sample) return run_sample(measure_from_string(measure_name), n, p, count, binary, g, std::cout);
    if (*means) return run_means(values, measure_from_string(measure_name), n, p, g, std::cout);
    if (*ustat) return run_ustat_check(n, k, g, std::cout);
    if (*experiment) return run_experiment_file(config, g, std::cout);
    if (*acceptance) return run_all_acceptance(scale, only, g, std::cout);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
