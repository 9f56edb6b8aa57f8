#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "groupspectra/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"groupspectra: Fourier analysis, perturbation and limit experiments on finite groups"};
  std::string command;
  std::string config;
  std::string out_dir = ".";
  unsigned threads = 1;
  std::optional<std::uint64_t> seed;
  app.add_option("command", command, "one of reps, dft, perturb, bound, denoise, limit")->required();
  app.add_option("--config", config, "JSON run configuration")->required();
  app.add_option("--out-dir", out_dir, "directory for artifacts");
  app.add_option("--threads", threads, "worker threads")->check(CLI::Range(1u, 1024u));
  app.add_option("--seed-override", seed, "replaces the seed in the config");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << gs::json{{"error", "config"}, {"message", e.what()}, {"exit_code", 1}}.dump() << "\n";
    return gs::cli::config_failure;
  }
  gs::cli::RunOptions opt;
  opt.out_dir = out_dir;
  opt.threads = threads;
  opt.seed_override = seed;
  return gs::cli::run_file(command, config, opt);
}
