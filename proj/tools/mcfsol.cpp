#include <iostream>

#include "CLI11.hpp"
#include "mcfsol/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Soliton slices, radial graphs, spectra and oscillation of ends in warped products"};
  app.set_version_flag("--version", mcfsol::kVersion);
  app.require_subcommand(1);

  mcfsol::CliOptions opts;
  std::string config, out, format;
  double tol = 0.0;
  for (const auto& name : mcfsol::command_names()) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config, "TOML run file")->check(CLI::ExistingFile);
    sub->add_option("--out", out, "output directory");
    sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--tol", tol, "tolerance override")->check(CLI::PositiveNumber);
    sub->add_flag("--force", opts.force, "overwrite existing outputs");
    sub->add_option("--jobs", opts.jobs, "worker threads")->check(CLI::PositiveNumber);
    sub->callback([&opts, name] { opts.command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  for (auto* sub : app.get_subcommands()) {
    if (sub->count("--config")) opts.config_path = config;
    if (sub->count("--out")) opts.out_dir = out;
    if (sub->count("--format")) opts.format = format;
    if (sub->count("--tol")) opts.tol = tol;
  }
  return mcfsol::run_command(opts, std::cout, std::cerr);
}
