#include <string>

#include <CLI11.hpp>

#include "supersol/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"supersol: supersolution-based existence laboratory for u_t = Lap u + f(u)"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  bool force = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "experiment config file")->required();
    cmd->add_option("--out", out_dir, "output directory (default: output.dir or ./out)");
  };

  add_common(app.add_subcommand("semigroup-probe",
                                "sup-norm traces, smoothing and convexity probes"));
  add_common(app.add_subcommand("certify", "evaluate every applicable certificate"));
  auto* iterate = app.add_subcommand("iterate", "build a supersolution and run the monotone iteration");
  add_common(iterate);
  iterate->add_flag("--force", force, "iterate even without a valid certificate");
  auto* compare = app.add_subcommand("compare", "cross-validate the iteration against the reference solver");
  add_common(compare);
  compare->add_flag("--force", force, "run even without a valid certificate");
  add_common(app.add_subcommand("scan", "sweep amplitudes and exponents into a phase table"));

  CLI11_PARSE(app, argc, argv);

  const std::string command = app.get_subcommands().front()->get_name();
  return supersol::run_command(command, config_path, out_dir, force);
}
