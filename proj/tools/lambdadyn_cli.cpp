#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "lambdadyn/commands.hpp"
#include "lambdadyn/config.hpp"
#include "lambdadyn/errors.hpp"

namespace {

struct Flag {
  const char* name;
  const char* key;
  const char* help;
};

constexpr Flag kFlags[] = {
    {"--case", "case", "Preset case: A-I, A-II, B-I, B-II, C-I, C-II"},
    {"--order", "order", "Magnus order (4 or 6)"},
    {"--steps-per-period", "steps_per_period", "Magnus steps per 2 pi"},
    {"--periods", "periods", "Horizon in drive periods"},
    {"--horizon", "horizon", "Horizon in time units"},
    {"--drive", "drive", "full, rwa or both"},
    {"--frame", "frame", "Output frame: rwf or lab"},
    {"--out", "out", "Output CSV path (default stdout)"},
    {"--eps-ss", "eps_ss", "Steady-state convergence threshold"},
    {"--workers", "workers", "Sweep worker threads"},
    {"--delta-omega-p", "delta_omega_p", "Probe detuning"},
    {"--delta-omega-c", "delta_omega_c", "Coupling detuning"},
    {"--omega-p-range", "omega_p_range", "Probe frequency scan a:b:step"},
    {"--omega-c-range", "omega_c_range", "Coupling frequency scan a:b:step"},
    {"--observables", "observables", "Comma-separated sweep observables"},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Driven three-level Lambda system dynamics"};
  app.require_subcommand(1);
  std::string config_path;
  bool timestamp = false;
  std::map<std::string, std::string> values;

  const std::pair<const char*, const char*> commands[] = {
      {"propagate", "Density-matrix time series from |1><1|"},
      {"sweep", "Steady-state observables over omega_p / omega_c grids"},
      {"gap", "Eigenvalue logs and spectral gap of the one-period map"},
      {"validate", "CPTP and density-matrix sanity checks"},
  };
  for (const auto& [name, description] : commands) {
    CLI::App* sub = app.add_subcommand(name, description);
    sub->add_option("--config", config_path, "key = value configuration file");
    sub->add_flag("--timestamp", timestamp, "Record the generation time in the CSV header");
    for (const Flag& f : kFlags) sub->add_option(f.name, values[f.key], f.help);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : lambdadyn::kExitConfig;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  std::string text;
  if (!config_path.empty()) {
    std::ifstream in(config_path, std::ios::binary);
    if (!in) {
      std::cerr << "lambdadyn: cannot read " << config_path << '\n';
      return lambdadyn::kExitIo;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }

  lambdadyn::ConfigEntries overrides;
  const CLI::App* sub = app.get_subcommands().front();
  for (const Flag& f : kFlags) {
    if (sub->count(f.name) > 0) overrides[f.key] = {values[f.key], 0};
  }
  if (timestamp) overrides["timestamp"] = {"true", 0};

  lambdadyn::RunConfig cfg;
  try {
    cfg = lambdadyn::parse_config(text, overrides);
  } catch (const lambdadyn::ParseError& e) {
    std::cerr << "lambdadyn: " << e.what() << '\n';
    return lambdadyn::kExitConfig;
  }
  return lambdadyn::run_command(command, cfg, std::cerr);
}
