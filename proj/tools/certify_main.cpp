#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <iostream>

#include "pushpull/report.hpp"

namespace {

std::string default_output_dir() {
  if (const char* dir = std::getenv("CERTIFY_OUT_DIR")) return dir;
  return ".";
}

int run_command(const std::string& scenario_path, const std::string& direction,
                int order, int samples, std::string out_path, const std::string& csv_path,
                std::uint64_t seed) {
  using namespace pushpull;
  const ScenarioConfig config = load_scenario(scenario_path);

  DirectionSelect select = DirectionSelect::kBoth;
  if (direction == "push") select = DirectionSelect::kPush;
  else if (direction == "pull") select = DirectionSelect::kPull;
  else if (direction != "both") throw ConfigError("--direction must be push, pull or both");

  RunOptions options;
  if (order > 0) options.quadrature_order = order;
  if (samples > 0) options.sup_samples = samples;
  options.seed = seed;

  if (out_path.empty()) {
    out_path = (std::filesystem::path(default_output_dir()) /
                (config.name + ".report.json")).string();
  }
  const RunReport report = run(config, select, options, out_path);
  if (!csv_path.empty()) write_certificates_csv(report, csv_path);

  for (const TupleRecord& t : report.tuples) {
    std::cout << config.name << " " << to_string(t.direction) << " k=" << t.k << " p=";
    if (std::isinf(t.p)) std::cout << "inf";
    else std::cout << t.p;
    if (t.certificate) {
      std::cout << " r_low=" << t.certificate->r_low << " r_up=" << t.certificate->r_up
                << " " << (t.certificate->pass ? "PASS" : "FAIL") << "\n";
    } else {
      std::cout << " ERROR[" << t.error_kind << "] " << t.error_message << "\n";
    }
  }
  std::cout << "report: " << out_path << "  (" << report.passed() << "/"
            << report.requested() << " passed, " << report.errored() << " errors)\n";
  return report.all_passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"L^p pushforward/pullback bound certification harness"};
  app.require_subcommand(1);

  std::string scenario_path, direction = "both", out_path, csv_path;
  int order = 0, samples = 0;
  std::uint64_t seed = 0;
  auto* run_cmd = app.add_subcommand("run", "Certify every (direction, k, p) tuple");
  run_cmd->add_option("scenario", scenario_path, "Scenario file")->required();
  run_cmd->add_option("--direction", direction, "push | pull | both");
  run_cmd->add_option("--order", order, "Quadrature order override");
  run_cmd->add_option("--samples", samples, "Sup-norm sample count override");
  run_cmd->add_option("--out", out_path, "Report path (default $CERTIFY_OUT_DIR/<name>.report.json)");
  run_cmd->add_option("--csv", csv_path, "Also write a per-certificate CSV");
  run_cmd->add_option("--seed", seed, "Seed recorded in the report");

  std::string grid_fields = "alpha_i,jacobian", grid_out;
  int resolution = 17;
  auto* grid_cmd = app.add_subcommand("grid", "Export pointwise fields on a uniform grid");
  grid_cmd->add_option("scenario", scenario_path, "Scenario file")->required();
  grid_cmd->add_option("--fields", grid_fields,
                       "Comma list of alpha_i,beta_i,jacobian,pointwise_norm,factor_integrands");
  grid_cmd->add_option("--resolution", resolution, "Grid points per axis");
  grid_cmd->add_option("--out", grid_out, "Output CSV path")->required();

  std::string catalog_dir = "scenarios";
  auto* catalog_cmd = app.add_subcommand("catalog", "Write the built-in scenario files");
  catalog_cmd->add_option("--dir", catalog_dir, "Output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) {
      return run_command(scenario_path, direction, order, samples, out_path, csv_path, seed);
    }
    if (grid_cmd->parsed()) {
      const pushpull::ScenarioConfig config = pushpull::load_scenario(scenario_path);
      std::vector<std::string> fields;
      std::string token;
      for (char c : grid_fields + ",") {
        if (c == ',') {
          if (!token.empty()) fields.push_back(token);
          token.clear();
        } else {
          token += c;
        }
      }
      pushpull::emit_pointwise_csv(config, fields, resolution, grid_out);
      std::cout << "wrote " << grid_out << "\n";
      return 0;
    }
    if (catalog_cmd->parsed()) {
      std::filesystem::create_directories(catalog_dir);
      for (const pushpull::ScenarioConfig& config : pushpull::builtin_catalog()) {
        const auto path = std::filesystem::path(catalog_dir) / (config.name + ".json");
        pushpull::save_scenario(config, path.string());
        std::cout << "wrote " << path.string() << "\n";
      }
      return 0;
    }
  } catch (const pushpull::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const pushpull::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 2;
  } catch (const pushpull::OrientationError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const pushpull::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
