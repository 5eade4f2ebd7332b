// Batch front end for the gyrokit design toolkit.
//
// Usage:
//   gyrokit [subcommand] --config run.json [--out DIR] [--format csv|json]
//           [--jobs N] [--verbose]
//
// The JSON config carries all physics parameters; the optional positional
// subcommand and the remaining flags override the corresponding config
// fields. Exit codes: 0 success, 1 internal error, 2 bad input, 3 every
// sweep point failed.

#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "gyrokit/cli.hpp"
#include "gyrokit/errors.hpp"

namespace {

void print_error(const std::string& kind, const std::string& message) {
  nlohmann::json record;
  record["error"] = kind;
  record["message"] = message;
  std::cerr << record.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Design and simulation toolkit for passive nonreciprocal superconducting circuits"};
  app.set_help_all_flag("--help-all");

  std::string subcommand;
  std::string config_path;
  std::string out_dir;
  std::string format;
  int jobs = 0;
  bool verbose = false;

  app.add_option("subcommand", subcommand,
                 "Subcommand to run (overrides the config): junction-energy, "
                 "estimate-coupling, gyrator-sweep, bandwidth, compression, "
                 "disorder-tolerance, mixing, circulator, lindblad, nonlinear-report");
  app.add_option("--config", config_path, "JSON run configuration (required)");
  app.add_option("--out", out_dir, "Output directory (overrides the config)");
  app.add_option("--format", format, "Output format: csv or json (overrides the config)");
  app.add_option("--jobs", jobs, "Worker threads (overrides the config)");
  app.add_flag("--verbose", verbose, "Echo progress to stderr");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    if (err.get_exit_code() == 0) {
      return app.exit(err);  // --help and friends
    }
    print_error("usage", err.what());
    return 2;
  }

  if (config_path.empty()) {
    print_error("usage", "--config is required");
    return 2;
  }

  try {
    gyrokit::RunConfig config = gyrokit::load_run_config(config_path);
    if (!subcommand.empty()) config.subcommand = subcommand;
    if (!out_dir.empty()) config.out_dir = out_dir;
    if (!format.empty()) config.format = format;
    if (jobs > 0) config.jobs = jobs;
    if (verbose) config.verbose = true;
    config.validate();  // overrides may have changed the schema constraints
    if (config.verbose) {
      std::cerr << "running '" << config.subcommand << "' into " << config.out_dir << "\n";
    }
    const int code = gyrokit::run(config);
    if (config.verbose) {
      std::cerr << "done (exit " << code << ")\n";
    }
    return code;
  } catch (const gyrokit::IngestError& err) {
    print_error("ingest", err.what());
    return 2;
  } catch (const gyrokit::DomainError& err) {
    print_error("domain", err.what());
    return 2;
  } catch (const std::exception& err) {
    print_error("internal", err.what());
    return 1;
  }
}
