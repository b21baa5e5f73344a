#include "gfp/runner/cli.hpp"

#include <CLI11.hpp>
#include <iostream>

#include "gfp/numerics/errors.hpp"
#include "gfp/runner/io.hpp"
#include "gfp/runner/report.hpp"
#include "gfp/runner/runner.hpp"

namespace gfp::runner {

namespace {

void print_acceptance(const json& summary, std::ostream& out) {
  for (const auto& a : summary.at("acceptance")) {
    out << "  " << (a.at("pass").get<bool>() ? "pass" : "FAIL") << "  " << a.at("rule").get<std::string>()
        << "  observed " << a.at("observed").dump() << "  threshold " << a.at("threshold").dump() << "\n";
  }
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gaussian fractional perimeter experiments", "gfp"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(artifact_version()));

  std::string config_path, output_dir, run_dir;
  auto* run = app.add_subcommand("run", "Execute an experiment configuration");
  run->add_option("config", config_path, "Experiment config (JSON) or a previous summary.json")->required();
  run->add_option("-o,--output", output_dir, "Output directory, overriding the config");
  auto* validate = app.add_subcommand("validate", "Check a configuration without running it");
  validate->add_option("config", config_path, "Experiment config (JSON)")->required();
  auto* report = app.add_subcommand("report", "Write plot data and SVG figures for a completed run");
  report->add_option("dir", run_dir, "Run directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion& e) {
    out << artifact_version() << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "gfp: " << e.what() << "\n";
    return kExitInvalid;
  }

  try {
    if (validate->parsed()) {
      const ExperimentConfig cfg = load_any_config(config_path);
      out << "valid " << to_string(cfg.experiment) << " config, hash " << config_hash(cfg) << "\n";
      return kExitOk;
    }
    if (run->parsed()) {
      const ExperimentConfig cfg = load_any_config(config_path);
      const auto dir = resolve_output(cfg, output_dir);
      const RunManifest m = run_to_directory(cfg, dir);
      const json summary = json::parse(read_file(dir / "summary.json"));
      out << to_string(cfg.experiment) << ": wrote " << dir.string() << " (hash " << m.config_hash << ", "
          << m.cache_hits << " cached units, " << m.wall_time_seconds << " s)\n";
      print_acceptance(summary, out);
      return kExitOk;
    }
    if (report->parsed()) {
      const auto files = write_report(run_dir);
      if (files.empty()) out << "no figures for this experiment\n";
      for (const auto& f : files) out << f.string() << "\n";
      return kExitOk;
    }
  } catch (const ConfigError& e) {
    err << "gfp: invalid configuration: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const ReportError& e) {
    err << "gfp: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const NonConvergence& e) {
    err << "gfp: numerical non-convergence: " << e.what() << " (best " << e.best().value << " +- "
        << e.best().error << ")\n";
    return kExitNonConvergence;
  } catch (const DomainError& e) {
    err << "gfp: domain error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const UnsupportedShape& e) {
    err << "gfp: unsupported shape: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    err << "gfp: unexpected error: " << e.what() << "\n";
    return kExitUnexpected;
  }
  return kExitUnexpected;
}

}  // namespace gfp::runner
