#include "xxz/app/cli.hpp"

#include <map>
#include <optional>

#include "CLI11.hpp"
#include "../textio.hpp"
#include "xxz/app/check.hpp"
#include "xxz/app/commands.hpp"
#include "xxz/errors.hpp"

namespace xxz::app {

namespace {

struct Flags {
  std::map<std::string, std::optional<std::string>> settings;
  std::optional<std::string> config;
  int id = 0;
};

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.out.empty()) {
    out << text;
    out.flush();
  } else {
    detail::atomic_write(cfg.out, text);
  }
}

}  // namespace

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pairwise entanglement of the XXZ chain: tables, figures, sweeps and checks",
               "xxzent"};
  app.require_subcommand(1);
  app.fallthrough();
  Flags f;
  auto setting = [&](CLI::App* a, const std::string& flag, const std::string& key,
                     const std::string& help) {
    a->add_option(flag, f.settings[key], help);
  };
  setting(&app, "--out", "out", "Output path (default stdout)");
  setting(&app, "--precision", "precision", "Decimal digits, 6..15 (default 12)");
  setting(&app, "--cache", "cache", "Result cache directory");
  setting(&app, "--jobs", "jobs", "Worker threads");
  setting(&app, "--ed-max-L", "ed_max_L", "Largest chain served by exact diagonalization");
  setting(&app, "--convention", "convention", "Twisted energy route: tabulated or consistent");
  app.add_option("--config", f.config, "key = value configuration file");

  CLI::App* table = app.add_subcommand("table", "Reproduce a comparison table");
  table->add_option("--id", f.id, "Table 1..5")->required();
  setting(table, "--L", "L", "Chain lengths, comma separated");
  setting(table, "--method", "method", "Subset of ed,bethe,ff,cft");

  CLI::App* fig = app.add_subcommand("fig", "Figure data");
  fig->add_option("--id", f.id, "Figure 1 or 2")->required();
  setting(fig, "--L", "L", "Chain lengths, comma separated");
  setting(fig, "--delta", "delta", "a:b:step or comma list");
  setting(fig, "--gamma", "gamma", "a:b:step or comma list, delta = -cos(gamma)");
  setting(fig, "--sectors", "sectors", "Sector indices n = L/2 - r");
  setting(fig, "--method", "method", "Subset of ed,bethe,ff,cft");

  CLI::App* sweep = app.add_subcommand("sweep", "Parameter sweep");
  setting(sweep, "--delta", "delta", "a:b:step or comma list");
  setting(sweep, "--gamma", "gamma", "a:b:step or comma list, delta = -cos(gamma)");
  setting(sweep, "--L", "L", "Chain lengths, comma separated");
  setting(sweep, "--phi", "phi", "Total twist, e.g. 0.5 or pi/2");
  setting(sweep, "--method", "method", "Subset of ed,bethe,ff,cft");

  CLI::App* check = app.add_subcommand("check", "Run the acceptance criteria");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  RunConfig cfg;
  try {
    if (f.config)
      for (const auto& [k, v] : read_config_file(*f.config)) apply_setting(cfg, k, v);
    for (const auto& [k, v] : f.settings)
      if (v) apply_setting(cfg, k, *v);
    if (table->parsed()) {
      cfg.command = Command::Table;
      cfg.table_id = f.id;
    } else if (fig->parsed()) {
      cfg.command = Command::Fig;
      cfg.fig_id = f.id;
    } else if (sweep->parsed()) {
      cfg.command = Command::Sweep;
    } else if (check->parsed()) {
      cfg.command = Command::Check;
    }
    cfg.validate();

    switch (cfg.command) {
      case Command::Table: emit(cfg, run_table(cfg), out); return 0;
      case Command::Fig: emit(cfg, run_fig(cfg), out); return 0;
      case Command::Sweep: emit(cfg, run_sweep(cfg), out); return 0;
      case Command::Check: {
        const auto results = run_check(cfg);
        emit(cfg, format_report(results), out);
        return exit_code(results);
      }
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const InfeasibleError& e) {
    err << "infeasible: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace xxz::app
