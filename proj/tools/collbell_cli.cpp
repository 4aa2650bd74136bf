// collbell: reproduce CH-violation tables and figure data for single-copy
// and collective N-copy measurements.
//
// Exit codes: 0 success, 2 argument error, 3 guard exceeded, 4 numeric failure.

#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "collbell/errors.hpp"
#include "collbell/experiments.hpp"

namespace {

constexpr int kExitArgument = 2;
constexpr int kExitGuard = 3;
constexpr int kExitNumeric = 4;

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write " + path);
  out << text;
}

std::string summary_path(const std::string& out) {
  if (out.empty() || out == "-") return "";
  const auto dot = out.rfind('.');
  const auto slash = out.rfind('/');
  const std::string stem = (dot == std::string::npos || (slash != std::string::npos && dot < slash)) ? out : out.substr(0, dot);
  return stem + ".summary.json";
}

}  // namespace

int main(int argc, char** argv) {
  using namespace collbell;

  CLI::App app{"Bell-CH violation under single-copy and collective measurements"};
  app.require_subcommand(1);

  SeesawConfig cfg;
  std::string out_path;
  int copies = 1;
  int grid = 0;
  double pmin = 0.0, pmax = 1.0;

  auto add_seesaw_flags = [&](CLI::App* sub) {
    sub->add_option("--restarts", cfg.restarts, "See-saw random restarts")->capture_default_str();
    sub->add_option("--iters", cfg.max_iters, "Maximum see-saw rounds per restart")->capture_default_str();
    sub->add_option("--tol", cfg.tol, "Convergence threshold on the value change")->capture_default_str();
    sub->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
    sub->add_option("--threads", cfg.threads, "Worker threads for restarts (0 = all cores)")->capture_default_str();
  };

  auto* table1 = app.add_subcommand("table1", "Analytic lower bounds for the six reference pure states");
  table1->add_option("--out", out_path, "Output file (default stdout)");

  auto* fig1 = app.add_subcommand("fig1", "N-copy CH value of pure two-qubit states versus phi");
  grid = 90;
  fig1->add_option("--grid", grid, "Number of phi points in (0, pi/4]")->capture_default_str();
  fig1->add_option("--out", out_path, "Output file (default stdout)");

  auto* wscan = app.add_subcommand("werner-scan", "Single-copy exact vs N-copy see-saw values for Werner states");
  auto* iscan = app.add_subcommand("isotropic-scan", "See-saw values for copies of isotropic states");
  int iso_d = 3;
  for (auto* sub : {wscan, iscan}) {
    sub->add_option("--copies", copies, "Number of copies")->capture_default_str();
    sub->add_option("--grid", grid, "Number of p values");
    sub->add_option("--pmin", pmin, "Smallest p");
    sub->add_option("--pmax", pmax, "Largest p");
    sub->add_option("--out", out_path, "Output file (default stdout)");
    add_seesaw_flags(sub);
  }
  iscan->add_option("--dim", iso_d, "Local dimension d")->capture_default_str();

  auto* survey = app.add_subcommand("survey", "Random two-qubit states: is the N-copy violation enhanced?");
  int count = 5000;
  int survey_copies = 3;
  bool quiet = false;
  survey->add_option("--count", count, "Number of CH-violating states to examine")->capture_default_str();
  survey->add_option("--copies", survey_copies, "Number of copies")->capture_default_str();
  survey->add_option("--out", out_path, "CSV output file; the summary goes to <stem>.summary.json");
  survey->add_flag("--quiet", quiet, "No progress on stderr");
  add_seesaw_flags(survey);

  auto* seesaw = app.add_subcommand("seesaw", "See-saw lower bound for one state and inequality");
  std::string state_arg, ineq_arg = "ch";
  seesaw->add_option("--state", state_arg, "State spec: inline JSON or @file")->required();
  seesaw->add_option("--ineq", ineq_arg, "ch | chsh | i3322 | inline JSON | @file")->capture_default_str();
  seesaw->add_option("--copies", copies, "Number of copies")->capture_default_str();
  seesaw->add_option("--out", out_path, "Output file (default stdout)");
  add_seesaw_flags(seesaw);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitArgument;
  }

  try {
    if (*table1) {
      emit(cmd_table1(), out_path);
    } else if (*fig1) {
      emit(cmd_fig1(grid), out_path);
    } else if (*wscan) {
      if (grid == 0) grid = 23;
      if (!wscan->count("--pmin")) pmin = 0.78;
      const auto ps = linear_grid(pmin, pmax, grid);
      emit(cmd_werner_scan(ps, copies, cfg), out_path);
    } else if (*iscan) {
      if (grid == 0) grid = 21;
      const auto ps = linear_grid(pmin, pmax, grid);
      emit(cmd_isotropic_scan(iso_d, ps, copies, cfg), out_path);
    } else if (*survey) {
      auto progress = [&](int done, int total) {
        if (!quiet && (done % 100 == 0 || done == total)) std::cerr << "survey: " << done << "/" << total << "\n";
      };
      const SurveyOutput res = cmd_sample_survey(count, survey_copies, cfg.seed, cfg, progress);
      emit(res.csv, out_path);
      const std::string spath = summary_path(out_path);
      if (spath.empty()) {
        std::cerr << res.summary.dump(2) << "\n";
      } else {
        emit(res.summary.dump(2) + "\n", spath);
      }
    } else if (*seesaw) {
      const BellFunctional f = parse_functional_arg(ineq_arg);
      emit(cmd_seesaw(load_json_arg(state_arg), f, copies, cfg).dump(2) + "\n", out_path);
    }
  } catch (const GuardExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitGuard;
  } catch (const NumericFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitArgument;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return 0;
}
