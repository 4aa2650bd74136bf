#pragma once

// Experiment drivers behind the command-line tool. Every driver returns its
// output as text so the same code path is used by the CLI and the tests.
// CSV output starts with a "# ..." line recording command, seed and
// version; numbers are fixed-precision so re-runs are byte-identical.

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "collbell/io.hpp"
#include "collbell/seesaw.hpp"

namespace collbell {

std::string format_fixed(double v, int decimals = 6);
std::string csv_comment(const std::string& command, std::uint64_t seed);

/// Evenly spaced grid of `count` points from lo to hi inclusive.
std::vector<double> linear_grid(double lo, double hi, int count);

struct Table1Entry {
  std::string label;         // "2:1", "1:2:3:3", ...
  std::vector<double> raw;   // unnormalized Schmidt coefficients
  int copies = 1;
  double value = 0.0;
};

/// The six reference states at N in {1, 2, 3, 4, 5, 10}, valued by
/// analytic_ch_value(tensor_power_schmidt(., N)). Row order is state-major.
std::vector<Table1Entry> table1_entries();

/// CSV "state,N,value" with 5 decimals.
std::string cmd_table1();

/// CSV "phi,phi_deg,N,value,horodecki" for N = 1..10 on a grid of phi in
/// (0, pi/4]; phi_i = (pi/4) i / grid for i = 1..grid.
std::string cmd_fig1(int grid);

/// CSV "p,horodecki,copies,seesaw": exact single-copy value and the see-saw
/// value for `copies` copies of the Werner state. copies <= 4.
std::string cmd_werner_scan(std::span<const double> p_grid, int copies, const SeesawConfig& cfg);

/// CSV "p,copies,seesaw" for N = 1..copies copies of the isotropic state.
std::string cmd_isotropic_scan(int d, std::span<const double> p_grid, int copies, const SeesawConfig& cfg);

struct SurveyOutput {
  std::string csv;
  json summary;
};

/// Draws Hilbert-Schmidt random two-qubit states until `count` of them
/// violate CH, then compares single-copy max_ch with the see-saw value for
/// `copies` copies. A state is "enhanced" when the see-saw value exceeds
/// max_ch by more than 1e-6. Besides cfg.restarts random starts, the N-copy
/// see-saw also starts from the single-copy see-saw optimum lifted to
/// A_k (x) 1, so the reported value is never below the single-copy one by
/// more than the single-copy see-saw error.
SurveyOutput cmd_sample_survey(int count, int copies, std::uint64_t seed, const SeesawConfig& cfg,
                               const std::function<void(int, int)>& progress = {});

/// Runs the see-saw on `copies` copies of the state and reports the result
/// with its certifying measurements.
json cmd_seesaw(const json& state_spec, const BellFunctional& f, int copies, const SeesawConfig& cfg);

inline constexpr double kEnhancementMargin = 1e-6;

}  // namespace collbell
