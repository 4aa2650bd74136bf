#include "collbell/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "collbell/errors.hpp"
#include "collbell/horodecki.hpp"
#include "collbell/scheme.hpp"

#ifndef COLLBELL_VERSION
#define COLLBELL_VERSION "dev"
#endif

namespace collbell {

std::string format_fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::string csv_comment(const std::string& command, std::uint64_t seed) {
  return "# collbell " + command + " seed=" + std::to_string(seed) + " version=" COLLBELL_VERSION "\n";
}

std::vector<double> linear_grid(double lo, double hi, int count) {
  if (count < 1) throw std::invalid_argument("grid: need at least one point");
  if (count == 1) return {lo};
  std::vector<double> g(count);
  for (int i = 0; i < count; ++i) g[i] = lo + (hi - lo) * i / (count - 1);
  return g;
}

std::vector<Table1Entry> table1_entries() {
  const std::vector<std::pair<std::string, std::vector<double>>> states = {
      {"2:1", {2, 1}},         {"1:1:1", {1, 1, 1}},     {"1:2:3", {1, 2, 3}},
      {"1:2:3:4", {1, 2, 3, 4}}, {"1:2:3:3", {1, 2, 3, 3}}, {"1:1:1:1:1", {1, 1, 1, 1, 1}},
  };
  std::vector<Table1Entry> out;
  for (const auto& [label, raw] : states) {
    const SchmidtState s = schmidt_state(raw);
    for (int n : {1, 2, 3, 4, 5, 10}) {
      out.push_back({label, raw, n, analytic_ch_value(tensor_power_schmidt(s, n))});
    }
  }
  return out;
}

std::string cmd_table1() {
  std::string out = csv_comment("table1", 0) + "state,N,value\n";
  for (const Table1Entry& e : table1_entries()) {
    out += e.label + "," + std::to_string(e.copies) + "," + format_fixed(e.value, 5) + "\n";
  }
  return out;
}

std::string cmd_fig1(int grid) {
  if (grid < 2) throw std::invalid_argument("fig1: grid must be >= 2");
  std::string out = csv_comment("fig1", 0) + "phi,phi_deg,N,value,horodecki\n";
  for (int i = 1; i <= grid; ++i) {
    const double phi = std::numbers::pi / 4.0 * i / grid;
    const double s = std::sin(2.0 * phi);
    const double horodecki = 0.5 * std::sqrt(1.0 + s * s) - 0.5;
    for (int n = 1; n <= 10; ++n) {
      out += format_fixed(phi) + "," + format_fixed(phi * 180.0 / std::numbers::pi) + "," + std::to_string(n) +
             "," + format_fixed(two_qubit_ncopy_value(phi, n)) + "," + format_fixed(horodecki) + "\n";
    }
  }
  return out;
}

std::string cmd_werner_scan(std::span<const double> p_grid, int copies, const SeesawConfig& cfg) {
  if (copies < 1) throw std::invalid_argument("werner-scan: copies must be >= 1");
  if (copies > 4) throw GuardExceeded("werner-scan: copies must be <= 4 (16x16 local dimension)");
  std::string out = csv_comment("werner-scan", cfg.seed) + "p,horodecki,copies,seesaw\n";
  const BellFunctional f = ch();
  for (double p : p_grid) {
    const BipartiteDensity rho = werner(p);
    const SeesawResult r = seesaw_maximize(tensor_power_density(rho, copies), f, cfg);
    out += format_fixed(p) + "," + format_fixed(max_ch(rho)) + "," + std::to_string(copies) + "," +
           format_fixed(r.value) + "\n";
  }
  return out;
}

std::string cmd_isotropic_scan(int d, std::span<const double> p_grid, int copies, const SeesawConfig& cfg) {
  if (copies < 1) throw std::invalid_argument("isotropic-scan: copies must be >= 1");
  std::string out = csv_comment("isotropic-scan", cfg.seed) + "p,copies,seesaw\n";
  const BellFunctional f = ch();
  for (double p : p_grid) {
    const BipartiteDensity rho = isotropic(d, p);
    for (int n = 1; n <= copies; ++n) {
      const SeesawResult r = seesaw_maximize(tensor_power_density(rho, n), f, cfg);
      out += format_fixed(p) + "," + std::to_string(n) + "," + format_fixed(r.value) + "\n";
    }
  }
  return out;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

SurveyOutput cmd_sample_survey(int count, int copies, std::uint64_t seed, const SeesawConfig& cfg,
                               const std::function<void(int, int)>& progress) {
  if (count < 1) throw std::invalid_argument("survey: count must be >= 1");
  if (copies < 1) throw std::invalid_argument("survey: copies must be >= 1");
  const BellFunctional f = ch();
  std::mt19937_64 rng(seed);

  std::string csv = csv_comment("survey", seed) + "index,concurrence,linear_entropy,max_ch,seesaw,enhanced\n";
  int drawn = 0;
  int enhanced = 0;
  double max_enhanced_entropy = -1.0;
  double max_gain = 0.0;
  for (int index = 0; index < count;) {
    const BipartiteDensity rho = random_two_qubit(rng);
    ++drawn;
    const double single = max_ch(rho);
    if (single <= 0.0) continue;

    SeesawConfig state_cfg = cfg;
    state_cfg.seed = splitmix64(seed ^ splitmix64(std::uint64_t(index)));
    const BipartiteDensity many = tensor_power_density(rho, copies);
    SeesawResult r = seesaw_maximize(many, f, state_cfg);
    // Random starts on the N-copy space often miss the single-copy optimum
    // altogether, so also climb from it (A_k (x) 1 on the extra copies).
    if (copies > 1) {
      const SeesawResult one = seesaw_maximize(rho, f, state_cfg);
      const CMatrix rest = CMatrix::Identity(many.dA() / 2, many.dA() / 2);
      std::vector<BinaryMeasurement> lifted;
      for (const BinaryMeasurement& a : one.alice) lifted.push_back({kron(a.plus, rest)});
      SeesawResult climbed = seesaw_from(many, f, std::move(lifted), cfg.max_iters, cfg.tol);
      if (climbed.value > r.value) {
        climbed.restart_index = cfg.restarts;
        r = std::move(climbed);
      }
    }
    const double entropy = linear_entropy(rho);
    const bool is_enhanced = r.value > single + kEnhancementMargin;
    if (is_enhanced) {
      ++enhanced;
      max_enhanced_entropy = std::max(max_enhanced_entropy, entropy);
      max_gain = std::max(max_gain, r.value - single);
    }
    csv += std::to_string(index) + "," + format_fixed(concurrence(rho)) + "," + format_fixed(entropy) + "," +
           format_fixed(single) + "," + format_fixed(r.value) + "," + (is_enhanced ? "1" : "0") + "\n";
    ++index;
    if (progress) progress(index, count);
  }

  json summary = {
      {"command", "survey"},
      {"version", COLLBELL_VERSION},
      {"seed", seed},
      {"copies", copies},
      {"restarts", cfg.restarts},
      {"max_iters", cfg.max_iters},
      {"tol", cfg.tol},
      {"lifted_single_copy_start", copies > 1},
      {"violating_states", count},
      {"states_drawn", drawn},
      {"enhanced", enhanced},
      {"enhanced_fraction", double(enhanced) / count},
      {"max_gain", max_gain},
  };
  summary["max_linear_entropy_enhanced"] = enhanced > 0 ? json(max_enhanced_entropy) : json(nullptr);
  return {std::move(csv), std::move(summary)};
}

json cmd_seesaw(const json& state_spec, const BellFunctional& f, int copies, const SeesawConfig& cfg) {
  if (copies < 1) throw std::invalid_argument("seesaw: copies must be >= 1");
  const BipartiteDensity rho = tensor_power_density(parse_state_spec(state_spec), copies);
  const SeesawResult r = seesaw_maximize(rho, f, cfg);
  json alice = json::array(), bob = json::array();
  for (const auto& m : r.alice) alice.push_back(matrix_to_json(m.plus));
  for (const auto& m : r.bob) bob.push_back(matrix_to_json(m.plus));
  return {
      {"command", "seesaw"},
      {"version", COLLBELL_VERSION},
      {"state", state_spec},
      {"inequality", f.name()},
      {"lhv_bound", f.lhv_bound()},
      {"copies", copies},
      {"dA", rho.dA()},
      {"dB", rho.dB()},
      {"seed", cfg.seed},
      {"restarts", cfg.restarts},
      {"max_iters", cfg.max_iters},
      {"tol", cfg.tol},
      {"value", r.value},
      {"iterations", r.iterations},
      {"restart_index", r.restart_index},
      {"converged", r.converged},
      {"alice", alice},
      {"bob", bob},
  };
}

}  // namespace collbell
