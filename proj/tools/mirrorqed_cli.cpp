// mirrorqed_cli: scenario runner writing CSV tables with a JSON metadata header.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mirrorqed/mirrorqed.hpp"

using json = nlohmann::ordered_json;
using namespace mirrorqed;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitValidation = 2;

struct Options {
  double tau = 1.0;
  std::optional<double> omega_e;
  std::optional<double> phase;
  double rm = -1.0;
  double rm_phase = 0.0;
  double tmax = 10.0;
  std::optional<std::size_t> grid;
  double t_final = kDefaultSpectrumTime;
  std::size_t samples = kDefaultSpectrumSamples;
  std::size_t boxes = 25;
  std::size_t trajectories = 5000;
  std::uint64_t seed = 0;
  double tolerance = 0.03;
  unsigned threads = 0;
  std::vector<double> times;
  std::string out = "-";
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class Table {
 public:
  explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  void add_row(const std::vector<double>& row) { rows_.push_back(row); }

  void write(std::ostream& os, const json& meta) const {
    std::istringstream lines(meta.dump(2));
    for (std::string line; std::getline(lines, line);) os << "# " << line << '\n';
    for (std::size_t i = 0; i < columns_.size(); ++i) os << (i ? "," : "") << columns_[i];
    os << '\n';
    for (const auto& row : rows_) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << num(row[i]);
      os << '\n';
    }
  }

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<double>> rows_;
};

void emit(const Table& table, const json& meta, const std::string& out) {
  if (out == "-") {
    table.write(std::cout, meta);
    return;
  }
  std::ofstream file(out);
  if (!file) throw ConfigError("cannot open output file '" + out + "'");
  table.write(file, meta);
}

SystemParams resolve_params(const Options& o) {
  if (o.omega_e && o.phase) throw ConfigError("give either --omega-e or --phase, not both");
  if (!(o.tau >= 0.0)) throw ConfigError("--tau must be >= 0");
  SystemParams p = o.omega_e ? SystemParams::from_frequency(o.tau, *o.omega_e, o.rm, o.rm_phase)
                             : SystemParams::from_phase(o.tau, o.phase.value_or(std::numbers::pi),
                                                        o.rm, o.rm_phase);
  validate(p);
  return p;
}

json params_json(const SystemParams& p, const Options& o) {
  return {{"units", "normalized (Gamma = 1, c = 1)"},
          {"tau", p.tau},
          {"omega_e", p.omega_e},
          {"round_trip_phase", p.round_trip_phase()},
          {"gamma", p.gamma},
          {"rm_magnitude", o.rm},
          {"rm_phase", o.rm_phase},
          {"r_m", {p.r_m.real(), p.r_m.imag()}},
          {"t_m", p.t_m}};
}

json base_meta(const std::string& command, const SystemParams& p, const Options& o) {
  return {{"command", command}, {"params", params_json(p, o)}};
}

std::vector<double> time_grid(double tmax, std::size_t points) {
  if (!(tmax > 0.0) || !std::isfinite(tmax)) throw ConfigError("--tmax must be > 0");
  if (points < 2) throw ConfigError("--grid must be >= 2");
  std::vector<double> t(points);
  for (std::size_t i = 0; i < points; ++i)
    t[i] = tmax * static_cast<double>(i) / static_cast<double>(points - 1);
  return t;
}

json complex_json(complex z) { return {z.real(), z.imag()}; }

int run_excitation(const Options& o) {
  const SystemParams p = resolve_params(o);
  const auto times = time_grid(o.tmax, o.grid.value_or(2001));
  json meta = base_meta("excitation", p, o);
  meta["grid"] = {{"t_min", 0.0}, {"t_max", o.tmax}, {"points", times.size()}};

  json longtime = {{"available", false}};
  std::optional<DerivedConstants> lt;
  try {
    lt = solve_longtime(p);
    longtime = {{"available", true}, {"xi", complex_json(*lt->xi)}, {"xi0", complex_json(*lt->xi0)}};
  } catch (const Xi0Diverges& e) {
    longtime["reason"] = e.what();
    longtime["xi"] = complex_json(longtime_exponent(p));
  } catch (const NoLongtimeSolution& e) {
    longtime["reason"] = e.what();
  }
  meta["longtime"] = longtime;
  meta["a"] = complex_json(derived_constants(p).a);

  std::vector<std::string> cols{"t", "P_exact"};
  if (lt) cols.emplace_back("P_longtime");
  cols.emplace_back("P_markovian");
  Table table(cols);
  const auto curve = excitation_curve(p, times);
  for (std::size_t i = 0; i < times.size(); ++i) {
    std::vector<double> row{times[i], curve.probabilities[i]};
    if (lt) row.push_back(excitation_probability_longtime(p, *lt, times[i]));
    row.push_back(excitation_probability_markovian(p, times[i]));
    table.add_row(row);
  }
  emit(table, meta, o.out);
  return kExitOk;
}

int run_markovian(const Options& o) {
  const SystemParams p = resolve_params(o);
  const auto times = time_grid(o.tmax, o.grid.value_or(2001));
  json meta = base_meta("markovian", p, o);
  meta["grid"] = {{"t_min", 0.0}, {"t_max", o.tmax}, {"points", times.size()}};
  const auto d = dressed_params(p);
  meta["dressed"] = {{"delta_eff", d.delta_eff}, {"gamma_eff", d.gamma_eff}};
  Table table({"t", "P_markovian"});
  for (double t : times) table.add_row({t, excitation_probability_markovian(p, t)});
  emit(table, meta, o.out);
  return kExitOk;
}

// Sweeps the round-trip phase over [0, 2 pi] at fixed tau and r_m.
int run_dressed(const Options& o) {
  const SystemParams p = resolve_params(o);
  const std::size_t points = o.grid.value_or(2001);
  if (points < 2) throw ConfigError("--grid must be >= 2");
  if (!(p.tau > 0.0)) throw ConfigError("dressed sweep needs --tau > 0");
  json meta = base_meta("dressed", p, o);
  const auto d = dressed_params(p);
  meta["dressed"] = {{"delta_eff", d.delta_eff}, {"gamma_eff", d.gamma_eff}};
  meta["grid"] = {{"phase_min", 0.0}, {"phase_max", 2.0 * std::numbers::pi}, {"points", points}};
  Table table({"round_trip_phase", "delta_eff", "gamma_eff"});
  for (std::size_t i = 0; i < points; ++i) {
    const double phase = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(points - 1);
    const auto q = SystemParams::from_phase(p.tau, phase, o.rm, o.rm_phase, p.gamma);
    const auto dq = dressed_params(q);
    table.add_row({phase, dq.delta_eff, dq.gamma_eff});
  }
  emit(table, meta, o.out);
  return kExitOk;
}

int run_wavepacket(const Options& o) {
  const SystemParams p = resolve_params(o);
  std::vector<double> snaps = o.times;
  if (snaps.empty()) snaps = {0.25 * o.tmax, 0.5 * o.tmax, o.tmax};
  for (double t : snaps)
    if (!(t > 0.0) || !std::isfinite(t)) throw ConfigError("--times entries must be > 0");
  const double reach = *std::max_element(snaps.begin(), snaps.end());
  const std::size_t points = o.grid.value_or(4001);
  if (points < 2) throw ConfigError("--grid must be >= 2");
  std::vector<double> xs(points);
  for (std::size_t i = 0; i < points; ++i)
    xs[i] = -reach + 2.0 * reach * static_cast<double>(i) / static_cast<double>(points - 1);

  json meta = base_meta("wavepacket", p, o);
  meta["grid"] = {{"x_min", -reach}, {"x_max", reach}, {"points", points}, {"times", snaps}};
  meta["mirror_position"] = 0.5 * p.tau;

  std::vector<std::string> cols{"x"};
  std::vector<SpatialProfile> left, right;
  std::vector<double> peaks;
  json snap_meta = json::array();
  for (double t : snaps) {
    left.push_back(spatial_profile(p, xs, Direction::left, t));
    right.push_back(spatial_profile(p, xs, Direction::right, t));
    double peak = 0.0;
    for (std::size_t i = 0; i < points; ++i)
      if (xs[i] < 0.0) peak = std::max(peak, left.back().density[i]);
    peaks.push_back(peak);
    snap_meta.push_back({{"t", t}, {"left_peak_density", peak},
                         {"P_exact", excitation_probability_exact(p, t)}});
    const std::string tag = num(t);
    cols.push_back("left_density_t=" + tag);
    cols.push_back("right_density_t=" + tag);
    cols.push_back("left_scaled_t=" + tag);
  }
  meta["snapshots"] = snap_meta;
  meta["scaling"] = "left_scaled = left_density / peak of left_density over x < 0";

  Table table(cols);
  for (std::size_t i = 0; i < points; ++i) {
    std::vector<double> row{xs[i]};
    for (std::size_t s = 0; s < snaps.size(); ++s) {
      row.push_back(left[s].density[i]);
      row.push_back(right[s].density[i]);
      row.push_back(peaks[s] > 0.0 ? left[s].density[i] / peaks[s] : 0.0);
    }
    table.add_row(row);
  }
  emit(table, meta, o.out);
  return kExitOk;
}

int run_spectrum(const Options& o) {
  const SystemParams p = resolve_params(o);
  const Spectrum s = spectrum(p, o.t_final, o.samples);
  json meta = base_meta("spectrum", p, o);
  meta["grid"] = {{"sample_count", o.samples},
                  {"sample_spacing", s.sample_spacing},
                  {"t_final", s.t_final},
                  {"frequency_spacing", s.frequencies[1] - s.frequencies[0]}};
  meta["peak_power"] = s.peak_power;
  meta["fwhm"] = full_width_half_max(s.frequencies, s.spectral_density);
  Table table({"omega", "spectral_density"});
  for (std::size_t i = 0; i < s.frequencies.size(); ++i)
    table.add_row({s.frequencies[i], s.spectral_density[i]});
  emit(table, meta, o.out);
  return kExitOk;
}

TrajectoryConfig trajectory_config(const SystemParams& p, const Options& o) {
  return TrajectoryConfig::from_params(p, o.boxes, o.trajectories, o.tmax, o.seed);
}

json trajectory_json(const TrajectoryConfig& c, unsigned threads) {
  return {{"boxes", c.boxes},     {"dt", c.dt},
          {"v_right", c.v_right}, {"v_left", c.v_left},
          {"r_m", c.r_m},         {"omega_e", c.omega_e},
          {"n_trajectories", c.n_trajectories},
          {"t_max", c.t_max},     {"master_seed", c.master_seed},
          {"threads_requested", threads},
          {"rng", "mt19937_64 per trajectory, seed_seq(seed_lo, seed_hi, index_lo, index_hi)"}};
}

int run_trajectory_cmd(const Options& o) {
  const SystemParams p = resolve_params(o);
  const auto c = trajectory_config(p, o);
  const auto r = ensemble_average(c, o.threads);
  json meta = base_meta("trajectory", p, o);
  meta["trajectory"] = trajectory_json(c, o.threads);
  Table table({"t", "P_trajectory_mean", "stderr"});
  for (std::size_t k = 0; k < r.times.size(); ++k)
    table.add_row({r.times[k], r.mean[k], r.standard_error[k]});
  emit(table, meta, o.out);
  return kExitOk;
}

int run_compare(const Options& o) {
  const SystemParams p = resolve_params(o);
  if (!(o.tolerance >= 0.0)) throw ConfigError("--tolerance must be >= 0");
  const auto c = trajectory_config(p, o);
  const auto r = ensemble_average(c, o.threads);
  const auto dc = derived_constants(p);

  Table table({"t", "P_exact", "P_trajectory_mean", "stderr", "deviation"});
  double worst = 0.0;
  double worst_t = 0.0;
  for (std::size_t k = 0; k < r.times.size(); ++k) {
    const double exact = excitation_probability_exact(p, dc, r.times[k]);
    const double dev = r.mean[k] - exact;
    if (std::abs(dev) > worst) {
      worst = std::abs(dev);
      worst_t = r.times[k];
    }
    table.add_row({r.times[k], exact, r.mean[k], r.standard_error[k], dev});
  }
  const bool pass = worst <= o.tolerance;
  json meta = base_meta("compare", p, o);
  meta["trajectory"] = trajectory_json(c, o.threads);
  meta["summary"] = {{"max_abs_dev", worst},
                     {"at_t", worst_t},
                     {"tolerance", o.tolerance},
                     {"result", pass ? "PASS" : "FAIL"}};
  emit(table, meta, o.out);
  std::cerr << "compare: max |dev| = " << num(worst) << " at t = " << num(worst_t)
            << (pass ? "  PASS" : "  FAIL") << '\n';
  return pass ? kExitOk : kExitValidation;
}

void add_system_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--tau", o.tau, "round-trip time tau (units of 1/Gamma)")->capture_default_str();
  auto* omega = cmd->add_option("--omega-e", o.omega_e, "emitter frequency (units of Gamma)");
  cmd->add_option("--phase", o.phase, "round-trip phase omega_e tau (default pi)")->excludes(omega);
  cmd->add_option("--rm", o.rm, "mirror reflection magnitude (signed real)")->capture_default_str();
  cmd->add_option("--rm-phase", o.rm_phase, "extra reflection phase")->capture_default_str();
  cmd->add_option("--tmax", o.tmax, "end of the time window")->capture_default_str();
  cmd->add_option("--grid", o.grid, "grid points (2001 in time, 4001 in space)");
  cmd->add_option("--out", o.out, "output CSV path, '-' for stdout")->capture_default_str();
}

void add_trajectory_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--boxes", o.boxes, "boxes per direction")->capture_default_str();
  cmd->add_option("--trajectories", o.trajectories, "number of trajectories")->capture_default_str();
  cmd->add_option("--seed", o.seed, "master seed")->capture_default_str();
  cmd->add_option("--threads", o.threads, "worker threads (0 = hardware)")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Emitter in front of a partially transparent mirror: exact dynamics, photon "
               "wave packets and a trajectory cross-check"};
  app.require_subcommand(1);
  Options o;

  auto* excitation = app.add_subcommand("excitation", "P_e(t): exact, long-time and Markovian");
  auto* markovian = app.add_subcommand("markovian", "Markovian P_e(t) and dressed parameters");
  auto* dressed = app.add_subcommand("dressed", "dressed shift and decay rate against round-trip phase");
  auto* wavepacket = app.add_subcommand("wavepacket", "photon density snapshots in space");
  auto* spectrum_cmd = app.add_subcommand("spectrum", "spectrum of the left-moving photon");
  auto* trajectory = app.add_subcommand("trajectory", "quantum-trajectory ensemble average of P_e");
  auto* compare = app.add_subcommand("compare", "exact P_e against the trajectory ensemble");

  for (auto* cmd : {excitation, markovian, dressed, wavepacket, spectrum_cmd, trajectory, compare})
    add_system_options(cmd, o);
  wavepacket->add_option("--times", o.times, "snapshot times (default tmax/4, tmax/2, tmax)")->delimiter(',');
  spectrum_cmd->add_option("--t-final", o.t_final, "observation time")->capture_default_str();
  spectrum_cmd->add_option("--samples", o.samples, "spatial samples, power of two")->capture_default_str();
  add_trajectory_options(trajectory, o);
  add_trajectory_options(compare, o);
  compare->add_option("--tolerance", o.tolerance, "max allowed |deviation|")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*excitation) return run_excitation(o);
    if (*markovian) return run_markovian(o);
    if (*dressed) return run_dressed(o);
    if (*wavepacket) return run_wavepacket(o);
    if (*spectrum_cmd) return run_spectrum(o);
    if (*trajectory) return run_trajectory_cmd(o);
    if (*compare) return run_compare(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitConfig;
}
