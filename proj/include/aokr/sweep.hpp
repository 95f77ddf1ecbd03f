#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "aokr/analytic.hpp"
#include "aokr/classical_map.hpp"
#include "aokr/ensemble.hpp"
#include "aokr/errors.hpp"
#include "aokr/params.hpp"
#include "aokr/quantum_delta.hpp"
#include "aokr/quantum_pulse.hpp"

namespace aokr {

enum class GridSpacing { linear, log };

inline std::string to_string(GridSpacing s) {
  return s == GridSpacing::linear ? "linear" : "log";
}

inline GridSpacing grid_spacing_from_string(const std::string& s) {
  if (s == "linear") return GridSpacing::linear;
  if (s == "log") return GridSpacing::log;
  throw invalid_parameter("unknown grid spacing: '" + s + "' (expected linear|log)");
}

// Everything one sweep run needs. pulse_width_ns applies only to
// quantum_pulse rows; workers = 0 means default_workers().
struct SweepConfig {
  double kbar_min = 0.05;
  double kbar_max = 5.0;
  int steps = 25;
  GridSpacing spacing = GridSpacing::log;
  double kick_ratio = 7.0;
  double sigma_p = 1.8;
  int n_kicks = 2;
  std::vector<Method> methods = {Method::analytic2};
  std::size_t n_traj = 2000;
  std::uint64_t seed = 42;
  double pulse_width_ns = 480.0;
  unsigned workers = 0;
  std::string output;  // empty = standard output (CLI-level concern)

  void validate() const {
    if (!(kbar_min > 0.0)) {
      throw invalid_parameter("SweepConfig: kbar_min must be positive, got " +
                              std::to_string(kbar_min));
    }
    if (!(kbar_max >= kbar_min)) {
      throw invalid_parameter("SweepConfig: kbar_max must be >= kbar_min");
    }
    if (steps < 1) throw invalid_parameter("SweepConfig: steps must be >= 1");
    if (methods.empty()) throw invalid_parameter("SweepConfig: methods must be non-empty");
    if (n_kicks < 0) throw invalid_parameter("SweepConfig: n_kicks must be >= 0");
    if (n_traj == 0) throw invalid_parameter("SweepConfig: n_traj must be >= 1");
    if (!(pulse_width_ns >= 0.0)) {
      throw invalid_parameter("SweepConfig: pulse_width_ns must be non-negative");
    }
  }
};

// Inclusive kbar grid; endpoints are exact, interior points are linear or
// log spaced. steps = 1 yields {kbar_min}.
inline std::vector<double> kbar_grid(const SweepConfig& config) {
  config.validate();
  std::vector<double> grid(static_cast<std::size_t>(config.steps));
  if (config.steps == 1) {
    grid[0] = config.kbar_min;
    return grid;
  }
  const double n1 = static_cast<double>(config.steps - 1);
  if (config.spacing == GridSpacing::linear) {
    const double step = (config.kbar_max - config.kbar_min) / n1;
    for (int i = 0; i < config.steps; ++i) {
      grid[static_cast<std::size_t>(i)] = config.kbar_min + step * i;
    }
  } else {
    const double lmin = std::log(config.kbar_min);
    const double lmax = std::log(config.kbar_max);
    for (int i = 0; i < config.steps; ++i) {
      grid[static_cast<std::size_t>(i)] = std::exp(lmin + (lmax - lmin) * i / n1);
    }
  }
  grid.front() = config.kbar_min;
  grid.back() = config.kbar_max;
  return grid;
}

namespace detail {

inline EnergyRecord sweep_point_record(const SweepConfig& config, double kbar, Method method) {
  // Analytic methods fix their own kick count; simulations use the config's.
  const int n_kicks = method == Method::analytic1                                   ? 1
                      : (method == Method::analytic2 || method == Method::analytic_broad) ? 2
                                                                                    : config.n_kicks;
  EnergyRecord rec{kbar,  config.kick_ratio, config.sigma_p, n_kicks, method,
                   0.0,   0.0,               0,              config.seed, ""};
  try {
    switch (method) {
      case Method::analytic1:
        rec.energy = energy_one_kick(AnalyticInputs(kbar, config.kick_ratio, config.sigma_p));
        break;
      case Method::analytic2:
        rec.energy = energy_two_kicks(AnalyticInputs(kbar, config.kick_ratio, config.sigma_p));
        break;
      case Method::analytic_broad:
        rec.energy =
            energy_two_kicks_broad(AnalyticInputs(kbar, config.kick_ratio, config.sigma_p));
        break;
      case Method::classical: {
        const EnsembleSpec spec(config.n_traj, config.seed, config.sigma_p);
        const RotorParams params(kbar, config.kick_ratio, config.sigma_p);
        const auto est = energy_from_momenta(
            evolve_classical_ensemble(spec, params, config.n_kicks, config.workers));
        rec.energy = est.energy;
        rec.std_err = est.std_err;
        rec.n_traj = config.n_traj;
        break;
      }
      case Method::quantum_delta: {
        const EnsembleSpec spec(config.n_traj, config.seed, config.sigma_p);
        const RotorParams params(kbar, config.kick_ratio, config.sigma_p);
        return simulate_delta_ensemble(spec, params, config.n_kicks, config.workers);
      }
      case Method::quantum_pulse: {
        const EnsembleSpec spec(config.n_traj, config.seed, config.sigma_p);
        const RotorParams params(kbar, config.kick_ratio, config.sigma_p,
                                 config.pulse_width_ns * 1e-9);
        return simulate_pulse_ensemble(spec, params, config.n_kicks, config.workers);
      }
    }
  } catch (const pulse_schedule_error&) {
    rec.energy = std::nan("");
    rec.std_err = std::nan("");
    rec.n_traj = config.n_traj;
    rec.error = "pulse_longer_than_period";
  } catch (const truncation_error&) {
    rec.energy = std::nan("");
    rec.std_err = std::nan("");
    rec.n_traj = config.n_traj;
    rec.error = "truncation_error";
  } catch (const numerical_error&) {
    rec.energy = std::nan("");
    rec.std_err = std::nan("");
    rec.n_traj = config.n_traj;
    rec.error = "numerical_error";
  }
  return rec;
}

}  // namespace detail

// Runs the sweep: one record per (grid point x method), rows sorted by
// (kbar, method tag). Per-point simulation failures are recorded in the
// `error` field, not thrown. Output is identical for any worker count:
// trajectories are partitioned into per-index slots and reduced in a fixed
// pairwise order.
inline std::vector<EnergyRecord> run_sweep(const SweepConfig& config) {
  config.validate();
  std::vector<Method> methods = config.methods;
  std::sort(methods.begin(), methods.end());
  methods.erase(std::unique(methods.begin(), methods.end()), methods.end());

  std::vector<EnergyRecord> records;
  records.reserve(kbar_grid(config).size() * methods.size());
  for (double kbar : kbar_grid(config)) {
    for (Method m : methods) {
      records.push_back(detail::sweep_point_record(config, kbar, m));
    }
  }
  std::stable_sort(records.begin(), records.end(), [](const EnergyRecord& a, const EnergyRecord& b) {
    if (a.kbar != b.kbar) return a.kbar < b.kbar;
    return a.method < b.method;
  });
  return records;
}

// ---------------------------------------------------------------------------
// CSV serialization
// ---------------------------------------------------------------------------

inline constexpr const char* kEnergyCsvHeader =
    "kbar,kappa_ratio,sigma_p,n_kicks,method,energy,std_err,n_traj,seed,error";

namespace detail {

inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline double parse_double(const std::string& field, std::size_t line_no) {
  if (field == "nan") return std::nan("");
  const char* begin = field.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0') {
    throw schema_error("line " + std::to_string(line_no) + ": bad numeric field '" + field + "'");
  }
  return v;
}

inline unsigned long long parse_u64(const std::string& field, std::size_t line_no) {
  const char* begin = field.c_str();
  char* end = nullptr;
  const unsigned long long v = std::strtoull(begin, &end, 10);
  if (end == begin || *end != '\0') {
    throw schema_error("line " + std::to_string(line_no) + ": bad integer field '" + field + "'");
  }
  return v;
}

}  // namespace detail

inline void write_energy_csv(std::ostream& os, std::span<const EnergyRecord> records) {
  os << kEnergyCsvHeader << '\n';
  for (const auto& r : records) {
    os << detail::format_double(r.kbar) << ',' << detail::format_double(r.kick_ratio) << ','
       << detail::format_double(r.sigma_p) << ',' << r.n_kicks << ',' << to_string(r.method)
       << ',' << detail::format_double(r.energy) << ',' << detail::format_double(r.std_err)
       << ',' << r.n_traj << ',' << r.seed << ',' << r.error << '\n';
  }
}

inline std::string energy_csv_string(std::span<const EnergyRecord> records) {
  std::ostringstream os;
  write_energy_csv(os, records);
  return os.str();
}

inline std::vector<EnergyRecord> read_energy_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) {
    throw schema_error("empty input: expected header '" + std::string(kEnergyCsvHeader) + "'");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kEnergyCsvHeader) {
    throw schema_error("bad header: got '" + line + "', expected '" +
                       std::string(kEnergyCsvHeader) + "'");
  }
  std::vector<EnergyRecord> records;
  std::size_t line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ls(line);
    while (std::getline(ls, field, ',')) fields.push_back(field);
    if (line.back() == ',') fields.emplace_back();  // trailing empty error field
    if (fields.size() != 10) {
      throw schema_error("line " + std::to_string(line_no) + ": expected 10 fields, got " +
                         std::to_string(fields.size()));
    }
    EnergyRecord r;
    r.kbar = detail::parse_double(fields[0], line_no);
    r.kick_ratio = detail::parse_double(fields[1], line_no);
    r.sigma_p = detail::parse_double(fields[2], line_no);
    r.n_kicks = static_cast<int>(detail::parse_u64(fields[3], line_no));
    try {
      r.method = method_from_string(fields[4]);
    } catch (const invalid_parameter& e) {
      throw schema_error("line " + std::to_string(line_no) + ": " + e.what());
    }
    r.energy = detail::parse_double(fields[5], line_no);
    r.std_err = detail::parse_double(fields[6], line_no);
    r.n_traj = static_cast<std::size_t>(detail::parse_u64(fields[7], line_no));
    r.seed = detail::parse_u64(fields[8], line_no);
    r.error = fields[9];
    records.push_back(std::move(r));
  }
  return records;
}

inline void write_energy_csv_file(const std::string& path, std::span<const EnergyRecord> records) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open output file: " + path);
  write_energy_csv(os, records);
  if (!os) throw std::runtime_error("write failed: " + path);
}

inline std::vector<EnergyRecord> read_energy_csv_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open input file: " + path);
  return read_energy_csv(is);
}

inline void write_portrait_csv(std::ostream& os, std::span<const PortraitPoint> points) {
  os << "phi,p\n";
  for (const auto& pt : points) {
    os << detail::format_double(pt.phi) << ',' << detail::format_double(pt.p) << '\n';
  }
}

inline void write_portrait_csv_file(const std::string& path,
                                    std::span<const PortraitPoint> points) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open output file: " + path);
  write_portrait_csv(os, points);
  if (!os) throw std::runtime_error("write failed: " + path);
}

// ---------------------------------------------------------------------------
// Calibration drivers
// ---------------------------------------------------------------------------

// Plateau mode: two-kick rows only, then broad-limit inversion at kbar >= 1.
inline KickRatioEstimate calibrate_plateau(std::span<const EnergyRecord> records,
                                           double sigma_p) {
  std::vector<EnergyRecord> two_kick;
  for (const auto& r : records) {
    if (r.n_kicks == 2) two_kick.push_back(r);
  }
  if (two_kick.empty()) throw calibration_error("no records with n_kicks = 2");
  return estimate_kick_ratio_plateau(two_kick, sigma_p);
}

// Difference mode: one-kick rows from the first set, two-kick rows from the
// second, matched by kbar.
inline KickRatioEstimate calibrate_difference(std::span<const EnergyRecord> one_kick_records,
                                              std::span<const EnergyRecord> two_kick_records) {
  std::vector<EnergyRecord> ones;
  for (const auto& r : one_kick_records) {
    if (r.n_kicks == 1) ones.push_back(r);
  }
  std::vector<EnergyRecord> twos;
  for (const auto& r : two_kick_records) {
    if (r.n_kicks == 2) twos.push_back(r);
  }
  if (ones.empty()) throw calibration_error("no records with n_kicks = 1");
  if (twos.empty()) throw calibration_error("no records with n_kicks = 2");
  return estimate_kick_ratio_difference(ones, twos);
}

// ---------------------------------------------------------------------------
// Figure presets
// ---------------------------------------------------------------------------

struct SweepPreset {
  std::string name;
  std::string description;
  SweepConfig config;
};

struct PortraitPreset {
  std::string name;
  std::string description;
  double kbar;
  double kick_ratio;
  double sigma_p;
  int n_iter;
  std::size_t n_traj;
  std::uint64_t seed;
};

inline const std::vector<SweepPreset>& sweep_presets() {
  static const std::vector<SweepPreset> presets = [] {
    std::vector<SweepPreset> p;
    auto base = [](double k, double sigma_p) {
      SweepConfig c;
      c.kick_ratio = k;
      c.sigma_p = sigma_p;
      c.n_traj = 2000;
      c.seed = 42;
      return c;
    };
    {
      SweepConfig c = base(7.0, 1.8);
      c.kbar_min = 0.1;
      c.kbar_max = 3.0;
      c.methods = {Method::analytic2, Method::quantum_delta, Method::quantum_pulse};
      p.push_back({"fig1-s1.8", "two-kick energy vs kbar, k = 7, sigma_p = 1.8, "
                   "delta kicks and 480 ns pulses", c});
      c.sigma_p = 3.2;
      p.push_back({"fig1-s3.2", "two-kick energy vs kbar, k = 7, sigma_p = 3.2, "
                   "delta kicks and 480 ns pulses", c});
    }
    {
      SweepConfig c = base(5.2, 4.2);
      c.kbar_min = 0.1;
      c.kbar_max = 4.0;
      c.n_kicks = 1;
      c.methods = {Method::analytic1, Method::quantum_delta};
      p.push_back({"fig2-1kick", "one-kick energy vs kbar, k = 5.2, sigma_p = 4.2", c});
      c.n_kicks = 2;
      c.methods = {Method::analytic2, Method::quantum_delta};
      p.push_back({"fig2-2kick", "two-kick energy vs kbar, k = 5.2, sigma_p = 4.2", c});
    }
    {
      const char* names[] = {"fig3-a", "fig3-b", "fig3-c", "fig3-d"};
      const double ks[] = {7.5, 6.4, 5.6, 4.5};
      for (int i = 0; i < 4; ++i) {
        SweepConfig c = base(ks[i], 3.35);
        c.methods = {Method::analytic2, Method::analytic_broad, Method::quantum_delta};
        p.push_back({names[i], "two-kick energy vs kbar, k = " + detail::format_double(ks[i]) +
                     ", sigma_p = 3.35", c});
      }
    }
    {
      const char* names[] = {"fig4-a", "fig4-b", "fig4-c", "fig4-d"};
      const double sigmas[] = {3.3, 4.2, 5.3, 6.0};
      for (int i = 0; i < 4; ++i) {
        SweepConfig c = base(5.8, sigmas[i]);
        c.methods = {Method::analytic2, Method::analytic_broad};
        p.push_back({names[i], "two-kick closed forms vs kbar, k = 5.8, sigma_p = " +
                     detail::format_double(sigmas[i]), c});
      }
    }
    return p;
  }();
  return presets;
}

inline const std::vector<PortraitPreset>& portrait_presets() {
  // Seed 18 keeps the kbar = 0.3 point cloud inside the |p| < 50 plot window
  // with a wide margin (max |p| ~ 33 for 500 trajectories).
  static const std::vector<PortraitPreset> presets = {
      {"fig5-top", "near-classical phase portrait, kbar = 0.001", 0.001, 5.5, 3.6, 100, 500, 18},
      {"fig5-middle", "phase portrait at kbar = 0.3 (energy-dip regime)", 0.3, 5.5, 3.6, 100,
       500, 18},
      {"fig5-bottom", "phase portrait at kbar = 3.0", 3.0, 5.5, 3.6, 100, 500, 18},
  };
  return presets;
}

inline const SweepPreset* find_sweep_preset(const std::string& name) {
  for (const auto& p : sweep_presets()) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

inline const PortraitPreset* find_portrait_preset(const std::string& name) {
  for (const auto& p : portrait_presets()) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

}  // namespace aokr
