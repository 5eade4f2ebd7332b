#include "gyrokit/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "gyrokit/constants.hpp"
#include "gyrokit/coupling.hpp"
#include "gyrokit/design.hpp"
#include "gyrokit/errors.hpp"
#include "gyrokit/io.hpp"
#include "gyrokit/junction.hpp"
#include "gyrokit/lindblad.hpp"
#include "gyrokit/network.hpp"
#include "gyrokit/nonlinear.hpp"

namespace gyrokit {

namespace {

using nlohmann::json;

// ---------------------------------------------------------------------------
// JSON access with field-naming errors

const json* find(const json& obj, const char* key) {
  const auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

double num_or(const json& obj, const std::string& where, const char* key, double fallback) {
  const json* f = find(obj, key);
  if (f == nullptr) return fallback;
  if (!f->is_number()) {
    throw IngestError("config field '" + where + key + "' must be a number");
  }
  return f->get<double>();
}

double num_req(const json& obj, const std::string& where, const char* key) {
  const json* f = find(obj, key);
  if (f == nullptr) {
    throw IngestError("config field '" + where + key + "' is required");
  }
  if (!f->is_number()) {
    throw IngestError("config field '" + where + key + "' must be a number");
  }
  return f->get<double>();
}

int int_or(const json& obj, const std::string& where, const char* key, int fallback) {
  const json* f = find(obj, key);
  if (f == nullptr) return fallback;
  if (!f->is_number_integer()) {
    throw IngestError("config field '" + where + key + "' must be an integer");
  }
  return f->get<int>();
}

bool bool_or(const json& obj, const std::string& where, const char* key, bool fallback) {
  const json* f = find(obj, key);
  if (f == nullptr) return fallback;
  if (!f->is_boolean()) {
    throw IngestError("config field '" + where + key + "' must be a boolean");
  }
  return f->get<bool>();
}

std::string str_or(const json& obj, const std::string& where, const char* key,
                   const std::string& fallback) {
  const json* f = find(obj, key);
  if (f == nullptr) return fallback;
  if (!f->is_string()) {
    throw IngestError("config field '" + where + key + "' must be a string");
  }
  return f->get<std::string>();
}

std::complex<double> complex_or(const json& obj, const std::string& where, const char* key,
                                std::complex<double> fallback) {
  const json* f = find(obj, key);
  if (f == nullptr) return fallback;
  if (!f->is_array() || f->size() != 2 || !(*f)[0].is_number() || !(*f)[1].is_number()) {
    throw IngestError("config field '" + where + key + "' must be a [re, im] pair");
  }
  return {(*f)[0].get<double>(), (*f)[1].get<double>()};
}

// ---------------------------------------------------------------------------
// Block parsing

JunctionBlock parse_junction_block(const json& obj, const std::string& where) {
  JunctionBlock b;
  b.gap_ghz = num_or(obj, where, "gap_ghz", b.gap_ghz);
  b.external_flux = num_or(obj, where, "external_flux", b.external_flux);
  b.bias_voltage = num_or(obj, where, "bias_voltage", b.bias_voltage);
  b.data_path = str_or(obj, where, "data", b.data_path);
  b.sidecar_path = str_or(obj, where, "sidecar", b.sidecar_path);
  b.grid_count = int_or(obj, where, "grid_count", b.grid_count);
  if (const json* channels = find(obj, "channels")) {
    if (!channels->is_array()) {
      throw IngestError("config field '" + where + "channels' must be an array");
    }
    for (std::size_t i = 0; i < channels->size(); ++i) {
      const json& entry = (*channels)[i];
      const std::string cw = where + "channels[" + std::to_string(i) + "].";
      if (!entry.is_object()) {
        throw IngestError("config field '" + where + "channels' entries must be objects");
      }
      JunctionBlock::Channel ch;
      if (find(entry, "t") != nullptr) {
        ch.constant = true;
        ch.t = num_req(entry, cw, "t");
      } else {
        ch.t_max = num_req(entry, cw, "t_max");
        ch.v_th = num_or(entry, cw, "v_th", ch.v_th);
        ch.v_w = num_or(entry, cw, "v_w", ch.v_w);
      }
      b.channels.push_back(ch);
    }
  }
  return b;
}

CircuitBlock parse_circuit_block(const json& obj, const std::string& where) {
  CircuitBlock b;
  b.l_c_norm = num_or(obj, where, "l_c_norm", b.l_c_norm);
  b.z0_norm = num_or(obj, where, "z0_norm", b.z0_norm);
  b.n_mean = num_or(obj, where, "n_mean", b.n_mean);
  if (const json* g = find(obj, "g")) {
    if (g->is_string()) {
      if (g->get<std::string>() != "optimal") {
        throw IngestError("config field '" + where + "g' must be a number or \"optimal\"");
      }
      b.g_optimal = true;
    } else if (g->is_number()) {
      b.g_optimal = false;
      b.g_norm = g->get<double>();
    } else {
      throw IngestError("config field '" + where + "g' must be a number or \"optimal\"");
    }
  }
  if (const json* d = find(obj, "disorder")) {
    if (!d->is_object()) {
      throw IngestError("config field '" + where + "disorder' must be an object");
    }
    const std::string dw = where + "disorder.";
    b.disorder.dl_c = num_or(*d, dw, "dl_c", 0.0);
    b.disorder.dc0 = num_or(*d, dw, "dc0", 0.0);
    b.disorder.dl0 = num_or(*d, dw, "dl0", 0.0);
    b.disorder.c12 = num_or(*d, dw, "c12", 0.0);
    b.disorder.l12 = num_or(*d, dw, "l12", 0.0);
  }
  return b;
}

// ---------------------------------------------------------------------------
// Model assembly from blocks

JunctionSpec junction_spec_from_block(const JunctionBlock& b) {
  JunctionSpec spec;
  spec.gap = b.gap_ghz;
  spec.gap_unit = EnergyUnit::ghz_h;
  spec.external_flux = b.external_flux;
  spec.bias_voltage = b.bias_voltage;
  for (const auto& ch : b.channels) {
    spec.channels.push_back(ch.constant ? TransmissionChannel::constant(ch.t)
                                        : TransmissionChannel::logistic(ch.t_max, ch.v_th, ch.v_w));
  }
  return spec;
}

GyratorCircuit circuit_from_block(const CircuitBlock& b, double l_c_norm, double z0_norm,
                                  std::optional<double> g_norm) {
  GyratorCircuit circ = GyratorCircuit::normalized(l_c_norm, z0_norm, 0.0, b.disorder);
  if (g_norm.has_value()) {
    circ.g = *g_norm;
  } else if (b.g_optimal) {
    circ.g = optimal_conductance(circ);
  } else {
    circ.g = b.g_norm;
  }
  return circ;
}

QuantumGyratorConfig quantum_config_from_block(const QuantumBlock& b) {
  QuantumGyratorConfig cfg;
  cfg.e_c = to_joule(b.e_c_ghz, EnergyUnit::ghz_h);
  cfg.e_l = to_joule(b.e_l_ghz, EnergyUnit::ghz_h);
  const double omega0 = cfg.omega0();
  cfg.kappa = b.kappa_over_omega0 * omega0;
  cfg.g = b.matched ? 0.5 * Constants::hbar * cfg.kappa : to_joule(b.g_ghz, EnergyUnit::ghz_h);
  const double beta = b.beta_over_sqrt_kappa * std::sqrt(cfg.kappa);
  cfg.beta1 = beta;
  cfg.beta2 = beta;
  cfg.omega_s = b.omega_s_over_omega0 * omega0;
  cfg.cap = b.cap;
  cfg.levels = b.cap + 1;
  cfg.sin_order = b.sin_order;
  return cfg;
}

// ---------------------------------------------------------------------------
// Sweep helpers and the worker pool

struct PointOutcome {
  std::vector<std::string> row;
  std::string error;
  bool ok = false;
};

std::vector<PointOutcome> evaluate_grid(
    int jobs, std::size_t n, const std::function<std::vector<std::string>(std::size_t)>& eval) {
  std::vector<PointOutcome> results(n);
  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        results[i].row = eval(i);
        results[i].ok = true;
      } catch (const std::exception& err) {
        results[i].error = err.what();
      }
    }
  };
  const int extra = std::min<int>(jobs - 1, static_cast<int>(n) - 1);
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(std::max(extra, 0)));
  for (int t = 0; t < extra; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  return results;
}

/// Split outcomes into ordered rows plus per-point failure notes; returns the
/// exit code (3 when nothing succeeded).
int collect(const std::vector<PointOutcome>& outcomes, std::vector<std::vector<std::string>>& rows,
            std::vector<std::string>& notes) {
  std::size_t failed = 0;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    if (outcomes[i].ok) {
      rows.push_back(outcomes[i].row);
    } else {
      ++failed;
      notes.push_back("point " + std::to_string(i) + " failed: " + outcomes[i].error);
    }
  }
  return (failed == outcomes.size() && !outcomes.empty()) ? 3 : 0;
}

std::string out_path(const RunConfig& cfg, const std::string& base, const std::string& ext) {
  return (std::filesystem::path(cfg.out_dir) / (base + "." + ext)).string();
}

void emit_table(const RunConfig& cfg, const std::string& base,
                const std::vector<std::string>& columns,
                const std::vector<std::vector<std::string>>& rows,
                const std::vector<std::string>& notes) {
  if (cfg.format == "csv") {
    write_table_csv(out_path(cfg, base, "csv"), columns, rows, cfg.echo, notes);
  } else {
    write_table_json(out_path(cfg, base, "json"), columns, rows, cfg.echo, notes);
  }
}

std::string fmt(double v) { return format_significant(v); }

double db20(double magnitude) { return 20.0 * std::log10(std::max(magnitude, 1e-300)); }

// Row-major index decomposition over outer sweep axes.
std::vector<std::size_t> unravel(std::size_t flat, const std::vector<std::size_t>& shape) {
  std::vector<std::size_t> idx(shape.size(), 0);
  for (std::size_t a = shape.size(); a-- > 0;) {
    idx[a] = flat % shape[a];
    flat /= shape[a];
  }
  return idx;
}

// ---------------------------------------------------------------------------
// Subcommand implementations

int run_junction_energy(const RunConfig& cfg) {
  const JunctionSpec base = junction_spec_from_block(cfg.junction);
  base.validate();
  const SweepSpec& sweep = cfg.sweeps.front();
  const std::vector<double> grid = sweep.grid();
  const bool flux_axis = sweep.parameter == "phi1";
  auto eval = [&](std::size_t i) -> std::vector<std::string> {
    JunctionSpec spec = base;
    double phi1 = 0.0;
    if (flux_axis) {
      phi1 = grid[i];
    } else {
      spec.bias_voltage = grid[i];
    }
    const double abs_e = abs_energy(spec, phi1);
    const double weak = weak_limit_ej(spec, spec.bias_voltage);
    return {fmt(grid[i]), fmt(abs_e), fmt(weak)};
  };
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> notes;
  const int code = collect(evaluate_grid(cfg.jobs, grid.size(), eval), rows, notes);
  emit_table(cfg, "junction_energy",
             {flux_axis ? "phi1" : "bias_voltage", "abs_energy_J", "weak_ej_J"}, rows, notes);
  return code;
}

int run_estimate_coupling(const RunConfig& cfg) {
  const SpectroscopyData data =
      load_spectroscopy(cfg.junction.data_path, cfg.junction.sidecar_path);
  const TabulatedEnergy tab = to_tabulated(data);
  const int count = cfg.junction.grid_count;
  const double span = tab.v_max() - tab.v_min();
  std::vector<double> grid(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    grid[static_cast<std::size_t>(i)] = tab.v_min() + (i + 1) * span / (count + 1);
  }
  auto eval = [&](std::size_t i) -> std::vector<std::string> {
    const double v = grid[i];
    const double slope = tab.derivative(v, 1);
    const double slope_norm = slope * Constants::r_q / (2.0 * Constants::e);
    const double g_max = max_fennec_strength(slope);
    return {fmt(v), fmt(slope), fmt(slope_norm), fmt(g_max)};
  };
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> notes;
  const int code = collect(evaluate_grid(cfg.jobs, grid.size(), eval), rows, notes);

  // Best operating point: largest coupling magnitude on the interior grid.
  double best_v = 0.0;
  double best_g = 0.0;
  double best_slope = 0.0;
  bool have_best = false;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    try {
      const double slope = tab.derivative(grid[i], 1);
      const double g_max = max_fennec_strength(slope);
      if (!have_best || std::abs(g_max) > std::abs(best_g)) {
        best_v = grid[i];
        best_g = g_max;
        best_slope = slope;
        have_best = true;
      }
    } catch (const std::exception&) {
      // skipped points were already recorded by the grid pass
    }
  }
  if (have_best) {
    notes.push_back("v0 = " + fmt(best_v));
    notes.push_back("g_max(v0) = " + fmt(best_g));
  }
  emit_table(cfg, "coupling_curve",
             {"voltage", "ej_prime_J_per_V", "ej_prime_over_2e_in_inverse_rq", "g_max_S"}, rows,
             notes);

  json report;
  report["config"] = json::parse(cfg.echo);
  report["v0"] = best_v;
  report["g_max_at_v0"] = best_g;
  report["ej_prime_at_v0"] = best_slope;
  report["ej_prime_over_2e_in_inverse_rq_at_v0"] =
      best_slope * Constants::r_q / (2.0 * Constants::e);
  std::ofstream out(out_path(cfg, "coupling_report", "json"), std::ios::binary);
  if (!out) throw IngestError("cannot open output file in " + cfg.out_dir);
  out << report.dump(2) << "\n";
  return code;
}

int run_gyrator_sweep(const RunConfig& cfg) {
  const SweepSpec& omega_axis = cfg.sweeps.back();
  const std::vector<double> omega_grid = omega_axis.grid();
  std::vector<const SweepSpec*> outer(cfg.sweeps.size() - 1);
  for (std::size_t i = 0; i + 1 < cfg.sweeps.size(); ++i) outer[i] = &cfg.sweeps[i];
  std::vector<std::size_t> shape;
  std::size_t combos = 1;
  std::vector<std::vector<double>> outer_grids;
  for (const SweepSpec* s : outer) {
    outer_grids.push_back(s->grid());
    shape.push_back(outer_grids.back().size());
    combos *= outer_grids.back().size();
  }

  std::size_t total_points = 0;
  std::size_t failed_points = 0;
  for (std::size_t c = 0; c < combos; ++c) {
    CircuitBlock block = cfg.circuit;
    const std::vector<std::size_t> idx = unravel(c, shape);
    std::vector<std::string> combo_notes;
    for (std::size_t a = 0; a < outer.size(); ++a) {
      const double value = outer_grids[a][idx[a]];
      const std::string& name = outer[a]->parameter;
      if (name == "l_c_norm") block.l_c_norm = value;
      else if (name == "z0_norm") block.z0_norm = value;
      else if (name == "g_norm") { block.g_norm = value; block.g_optimal = false; }
      else if (name == "n_mean") block.n_mean = value;
      combo_notes.push_back(name + " = " + fmt(value));
    }
    GyratorCircuit circ = circuit_from_block(block, block.l_c_norm, block.z0_norm, std::nullopt);
    if (block.n_mean > 0.0) {
      circ.g = photon_loaded_conductance(circ.g, circ.z0(), block.n_mean);
    }
    ScatteringResult result;
    result.model = "direct";
    std::vector<PointOutcome> outcomes = evaluate_grid(
        cfg.jobs, omega_grid.size(), [&](std::size_t i) -> std::vector<std::string> {
          const double omega = omega_grid[i] * circ.omega0();
          const ComplexTwoPort s = scattering_from_impedance(impedance(circ, omega), circ.z_tl);
          std::vector<std::string> cell(9);
          cell[0] = fmt(omega_grid[i]);
          int pos = 1;
          for (int r = 0; r < 2; ++r) {
            for (int col = 0; col < 2; ++col) {
              cell[static_cast<std::size_t>(pos++)] = fmt(s.m(r, col).real());
              cell[static_cast<std::size_t>(pos++)] = fmt(s.m(r, col).imag());
            }
          }
          return cell;
        });
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
      ++total_points;
      if (!outcomes[i].ok) {
        ++failed_points;
        combo_notes.push_back("point " + std::to_string(i) + " failed: " + outcomes[i].error);
        continue;
      }
      result.omega.push_back(omega_grid[i]);
      Eigen::Matrix2cd m;
      const auto& row = outcomes[i].row;
      auto cell = [&](int k) { return std::stod(row[static_cast<std::size_t>(k)]); };
      m(0, 0) = {cell(1), cell(2)};
      m(0, 1) = {cell(3), cell(4)};
      m(1, 0) = {cell(5), cell(6)};
      m(1, 1) = {cell(7), cell(8)};
      result.matrices.push_back(m);
    }
    std::string base = "gyrator_sweep";
    if (combos > 1) {
      char suffix[32];
      std::snprintf(suffix, sizeof(suffix), "_%03zu", c);
      base += suffix;
    }
    if (cfg.format == "csv") {
      write_scattering_csv(out_path(cfg, base, "csv"), result, cfg.echo, combo_notes);
    } else {
      write_scattering_json(out_path(cfg, base, "json"), result, cfg.echo, combo_notes);
    }
  }
  return (total_points > 0 && failed_points == total_points) ? 3 : 0;
}

int run_bandwidth(const RunConfig& cfg) {
  std::vector<double> grid{cfg.circuit.l_c_norm};
  if (!cfg.sweeps.empty()) grid = cfg.sweeps.front().grid();
  auto eval = [&](std::size_t i) -> std::vector<std::string> {
    const GyratorCircuit circ =
        circuit_from_block(cfg.circuit, grid[i], cfg.circuit.z0_norm, std::nullopt);
    const double omega_c = central_frequency(circ);
    const BandwidthResult bw = bandwidth(circ);
    return {fmt(grid[i]),        fmt(circ.g),
            fmt(omega_c),        fmt(bw.omega_minus),
            fmt(bw.omega_plus),  fmt(bw.delta),
            fmt(bw.estimate_large_lc), fmt(bw.estimate_lc0)};
  };
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> notes;
  const int code = collect(evaluate_grid(cfg.jobs, grid.size(), eval), rows, notes);
  emit_table(cfg, "bandwidth",
             {"l_c_norm", "g_norm", "omega_center", "omega_minus", "omega_plus", "delta",
              "estimate_large_lc", "estimate_lc0"},
             rows, notes);
  return code;
}

int run_compression(const RunConfig& cfg) {
  std::vector<double> z0_values{cfg.compression.z0_ohm};
  if (!cfg.sweeps.empty()) z0_values = cfg.sweeps.front().grid();
  std::vector<double> n_grid{0.0};
  {
    const double lo = std::log10(cfg.compression.n_start);
    const double hi = std::log10(cfg.compression.n_stop);
    for (int i = 0; i < cfg.compression.n_count; ++i) {
      n_grid.push_back(std::pow(10.0, lo + (hi - lo) * i / (cfg.compression.n_count - 1)));
    }
  }
  std::vector<std::optional<CompressionCurve>> curves(z0_values.size());
  auto eval = [&](std::size_t i) -> std::vector<std::string> {
    GyratorCircuit circ;
    circ.z_tl = cfg.compression.z_tl_ohm;
    circ.l0 = z0_values[i];       // omega0 = 1 rad/s realization
    circ.c0 = 1.0 / z0_values[i];
    circ.l_c = cfg.compression.l_c_norm * cfg.compression.z_tl_ohm;
    circ.g = optimal_conductance(circ);
    CompressionCurve curve = compression_curve(circ, n_grid, cfg.compression.threshold_db);
    const double product = curve.n_threshold * kPi * z0_values[i] / Constants::r_q;
    curves[i] = std::move(curve);
    return {fmt(z0_values[i]), fmt(curves[i]->n_threshold), fmt(product)};
  };
  std::vector<std::vector<std::string>> threshold_rows;
  std::vector<std::string> notes;
  const int code = collect(evaluate_grid(cfg.jobs, z0_values.size(), eval), threshold_rows, notes);

  std::vector<std::vector<std::string>> curve_rows;
  for (std::size_t i = 0; i < z0_values.size(); ++i) {
    if (!curves[i].has_value()) continue;
    const CompressionCurve& curve = *curves[i];
    for (std::size_t k = 0; k < curve.n.size(); ++k) {
      curve_rows.push_back({fmt(z0_values[i]), fmt(curve.n[k]), fmt(curve.s12_abs[k]),
                            fmt(db20(curve.s12_abs[k]))});
    }
  }
  emit_table(cfg, "compression_curve", {"z0_ohm", "n", "abs_S12", "|S12|_dB"}, curve_rows, notes);
  emit_table(cfg, "compression_threshold", {"z0_ohm", "n_threshold", "n_pi_z0_over_rq"},
             threshold_rows, notes);
  return code;
}

int run_disorder_tolerance(const RunConfig& cfg) {
  static const std::vector<std::pair<std::string, DisorderParam>> kParams = {
      {"dl_c", DisorderParam::dl_c},
      {"dc0", DisorderParam::dc0},
      {"dl0", DisorderParam::dl0},
      {"c12", DisorderParam::c12},
      {"l12", DisorderParam::l12},
  };
  std::vector<double> grid{cfg.circuit.l_c_norm};
  if (!cfg.sweeps.empty()) grid = cfg.sweeps.front().grid();
  struct Task {
    double l_c = 0.0;
    std::string name;
    DisorderParam param = DisorderParam::dl_c;
  };
  std::vector<Task> tasks;
  for (double l_c : grid) {
    for (const auto& [name, param] : kParams) {
      if (std::find(cfg.tolerance.parameters.begin(), cfg.tolerance.parameters.end(), name) ==
          cfg.tolerance.parameters.end()) {
        continue;
      }
      tasks.push_back({l_c, name, param});
    }
  }
  auto eval = [&](std::size_t i) -> std::vector<std::string> {
    const Task& task = tasks[i];
    const GyratorCircuit circ =
        circuit_from_block(cfg.circuit, task.l_c, cfg.circuit.z0_norm, std::nullopt);
    const double tol = disorder_tolerance(circ, task.param, cfg.tolerance.budget);
    return {fmt(task.l_c), task.name, fmt(cfg.tolerance.budget), fmt(tol)};
  };
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> notes;
  const int code = collect(evaluate_grid(cfg.jobs, tasks.size(), eval), rows, notes);
  emit_table(cfg, "disorder_tolerance", {"l_c_norm", "parameter", "budget", "tolerance"}, rows,
             notes);
  return code;
}

int run_mixing(const RunConfig& cfg) {
  const GyratorCircuit circ =
      circuit_from_block(cfg.circuit, cfg.circuit.l_c_norm, cfg.circuit.z0_norm, std::nullopt);
  const MixingResult res = mixing_matrices(circ, cfg.mixing.a1, cfg.mixing.a2, cfg.mixing.chi);
  if (cfg.format == "json") {
    json doc;
    doc["config"] = json::parse(cfg.echo);
    doc["dg_dc"] = {res.dg_dc.real(), res.dg_dc.imag()};
    doc["dg_plus"] = {res.dg_plus.real(), res.dg_plus.imag()};
    doc["dg_minus"] = {res.dg_minus.real(), res.dg_minus.imag()};
    doc["u1"] = {res.u1.real(), res.u1.imag()};
    doc["u2"] = {res.u2.real(), res.u2.imag()};
    json blocks = json::array();
    for (const MixingBlock& b : res.blocks) {
      json m = json::array();
      for (int r = 0; r < 2; ++r) {
        json row = json::array();
        for (int c = 0; c < 2; ++c) row.push_back({b.m(r, c).real(), b.m(r, c).imag()});
        m.push_back(row);
      }
      blocks.push_back({{"omega_target", b.omega_target},
                        {"omega_source", b.omega_source},
                        {"m", m}});
    }
    doc["blocks"] = blocks;
    json rect = json::array();
    for (Eigen::Index r = 0; r < res.rectangular.rows(); ++r) {
      json row = json::array();
      for (Eigen::Index c = 0; c < res.rectangular.cols(); ++c) {
        row.push_back({res.rectangular(r, c).real(), res.rectangular(r, c).imag()});
      }
      rect.push_back(row);
    }
    doc["rectangular"] = rect;
    std::ofstream out(out_path(cfg, "mixing", "json"), std::ios::binary);
    if (!out) throw IngestError("cannot open output file in " + cfg.out_dir);
    out << doc.dump(2) << "\n";
    return 0;
  }
  std::vector<std::vector<std::string>> rows;
  const double w0 = circ.omega0();
  for (std::size_t b = 0; b < res.blocks.size(); ++b) {
    const MixingBlock& blk = res.blocks[b];
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) {
        rows.push_back({"M" + std::to_string(b), fmt(blk.omega_target / w0),
                        fmt(blk.omega_source / w0), std::to_string(r), std::to_string(c),
                        fmt(blk.m(r, c).real()), fmt(blk.m(r, c).imag())});
      }
    }
  }
  for (Eigen::Index r = 0; r < res.rectangular.rows(); ++r) {
    for (Eigen::Index c = 0; c < res.rectangular.cols(); ++c) {
      rows.push_back({"R", "", "", std::to_string(r), std::to_string(c),
                      fmt(res.rectangular(r, c).real()), fmt(res.rectangular(r, c).imag())});
    }
  }
  std::vector<std::string> notes = {
      "dg_dc = " + fmt(res.dg_dc.real()) + " + " + fmt(res.dg_dc.imag()) + "i",
      "dg_plus = " + fmt(res.dg_plus.real()) + " + " + fmt(res.dg_plus.imag()) + "i",
      "dg_minus = " + fmt(res.dg_minus.real()) + " + " + fmt(res.dg_minus.imag()) + "i",
  };
  emit_table(cfg, "mixing",
             {"block", "omega_target_norm", "omega_source_norm", "row", "col", "re", "im"}, rows,
             notes);
  return 0;
}

int run_circulator(const RunConfig& cfg) {
  const std::vector<double> grid = cfg.sweeps.front().grid();
  auto eval = [&](std::size_t i) -> std::vector<std::string> {
    const Eigen::Matrix3cd s =
        circulator_scattering(cfg.circulator.z_tl, cfg.circulator.r, cfg.circulator.z0,
                              cfg.circulator.omega_r, grid[i] * cfg.circulator.omega_r);
    std::vector<std::string> row;
    row.reserve(22);
    row.push_back(fmt(grid[i]));
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) {
        row.push_back(fmt(s(r, c).real()));
        row.push_back(fmt(s(r, c).imag()));
      }
    }
    row.push_back(fmt(db20(std::abs(s(0, 0)))));
    row.push_back(fmt(db20(std::abs(s(1, 0)))));
    row.push_back(fmt(db20(std::abs(s(2, 0)))));
    return row;
  };
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> notes;
  const int code = collect(evaluate_grid(cfg.jobs, grid.size(), eval), rows, notes);
  emit_table(cfg, "circulator",
             {"omega_norm", "re_S11", "im_S11", "re_S12", "im_S12", "re_S13", "im_S13",
              "re_S21", "im_S21", "re_S22", "im_S22", "re_S23", "im_S23", "re_S31", "im_S31",
              "re_S32", "im_S32", "re_S33", "im_S33", "|S11|_dB", "|S21|_dB", "|S31|_dB"},
             rows, notes);
  return code;
}

int run_lindblad(const RunConfig& cfg) {
  const QuantumGyratorConfig qcfg = quantum_config_from_block(cfg.quantum);
  const ScatteringDiagnostics diag =
      extract_scattering_diagnostics(qcfg, cfg.quantum.substeps);
  const GyratorCircuit circ = equivalent_circuit(qcfg);
  const ComplexTwoPort mean_field =
      scattering_from_impedance(impedance(circ, qcfg.omega_s), circ.z_tl);
  double max_diff = 0.0;
  std::vector<std::vector<std::string>> rows;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      const std::complex<double> quantum = diag.s(r, c);
      const std::complex<double> classical = mean_field.m(r, c);
      max_diff = std::max(max_diff, std::abs(quantum - classical));
      rows.push_back({std::to_string(r + 1), std::to_string(c + 1), fmt(quantum.real()),
                      fmt(quantum.imag()), fmt(classical.real()), fmt(classical.imag()),
                      fmt(std::abs(quantum - classical))});
    }
  }
  std::vector<std::string> notes = {
      "eta = " + fmt(qcfg.eta()),
      "omega0_rad_s = " + fmt(qcfg.omega0()),
      "max_occupation = " + fmt(diag.max_occupation),
      "eigenvalue_gap = " + fmt(diag.eigenvalue_gap),
      "max_abs_s_difference = " + fmt(max_diff),
      "substeps = " + std::to_string(cfg.quantum.substeps),
  };
  if (cfg.format == "json") {
    json doc;
    doc["config"] = json::parse(cfg.echo);
    json s = json::array();
    json mf = json::array();
    for (int r = 0; r < 2; ++r) {
      json srow = json::array();
      json mrow = json::array();
      for (int c = 0; c < 2; ++c) {
        srow.push_back({diag.s(r, c).real(), diag.s(r, c).imag()});
        mrow.push_back({mean_field.m(r, c).real(), mean_field.m(r, c).imag()});
      }
      s.push_back(srow);
      mf.push_back(mrow);
    }
    doc["s"] = s;
    doc["s_mean_field"] = mf;
    doc["max_abs_s_difference"] = max_diff;
    doc["max_occupation"] = diag.max_occupation;
    doc["eigenvalue_gap"] = diag.eigenvalue_gap;
    doc["eta"] = qcfg.eta();
    doc["omega0_rad_s"] = qcfg.omega0();
    doc["substeps"] = cfg.quantum.substeps;
    std::ofstream out(out_path(cfg, "lindblad", "json"), std::ios::binary);
    if (!out) throw IngestError("cannot open output file in " + cfg.out_dir);
    out << doc.dump(2) << "\n";
    return 0;
  }
  emit_table(cfg, "lindblad",
             {"row", "col", "re_S", "im_S", "re_S_mean_field", "im_S_mean_field", "abs_diff"},
             rows, notes);
  return 0;
}

int run_nonlinear_report(const RunConfig& cfg) {
  auto derivatives_for = [&](const JunctionBlock& block,
                             const std::string& label) -> JunctionDerivatives {
    if (block.channels.size() != 1) {
      throw IngestError("config field 'nonlinear." + label +
                        ".channels' must hold exactly one channel");
    }
    const JunctionSpec spec = junction_spec_from_block(block);
    std::vector<double> derivs(5);
    for (int n = 0; n <= 4; ++n) {
      derivs[static_cast<std::size_t>(n)] = spec.channels[0].derivative(block.bias_voltage, n);
    }
    JunctionDerivatives jd;
    jd.gap = spec.gap_joule();
    jd.power_derivatives = power_derivative_table(derivs, cfg.nonlinear.truncation.m_max);
    return jd;
  };
  const JunctionDerivatives j1 = derivatives_for(cfg.nonlinear.junction1, "junction1");
  const JunctionDerivatives j2 = derivatives_for(cfg.nonlinear.junction2, "junction2");
  const SeriesCoefficients sc = series_coefficients(j1, j2, cfg.nonlinear.truncation);
  ChargeInversion ci;
  ci.c << cfg.nonlinear.c1, -cfg.nonlinear.c_c, -cfg.nonlinear.c_c, cfg.nonlinear.c2;
  const ErrorHamiltonianReport report =
      error_hamiltonian_report(ci, sc, {cfg.nonlinear.z1, cfg.nonlinear.z2});
  if (cfg.format == "json") {
    json doc;
    doc["config"] = json::parse(cfg.echo);
    json terms = json::array();
    for (const ErrorHamiltonianTerm& t : report.terms) {
      json entry;
      entry["kind"] = t.kind;
      entry["node"] = t.node;
      entry["charge_power"] = t.charge_power;
      entry["harmonic"] = t.harmonic;
      entry["coefficient"] = t.coefficient;
      if (t.has_bound) {
        entry["lhs"] = t.lhs;
        entry["rhs"] = t.rhs;
        entry["margin"] = t.rhs - t.lhs;
        entry["satisfied"] = t.satisfied;
      }
      terms.push_back(entry);
    }
    doc["terms"] = terms;
    doc["all_satisfied"] = report.all_satisfied;
    std::ofstream out(out_path(cfg, "nonlinear_report", "json"), std::ios::binary);
    if (!out) throw IngestError("cannot open output file in " + cfg.out_dir);
    out << doc.dump(2) << "\n";
    return 0;
  }
  std::vector<std::vector<std::string>> rows;
  for (const ErrorHamiltonianTerm& t : report.terms) {
    rows.push_back({t.kind, std::to_string(t.node), std::to_string(t.charge_power),
                    std::to_string(t.harmonic), fmt(t.coefficient),
                    t.has_bound ? fmt(t.lhs) : "", t.has_bound ? fmt(t.rhs) : "",
                    t.has_bound ? (t.satisfied ? "true" : "false") : ""});
  }
  emit_table(cfg, "nonlinear_report",
             {"kind", "node", "charge_power", "harmonic", "coefficient", "lhs", "rhs",
              "satisfied"},
             rows, {std::string("all_satisfied = ") + (report.all_satisfied ? "true" : "false")});
  return 0;
}

}  // namespace

// ---------------------------------------------------------------------------
// SweepSpec

std::vector<double> SweepSpec::grid() const {
  std::vector<double> out(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double f = static_cast<double>(i) / (count - 1);
    if (log_scale) {
      out[static_cast<std::size_t>(i)] =
          std::pow(10.0, std::log10(start) + f * (std::log10(stop) - std::log10(start)));
    } else {
      out[static_cast<std::size_t>(i)] = start + f * (stop - start);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Config parsing and validation

RunConfig parse_run_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const std::exception& err) {
    throw IngestError(std::string("config is not valid JSON: ") + err.what());
  }
  if (!doc.is_object()) {
    throw IngestError("config root must be a JSON object");
  }
  RunConfig cfg;
  cfg.subcommand = str_or(doc, "", "subcommand", "");
  cfg.out_dir = str_or(doc, "", "out", ".");
  cfg.format = str_or(doc, "", "format", "csv");
  cfg.jobs = int_or(doc, "", "jobs", 1);
  cfg.verbose = bool_or(doc, "", "verbose", false);

  if (const json* sweeps = find(doc, "sweep")) {
    if (!sweeps->is_array()) {
      throw IngestError("config field 'sweep' must be an array");
    }
    for (std::size_t i = 0; i < sweeps->size(); ++i) {
      const json& entry = (*sweeps)[i];
      const std::string where = "sweep[" + std::to_string(i) + "].";
      if (!entry.is_object()) {
        throw IngestError("config field 'sweep' entries must be objects");
      }
      SweepSpec s;
      s.parameter = str_or(entry, where, "parameter", "");
      if (s.parameter.empty()) {
        throw IngestError("config field '" + where + "parameter' is required");
      }
      s.start = num_req(entry, where, "start");
      s.stop = num_req(entry, where, "stop");
      s.count = int_or(entry, where, "count", 2);
      const std::string scale = str_or(entry, where, "scale", "lin");
      if (scale == "log") {
        s.log_scale = true;
      } else if (scale != "lin") {
        throw IngestError("config field '" + where + "scale' must be 'lin' or 'log'");
      }
      cfg.sweeps.push_back(std::move(s));
    }
  }

  if (const json* c = find(doc, "circuit")) {
    if (!c->is_object()) throw IngestError("config field 'circuit' must be an object");
    cfg.circuit = parse_circuit_block(*c, "circuit.");
  }
  if (const json* jb = find(doc, "junction")) {
    if (!jb->is_object()) throw IngestError("config field 'junction' must be an object");
    cfg.junction = parse_junction_block(*jb, "junction.");
  }
  if (const json* q = find(doc, "quantum")) {
    if (!q->is_object()) throw IngestError("config field 'quantum' must be an object");
    const std::string where = "quantum.";
    cfg.quantum.e_c_ghz = num_or(*q, where, "e_c_ghz", cfg.quantum.e_c_ghz);
    cfg.quantum.e_l_ghz = num_or(*q, where, "e_l_ghz", cfg.quantum.e_l_ghz);
    if (const json* g = find(*q, "g")) {
      if (g->is_string()) {
        if (g->get<std::string>() != "matched") {
          throw IngestError("config field 'quantum.g' must be a number (GHz) or \"matched\"");
        }
        cfg.quantum.matched = true;
      } else if (g->is_number()) {
        cfg.quantum.matched = false;
        cfg.quantum.g_ghz = g->get<double>();
      } else {
        throw IngestError("config field 'quantum.g' must be a number (GHz) or \"matched\"");
      }
    }
    cfg.quantum.kappa_over_omega0 =
        num_or(*q, where, "kappa_over_omega0", cfg.quantum.kappa_over_omega0);
    cfg.quantum.beta_over_sqrt_kappa =
        num_or(*q, where, "beta_over_sqrt_kappa", cfg.quantum.beta_over_sqrt_kappa);
    cfg.quantum.omega_s_over_omega0 =
        num_or(*q, where, "omega_s_over_omega0", cfg.quantum.omega_s_over_omega0);
    cfg.quantum.substeps = int_or(*q, where, "substeps", cfg.quantum.substeps);
    cfg.quantum.cap = int_or(*q, where, "cap", cfg.quantum.cap);
    cfg.quantum.sin_order = int_or(*q, where, "sin_order", cfg.quantum.sin_order);
  }
  if (const json* comp = find(doc, "compression")) {
    if (!comp->is_object()) throw IngestError("config field 'compression' must be an object");
    const std::string where = "compression.";
    cfg.compression.z_tl_ohm = num_or(*comp, where, "z_tl_ohm", cfg.compression.z_tl_ohm);
    cfg.compression.z0_ohm = num_or(*comp, where, "z0_ohm", cfg.compression.z0_ohm);
    cfg.compression.l_c_norm = num_or(*comp, where, "l_c_norm", cfg.compression.l_c_norm);
    cfg.compression.n_start = num_or(*comp, where, "n_start", cfg.compression.n_start);
    cfg.compression.n_stop = num_or(*comp, where, "n_stop", cfg.compression.n_stop);
    cfg.compression.n_count = int_or(*comp, where, "n_count", cfg.compression.n_count);
    cfg.compression.threshold_db = num_or(*comp, where, "threshold_db",
                                          cfg.compression.threshold_db);
  }
  if (const json* circ = find(doc, "circulator")) {
    if (!circ->is_object()) throw IngestError("config field 'circulator' must be an object");
    const std::string where = "circulator.";
    cfg.circulator.z_tl = num_or(*circ, where, "z_tl", cfg.circulator.z_tl);
    cfg.circulator.r = num_or(*circ, where, "r", cfg.circulator.r);
    cfg.circulator.z0 = num_or(*circ, where, "z0", cfg.circulator.z0);
    cfg.circulator.omega_r = num_or(*circ, where, "omega_r", cfg.circulator.omega_r);
  }
  if (const json* mix = find(doc, "mixing")) {
    if (!mix->is_object()) throw IngestError("config field 'mixing' must be an object");
    const std::string where = "mixing.";
    cfg.mixing.a1 = complex_or(*mix, where, "a1", cfg.mixing.a1);
    cfg.mixing.a2 = complex_or(*mix, where, "a2", cfg.mixing.a2);
    cfg.mixing.chi = num_or(*mix, where, "chi", cfg.mixing.chi);
  }
  if (const json* tol = find(doc, "tolerance")) {
    if (!tol->is_object()) throw IngestError("config field 'tolerance' must be an object");
    cfg.tolerance.budget = num_or(*tol, "tolerance.", "budget", cfg.tolerance.budget);
    if (const json* params = find(*tol, "parameters")) {
      if (!params->is_array()) {
        throw IngestError("config field 'tolerance.parameters' must be an array of strings");
      }
      cfg.tolerance.parameters.clear();
      for (const json& p : *params) {
        if (!p.is_string()) {
          throw IngestError("config field 'tolerance.parameters' must be an array of strings");
        }
        cfg.tolerance.parameters.push_back(p.get<std::string>());
      }
    }
  }
  if (const json* nl = find(doc, "nonlinear")) {
    if (!nl->is_object()) throw IngestError("config field 'nonlinear' must be an object");
    const std::string where = "nonlinear.";
    if (const json* b = find(*nl, "junction1")) {
      if (!b->is_object()) throw IngestError("config field 'nonlinear.junction1' must be an object");
      cfg.nonlinear.junction1 = parse_junction_block(*b, where + "junction1.");
    }
    if (const json* b = find(*nl, "junction2")) {
      if (!b->is_object()) throw IngestError("config field 'nonlinear.junction2' must be an object");
      cfg.nonlinear.junction2 = parse_junction_block(*b, where + "junction2.");
    }
    cfg.nonlinear.c1 = num_or(*nl, where, "c1", cfg.nonlinear.c1);
    cfg.nonlinear.c2 = num_or(*nl, where, "c2", cfg.nonlinear.c2);
    cfg.nonlinear.c_c = num_or(*nl, where, "c_c", cfg.nonlinear.c_c);
    cfg.nonlinear.z1 = num_or(*nl, where, "z1", cfg.nonlinear.z1);
    cfg.nonlinear.z2 = num_or(*nl, where, "z2", cfg.nonlinear.z2);
    cfg.nonlinear.truncation.n_max = int_or(*nl, where, "n_max", cfg.nonlinear.truncation.n_max);
    cfg.nonlinear.truncation.m_max = int_or(*nl, where, "m_max", cfg.nonlinear.truncation.m_max);
    cfg.nonlinear.truncation.ell_max =
        int_or(*nl, where, "ell_max", cfg.nonlinear.truncation.ell_max);
  }

  cfg.echo = doc.dump();
  cfg.validate();
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IngestError("cannot open config file: " + path);
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_run_config(buffer.str());
}

void RunConfig::validate() const {
  static const std::set<std::string> kSubcommands = {
      "junction-energy", "estimate-coupling", "gyrator-sweep",   "bandwidth",
      "compression",     "disorder-tolerance", "mixing",          "circulator",
      "lindblad",        "nonlinear-report"};
  if (kSubcommands.find(subcommand) == kSubcommands.end()) {
    throw IngestError("config field 'subcommand' must name a known subcommand, got '" +
                      subcommand + "'");
  }
  if (format != "csv" && format != "json") {
    throw IngestError("config field 'format' must be 'csv' or 'json'");
  }
  if (jobs < 1) {
    throw IngestError("config field 'jobs' must be at least 1");
  }
  for (std::size_t i = 0; i < sweeps.size(); ++i) {
    const SweepSpec& s = sweeps[i];
    const std::string where = "sweep[" + std::to_string(i) + "].";
    if (s.count < 2) {
      throw IngestError("config field '" + where + "count' must be at least 2");
    }
    if (!std::isfinite(s.start) || !std::isfinite(s.stop)) {
      throw IngestError("config field '" + where + "start/stop' must be finite");
    }
    if (!(s.start < s.stop)) {
      throw IngestError("config field '" + where +
                        "start' must be strictly below '" + where + "stop'");
    }
    if (s.log_scale && !(s.start > 0.0)) {
      throw IngestError("config field '" + where + "start' must be positive for log scale");
    }
  }

  auto sweep_params_within = [&](const std::set<std::string>& allowed) {
    for (std::size_t i = 0; i < sweeps.size(); ++i) {
      if (allowed.find(sweeps[i].parameter) == allowed.end()) {
        throw IngestError("config field 'sweep[" + std::to_string(i) + "].parameter': '" +
                          sweeps[i].parameter + "' is not recognized by subcommand '" +
                          subcommand + "'");
      }
    }
  };
  auto require_sweeps = [&](std::size_t lo, std::size_t hi) {
    if (sweeps.size() < lo || sweeps.size() > hi) {
      throw IngestError("config field 'sweep': subcommand '" + subcommand + "' expects between " +
                        std::to_string(lo) + " and " + std::to_string(hi) + " axes, got " +
                        std::to_string(sweeps.size()));
    }
  };

  if (subcommand == "junction-energy") {
    require_sweeps(1, 1);
    sweep_params_within({"phi1", "bias_voltage"});
    if (junction.channels.empty()) {
      throw IngestError("config field 'junction.channels' must not be empty");
    }
  } else if (subcommand == "estimate-coupling") {
    require_sweeps(0, 0);
    if (junction.data_path.empty() || junction.sidecar_path.empty()) {
      throw IngestError("config fields 'junction.data' and 'junction.sidecar' are required");
    }
    if (junction.grid_count < 2) {
      throw IngestError("config field 'junction.grid_count' must be at least 2");
    }
  } else if (subcommand == "gyrator-sweep") {
    require_sweeps(1, 4);
    sweep_params_within({"omega_norm", "l_c_norm", "z0_norm", "g_norm", "n_mean"});
    if (sweeps.back().parameter != "omega_norm") {
      throw IngestError("config field 'sweep': the innermost (last) axis must be 'omega_norm'");
    }
    for (std::size_t i = 0; i + 1 < sweeps.size(); ++i) {
      if (sweeps[i].parameter == "omega_norm") {
        throw IngestError("config field 'sweep': only the last axis may be 'omega_norm'");
      }
    }
  } else if (subcommand == "bandwidth" || subcommand == "disorder-tolerance") {
    require_sweeps(0, 1);
    sweep_params_within({"l_c_norm"});
  } else if (subcommand == "compression") {
    require_sweeps(0, 1);
    sweep_params_within({"z0_ohm"});
    if (!(compression.n_start > 0.0) || !(compression.n_stop > compression.n_start)) {
      throw IngestError("config fields 'compression.n_start/n_stop' must satisfy 0 < start < stop");
    }
    if (compression.n_count < 2) {
      throw IngestError("config field 'compression.n_count' must be at least 2");
    }
  } else if (subcommand == "circulator") {
    require_sweeps(1, 1);
    sweep_params_within({"omega_norm"});
  } else if (subcommand == "mixing" || subcommand == "lindblad" ||
             subcommand == "nonlinear-report") {
    require_sweeps(0, 0);
  }

  if (subcommand == "disorder-tolerance") {
    static const std::set<std::string> kNames = {"dl_c", "dc0", "dl0", "c12", "l12"};
    if (tolerance.parameters.empty()) {
      throw IngestError("config field 'tolerance.parameters' must not be empty");
    }
    for (const std::string& p : tolerance.parameters) {
      if (kNames.find(p) == kNames.end()) {
        throw IngestError("config field 'tolerance.parameters': unknown parameter '" + p + "'");
      }
    }
    if (!(tolerance.budget > 0.0) || tolerance.budget > 0.2) {
      throw IngestError("config field 'tolerance.budget' must lie in (0, 0.2]");
    }
  }
  if (subcommand == "lindblad") {
    if (quantum.substeps < 64) {
      throw IngestError("config field 'quantum.substeps' must be at least 64");
    }
    if (quantum.cap < 1) {
      throw IngestError("config field 'quantum.cap' must be at least 1");
    }
  }
}

int run(const RunConfig& config) {
  config.validate();
  std::filesystem::create_directories(config.out_dir);
  if (config.subcommand == "junction-energy") return run_junction_energy(config);
  if (config.subcommand == "estimate-coupling") return run_estimate_coupling(config);
  if (config.subcommand == "gyrator-sweep") return run_gyrator_sweep(config);
  if (config.subcommand == "bandwidth") return run_bandwidth(config);
  if (config.subcommand == "compression") return run_compression(config);
  if (config.subcommand == "disorder-tolerance") return run_disorder_tolerance(config);
  if (config.subcommand == "mixing") return run_mixing(config);
  if (config.subcommand == "circulator") return run_circulator(config);
  if (config.subcommand == "lindblad") return run_lindblad(config);
  if (config.subcommand == "nonlinear-report") return run_nonlinear_report(config);
  throw IngestError("unknown subcommand: " + config.subcommand);  // unreachable after validate
}

}  // namespace gyrokit
