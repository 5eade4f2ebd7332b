#pragma once

#include <complex>
#include <string>
#include <vector>

#include "gyrokit/network.hpp"
#include "gyrokit/nonlinear.hpp"

namespace gyrokit {

/// One sweep axis of a batch run.
struct SweepSpec {
  std::string parameter;
  double start = 0.0;
  double stop = 0.0;
  int count = 2;
  bool log_scale = false;

  /// The evaluation grid (linear or logarithmic spacing, endpoints included).
  [[nodiscard]] std::vector<double> grid() const;
};

/// Normalized gyrator circuit parameters (omega0 = 1, z_tl = 1 units).
struct CircuitBlock {
  double l_c_norm = 0.0;
  double z0_norm = 1.0;
  double g_norm = 0.0;
  bool g_optimal = true;  ///< solve for the matched conductance per point
  double n_mean = 0.0;    ///< photon loading applied to the conductance
  CircuitDisorder disorder;
};

/// Closed-form junction description used by junction-energy, estimate-coupling
/// (file mode) and nonlinear-report.
struct JunctionBlock {
  struct Channel {
    bool constant = false;  ///< constant T instead of the logistic model
    double t = 0.0;         ///< constant transmission
    double t_max = 0.5;     ///< logistic ceiling
    double v_th = 0.0;      ///< logistic threshold [V]
    double v_w = 1.0;       ///< logistic width [V]
  };
  double gap_ghz = 50.0;
  std::vector<Channel> channels;
  double external_flux = 0.25;  ///< units of the flux quantum
  double bias_voltage = 0.0;    ///< [V]
  std::string data_path;        ///< spectroscopy CSV (estimate-coupling)
  std::string sidecar_path;     ///< metadata JSON (estimate-coupling)
  int grid_count = 201;         ///< evaluation grid for tabulated curves
};

/// Quantized-gyrator run parameters in circuit-friendly units.
struct QuantumBlock {
  double e_c_ghz = 0.25;
  double e_l_ghz = 12.5;
  bool matched = true;    ///< g = hbar kappa / 2
  double g_ghz = 0.0;     ///< coupling energy when not matched
  double kappa_over_omega0 = 0.01;
  double beta_over_sqrt_kappa = 0.2;
  double omega_s_over_omega0 = 1.0;
  int substeps = 256;
  int cap = 5;
  int sin_order = 5;
};

/// Physical-impedance compression study parameters.
struct CompressionBlock {
  double z_tl_ohm = 50.0;
  double z0_ohm = 50.0;
  double l_c_norm = 0.0;
  double n_start = 1e-2;
  double n_stop = 1e4;
  int n_count = 121;
  double threshold_db = 1.0;
};

/// Three-port circulator parameters (SI).
struct CirculatorBlock {
  double z_tl = 50.0;
  double r = 50.0;
  double z0 = 50.0;
  double omega_r = 1.0;
};

/// Drive amplitudes for the mixing study.
struct MixingInput {
  std::complex<double> a1{1.0, 0.0};
  std::complex<double> a2{0.0, 0.0};
  double chi = 1.0;
};

/// Disorder tolerance search parameters.
struct ToleranceBlock {
  double budget = 0.04;
  std::vector<std::string> parameters{"dl_c", "dc0", "dl0", "c12", "l12"};
};

/// Two-junction inputs of the nonlinear coefficient report.
struct NonlinearBlock {
  JunctionBlock junction1;
  JunctionBlock junction2;
  double c1 = 1e-13;  ///< node capacitances [F]
  double c2 = 1e-13;
  double c_c = 0.0;   ///< cross capacitance [F]
  double z1 = 50.0;   ///< mode impedances [Ohm]
  double z2 = 50.0;
  SeriesTruncation truncation;
};

/// Parsed and validated batch-run configuration.
struct RunConfig {
  std::string subcommand;
  std::string out_dir = ".";
  std::string format = "csv";  ///< "csv" or "json"
  int jobs = 1;
  bool verbose = false;
  std::vector<SweepSpec> sweeps;
  CircuitBlock circuit;
  JunctionBlock junction;
  QuantumBlock quantum;
  CompressionBlock compression;
  CirculatorBlock circulator;
  MixingInput mixing;
  ToleranceBlock tolerance;
  NonlinearBlock nonlinear;
  std::string echo;  ///< normalized single-line JSON of the input config

  /// Throws IngestError naming the offending field on any schema violation.
  void validate() const;
};

/// Parse a JSON config document. Throws IngestError naming the offending
/// field; the result is already validated.
[[nodiscard]] RunConfig parse_run_config(const std::string& json_text);

/// Read and parse a JSON config file.
[[nodiscard]] RunConfig load_run_config(const std::string& path);

/// Execute the configured subcommand, writing output files into
/// config.out_dir. Returns 0 on success (possibly with per-point warnings)
/// and 3 when every sweep point failed. Schema and ingestion problems throw
/// IngestError / DomainError (mapped to exit code 2 by the front end).
[[nodiscard]] int run(const RunConfig& config);

}  // namespace gyrokit
