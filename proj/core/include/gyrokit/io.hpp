#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "gyrokit/junction.hpp"

namespace gyrokit {

/// Spectroscopy dataset parsed from a CSV file plus its JSON metadata
/// sidecar ({kind, unit, E_C, smoothing}).
struct SpectroscopyData {
  std::vector<double> voltage;  ///< gate voltages [V]
  std::vector<double> value;    ///< energies in `unit`, or frequencies [Hz]
  TabulatedEnergy::Kind kind = TabulatedEnergy::Kind::direct_ej;
  EnergyUnit unit = EnergyUnit::ghz_h;  ///< unit of direct energies and of e_c
  double e_c = 0.0;                     ///< charging energy in `unit` (gatemon kind)
  double smoothing = 0.0;               ///< spline curvature penalty
};

/// Read a `voltage,value` CSV (comma delimiter, '#' comments skipped) and its
/// metadata sidecar. Throws IngestError naming the offending file/field.
[[nodiscard]] SpectroscopyData load_spectroscopy(const std::string& csv_path,
                                                 const std::string& sidecar_path);

/// Build the smoothed energy curve from an ingested dataset.
[[nodiscard]] TabulatedEnergy to_tabulated(const SpectroscopyData& data);

/// Render a double with 17 significant digits (round-trip exact).
[[nodiscard]] std::string format_significant(double value);

/// Frequency-resolved two-port scattering with model provenance.
struct ScatteringResult {
  std::vector<double> omega;              ///< grid (units set by the producer)
  std::vector<Eigen::Matrix2cd> matrices;  ///< one matrix per grid point
  std::string model;                      ///< producing model ("direct", "angle", ...)
};

/// Write the sweep as CSV: a `# config:` echo line, then columns
/// omega_norm, re/im of all four entries, |S11|_dB, |S12|_dB (20 log10).
void write_scattering_csv(const std::string& path, const ScatteringResult& result,
                          const std::string& config_echo,
                          const std::vector<std::string>& trailing_comments = {});

/// Write the sweep as a JSON document with full complex matrices and the
/// config echo embedded under "config".
void write_scattering_json(const std::string& path, const ScatteringResult& result,
                           const std::string& config_echo,
                           const std::vector<std::string>& trailing_comments = {});

/// Write a generic table as CSV with the `# config:` echo line. Cells are
/// preformatted strings.
void write_table_csv(const std::string& path, const std::vector<std::string>& columns,
                     const std::vector<std::vector<std::string>>& rows,
                     const std::string& config_echo,
                     const std::vector<std::string>& trailing_comments = {});

/// Write a generic table as a JSON document (config echo under "config",
/// rows as arrays of strings under "rows").
void write_table_json(const std::string& path, const std::vector<std::string>& columns,
                      const std::vector<std::vector<std::string>>& rows,
                      const std::string& config_echo,
                      const std::vector<std::string>& trailing_comments = {});

}  // namespace gyrokit
