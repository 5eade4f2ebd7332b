#include "gyrokit/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "gyrokit/errors.hpp"

namespace gyrokit {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return {};
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

double parse_number(const std::string& text, const std::string& where) {
  try {
    std::size_t used = 0;
    const double out = std::stod(text, &used);
    if (used != text.size()) {
      throw IngestError("not a number in " + where + ": '" + text + "'");
    }
    return out;
  } catch (const IngestError&) {
    throw;
  } catch (const std::exception&) {
    throw IngestError("not a number in " + where + ": '" + text + "'");
  }
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);  // binary: byte-identical across platforms
  if (!out) {
    throw IngestError("cannot open output file: " + path);
  }
  return out;
}

double db20(double magnitude) {
  // Floor keeps exact zeros finite (and the CSV parseable).
  return 20.0 * std::log10(std::max(magnitude, 1e-300));
}

nlohmann::json config_echo_json(const std::string& config_echo) {
  if (config_echo.empty()) return nlohmann::json::object();
  return nlohmann::json::parse(config_echo, nullptr, true);
}

}  // namespace

SpectroscopyData load_spectroscopy(const std::string& csv_path, const std::string& sidecar_path) {
  std::ifstream csv(csv_path);
  if (!csv) {
    throw IngestError("cannot open spectroscopy file: " + csv_path);
  }
  SpectroscopyData data;
  std::string line;
  bool header_seen = false;
  std::size_t line_number = 0;
  while (std::getline(csv, line)) {
    ++line_number;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped.front() == '#') continue;
    std::vector<std::string> fields;
    std::stringstream ss(stripped);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(trim(field));
    if (!header_seen) {
      if (fields.size() != 2 || fields[0] != "voltage" || fields[1] != "value") {
        throw IngestError(csv_path + ": expected header 'voltage,value', got '" + stripped + "'");
      }
      header_seen = true;
      continue;
    }
    const std::string where = csv_path + ":" + std::to_string(line_number);
    if (fields.size() != 2) {
      throw IngestError(where + ": expected two comma-separated columns");
    }
    data.voltage.push_back(parse_number(fields[0], where));
    data.value.push_back(parse_number(fields[1], where));
  }
  if (!header_seen) {
    throw IngestError(csv_path + ": no 'voltage,value' header found (empty file?)");
  }
  if (data.voltage.empty()) {
    throw IngestError(csv_path + ": no data rows");
  }

  std::ifstream side(sidecar_path);
  if (!side) {
    throw IngestError("cannot open sidecar file: " + sidecar_path);
  }
  nlohmann::json meta;
  try {
    side >> meta;
  } catch (const std::exception& err) {
    throw IngestError(sidecar_path + ": invalid JSON: " + err.what());
  }
  if (!meta.contains("kind") || !meta["kind"].is_string()) {
    throw IngestError(sidecar_path + ": missing string field 'kind'");
  }
  const std::string kind = meta["kind"].get<std::string>();
  if (kind == "direct_ej") {
    data.kind = TabulatedEnergy::Kind::direct_ej;
  } else if (kind == "gatemon_freq") {
    data.kind = TabulatedEnergy::Kind::gatemon_freq;
  } else {
    throw IngestError(sidecar_path + ": field 'kind' must be 'direct_ej' or 'gatemon_freq'");
  }
  if (meta.contains("unit")) {
    if (!meta["unit"].is_string()) {
      throw IngestError(sidecar_path + ": field 'unit' must be a string");
    }
    const std::string unit = meta["unit"].get<std::string>();
    if (unit == "joule") {
      data.unit = EnergyUnit::joule;
    } else if (unit == "ghz_h") {
      data.unit = EnergyUnit::ghz_h;
    } else {
      throw IngestError(sidecar_path + ": field 'unit' must be 'joule' or 'ghz_h'");
    }
  }
  if (meta.contains("E_C")) {
    if (!meta["E_C"].is_number()) {
      throw IngestError(sidecar_path + ": field 'E_C' must be a number");
    }
    data.e_c = meta["E_C"].get<double>();
  }
  if (data.kind == TabulatedEnergy::Kind::gatemon_freq && !(data.e_c > 0.0)) {
    throw IngestError(sidecar_path + ": gatemon data needs a positive 'E_C'");
  }
  if (meta.contains("smoothing")) {
    if (!meta["smoothing"].is_number()) {
      throw IngestError(sidecar_path + ": field 'smoothing' must be a number");
    }
    data.smoothing = meta["smoothing"].get<double>();
    if (data.smoothing < 0.0) {
      throw IngestError(sidecar_path + ": field 'smoothing' must be non-negative");
    }
  }
  return data;
}

TabulatedEnergy to_tabulated(const SpectroscopyData& data) {
  return TabulatedEnergy(data.voltage, data.value, data.kind, data.unit,
                         to_joule(data.e_c, data.unit), data.smoothing);
}

std::string format_significant(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

void write_scattering_csv(const std::string& path, const ScatteringResult& result,
                          const std::string& config_echo,
                          const std::vector<std::string>& trailing_comments) {
  std::ofstream out = open_output(path);
  out << "# config: " << config_echo << "\n";
  out << "# model: " << result.model << "\n";
  out << "omega_norm,re_S11,im_S11,re_S12,im_S12,re_S21,im_S21,re_S22,im_S22,"
         "|S11|_dB,|S12|_dB\n";
  for (std::size_t i = 0; i < result.omega.size(); ++i) {
    const Eigen::Matrix2cd& s = result.matrices[i];
    out << format_significant(result.omega[i]);
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) {
        out << ',' << format_significant(s(r, c).real()) << ','
            << format_significant(s(r, c).imag());
      }
    }
    out << ',' << format_significant(db20(std::abs(s(0, 0)))) << ','
        << format_significant(db20(std::abs(s(0, 1)))) << "\n";
  }
  for (const auto& comment : trailing_comments) {
    out << "# " << comment << "\n";
  }
}

void write_scattering_json(const std::string& path, const ScatteringResult& result,
                           const std::string& config_echo,
                           const std::vector<std::string>& trailing_comments) {
  nlohmann::json doc;
  doc["config"] = config_echo_json(config_echo);
  doc["model"] = result.model;
  doc["omega"] = result.omega;
  nlohmann::json points = nlohmann::json::array();
  for (const Eigen::Matrix2cd& s : result.matrices) {
    nlohmann::json m = nlohmann::json::array();
    for (int r = 0; r < 2; ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (int c = 0; c < 2; ++c) {
        row.push_back({s(r, c).real(), s(r, c).imag()});
      }
      m.push_back(row);
    }
    points.push_back(m);
  }
  doc["s"] = points;
  if (!trailing_comments.empty()) doc["notes"] = trailing_comments;
  std::ofstream out = open_output(path);
  out << doc.dump(2) << "\n";
}

void write_table_csv(const std::string& path, const std::vector<std::string>& columns,
                     const std::vector<std::vector<std::string>>& rows,
                     const std::string& config_echo,
                     const std::vector<std::string>& trailing_comments) {
  std::ofstream out = open_output(path);
  out << "# config: " << config_echo << "\n";
  for (std::size_t i = 0; i < columns.size(); ++i) {
    out << (i == 0 ? "" : ",") << columns[i];
  }
  out << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << (i == 0 ? "" : ",") << row[i];
    }
    out << "\n";
  }
  for (const auto& comment : trailing_comments) {
    out << "# " << comment << "\n";
  }
}

void write_table_json(const std::string& path, const std::vector<std::string>& columns,
                      const std::vector<std::vector<std::string>>& rows,
                      const std::string& config_echo,
                      const std::vector<std::string>& trailing_comments) {
  nlohmann::json doc;
  doc["config"] = config_echo_json(config_echo);
  doc["columns"] = columns;
  doc["rows"] = rows;
  if (!trailing_comments.empty()) doc["notes"] = trailing_comments;
  std::ofstream out = open_output(path);
  out << doc.dump(2) << "\n";
}

}  // namespace gyrokit
