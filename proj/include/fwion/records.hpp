#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace fwion {

/// Code version embedded in every output file.
std::string code_version();

/// Provenance stamped on every output: config hash plus code version.
struct RecordStamp {
  std::uint64_t config_hash = 0;
  std::string code_version = fwion::code_version();
};

std::string hex_hash(std::uint64_t h);

struct Column {
  std::string name;
  std::string unit;
  std::vector<double> values;
};

/// Uniformly sampled observable.
struct TimeSeriesRecord {
  std::string name;
  std::string unit;
  std::vector<double> times;
  std::vector<double> values;
};

/// Power spectrum on a uniform frequency axis in units of `axis_unit`.
struct SpectrumRecord {
  std::string channel;
  std::string axis_unit = "omega";
  std::vector<double> frequency;
  std::vector<double> power;
  /// Frequency spacing of the underlying (unpadded) transform.
  double resolution = 0.0;
  std::string window;
};

/// CSV with a `# key=value` provenance line, a column-name row and a unit
/// row. Values are written with 17 significant digits.
void write_csv(const std::filesystem::path& path, const std::vector<Column>& columns,
               const RecordStamp& stamp);

/// Reads a file produced by write_csv. Throws std::runtime_error on a
/// malformed file.
std::vector<Column> read_csv(const std::filesystem::path& path, RecordStamp* stamp = nullptr);

const Column& find_column(const std::vector<Column>& cols, const std::string& name);

void write_json(const std::filesystem::path& path, const nlohmann::json& j);
nlohmann::json read_json(const std::filesystem::path& path);

/// Spectrum as (frequency, power, log10 power) columns.
void write_spectrum_csv(const std::filesystem::path& path, const SpectrumRecord& s,
                        const RecordStamp& stamp);
SpectrumRecord read_spectrum_csv(const std::filesystem::path& path);

}  // namespace fwion
