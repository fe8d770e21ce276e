#include "fwion/records.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#ifndef FWION_VERSION
#define FWION_VERSION "0.0.0"
#endif

namespace fwion {

std::string code_version() { return FWION_VERSION; }

std::string hex_hash(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

void ensure_parent(const std::filesystem::path& p) {
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
}

}  // namespace

void write_csv(const std::filesystem::path& path, const std::vector<Column>& columns,
               const RecordStamp& stamp) {
  if (columns.empty()) throw std::invalid_argument("no columns to write");
  const std::size_t n = columns.front().values.size();
  for (const auto& c : columns)
    if (c.values.size() != n) throw std::invalid_argument("column " + c.name + " has the wrong length");
  ensure_parent(path);
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << "# config_hash=" << hex_hash(stamp.config_hash) << ",code_version=" << stamp.code_version << "\n";
  for (std::size_t k = 0; k < columns.size(); ++k) os << (k ? "," : "") << columns[k].name;
  os << "\n";
  for (std::size_t k = 0; k < columns.size(); ++k) os << (k ? "," : "") << columns[k].unit;
  os << "\n";
  char buf[32];
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t k = 0; k < columns.size(); ++k) {
      std::snprintf(buf, sizeof buf, "%.17g", columns[k].values[r]);
      os << (k ? "," : "") << buf;
    }
    os << "\n";
  }
  if (!os) throw std::runtime_error("failed writing " + path.string());
}

std::vector<Column> read_csv(const std::filesystem::path& path, RecordStamp* stamp) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open " + path.string());
  std::string line;
  if (!std::getline(is, line) || line.rfind("# ", 0) != 0)
    throw std::runtime_error(path.string() + ": missing provenance line");
  if (stamp) {
    for (const auto& kv : split(line.substr(2))) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) continue;
      const auto key = kv.substr(0, eq), val = kv.substr(eq + 1);
      if (key == "config_hash") stamp->config_hash = std::stoull(val, nullptr, 16);
      if (key == "code_version") stamp->code_version = val;
    }
  }
  std::string names, units;
  if (!std::getline(is, names) || !std::getline(is, units))
    throw std::runtime_error(path.string() + ": missing header rows");
  auto n = split(names), u = split(units);
  if (n.size() != u.size()) throw std::runtime_error(path.string() + ": header rows disagree");
  std::vector<Column> cols(n.size());
  for (std::size_t k = 0; k < n.size(); ++k) cols[k] = {n[k], u[k], {}};
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    auto cells = split(line);
    if (cells.size() != cols.size()) throw std::runtime_error(path.string() + ": ragged row");
    for (std::size_t k = 0; k < cells.size(); ++k) cols[k].values.push_back(std::stod(cells[k]));
  }
  return cols;
}

const Column& find_column(const std::vector<Column>& cols, const std::string& name) {
  for (const auto& c : cols)
    if (c.name == name) return c;
  throw std::runtime_error("no column named " + name);
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
  ensure_parent(path);
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << j.dump(2) << "\n";
}

nlohmann::json read_json(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open " + path.string());
  try {
    return nlohmann::json::parse(is);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

void write_spectrum_csv(const std::filesystem::path& path, const SpectrumRecord& s,
                        const RecordStamp& stamp) {
  std::vector<double> lg(s.power.size());
  for (std::size_t k = 0; k < lg.size(); ++k) lg[k] = std::log10(std::max(s.power[k], 1e-300));
  write_csv(path,
            {{"frequency", s.axis_unit, s.frequency},
             {"power_" + s.channel, "arb", s.power},
             {"log10_power_" + s.channel, "log10(arb)", lg}},
            stamp);
}

SpectrumRecord read_spectrum_csv(const std::filesystem::path& path) {
  auto cols = read_csv(path);
  if (cols.size() < 2) throw std::runtime_error(path.string() + ": not a spectrum file");
  SpectrumRecord s;
  s.axis_unit = cols[0].unit;
  s.frequency = cols[0].values;
  s.power = cols[1].values;
  s.channel = cols[1].name.rfind("power_", 0) == 0 ? cols[1].name.substr(6) : cols[1].name;
  if (s.frequency.size() > 1) s.resolution = s.frequency[1] - s.frequency[0];
  return s;
}

}  // namespace fwion
