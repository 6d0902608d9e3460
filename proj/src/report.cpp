#include "mra/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "mra/error.hpp"

#ifndef MRA_VERSION
#define MRA_VERSION "unknown"
#endif

namespace mra {

std::string library_version() { return MRA_VERSION; }

std::string format_cell(const Cell& c) {
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  if (const auto* s = std::get_if<std::string>(&c)) return *s;
  const double v = std::get<double>(c);
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

nlohmann::json cell_json(const Cell& c) {
  if (const auto* v = std::get_if<double>(&c); v && !std::isfinite(*v)) return nullptr;
  return std::visit([](const auto& v) { return nlohmann::json(v); }, c);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

Report::Report(std::string command, nlohmann::json config) : command_(std::move(command)), config_(std::move(config)) {}

void Report::set_columns(std::vector<std::string> columns) { columns_ = std::move(columns); }

void Report::add_row(std::vector<Cell> row) {
  if (row.size() != columns_.size()) throw InvalidArgument("row width does not match the columns");
  rows_.push_back(std::move(row));
}

void Report::warn(std::string code, std::string message) { warnings_.push_back({std::move(code), std::move(message)}); }

void Report::summary(const std::string& key, Cell value) { summary_[key] = std::move(value); }

std::string Report::config_hash() const {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : config_.dump()) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void Report::write_csv(std::ostream& os) const {
  os << "# command: " << command_ << "\n";
  os << "# version: " << library_version() << "\n";
  os << "# config: " << config_.dump() << "\n";
  os << "# config_hash: " << config_hash() << "\n";
  for (const auto& w : warnings_) os << "# warning: " << w.code << ": " << w.message << "\n";
  for (const auto& [k, v] : summary_) os << "# summary: " << k << "=" << format_cell(v) << "\n";
  for (std::size_t i = 0; i < columns_.size(); ++i) os << (i ? "," : "") << csv_field(columns_[i]);
  os << "\n";
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_field(format_cell(row[i]));
    os << "\n";
  }
}

nlohmann::json Report::to_json() const {
  nlohmann::json j;
  j["command"] = command_;
  j["version"] = library_version();
  j["config"] = config_;
  j["config_hash"] = config_hash();
  j["warnings"] = nlohmann::json::array();
  for (const auto& w : warnings_) j["warnings"].push_back({{"code", w.code}, {"message", w.message}});
  j["summary"] = nlohmann::json::object();
  for (const auto& [k, v] : summary_) j["summary"][k] = cell_json(v);
  j["columns"] = columns_;
  j["rows"] = nlohmann::json::array();
  for (const auto& row : rows_) {
    nlohmann::json r = nlohmann::json::object();
    for (std::size_t i = 0; i < row.size(); ++i) r[columns_[i]] = cell_json(row[i]);
    j["rows"].push_back(std::move(r));
  }
  return j;
}

void Report::write_json(std::ostream& os) const { os << to_json().dump(2) << "\n"; }

BaselineStore BaselineStore::load(const std::string& path) {
  BaselineStore store;
  std::ifstream in(path);
  if (!in) return store;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw InvalidArgument(path + ":" + std::to_string(lineno) + ": expected name,value");
    const std::string name = line.substr(0, comma);
    if (name == "name") continue;
    try {
      store.values_[name] = std::stod(line.substr(comma + 1));
    } catch (const std::exception&) {
      throw InvalidArgument(path + ":" + std::to_string(lineno) + ": bad value");
    }
  }
  return store;
}

void BaselineStore::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write " + path);
  out << "name,value\n";
  for (const auto& [k, v] : values_) out << k << "," << format_cell(v) << "\n";
}

BaselineStore::Outcome BaselineStore::check(const std::string& name, double value, Bad bad, double factor) const {
  Outcome o;
  o.name = name;
  o.value = value;
  const auto it = values_.find(name);
  if (it == values_.end()) return o;
  o.known = true;
  o.baseline = it->second;
  // constants here are positive; compare on the ratio scale
  if (bad == Bad::above)
    o.pass = value <= it->second * factor;
  else
    o.pass = value >= it->second / factor;
  return o;
}

}  // namespace mra
