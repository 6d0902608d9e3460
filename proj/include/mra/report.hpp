#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

namespace mra {

std::string library_version();

using Cell = std::variant<std::int64_t, double, std::string>;

struct Warning {
  std::string code;
  std::string message;
};

// One result table with the resolved configuration it came from. Output is
// a pure function of the contents, so equal runs give equal bytes.
class Report {
 public:
  Report(std::string command, nlohmann::json config);

  void set_columns(std::vector<std::string> columns);
  // Throws InvalidArgument if the width does not match the columns.
  void add_row(std::vector<Cell> row);
  void warn(std::string code, std::string message);
  void summary(const std::string& key, Cell value);

  const std::string& command() const { return command_; }
  const nlohmann::json& config() const { return config_; }
  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::vector<Cell>>& rows() const { return rows_; }
  const std::vector<Warning>& warnings() const { return warnings_; }
  const std::map<std::string, Cell>& summaries() const { return summary_; }
  // 16 hex digits of the FNV-1a hash of the compact config dump.
  std::string config_hash() const;

  // Comment lines "# key: value" carry everything but the rows; then the
  // header and one line per row.
  void write_csv(std::ostream& os) const;
  nlohmann::json to_json() const;
  void write_json(std::ostream& os) const;

 private:
  std::string command_;
  nlohmann::json config_;
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
  std::vector<Warning> warnings_;
  std::map<std::string, Cell> summary_;
};

std::string format_cell(const Cell& c);

// Empirical constants kept as "name,value" lines. A value regresses when it
// moves past the stored one by more than the factor in its bad direction.
class BaselineStore {
 public:
  enum class Bad { above, below };
  struct Outcome {
    std::string name;
    double value = 0;
    double baseline = 0;
    bool known = false;
    bool pass = true;
  };

  static BaselineStore load(const std::string& path);  // missing file gives an empty store
  void save(const std::string& path) const;

  void set(const std::string& name, double value) { values_[name] = value; }
  bool has(const std::string& name) const { return values_.count(name) != 0; }
  Outcome check(const std::string& name, double value, Bad bad, double factor = 1.1) const;
  const std::map<std::string, double>& values() const { return values_; }

 private:
  std::map<std::string, double> values_;
};

}  // namespace mra
