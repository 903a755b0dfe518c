#pragma once

#include "gmra/rational.hpp"

#include <json.hpp>

#include <complex>
#include <filesystem>
#include <string>
#include <vector>

namespace gmra {

inline constexpr const char* kVersion = "1.0.0";

struct CheckRecord {
  std::string name;
  std::string where;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = true;
};

class Report {
 public:
  Report(std::string command, nlohmann::json config);

  // pass iff residual <= tolerance
  void check(const std::string& name, double residual, double tolerance, const std::string& where = "");
  void check_flag(const std::string& name, bool pass, const std::string& where = "");
  void value(const std::string& key, nlohmann::json v) { values_[key] = std::move(v); }

  bool ok() const;
  const std::vector<CheckRecord>& checks() const { return checks_; }

  std::string config_hash() const;
  nlohmann::json to_json(bool with_timestamp = true) const;
  std::string to_text() const;
  // report.txt and report.json in `dir`
  void write(const std::filesystem::path& dir) const;

 private:
  std::string command_;
  nlohmann::json config_;
  std::vector<CheckRecord> checks_;
  nlohmann::json values_ = nlohmann::json::object();
};

// 64-bit FNV-1a, hex.
std::string fnv1a_hex(const std::string& bytes);

struct CsvColumn {
  std::string name;
  std::vector<std::complex<double>> values;
};

// x, x_exact, then name_re, name_im per column.
void write_csv(const std::filesystem::path& path, const std::vector<Rational>& xs, const std::vector<CsvColumn>& cols);
// gnuplot stub plotting |column| against x for every column of the CSV.
void write_plot_stub(const std::filesystem::path& path, const std::string& csv_name, const std::vector<CsvColumn>& cols);

}  // namespace gmra
