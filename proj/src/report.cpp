#include "gmra/report.hpp"

#include "gmra/errors.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace gmra {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  return out;
}

std::string utc_now() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

}  // namespace

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

Report::Report(std::string command, nlohmann::json config) : command_(std::move(command)), config_(std::move(config)) {}

void Report::check(const std::string& name, double residual, double tolerance, const std::string& where) {
  checks_.push_back({name, where, residual, tolerance, residual <= tolerance});
}

void Report::check_flag(const std::string& name, bool pass, const std::string& where) {
  checks_.push_back({name, where, pass ? 0.0 : 1.0, 0.0, pass});
}

bool Report::ok() const {
  for (const auto& c : checks_)
    if (!c.pass) return false;
  return true;
}

std::string Report::config_hash() const { return fnv1a_hex(config_.dump()); }

nlohmann::json Report::to_json(bool with_timestamp) const {
  nlohmann::json j;
  j["command"] = command_;
  j["version"] = kVersion;
  j["config_hash"] = config_hash();
  if (with_timestamp) j["timestamp"] = utc_now();
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : checks_)
    checks.push_back({{"name", c.name},
                      {"where", c.where},
                      {"residual", c.residual},
                      {"tolerance", c.tolerance},
                      {"pass", c.pass}});
  j["checks"] = checks;
  j["values"] = values_;
  j["pass"] = ok();
  return j;
}

std::string Report::to_text() const {
  std::ostringstream os;
  os << "gmra " << command_ << "  version " << kVersion << "  config " << config_hash() << "\n";
  for (const auto& c : checks_) {
    os << (c.pass ? "PASS " : "FAIL ") << c.name << "  residual " << sci(c.residual) << "  tol " << sci(c.tolerance);
    if (!c.where.empty()) os << "  at " << c.where;
    os << "\n";
  }
  for (auto it = values_.begin(); it != values_.end(); ++it) os << it.key() << " = " << it.value().dump() << "\n";
  os << (ok() ? "result: pass" : "result: FAIL") << "\n";
  return os.str();
}

void Report::write(const std::filesystem::path& dir) const {
  open_out(dir / "report.txt") << to_text();
  open_out(dir / "report.json") << to_json().dump(2) << "\n";
}

void write_csv(const std::filesystem::path& path, const std::vector<Rational>& xs, const std::vector<CsvColumn>& cols) {
  auto out = open_out(path);
  out << "x,x_exact";
  for (const auto& c : cols) out << "," << c.name << "_re," << c.name << "_im";
  out << "\n" << std::setprecision(17);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    out << xs[i].to_double() << "," << xs[i].to_string();
    for (const auto& c : cols) out << "," << c.values.at(i).real() << "," << c.values.at(i).imag();
    out << "\n";
  }
}

void write_plot_stub(const std::filesystem::path& path, const std::string& csv_name, const std::vector<CsvColumn>& cols) {
  auto out = open_out(path);
  out << "set datafile separator ','\nset key autotitle columnhead\nset xlabel 'x'\n";
  out << "plot ";
  for (std::size_t i = 0; i < cols.size(); ++i) {
    const std::size_t re = 3 + 2 * i, im = re + 1;
    out << (i ? ", \\\n     " : "") << "'" << csv_name << "' using 1:(sqrt($" << re << "**2 + $" << im
        << "**2)) with lines title '|" << cols[i].name << "|'";
  }
  out << "\npause -1\n";
}

}  // namespace gmra
