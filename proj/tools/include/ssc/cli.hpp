#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ssc::cli {

enum ExitCode : int { kOk = 0, kFail = 1, kUsage = 2 };

/// Ordered key/value report. Printed as "key: value" lines, or as an aligned
/// two-column table in human mode. The duration line always comes last so
/// golden comparisons can drop it.
class RunReport {
 public:
  explicit RunReport(std::string command) : command_(std::move(command)) {}

  void config(std::string key, std::string value);
  void result(std::string key, std::string value);
  void set_duration(double seconds) { duration_ = seconds; }

  const std::vector<std::pair<std::string, std::string>>& configs() const noexcept { return config_; }
  const std::vector<std::pair<std::string, std::string>>& results() const noexcept { return results_; }
  std::optional<std::string> find(const std::string& key) const;

  void print(std::ostream& out, bool table) const;

 private:
  std::string command_;
  std::vector<std::pair<std::string, std::string>> config_;
  std::vector<std::pair<std::string, std::string>> results_;
  double duration_ = 0.0;
};

/// Runs the tool on argv-style arguments (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// --seed if given, else SSC_SEED, else 0. Throws on a malformed SSC_SEED.
std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag);

std::string format_double(double v);

}  // namespace ssc::cli
