#pragma once

// Command-line front end: figure data as CSV (with exact sidecars), the
// verification sweeps and a JSON report.

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qhyper/scalar.hpp"

namespace qhyper::cli {

enum class Command { Fig1, Fig2, Fig3, Verify, Report };

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  Command command = Command::Verify;
  std::string q = "2/3";
  /// Empty means the per-command default (19 for fig1, 9 otherwise).
  std::optional<long> n_max;
  long k_extra = 7;
  long depth = 80;
  long series_n = 9;
  int digits = 12;
  std::filesystem::path out_dir = ".";
  unsigned threads = 1;

  /// Throws ConfigError on any violated constraint.
  void validate() const;
  QParam q_param() const;
  std::size_t n_max_for_command() const;
};

std::optional<Command> parse_command(const std::string& name);
std::string command_name(Command c);

/// Applies a flat key=value file. Blank lines and lines starting with '#'
/// are ignored; keys use the long flag names without dashes
/// (q, n-max, k-extra, depth, series-n, digits, out). Throws ConfigError on
/// unknown keys or malformed values.
void apply_config_file(RunConfig& config, const std::filesystem::path& path);

/// QHYPER_THREADS, or 1 when unset. Throws ConfigError on a non-positive or
/// malformed value.
unsigned threads_from_env();

/// A rectangular table whose cells are kept both exact ("p/r", or "nan")
/// and rendered to a fixed number of decimals.
struct Table {
  struct Cell {
    std::optional<Rational> value;  ///< empty renders as "nan"
    bool integer = false;           ///< render without decimals
  };
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;

  static Cell number(const Rational& r) { return Cell{r, false}; }
  static Cell index(long v) { return Cell{Rational(v), true}; }
  static Cell missing() { return Cell{std::nullopt, false}; }

  std::string csv(int digits) const;
  std::string exact() const;
};

/// Writes name.csv and name.exact into dir.
void write_table(const Table& t, const std::filesystem::path& dir, const std::string& name,
                 int digits);

/// Executes the command. Returns 0 when every certified check passes and 1
/// otherwise (the failing witness is printed to err).
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Full entry point: flags > config file > defaults. Returns 2 on
/// configuration errors.
int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace qhyper::cli
