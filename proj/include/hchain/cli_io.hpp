#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "hchain/chain_spec.hpp"
#include "hchain/scaling.hpp"

namespace hchain {

inline constexpr const char* kVersion = "1.0.0";

enum class Command { modes, spectrum, thermo, length, sweep, preset, fit };
enum class OutputFormat { csv, json };

std::string_view to_string(Command command);

struct RunConfig {
  Command command = Command::length;
  ChainSpec spec;
  double temperature = 1.0;
  std::string out = "-";  // "-" writes to stdout
  OutputFormat format = OutputFormat::csv;
  int precision = 12;

  std::optional<double> cutoff;  // spectrum; defaults to hbar omega_max
  std::size_t n_min = 256;
  std::size_t n_max = 65536;
  std::size_t n_factor = 2;
  std::vector<double> temperatures;
  std::size_t fit_min_n = 256;
  std::string preset_name = "sodium-like";
  bool n_given = false;  // preset keeps its own default N unless set
  std::string input;     // fit

  std::string command_line;
};

// Thrown by parse_config for --help; carries the rendered help text.
class HelpRequested : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// key=value lines, '#' starts a comment. Throws ValidationError on a line
// without '=' or a repeated key.
std::map<std::string, std::string> parse_key_value_text(const std::string& text);

/// Builds a RunConfig from arguments (program name excluded). The first
/// argument is the subcommand. Values resolve as: command-line flag, then
/// the --config file, then built-in defaults. Unknown flags or file keys,
/// unparsable values and violated physical constraints throw ValidationError.
RunConfig parse_config(const std::vector<std::string>& args);

// A flat table of plot-ready values. Empty cells (monostate) mark values
// that do not exist for the input, e.g. gamma at zero temperature.
using Cell = std::variant<std::monostate, std::int64_t, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

struct Report {
  Table table;
  std::optional<Table> fits;
  nlohmann::ordered_json metadata;
};

Report build_report(const RunConfig& config);

// Fixed column order CSV; `fits` trails as '#'-prefixed CSV lines.
std::string to_csv(const Report& report, int precision);
// {"metadata": ..., "rows": [{column: value}], "fits": [...]}
std::string to_json(const Report& report, int precision);

std::string render(const RunConfig& config);

// Throws std::runtime_error if the path cannot be written.
void write_output(const std::string& path, const std::string& text);

// %.{precision}g, i.e. round-half-even on the exact binary value.
std::string format_number(double value, int precision);

// Reads N, T, rel_dispersion back from sweep output in either format.
std::vector<SweepRow> read_sweep_rows(const std::string& text);

}  // namespace hchain
