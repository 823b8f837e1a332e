#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <span>
#include <sstream>

#include <CLI11.hpp>

#include "hchain/cli_io.hpp"
#include "hchain/error.hpp"

namespace hchain {

namespace {

struct Key {
  const char* name;
  const char* help;
};

constexpr Key kSharedKeys[] = {
    {"n", "particle count N (>= 2)"},
    {"mass", "particle mass mu (kg suffix allowed in SI)"},
    {"kappa", "oscillator strength kappa; spring constant is kappa^2"},
    {"xi", "equilibrium spacing (m suffix allowed in SI)"},
    {"units", "reduced | si"},
    {"temp", "temperature (K suffix allowed in SI)"},
    {"out", "output path, '-' for stdout"},
    {"format", "csv | json"},
    {"precision", "significant digits in text output"},
};

constexpr Key kSweepKeys[] = {
    {"n-min", "smallest N"},
    {"n-max", "largest N"},
    {"n-factor", "ratio between successive N"},
    {"temps", "comma-separated temperatures"},
    {"fit-min-n", "smallest N used in the log-log fit"},
};

constexpr Key kSpectrumKeys[] = {{"cutoff", "energy cutoff (J suffix allowed in SI)"}};
constexpr Key kPresetKeys[] = {{"name", "preset identifier (sodium-like)"}};
constexpr Key kFitKeys[] = {{"in", "sweep output to fit (csv or json)"},
                            {"fit-min-n", "smallest N used in the log-log fit"}};

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::set<std::string> all_file_keys() {
  std::set<std::string> keys;
  for (const auto& k : kSharedKeys) keys.insert(k.name);
  for (const auto& k : kSweepKeys) keys.insert(k.name);
  for (const auto& k : kSpectrumKeys) keys.insert(k.name);
  for (const auto& k : kPresetKeys) keys.insert(k.name);
  for (const auto& k : kFitKeys) keys.insert(k.name);
  return keys;
}

double parse_real(const std::string& key, std::string_view text) {
  double value = 0.0;
  const char* begin = text.data();
  const char* end = text.data() + text.size();
  if (!text.empty() && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value) || text.empty()) {
    throw ValidationError("cannot parse value '" + std::string(text) + "' for " + key);
  }
  return value;
}

// Accepts a trailing unit suffix in SI mode only.
double parse_quantity(const std::string& key, const std::string& text, const char* suffix,
                      UnitKind units) {
  std::string_view body = text;
  const std::string_view sfx = suffix ? suffix : "";
  if (!sfx.empty() && body.size() > sfx.size() && body.ends_with(sfx)) {
    const char before = body[body.size() - sfx.size() - 1];
    if (std::isdigit(static_cast<unsigned char>(before)) || before == '.') {
      if (units != UnitKind::si) {
        throw ValidationError("unit suffix '" + std::string(sfx) + "' on " + key +
                              " is only allowed with --units si");
      }
      body.remove_suffix(sfx.size());
    }
  }
  return parse_real(key, body);
}

std::size_t parse_count(const std::string& key, const std::string& text) {
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw ValidationError("cannot parse value '" + text + "' for " + key + " (expected a non-negative integer)");
  }
  return value;
}

Command command_from(const std::string& name) {
  static const std::map<std::string, Command> names = {
      {"modes", Command::modes},   {"spectrum", Command::spectrum}, {"thermo", Command::thermo},
      {"length", Command::length}, {"sweep", Command::sweep},       {"preset", Command::preset},
      {"fit", Command::fit}};
  return names.at(name);
}

}  // namespace

std::string_view to_string(Command command) {
  switch (command) {
    case Command::modes: return "modes";
    case Command::spectrum: return "spectrum";
    case Command::thermo: return "thermo";
    case Command::length: return "length";
    case Command::sweep: return "sweep";
    case Command::preset: return "preset";
    case Command::fit: return "fit";
  }
  return "unknown";
}

std::map<std::string, std::string> parse_key_value_text(const std::string& text) {
  std::map<std::string, std::string> values;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string content = trim(line);
    if (content.empty()) continue;
    const auto eq = content.find('=');
    if (eq == std::string::npos) {
      throw ValidationError("config line " + std::to_string(line_no) + " is not key=value");
    }
    std::string key = trim(std::string_view(content).substr(0, eq));
    std::string value = trim(std::string_view(content).substr(eq + 1));
    if (key.empty()) throw ValidationError("config line " + std::to_string(line_no) + " has an empty key");
    if (values.count(key)) throw ValidationError("config key '" + key + "' repeated");
    values.emplace(std::move(key), std::move(value));
  }
  return values;
}

RunConfig parse_config(const std::vector<std::string>& args) {
  CLI::App app{"Quantum harmonic-chain normal modes, thermodynamics and length fluctuations", "hchain"};
  app.require_subcommand(1);

  struct Sub {
    CLI::App* app;
    std::map<std::string, std::string> raw;
    std::map<std::string, CLI::Option*> options;
    std::string config_path;
  };
  std::map<std::string, Sub> subs;
  auto make = [&](const std::string& name, const std::string& description,
                  std::initializer_list<std::span<const Key>> groups) {
    auto& sub = subs[name];
    sub.app = app.add_subcommand(name, description);
    for (const auto group : groups) {
      for (const auto& key : group) {
        if (sub.options.count(key.name)) continue;
        sub.options[key.name] = sub.app->add_option(std::string("--") + key.name, sub.raw[key.name], key.help);
      }
    }
    sub.app->add_option("--config", sub.config_path, "key=value file; flags take precedence");
  };
  make("modes", "analytic normal-mode table", {kSharedKeys});
  make("spectrum", "phonon excitation energies up to a cutoff", {kSharedKeys, kSpectrumKeys});
  make("thermo", "per-mode Gibbs statistics", {kSharedKeys});
  make("length", "length mean, variance and dispersion", {kSharedKeys});
  make("sweep", "length dispersion over N and T with log-log fits", {kSharedKeys, kSweepKeys});
  make("preset", "named SI parameter set", {kSharedKeys, kPresetKeys});
  make("fit", "log-log fit of stored sweep output", {kSharedKeys, kFitKeys});

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    const auto chosen = app.get_subcommands();
    throw HelpRequested(chosen.empty() ? app.help() : chosen.front()->help());
  } catch (const CLI::ParseError& e) {
    throw ValidationError(e.what());
  }

  const std::string name = app.get_subcommands().front()->get_name();
  Sub& sub = subs.at(name);

  std::map<std::string, std::string> file;
  if (!sub.config_path.empty()) {
    std::ifstream in(sub.config_path);
    if (!in) throw ValidationError("cannot read config file " + sub.config_path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    file = parse_key_value_text(buffer.str());
    const auto known = all_file_keys();
    for (const auto& [key, value] : file) {
      if (!known.count(key)) throw ValidationError("unknown config key '" + key + "'");
    }
  }

  auto lookup = [&](const std::string& key) -> std::optional<std::string> {
    if (auto it = sub.options.find(key); it != sub.options.end() && it->second->count() > 0) {
      return sub.raw.at(key);
    }
    if (auto it = file.find(key); it != file.end()) return it->second;
    return std::nullopt;
  };

  RunConfig config;
  config.command = command_from(name);
  config.command_line = "hchain";
  for (const auto& a : args) config.command_line += " " + a;

  UnitKind units = UnitKind::reduced;
  if (auto v = lookup("units")) {
    if (*v == "reduced") units = UnitKind::reduced;
    else if (*v == "si") units = UnitKind::si;
    else throw ValidationError("units must be 'reduced' or 'si' (got '" + *v + "')");
  }
  config.spec.units = UnitSystem::of(units);
  config.spec.n = 8;

  if (auto v = lookup("n")) {
    config.spec.n = parse_count("n", *v);
    config.n_given = true;
  }
  if (auto v = lookup("mass")) config.spec.mass = parse_quantity("mass", *v, "kg", units);
  if (auto v = lookup("kappa")) config.spec.stiffness = parse_quantity("kappa", *v, nullptr, units);
  if (auto v = lookup("xi")) config.spec.spacing = parse_quantity("xi", *v, "m", units);

  config.temperature = units == UnitKind::si ? 300.0 : 1.0;
  if (auto v = lookup("temp")) config.temperature = parse_quantity("temp", *v, "K", units);
  if (!(config.temperature >= 0.0)) {
    throw ValidationError("temperature >= 0 required (got " + format_number(config.temperature, 6) + ")");
  }

  if (auto v = lookup("out")) config.out = *v;
  if (auto v = lookup("format")) {
    if (*v == "csv") config.format = OutputFormat::csv;
    else if (*v == "json") config.format = OutputFormat::json;
    else throw ValidationError("format must be 'csv' or 'json' (got '" + *v + "')");
  }
  if (auto v = lookup("precision")) {
    const auto p = parse_count("precision", *v);
    if (p < 1 || p > 17) throw ValidationError("precision must be in 1..17");
    config.precision = static_cast<int>(p);
  }

  if (auto v = lookup("cutoff")) config.cutoff = parse_quantity("cutoff", *v, "J", units);
  if (auto v = lookup("n-min")) config.n_min = parse_count("n-min", *v);
  if (auto v = lookup("n-max")) config.n_max = parse_count("n-max", *v);
  if (auto v = lookup("n-factor")) config.n_factor = parse_count("n-factor", *v);
  if (auto v = lookup("fit-min-n")) config.fit_min_n = parse_count("fit-min-n", *v);
  if (auto v = lookup("temps")) {
    std::stringstream list(*v);
    std::string item;
    while (std::getline(list, item, ',')) {
      config.temperatures.push_back(parse_quantity("temps", trim(item), "K", units));
    }
  } else {
    // gamma = 1e-3 for unit mass and stiffness in reduced units
    config.temperatures = {units == UnitKind::si ? 300.0 : 2000.0};
  }
  if (auto v = lookup("name")) config.preset_name = *v;
  if (auto v = lookup("in")) config.input = *v;

  switch (config.command) {
    case Command::modes:
    case Command::spectrum:
    case Command::length:
      config.spec.validate();
      break;
    case Command::thermo:
      config.spec.validate();
      if (config.temperature == 0.0) throw ValidationError("temperature > 0 required for thermo");
      break;
    case Command::sweep: {
      SweepPlan plan{SweepPlan::geometric_sizes(config.n_min, config.n_max, config.n_factor),
                     config.temperatures, config.spec, config.fit_min_n};
      plan.validate();
      break;
    }
    case Command::preset:
      if (config.n_given && config.spec.n < 2) {
        throw ValidationError("n >= 2 required (got " + std::to_string(config.spec.n) + ")");
      }
      break;
    case Command::fit:
      if (config.input.empty()) throw ValidationError("fit requires --in <sweep output>");
      break;
  }
  return config;
}

}  // namespace hchain
