#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "hchain/cli_io.hpp"
#include "hchain/error.hpp"
#include "hchain/modes.hpp"
#include "hchain/observables.hpp"
#include "hchain/thermo.hpp"

namespace hchain {

namespace {

using ojson = nlohmann::ordered_json;

Cell number(double v) { return Cell{v}; }
Cell integer(std::size_t v) { return Cell{static_cast<std::int64_t>(v)}; }
Cell optional_number(const std::optional<double>& v) { return v ? Cell{*v} : Cell{}; }

ojson units_json(const UnitSystem& units) {
  return {{"kind", std::string(to_string(units.kind))},
          {"hbar", units.hbar},
          {"k_boltzmann", units.k_boltzmann}};
}

ojson spec_json(const ChainSpec& spec) {
  return {{"n", spec.n}, {"mass", spec.mass}, {"kappa", spec.stiffness}, {"xi", spec.spacing}};
}

ojson base_metadata(const RunConfig& config, const ChainSpec& spec) {
  ojson meta;
  meta["artifact"] = "hchain";
  meta["version"] = kVersion;
  meta["command"] = std::string(to_string(config.command));
  meta["command_line"] = config.command_line;
  meta["precision"] = config.precision;
  meta["units"] = units_json(spec.units);
  meta["spec"] = spec_json(spec);
  return meta;
}

Table fits_table(const std::vector<TemperatureFit>& fits) {
  Table t;
  t.columns = {"T", "points", "slope", "intercept", "residual"};
  for (const auto& f : fits) {
    std::vector<Cell> row{number(f.temperature), integer(f.points)};
    if (f.fit) {
      row.push_back(number(f.fit->slope));
      row.push_back(number(f.fit->intercept));
      row.push_back(number(f.fit->residual));
    } else {
      row.insert(row.end(), 3, Cell{});
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

Report modes_report(const RunConfig& config) {
  const auto table = build_mode_table(config.spec);
  Report r;
  r.table.columns = {"m", "k_m", "omega_m", "parity"};
  for (std::size_t p = 1; p <= table.n; ++p) r.table.columns.push_back("Y_" + std::to_string(p));
  for (std::size_t m = 0; m < table.n; ++m) {
    std::vector<Cell> row{integer(m), number(table.wavenumbers[m]), number(table.frequencies[m]),
                          Cell{std::string(table.parities[m] == Parity::even ? "even" : "odd")}};
    for (std::size_t p = 1; p <= table.n; ++p) row.push_back(number(table.amplitude(m, p)));
    r.table.rows.push_back(std::move(row));
  }
  r.metadata = base_metadata(config, config.spec);
  r.metadata["zero_mode"] = {{"total_mass", table.zero_mode.total_mass},
                             {"com_scale", table.zero_mode.com_scale},
                             {"momentum_scale", table.zero_mode.momentum_scale}};
  return r;
}

Report spectrum_report(const RunConfig& config) {
  const double cutoff = config.cutoff.value_or(config.spec.units.hbar * config.spec.max_frequency());
  const auto states = enumerate_phonon_energies(config.spec, cutoff);
  Report r;
  r.table.columns = {"index", "energy"};
  for (std::size_t m = 1; m < config.spec.n; ++m) r.table.columns.push_back("nu_" + std::to_string(m));
  for (std::size_t i = 0; i < states.size(); ++i) {
    std::vector<Cell> row{integer(i), number(states[i].energy)};
    for (auto nu : states[i].occupations) row.push_back(integer(nu));
    r.table.rows.push_back(std::move(row));
  }
  r.metadata = base_metadata(config, config.spec);
  r.metadata["energy_cutoff"] = cutoff;
  return r;
}

Report thermo_report(const RunConfig& config) {
  const auto state = ThermoState::at(config.temperature, config.spec.units);
  const auto omega = mode_frequencies(config.spec);
  Report r;
  r.table.columns = {"m", "omega_m", "beta_hbar_omega", "partition", "occupation", "u_squared"};
  for (std::size_t m = 1; m < config.spec.n; ++m) {
    const auto mt = mode_thermo(omega[m], config.spec.mass, state);
    r.table.rows.push_back({integer(m), number(omega[m]),
                            number(state.units().hbar * omega[m] * state.beta()),
                            number(mt.partition), number(mt.occupation), number(mt.u_squared)});
  }
  r.metadata = base_metadata(config, config.spec);
  r.metadata["temperature"] = config.temperature;
  r.metadata["zero_mode_excluded"] = true;
  return r;
}

Report length_report(const RunConfig& config) {
  const auto state = ThermoState::at(config.temperature, config.spec.units);
  const auto stats = length_statistics(config.spec, state);
  Report r;
  r.table.columns = {"N", "T", "gamma", "mean_length", "variance_exact", "rel_dispersion",
                     "asymptotic", "ratio", "riemann_bound"};
  r.table.rows.push_back({integer(config.spec.n), number(config.temperature), optional_number(stats.gamma),
                          number(stats.mean), number(stats.variance), number(stats.relative_dispersion),
                          optional_number(stats.asymptotic), optional_number(stats.ratio()),
                          optional_number(stats.riemann_bound)});
  r.metadata = base_metadata(config, config.spec);
  r.metadata["temperature"] = config.temperature;
  // Zero temperature reports zero-point fluctuations only.
  r.metadata["zero_temperature_extension"] = stats.zero_temperature;
  return r;
}

Report sweep_report(const RunConfig& config) {
  SweepPlan plan{SweepPlan::geometric_sizes(config.n_min, config.n_max, config.n_factor),
                 config.temperatures, config.spec, config.fit_min_n};
  const auto result = run_sweep(plan);
  Report r;
  r.table.columns = {"N", "T", "gamma", "mean_length", "variance_exact", "rel_dispersion",
                     "asymptotic", "ratio"};
  for (const auto& row : result.rows) {
    r.table.rows.push_back({integer(row.n), number(row.temperature), number(row.gamma),
                            number(row.mean_length), number(row.variance_exact),
                            number(row.rel_dispersion), number(row.asymptotic), number(row.ratio)});
  }
  r.fits = fits_table(result.fits);
  ChainSpec shown = config.spec;
  shown.n = plan.n_values.front();
  r.metadata = base_metadata(config, shown);
  r.metadata["spec"].erase("n");
  r.metadata["n_values"] = plan.n_values;
  r.metadata["temperatures"] = plan.temperatures;
  r.metadata["fit_min_n"] = plan.fit_min_n;
  return r;
}

Report preset_report(const RunConfig& config) {
  const auto preset = config.n_given ? si_preset(config.preset_name, config.spec.n)
                                     : si_preset(config.preset_name);
  const auto& spec = preset.spec;
  const auto& state = preset.state;
  const double hbar_omega = spec.units.hbar * preset.max_frequency;
  const double kt = state.thermal_energy();
  const double variance = length_variance_exact(spec, state);
  Report r;
  r.table.columns = {"name", "N", "mass", "kappa", "xi", "T", "omega_max", "hbar_omega_max_J",
                     "hbar_omega_max_eV", "kT_J", "kT_eV", "gamma", "mean_length",
                     "rel_dispersion", "asymptotic"};
  r.table.rows.push_back({Cell{preset.name}, integer(spec.n), number(spec.mass), number(spec.stiffness),
                          number(spec.spacing), number(state.temperature()), number(preset.max_frequency),
                          number(hbar_omega), number(hbar_omega / kElectronVolt), number(kt),
                          number(kt / kElectronVolt), number(gamma_parameter(spec, state)),
                          number(mean_length(spec)), number(std::sqrt(variance) / mean_length(spec)),
                          number(asymptotic_dispersion(spec, state))});
  r.metadata = base_metadata(config, spec);
  r.metadata["preset"] = preset.name;
  r.metadata["external_inputs"] = {{"mass", "sodium atomic mass"}};
  return r;
}

Report fit_report(const RunConfig& config) {
  std::ifstream in(config.input);
  if (!in) throw ValidationError("cannot read sweep output " + config.input);
  std::stringstream buffer;
  buffer << in.rdbuf();
  const auto rows = read_sweep_rows(buffer.str());
  std::vector<double> temperatures;
  for (const auto& row : rows) {
    if (std::find(temperatures.begin(), temperatures.end(), row.temperature) == temperatures.end()) {
      temperatures.push_back(row.temperature);
    }
  }
  Report r;
  r.table = fits_table(fit_rows(rows, temperatures, config.fit_min_n));
  r.metadata["artifact"] = "hchain";
  r.metadata["version"] = kVersion;
  r.metadata["command"] = "fit";
  r.metadata["command_line"] = config.command_line;
  r.metadata["precision"] = config.precision;
  r.metadata["input"] = config.input;
  r.metadata["fit_min_n"] = config.fit_min_n;
  return r;
}

std::string cell_text(const Cell& cell, int precision) {
  struct Visitor {
    int precision;
    std::string operator()(std::monostate) const { return {}; }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_number(v, precision); }
    std::string operator()(const std::string& v) const { return v; }
  };
  return std::visit(Visitor{precision}, cell);
}

ojson cell_json(const Cell& cell, int precision) {
  struct Visitor {
    int precision;
    ojson operator()(std::monostate) const { return nullptr; }
    ojson operator()(std::int64_t v) const { return v; }
    ojson operator()(double v) const {
      if (!std::isfinite(v)) return nullptr;
      return std::strtod(format_number(v, precision).c_str(), nullptr);
    }
    ojson operator()(const std::string& v) const { return v; }
  };
  return std::visit(Visitor{precision}, cell);
}

void append_csv_line(std::string& out, const std::vector<std::string>& fields, const char* prefix) {
  out += prefix;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += fields[i];
  }
  out += '\n';
}

ojson rows_json(const Table& table, int precision) {
  ojson rows = ojson::array();
  for (const auto& row : table.rows) {
    ojson obj = ojson::object();
    for (std::size_t i = 0; i < table.columns.size(); ++i) obj[table.columns[i]] = cell_json(row[i], precision);
    rows.push_back(std::move(obj));
  }
  return rows;
}

double json_number(const ojson& v) { return v.is_null() ? NAN : v.get<double>(); }

}  // namespace

std::string format_number(double value, int precision) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, value);
  return buf;
}

Report build_report(const RunConfig& config) {
  switch (config.command) {
    case Command::modes: return modes_report(config);
    case Command::spectrum: return spectrum_report(config);
    case Command::thermo: return thermo_report(config);
    case Command::length: return length_report(config);
    case Command::sweep: return sweep_report(config);
    case Command::preset: return preset_report(config);
    case Command::fit: return fit_report(config);
  }
  throw std::logic_error("unhandled command");
}

std::string to_csv(const Report& report, int precision) {
  std::string out;
  append_csv_line(out, report.table.columns, "");
  for (const auto& row : report.table.rows) {
    std::vector<std::string> fields;
    for (const auto& cell : row) fields.push_back(cell_text(cell, precision));
    append_csv_line(out, fields, "");
  }
  if (report.fits) {
    out += "# fits\n";
    append_csv_line(out, report.fits->columns, "# ");
    for (const auto& row : report.fits->rows) {
      std::vector<std::string> fields;
      for (const auto& cell : row) fields.push_back(cell_text(cell, precision));
      append_csv_line(out, fields, "# ");
    }
  }
  return out;
}

std::string to_json(const Report& report, int precision) {
  ojson doc;
  doc["metadata"] = report.metadata;
  doc["metadata"]["columns"] = report.table.columns;
  doc["rows"] = rows_json(report.table, precision);
  if (report.fits) doc["fits"] = rows_json(*report.fits, precision);
  return doc.dump(2) + "\n";
}

std::string render(const RunConfig& config) {
  const auto report = build_report(config);
  return config.format == OutputFormat::json ? to_json(report, config.precision)
                                             : to_csv(report, config.precision);
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write output file " + path);
  out << text;
  if (!out) throw std::runtime_error("failed writing output file " + path);
}

std::vector<SweepRow> read_sweep_rows(const std::string& text) {
  std::vector<SweepRow> rows;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    ojson doc;
    try {
      doc = ojson::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw ValidationError(std::string("malformed sweep JSON: ") + e.what());
    }
    if (!doc.contains("rows")) throw ValidationError("sweep JSON has no rows");
    for (const auto& item : doc["rows"]) {
      SweepRow row;
      row.n = item.at("N").get<std::size_t>();
      row.temperature = json_number(item.at("T"));
      row.rel_dispersion = json_number(item.at("rel_dispersion"));
      rows.push_back(row);
    }
    return rows;
  }

  std::istringstream in(text);
  std::string line;
  std::vector<std::string> header;
  auto split = [](const std::string& s) {
    std::vector<std::string> fields;
    std::stringstream ss(s);
    std::string f;
    while (std::getline(ss, f, ',')) fields.push_back(f);
    return fields;
  };
  std::size_t col_n = 0, col_t = 0, col_d = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto fields = split(line);
    if (header.empty()) {
      header = fields;
      auto find = [&](const char* name) {
        const auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) throw ValidationError(std::string("sweep CSV lacks column ") + name);
        return static_cast<std::size_t>(it - header.begin());
      };
      col_n = find("N");
      col_t = find("T");
      col_d = find("rel_dispersion");
      continue;
    }
    if (fields.size() != header.size()) throw ValidationError("sweep CSV row has wrong field count");
    SweepRow row;
    row.n = std::stoull(fields[col_n]);
    row.temperature = std::strtod(fields[col_t].c_str(), nullptr);
    row.rel_dispersion = std::strtod(fields[col_d].c_str(), nullptr);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace hchain
