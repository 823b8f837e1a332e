#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hchain/chain_spec.hpp"
#include "hchain/cli_io.hpp"
#include "hchain/eigen_oracle.hpp"
#include "hchain/error.hpp"
#include "hchain/modes.hpp"
#include "hchain/observables.hpp"
#include "hchain/scaling.hpp"
#include "hchain/thermo.hpp"

namespace py = pybind11;
using namespace hchain;

namespace {

std::vector<std::vector<double>> to_rows(const SquareMatrix& m) {
  std::vector<std::vector<double>> rows(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i) rows[i].assign(m.row(i).begin(), m.row(i).end());
  return rows;
}

SquareMatrix from_rows(const std::vector<std::vector<double>>& rows) {
  SquareMatrix m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) throw ValidationError("matrix must be square");
    for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

py::dict stats_dict(const LengthStatistics& s) {
  py::dict d;
  d["mean"] = s.mean;
  d["variance"] = s.variance;
  d["relative_dispersion"] = s.relative_dispersion;
  d["gamma"] = s.gamma;
  d["x_values"] = s.x_values;
  d["asymptotic"] = s.asymptotic;
  d["riemann_bound"] = s.riemann_bound;
  d["ratio"] = s.ratio();
  d["zero_temperature"] = s.zero_temperature;
  return d;
}

}  // namespace

PYBIND11_MODULE(hchain, m) {
  m.doc() = "Quantum harmonic chain: normal modes, Gibbs statistics and length fluctuations.";
  m.attr("__version__") = kVersion;

  py::enum_<UnitKind>(m, "UnitKind").value("reduced", UnitKind::reduced).value("si", UnitKind::si);

  py::class_<UnitSystem>(m, "UnitSystem")
      .def_static("reduced", &UnitSystem::reduced)
      .def_static("si", &UnitSystem::si)
      .def_readonly("kind", &UnitSystem::kind)
      .def_readonly("hbar", &UnitSystem::hbar)
      .def_readonly("k_boltzmann", &UnitSystem::k_boltzmann);

  py::class_<ChainSpec>(m, "ChainSpec")
      .def(py::init([](std::size_t n, double mass, double stiffness, double spacing, UnitSystem units) {
             ChainSpec s{n, mass, stiffness, spacing, units};
             s.validate();
             return s;
           }),
           py::arg("n"), py::arg("mass") = 1.0, py::arg("stiffness") = 1.0, py::arg("spacing") = 1.0,
           py::arg("units") = UnitSystem::reduced())
      .def_readonly("n", &ChainSpec::n)
      .def_readonly("mass", &ChainSpec::mass)
      .def_readonly("stiffness", &ChainSpec::stiffness)
      .def_readonly("spacing", &ChainSpec::spacing)
      .def_readonly("units", &ChainSpec::units)
      .def("max_frequency", &ChainSpec::max_frequency);

  py::class_<ModeTable>(m, "ModeTable")
      .def_readonly("n", &ModeTable::n)
      .def_readonly("wavenumbers", &ModeTable::wavenumbers)
      .def_readonly("frequencies", &ModeTable::frequencies)
      .def_property_readonly("amplitudes", [](const ModeTable& t) { return to_rows(t.amplitudes); })
      .def_property_readonly("parities", [](const ModeTable& t) {
        std::vector<std::string> out;
        for (auto p : t.parities) out.push_back(p == Parity::even ? "even" : "odd");
        return out;
      })
      .def("amplitude", &ModeTable::amplitude, py::arg("m"), py::arg("particle"));

  m.def("equilibrium_positions", &equilibrium_positions);
  m.def("dispersion", &dispersion, py::arg("k"), py::arg("spec"));
  m.def("mode_frequencies", &mode_frequencies);
  m.def("build_mode_table", &build_mode_table);
  m.def("build_dynamical_matrix", [](const ChainSpec& s) { return to_rows(build_dynamical_matrix(s).entries); });
  m.def("to_normal", [](const std::vector<double>& y, const ModeTable& t, bool momentum) {
        return to_normal({y, momentum ? Frame::particle_momentum : Frame::shifted_position}, t).values;
      }, py::arg("values"), py::arg("table"), py::arg("momentum") = false);
  m.def("from_normal", [](const std::vector<double>& u, const ModeTable& t, bool momentum) {
        return from_normal({u, momentum ? Frame::normal_momentum : Frame::normal_coordinate}, t).values;
      }, py::arg("values"), py::arg("table"), py::arg("momentum") = false);

  m.def("symmetric_eigen", [](const std::vector<std::vector<double>>& a, double tol) {
        const auto r = symmetric_eigen(from_rows(a), tol);
        py::dict d;
        d["eigenvalues"] = r.eigenvalues;
        d["eigenvectors"] = to_rows(r.eigenvectors);
        d["iterations"] = r.iterations;
        d["residual"] = r.residual;
        return d;
      }, py::arg("matrix"), py::arg("tolerance") = 1e-12);

  py::class_<ThermoState>(m, "ThermoState")
      .def_static("at", &ThermoState::at, py::arg("temperature"), py::arg("units") = UnitSystem::reduced())
      .def_static("zero", &ThermoState::zero, py::arg("units") = UnitSystem::reduced())
      .def_property_readonly("temperature", &ThermoState::temperature)
      .def_property_readonly("beta", &ThermoState::beta);

  m.def("partition_function", &partition_function, py::arg("omega"), py::arg("state"));
  m.def("mean_occupation", &mean_occupation, py::arg("omega"), py::arg("state"));
  m.def("mean_u_squared", &mean_u_squared, py::arg("omega"), py::arg("mass"), py::arg("state"));
  m.def("enumerate_phonon_energies", [](const ChainSpec& s, double cutoff) {
        std::vector<std::pair<std::vector<std::uint32_t>, double>> out;
        for (auto& st : enumerate_phonon_energies(s, cutoff)) out.emplace_back(st.occupations, st.energy);
        return out;
      }, py::arg("spec"), py::arg("energy_cutoff"));

  m.def("mean_length", &mean_length);
  m.def("odd_mode_coefficient", &odd_mode_coefficient, py::arg("j"), py::arg("n"));
  m.def("length_variance_exact", &length_variance_exact, py::arg("spec"), py::arg("state"));
  m.def("length_variance_dimensionless", &length_variance_dimensionless, py::arg("spec"), py::arg("state"));
  m.def("asymptotic_dispersion", &asymptotic_dispersion, py::arg("spec"), py::arg("state"));
  m.def("riemann_bound", &riemann_bound, py::arg("spec"), py::arg("state"));
  m.def("length_statistics", [](const ChainSpec& s, const ThermoState& st) {
        return stats_dict(length_statistics(s, st));
      }, py::arg("spec"), py::arg("state"));

  m.def("fit_loglog", [](const std::vector<std::pair<double, double>>& pts) {
        const auto f = fit_loglog(pts);
        return py::make_tuple(f.slope, f.intercept, f.residual);
      });
  m.def("run_sweep", [](const std::vector<std::size_t>& ns, const std::vector<double>& temps,
                        const ChainSpec& base, std::size_t fit_min_n) {
        const auto r = run_sweep({ns, temps, base, fit_min_n});
        py::list rows;
        for (const auto& row : r.rows) {
          py::dict d;
          d["N"] = row.n;
          d["T"] = row.temperature;
          d["gamma"] = row.gamma;
          d["mean_length"] = row.mean_length;
          d["variance_exact"] = row.variance_exact;
          d["rel_dispersion"] = row.rel_dispersion;
          d["asymptotic"] = row.asymptotic;
          d["ratio"] = row.ratio;
          rows.append(d);
        }
        py::list fits;
        for (const auto& f : r.fits) {
          py::dict d;
          d["T"] = f.temperature;
          d["points"] = f.points;
          d["slope"] = f.fit ? py::cast(f.fit->slope) : py::none();
          d["intercept"] = f.fit ? py::cast(f.fit->intercept) : py::none();
          d["residual"] = f.fit ? py::cast(f.fit->residual) : py::none();
          fits.append(d);
        }
        py::dict out;
        out["rows"] = rows;
        out["fits"] = fits;
        return out;
      }, py::arg("n_values"), py::arg("temperatures"), py::arg("base"), py::arg("fit_min_n") = 256);
  m.def("si_preset", [](const std::string& name, std::size_t n) {
        const auto p = si_preset(name, n);
        return py::make_tuple(p.spec, p.state, p.max_frequency);
      }, py::arg("name"), py::arg("n") = 1'000'000);

  m.def("render", [](const std::vector<std::string>& args) { return render(parse_config(args)); },
        "Run a CLI subcommand in-process and return its serialized output.");
}
