#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kdvsat/convergence.hpp"
#include "kdvsat/diagnostics.hpp"
#include "kdvsat/errors.hpp"
#include "kdvsat/picard.hpp"
#include "kdvsat/property_suite.hpp"
#include "kdvsat/scenario.hpp"
#include "kdvsat/stepper.hpp"

namespace py = pybind11;
using namespace kdvsat;

namespace {

using DArray = py::array_t<double, py::array::c_style | py::array::forcecast>;

StateField make_field(const SpatialGrid& grid, DArray values) {
  auto buf = values.request();
  if (buf.ndim != 1)
    throw ConfigError("StateField: values must be a 1-d array");
  const double* p = static_cast<const double*>(buf.ptr);
  return StateField(grid, std::vector<double>(p, p + buf.shape[0]));
}

py::array field_values(const StateField& f) {
  return py::array_t<double>(static_cast<py::ssize_t>(f.size()), f.values().data());
}

py::dict trace_dict(const EnergyTrace& trace) {
  const py::ssize_t m = static_cast<py::ssize_t>(trace.samples.size());
  py::array_t<double> t(m), e(m), slope(m), ctrl(m), we(m), res(m), h1sq(m);
  auto wt = t.mutable_unchecked<1>();
  auto we_ = e.mutable_unchecked<1>();
  auto ws = slope.mutable_unchecked<1>();
  auto wc = ctrl.mutable_unchecked<1>();
  auto ww = we.mutable_unchecked<1>();
  auto wr = res.mutable_unchecked<1>();
  auto wh = h1sq.mutable_unchecked<1>();
  for (py::ssize_t k = 0; k < m; ++k) {
    const auto& s = trace.samples[static_cast<size_t>(k)];
    wt(k) = s.t;
    we_(k) = s.energy;
    ws(k) = s.boundary_slope;
    wc(k) = s.control_l2;
    ww(k) = s.weighted_energy;
    wr(k) = s.dissipation_residual;
    wh(k) = s.h1_seminorm_sq;
  }
  py::dict d;
  d["t"] = t;
  d["E"] = e;
  d["boundary_slope"] = slope;
  d["control_l2"] = ctrl;
  d["weighted_E"] = we;
  d["dissipation_residual"] = res;
  d["h1_seminorm_sq"] = h1sq;
  return d;
}

py::dict trajectory_dict(const Trajectory& traj) {
  py::dict d;
  d["times"] = py::cast(traj.times);
  py::list states;
  for (const auto& s : traj.states) states.append(field_values(s));
  d["states"] = states;
  return d;
}

FeedbackLaw law_from_args(const std::string& law, double a, double us) {
  if (law == "zero") return FeedbackLaw::zero();
  if (law == "linear") return FeedbackLaw::linear(a);
  if (law == "saturated") return FeedbackLaw::saturated(a, us);
  throw ConfigError("law must be zero|linear|saturated");
}

} // namespace

PYBIND11_MODULE(_kdvsat, m) {
  m.doc() = "KdV equation under L2-saturated distributed feedback: core operations";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_RuntimeError);

  py::class_<SpatialGrid>(m, "SpatialGrid")
      .def(py::init<double, int>(), py::arg("length"), py::arg("n_interior"))
      .def_property_readonly("length", &SpatialGrid::length)
      .def_property_readonly("n_interior", &SpatialGrid::n_interior)
      .def_property_readonly("spacing", &SpatialGrid::spacing)
      .def("nodes", [](const SpatialGrid& g) { return py::cast(g.nodes()); });

  py::class_<StateField>(m, "StateField")
      .def(py::init(&make_field), py::arg("grid"), py::arg("values"))
      .def_property_readonly("grid", &StateField::grid)
      .def_property_readonly("values", &field_values);

  m.def("l2_norm", py::overload_cast<const StateField&>(&l2_norm));
  m.def("h1_seminorm", py::overload_cast<const StateField&>(&h1_seminorm));
  m.def("named_profile", &named_profile, py::arg("name"), py::arg("grid"),
        py::arg("scale") = 1.0);

  m.def("sat", [](const StateField& s, double level_u_s) {
    return sat(s, SaturationParams(level_u_s));
  }, py::arg("s"), py::arg("level_u_s"));
  m.def("lipschitz_ratio", [](const StateField& s, const StateField& st, double us) {
    return lipschitz_ratio(s, st, SaturationParams(us));
  }, py::arg("s"), py::arg("s_tilde"), py::arg("level_u_s"));
  m.def("sector_gain", [](double a, double us, double r) {
    const SectorGain g = sector_gain(a, us, r);
    py::dict d;
    d["gain_a"] = g.gain_a;
    d["radius_r"] = g.radius_r;
    d["k_of_r"] = g.k_of_r;
    return d;
  }, py::arg("a"), py::arg("u_s"), py::arg("r"));
  m.def("sector_defect", [](const StateField& s, double a, double us, double r) {
    return sector_defect(s, sector_gain(a, us, r), SaturationParams(us));
  }, py::arg("s"), py::arg("a"), py::arg("u_s"), py::arg("r"));

  m.def("control_field", [](const StateField& y, const std::string& law, double a, double us) {
    return control_field(law_from_args(law, a, us), y);
  }, py::arg("y"), py::arg("law"), py::arg("gain_a") = 0.0, py::arg("level_u_s") = 0.0);

  m.def("decay_envelope", [](double a, double us, double r) {
    const DecayEnvelope env = decay_envelope(FeedbackLaw::saturated(a, us), r);
    py::dict d;
    d["radius_r"] = env.radius_r;
    d["gain_a"] = env.gain_a;
    d["level_u_s"] = env.level_u_s;
    d["mu"] = env.mu;
    d["switch_time_T_r"] = env.switch_time_T_r;
    d["amplification"] = env.amplification;
    return d;
  }, py::arg("gain_a"), py::arg("level_u_s"), py::arg("r"));

  m.def("critical_lengths", [](double length, int bound, double tol) {
    py::list out;
    for (const auto& match : critical_lengths(CriticalLengthQuery{length, bound, tol}))
      out.append(py::make_tuple(match.k, match.l, match.length_kl));
    return out;
  }, py::arg("length"), py::arg("bound") = 10, py::arg("tolerance") = 1e-9);

  m.def("simulate", [](const std::string& scenario_text) {
    const Scenario sc = parse_scenario_text(scenario_text, "inline");
    const SimResult res = simulate(to_sim_config(sc));
    py::dict d = trace_dict(res.trace);
    d["trajectory"] = trajectory_dict(res.trajectory);
    d["dt"] = res.dt_final;
    d["steps"] = res.steps;
    d["halvings"] = res.halvings;
    return d;
  }, py::arg("scenario_text"),
     "Integrate a scenario given as `key = value` text; returns the energy "
     "trace, snapshots and step metadata.");

  m.def("picard_mild_solution", [](const StateField& y0, const std::string& law,
                                   double a, double us, double T, double tol,
                                   int n_time_steps) {
    const PicardResult res =
        picard_mild_solution(y0, law_from_args(law, a, us), T, tol, n_time_steps);
    py::dict d = trajectory_dict(res.trajectory);
    d["contraction_history"] = py::cast(res.contraction_history);
    d["iterations"] = res.iterations;
    return d;
  }, py::arg("y0"), py::arg("law"), py::arg("gain_a"), py::arg("level_u_s"),
     py::arg("T"), py::arg("tol") = 1e-10, py::arg("n_time_steps") = 200);

  m.def("bt_norm", [](const SpatialGrid& grid, py::list times, py::list states) {
    Trajectory traj;
    for (auto t : times) traj.times.push_back(t.cast<double>());
    for (auto s : states) traj.states.push_back(make_field(grid, s.cast<DArray>()));
    return bt_norm(traj);
  }, py::arg("grid"), py::arg("times"), py::arg("states"));

  m.def("run_property_suite", [](std::uint64_t seed) {
    const PropertySuiteReport rep = run_property_suite(seed, nullptr);
    py::dict d;
    d["seed"] = rep.seed;
    d["pass"] = rep.pass;
    d["min_sector_defect"] = rep.min_sector_defect;
    d["max_lipschitz_ratio"] = rep.max_lipschitz_ratio;
    d["lipschitz_above_one"] = rep.lipschitz_above_one;
    d["oddness_exact"] = rep.oddness_exact;
    d["worst_energy_increase"] = rep.worst_energy_increase;
    d["failure"] = rep.failure;
    return d;
  }, py::arg("seed") = 20240901);
}
