// Python bindings for the core library. Callables cross the boundary as
// std::function, so Python lambdas serve as fields, Hamiltonians, and
// integrands anywhere the C++ API takes one.

#include <pybind11/functional.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <optional>
#include <utility>

#include <json.hpp>

#include "gamcal/calculus.hpp"
#include "gamcal/chain.hpp"
#include "gamcal/errors.hpp"
#include "gamcal/hamilton_jacobi.hpp"
#include "gamcal/hamiltonian.hpp"
#include "gamcal/io.hpp"
#include "gamcal/multivector.hpp"
#include "gamcal/random.hpp"
#include "gamcal/scenarios.hpp"
#include "gamcal/selftest.hpp"
#include "gamcal/solver.hpp"
#include "gamcal/util.hpp"

namespace py = pybind11;
using namespace gamcal;

namespace {

StepSize step(double h) { return StepSize(h); }

}  // namespace

PYBIND11_MODULE(_gamcal, m) {
  m.doc() = "Geometric algebra, geometric calculus, and constraint dynamics";
  m.attr("__version__") = "0.1.0";

  // Exceptions: register the base first so derived classes translate first.
  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<ConfigError>(m, "ConfigError", base);
  py::register_exception<ConvergenceError>(m, "ConvergenceError", base);

  // ------------------------------------------------------------- multivector
  py::class_<Multivector>(m, "Multivector")
      .def(py::init<int>(), py::arg("dim"))
      .def_static("scalar", &Multivector::scalar, py::arg("dim"), py::arg("value"))
      .def_static("basis_vector", &Multivector::basis_vector, py::arg("dim"),
                  py::arg("index"))
      .def_static("basis_blade", &Multivector::basis_blade, py::arg("dim"),
                  py::arg("mask"))
      .def_static("from_coefficients", &Multivector::from_coefficients,
                  py::arg("dim"), py::arg("coefficients"))
      .def_static("vector", &Multivector::vector, py::arg("dim"),
                  py::arg("components"))
      .def_property_readonly("dim", &Multivector::dim)
      .def("__len__", &Multivector::size)
      .def("__getitem__",
           [](const Multivector& a, std::uint32_t mask) {
             if (mask >= a.size()) throw py::index_error("basis mask out of range");
             return a[mask];
           })
      .def("coefficients", &Multivector::coefficients)
      .def("scalar_part", &Multivector::scalar_part)
      .def("vector_part", &Multivector::vector_part)
      .def("is_zero", &Multivector::is_zero)
      .def("single_grade", &Multivector::single_grade)
      .def(-py::self)
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(py::self * py::self)
      .def(py::self * double())
      .def(double() * py::self)
      .def(py::self / double())
      .def(py::self == py::self)
      .def(py::self != py::self)
      .def("__repr__", [](const Multivector& a) { return to_string(a); });

  m.def("geometric_product", &geometric_product, py::arg("a"), py::arg("b"));
  m.def("inner", &inner, py::arg("a"), py::arg("b"));
  m.def("outer", &outer, py::arg("a"), py::arg("b"));
  m.def("grade_project", &grade_project, py::arg("a"), py::arg("r"));
  m.def("reverse", &reverse, py::arg("a"));
  m.def("magnitude", &magnitude, py::arg("a"));
  m.def("squared_magnitude", &squared_magnitude, py::arg("a"));
  m.def("blade_inverse", &blade_inverse, py::arg("a"));
  m.def("wedge_all", &wedge_all, py::arg("vectors"));
  m.def("factor_blade", &factor_blade, py::arg("a"));
  m.def("gram_det", &gram_det, py::arg("a_vectors"), py::arg("b_vectors"));
  m.def("is_pure_grade", &is_pure_grade, py::arg("a"), py::arg("r"));
  m.def("to_string", &to_string, py::arg("a"));
  m.def("parse_multivector", &parse_multivector, py::arg("text"), py::arg("dim"));

  // ---------------------------------------------------------------- calculus
  py::class_<PointFunction>(m, "PointFunction")
      .def(py::init([](int input_dim, int output_dim,
                       std::function<Multivector(const Multivector&)> fn) {
             return PointFunction{input_dim, output_dim, std::move(fn)};
           }),
           py::arg("input_dim"), py::arg("output_dim"), py::arg("fn"))
      .def_readonly("input_dim", &PointFunction::input_dim)
      .def_readonly("output_dim", &PointFunction::output_dim)
      .def("__call__", &PointFunction::operator());

  m.def(
      "directional_derivative",
      [](const PointFunction& F, const Multivector& q, const Multivector& a,
         double h) { return directional_derivative(F, q, a, step(h)); },
      py::arg("f"), py::arg("q"), py::arg("a"), py::arg("h") = 1e-5);
  m.def(
      "vector_derivative",
      [](const PointFunction& F, const Multivector& q, double h) {
        return vector_derivative(F, q, step(h));
      },
      py::arg("f"), py::arg("q"), py::arg("h") = 1e-5);
  m.def(
      "multivector_derivative",
      [](const PointMomentumFunction& H, const Multivector& q, const Multivector& P,
         int grade, double h) {
        return multivector_derivative(H, q, P, grade, step(h));
      },
      py::arg("h_fn"), py::arg("q"), py::arg("p"), py::arg("grade"),
      py::arg("h") = 1e-5);

  py::class_<LinearMap>(m, "LinearMap")
      .def(py::init<int, std::vector<double>>(), py::arg("dim"),
           py::arg("row_major"))
      .def_static(
          "jacobian",
          [](const PointFunction& f, const Multivector& q, double h) {
            return LinearMap::jacobian(f, q, step(h));
          },
          py::arg("f"), py::arg("q"), py::arg("h") = 1e-5)
      .def_property_readonly("dim", &LinearMap::dim)
      .def("entry", &LinearMap::entry, py::arg("row"), py::arg("col"))
      .def("transposed", &LinearMap::transposed)
      .def("apply_vector", &LinearMap::apply_vector, py::arg("v"))
      .def("apply", &LinearMap::apply, py::arg("a"));

  m.def(
      "pushforward",
      [](const PointFunction& f, const Multivector& q, const Multivector& A,
         double h) { return pushforward(f, q, A, step(h)); },
      py::arg("f"), py::arg("q"), py::arg("a"), py::arg("h") = 1e-5);
  m.def(
      "adjoint",
      [](const PointFunction& f, const Multivector& q, const Multivector& B,
         double h) { return adjoint(f, q, B, step(h)); },
      py::arg("f"), py::arg("q"), py::arg("b"), py::arg("h") = 1e-5);

  // ------------------------------------------------------------------ chains
  py::class_<SimplexChain>(m, "SimplexChain")
      .def_static("from_simplices", &SimplexChain::from_simplices, py::arg("dim"),
                  py::arg("simplices"))
      .def_readonly("ambient_dim", &SimplexChain::ambient_dim)
      .def_readonly("simplex_dim", &SimplexChain::simplex_dim)
      .def_readonly("points", &SimplexChain::points)
      .def("cell_count", &SimplexChain::cell_count)
      .def("volume_element", &SimplexChain::volume_element, py::arg("cell"))
      .def("centroid", &SimplexChain::centroid, py::arg("cell"))
      .def("to_json_string",
           [](const SimplexChain& c) { return c.to_json().dump(2) + "\n"; })
      .def_static("from_json_string", [](const std::string& text) {
        return SimplexChain::from_json(nlohmann::json::parse(text));
      });

  m.def("directed_integral", &directed_integral, py::arg("integrand"),
        py::arg("chain"));
  m.def("boundary_chain", &boundary_chain, py::arg("chain"));
  m.def(
      "interior_derivative_integral",
      [](const ChainIntegrand& L, const SimplexChain& chain, double h) {
        return interior_derivative_integral(L, chain, step(h));
      },
      py::arg("integrand"), py::arg("chain"), py::arg("h") = 1e-5);
  m.def("triangulated_rectangle", &triangulated_rectangle, py::arg("u0"),
        py::arg("u1"), py::arg("v0"), py::arg("v1"), py::arg("nu"), py::arg("nv"));
  m.def("triangulated_graph", &triangulated_graph, py::arg("dim"), py::arg("embed"),
        py::arg("u0"), py::arg("u1"), py::arg("v0"), py::arg("v1"), py::arg("nu"),
        py::arg("nv"));
  m.def("segment_chain", &segment_chain, py::arg("dim"), py::arg("points"));
  m.def("triangulated_disk", &triangulated_disk, py::arg("radius"), py::arg("rings"),
        py::arg("sectors"));

  // ------------------------------------------------------------ hamiltonians
  py::class_<Potential>(m, "Potential")
      .def(py::init<std::vector<double>>(), py::arg("coefficients"))
      .def("__call__", &Potential::operator(), py::arg("x"))
      .def("derivative", &Potential::derivative, py::arg("x"))
      .def("second_derivative", &Potential::second_derivative, py::arg("x"))
      .def("coefficients", &Potential::coefficients);

  py::class_<SplitFrame>(m, "SplitFrame")
      .def_static("mechanics", &SplitFrame::mechanics, py::arg("config_dim"))
      .def_static("field_theory", &SplitFrame::field_theory, py::arg("motion_dim"))
      .def_readonly("config_dim", &SplitFrame::config_dim)
      .def_readonly("motion_dim", &SplitFrame::motion_dim)
      .def_readonly("time_axis", &SplitFrame::time_axis)
      .def_readonly("motion_volume", &SplitFrame::motion_volume)
      .def_readonly("field_axis", &SplitFrame::field_axis)
      .def_readonly("momentum_frame", &SplitFrame::momentum_frame);

  py::class_<MechanicsSystem>(m, "MechanicsSystem")
      .def(py::init([](std::function<double(const Multivector&, const Multivector&)> value,
                       std::function<Multivector(const Multivector&, const Multivector&)>
                           grad_q,
                       std::function<Multivector(const Multivector&, const Multivector&)>
                           grad_p) {
             return MechanicsSystem{std::move(value), std::move(grad_q),
                                    std::move(grad_p)};
           }),
           py::arg("value"), py::arg("grad_q"), py::arg("grad_p"))
      .def("value",
           [](const MechanicsSystem& s, const Multivector& q, const Multivector& p) {
             return s.value(q, p);
           })
      .def("grad_q",
           [](const MechanicsSystem& s, const Multivector& q, const Multivector& p) {
             return s.grad_q(q, p);
           })
      .def("grad_p",
           [](const MechanicsSystem& s, const Multivector& q, const Multivector& p) {
             return s.grad_p(q, p);
           });

  py::class_<HamiltonianSpec>(m, "HamiltonianSpec")
      .def_readonly("kind", &HamiltonianSpec::kind)
      .def_readonly("motion_dim", &HamiltonianSpec::motion_dim)
      .def_readonly("config_dim", &HamiltonianSpec::config_dim)
      .def_readonly("lambda_constant", &HamiltonianSpec::lambda_constant)
      .def("value",
           [](const HamiltonianSpec& H, const Multivector& q, const Multivector& p) {
             return H.value(q, p);
           },
           py::arg("q"), py::arg("p"))
      .def("grad_q",
           [](const HamiltonianSpec& H, const Multivector& q, const Multivector& p) {
             return H.grad_q_explicit(q, p);
           },
           py::arg("q"), py::arg("p"))
      .def("grad_momentum",
           [](const HamiltonianSpec& H, const Multivector& q, const Multivector& p) {
             return H.grad_momentum(q, p);
           },
           py::arg("q"), py::arg("p"));

  m.def("separable_mechanics", &separable_mechanics, py::arg("potential"),
        py::arg("frame"));
  m.def("mechanics_hamiltonian", &mechanics_hamiltonian, py::arg("h0"),
        py::arg("frame"));
  m.def("dw_hamiltonian", &dw_hamiltonian, py::arg("potential"), py::arg("frame"));
  m.def("string_hamiltonian", &string_hamiltonian, py::arg("lambda_constant"),
        py::arg("motion_dim"), py::arg("config_dim"));
  m.def(
      "hamiltonian_from_json",
      [](const std::string& text) {
        nlohmann::json block;
        try {
          block = nlohmann::json::parse(text);
        } catch (const nlohmann::json::exception& e) {
          throw ConfigError(std::string("hamiltonian block is not valid JSON: ") +
                            e.what());
        }
        return hamiltonian_from_json(block);
      },
      py::arg("text"));

  // ------------------------------------------------------------------ solver
  py::class_<MotionCurve>(m, "MotionCurve")
      .def_readonly("config_dim", &MotionCurve::config_dim)
      .def_readonly("tau", &MotionCurve::tau)
      .def_readonly("points", &MotionCurve::points)
      .def_readonly("momenta", &MotionCurve::momenta)
      .def_readonly("constraint_residuals", &MotionCurve::constraint_residuals)
      .def_readonly("energies", &MotionCurve::energies)
      .def("sample_count", &MotionCurve::sample_count);

  py::class_<FieldGrid>(m, "FieldGrid")
      .def_static("make", &FieldGrid::make, py::arg("mins"), py::arg("maxs"),
                  py::arg("counts"))
      .def_readonly("mins", &FieldGrid::mins)
      .def_readonly("spacings", &FieldGrid::spacings)
      .def_readonly("counts", &FieldGrid::counts)
      .def_readwrite("phi", &FieldGrid::phi)
      .def_readwrite("momenta", &FieldGrid::momenta)
      .def("axes", &FieldGrid::axes)
      .def("node_count", &FieldGrid::node_count)
      .def("unravel", &FieldGrid::unravel, py::arg("node"))
      .def("ravel", &FieldGrid::ravel, py::arg("idx"))
      .def("on_boundary", &FieldGrid::on_boundary, py::arg("idx"))
      .def("coordinates", &FieldGrid::coordinates, py::arg("idx"))
      .def("set_dirichlet", &FieldGrid::set_dirichlet, py::arg("value"))
      .def("derivative", &FieldGrid::derivative, py::arg("values"), py::arg("axis"));

  py::class_<SurfaceMesh>(m, "SurfaceMesh")
      .def_static("from_map", &SurfaceMesh::from_map, py::arg("dim"),
                  py::arg("embed"), py::arg("u0"), py::arg("u1"), py::arg("v0"),
                  py::arg("v1"), py::arg("nu"), py::arg("nv"))
      .def_readonly("config_dim", &SurfaceMesh::config_dim)
      .def_readonly("nu", &SurfaceMesh::nu)
      .def_readonly("nv", &SurfaceMesh::nv)
      .def_readonly("points", &SurfaceMesh::points)
      .def("at", &SurfaceMesh::at, py::arg("iu"), py::arg("iv"))
      .def("unit_tangent_blade", &SurfaceMesh::unit_tangent_blade, py::arg("iu"),
           py::arg("iv"));

  py::class_<EnergyMomentumField>(m, "EnergyMomentumField")
      .def_readonly("axes", &EnergyMomentumField::axes)
      .def_readonly("counts", &EnergyMomentumField::counts)
      .def_readonly("spacings", &EnergyMomentumField::spacings)
      .def_readonly("values", &EnergyMomentumField::values)
      .def("at", &EnergyMomentumField::at, py::arg("node"), py::arg("j"),
           py::arg("k"));

  py::class_<FieldResiduals>(m, "FieldResiduals")
      .def_readonly("momentum_relation", &FieldResiduals::momentum_relation)
      .def_readonly("field_equation", &FieldResiduals::field_equation);

  py::class_<SpurField>(m, "SpurField")
      .def_readonly("rows", &SpurField::rows)
      .def_readonly("cols", &SpurField::cols)
      .def_readonly("values", &SpurField::values)
      .def_readonly("max_value", &SpurField::max_value);

  m.def("solve_mechanics", &solve_mechanics, py::arg("hamiltonian"), py::arg("q0"),
        py::arg("p0"), py::arg("t_end"), py::arg("dt"));
  m.def("with_constraint_momentum", &with_constraint_momentum,
        py::arg("hamiltonian"), py::arg("q"), py::arg("p_spatial"));
  m.def("solve_scalar_field", &solve_scalar_field, py::arg("hamiltonian"),
        py::arg("grid"), py::arg("tol"), py::arg("max_iter"),
        py::arg("relax") = 1.0);
  m.def("solve_geodesic", &solve_geodesic, py::arg("hamiltonian"), py::arg("q0"),
        py::arg("v"), py::arg("s_end"), py::arg("ds"));
  m.def("constraint_residual",
        py::overload_cast<const HamiltonianSpec&, const MotionCurve&>(
            &constraint_residual),
        py::arg("hamiltonian"), py::arg("motion"));
  m.def("constraint_residual",
        py::overload_cast<const HamiltonianSpec&, const FieldGrid&>(
            &constraint_residual),
        py::arg("hamiltonian"), py::arg("grid"));
  m.def("dw_residuals", &dw_residuals, py::arg("grid"), py::arg("potential"));
  m.def("energy_momentum_tensor", &energy_momentum_tensor, py::arg("grid"),
        py::arg("potential"));
  m.def("continuity_residual", &continuity_residual, py::arg("tensor"));
  m.def("spur_residual", &spur_residual, py::arg("mesh"));
  m.def("curve_spur_residual", &curve_spur_residual, py::arg("points"));
  m.def("action_value", py::overload_cast<const MotionCurve&>(&action_value),
        py::arg("motion"));
  m.def("action_value",
        py::overload_cast<const SurfaceMesh&, double>(&action_value),
        py::arg("mesh"), py::arg("lambda_constant"));
  m.def("energy_drift", &energy_drift, py::arg("motion"));
  m.def("mesh_to_chain", &mesh_to_chain, py::arg("mesh"));

  // -------------------------------------------------------- hamilton-jacobi
  py::class_<HJFunction>(m, "HJFunction")
      .def(py::init([](int config_dim, int output_grade,
                       std::function<Multivector(const Multivector&)> value,
                       int param_count,
                       std::optional<std::function<Multivector(int, const Multivector&)>>
                           param_derivative) {
             HJFunction s;
             s.config_dim = config_dim;
             s.output_grade = output_grade;
             s.value = std::move(value);
             s.param_count = param_count;
             if (param_derivative) s.param_derivative = std::move(*param_derivative);
             return s;
           }),
           py::arg("config_dim"), py::arg("output_grade"), py::arg("value"),
           py::arg("param_count") = 0, py::arg("param_derivative") = py::none())
      .def_readonly("config_dim", &HJFunction::config_dim)
      .def_readonly("output_grade", &HJFunction::output_grade)
      .def_readonly("param_count", &HJFunction::param_count)
      .def("__call__", &HJFunction::operator());

  m.def(
      "hj_momentum",
      [](const HJFunction& S, const Multivector& q, double h) {
        return hj_momentum(S, q, step(h));
      },
      py::arg("s"), py::arg("q"), py::arg("h") = 1e-5);
  m.def(
      "hj_residual",
      [](const HamiltonianSpec& H, const HJFunction& S, const Multivector& q,
         double h) { return hj_residual(H, S, q, step(h)); },
      py::arg("hamiltonian"), py::arg("s"), py::arg("q"), py::arg("h") = 1e-5);
  m.def(
      "weyl_hj_residual",
      [](const Potential& V, const SplitFrame& frame, const HJFunction& s,
         const Multivector& q, double h) {
        return weyl_hj_residual(V, frame, s, q, step(h));
      },
      py::arg("potential"), py::arg("frame"), py::arg("s"), py::arg("q"),
      py::arg("h") = 1e-5);
  m.def(
      "weyl_hj_residual",
      [](const Potential& V, const HJFunction& s, const Multivector& q, double h) {
        return weyl_hj_residual(V, s, q, step(h));
      },
      py::arg("potential"), py::arg("s"), py::arg("q"), py::arg("h") = 1e-5);

  py::class_<ConservedSamples>(m, "ConservedSamples")
      .def_readonly("values", &ConservedSamples::values)
      .def_readonly("spread", &ConservedSamples::spread);

  m.def("conserved_quantity", &conserved_quantity, py::arg("s"), py::arg("motion"),
        py::arg("param_index"));
  m.def("motion_from_hj", &motion_from_hj, py::arg("q0"), py::arg("v"),
        py::arg("s_end"), py::arg("ds"), py::arg("lambda_constant"));
  m.def("hj_continuity_check", &hj_continuity_check, py::arg("s"),
        py::arg("param_index"), py::arg("patch"));
  m.def("point_source_hj", &point_source_hj, py::arg("lambda_constant"),
        py::arg("q0"), py::arg("exclusion_radius"));

  // --------------------------------------------------------------- selftest
  py::class_<IdentityCheck>(m, "IdentityCheck")
      .def_readonly("name", &IdentityCheck::name)
      .def_readonly("cases", &IdentityCheck::cases)
      .def_readonly("max_rel_error", &IdentityCheck::max_rel_error)
      .def_readonly("ok", &IdentityCheck::pass);

  m.def("run_ga_selftest", &run_ga_selftest, py::arg("seed"),
        py::arg("cases_per_dim") = 1000,
        py::arg("dims") = std::vector<int>{3, 4, 5}, py::arg("tol") = 1e-12);

  // ------------------------------------------------------------------- other
  py::class_<Rng>(m, "Rng")
      .def(py::init<std::uint64_t>(), py::arg("seed"))
      .def("uniform", &Rng::uniform, py::arg("lo") = 0.0, py::arg("hi") = 1.0)
      .def("normal", &Rng::normal)
      .def("uniform_int", &Rng::uniform_int, py::arg("lo"), py::arg("hi"))
      .def("pure_grade", &Rng::pure_grade, py::arg("dim"), py::arg("grade"),
           py::arg("scale") = 1.0)
      .def("vector", &Rng::vector, py::arg("dim"), py::arg("scale") = 1.0)
      .def("unit_vector", &Rng::unit_vector, py::arg("dim"))
      .def("blade", &Rng::blade, py::arg("dim"), py::arg("grade"),
           py::arg("scale") = 1.0)
      .def("multivector", &Rng::multivector, py::arg("dim"),
           py::arg("scale") = 1.0);

  m.def("write_motion_csv", &write_motion_csv, py::arg("path"), py::arg("motion"));
  m.def("read_motion_csv", &read_motion_csv, py::arg("path"),
        py::arg("config_dim"));
  m.def("format_double", &format_double, py::arg("x"));
  m.def("fnv1a64_hex", &fnv1a64_hex, py::arg("bytes"));

  m.def(
      "run_scenario",
      [](const std::string& config_path, const std::string& out_dir) {
        return run_scenario(ScenarioConfig::load(config_path), out_dir).dump(2) +
               "\n";
      },
      py::arg("config_path"), py::arg("out_dir"),
      "Run a scenario from a config file and return the summary JSON text.");
  m.def(
      "verify_data",
      [](const std::string& config_path, const std::string& data_path) {
        return verify_data(ScenarioConfig::load(config_path), data_path).dump(2) +
               "\n";
      },
      py::arg("config_path"), py::arg("data_path"),
      "Re-check a stored artifact against its config; returns the report JSON text.");
  m.def("scenario_names", [] { return scenario_names(); });
}
