#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <complex>
#include <string>
#include <vector>

#include "wmorph/json_io.hpp"
#include "wmorph/morphism.hpp"
#include "wmorph/verify.hpp"

namespace py = pybind11;

namespace {

wmorph::ExactValue exact_from_dict(const py::dict& terms) {
    std::map<int, wmorph::Rational> out;
    for (const auto& item : terms) {
        const int power = py::cast<int>(item.first);
        wmorph::Rational coeff;
        if (py::isinstance<py::str>(item.second)) {
            coeff = wmorph::rational_from_string(py::cast<std::string>(item.second));
        } else if (py::isinstance<py::int_>(item.second)) {
            coeff = wmorph::rational_from_string(py::str(item.second).cast<std::string>());
        } else {
            throw py::type_error("coefficients must be \"num/den\" strings or ints");
        }
        out[power] += coeff;
    }
    return wmorph::ExactValue(std::move(out));
}

py::dict exact_to_dict(const wmorph::ExactValue& v) {
    py::dict out;
    for (const auto& [power, coeff] : v.terms()) {
        out[py::int_(power)] = wmorph::rational_to_string(coeff);
    }
    return out;
}

py::dict order_to_dict(const wmorph::OrderReport& r) {
    py::dict out;
    out["verdict"] = std::string(to_string(r.verdict));
    if (r.q) out["q"] = *r.q;
    if (r.witness_power) out["witness_power"] = *r.witness_power;
    if (r.qmax) out["qmax"] = *r.qmax;
    if (r.tol) out["tol"] = *r.tol;
    return out;
}

wmorph::Convention conv_arg(const std::string& s) {
    return wmorph::convention_from_string(s);
}

}  // namespace

PYBIND11_MODULE(_wmorph, m) {
    m.doc() = "Exact and numerical toolkit for the generalized Weinstein morphism "
              "on complex projective space";

    py::register_exception<wmorph::HypersurfacePoint>(m, "HypersurfacePointError");
    py::register_exception<wmorph::SingularFormula>(m, "SingularFormulaError");
    py::register_exception<wmorph::NonFiniteIntegrand>(m, "NonFiniteIntegrandError");
    py::register_exception<wmorph::ZeroPeriod>(m, "ZeroPeriodError");

    py::class_<wmorph::ExactValue>(m, "ExactValue",
                                   "Finite sum of rational multiples of powers of pi")
        .def(py::init(&exact_from_dict), py::arg("terms") = py::dict())
        .def("terms", &exact_to_dict)
        .def("to_real", &wmorph::ExactValue::to_real)
        .def("is_zero", &wmorph::ExactValue::is_zero)
        .def("scaled",
             [](const wmorph::ExactValue& v, const std::string& factor) {
                 return v.scaled(wmorph::rational_from_string(factor));
             })
        .def("__add__", &wmorph::ExactValue::operator+)
        .def("__neg__", py::overload_cast<>(&wmorph::ExactValue::operator-, py::const_))
        .def("__sub__",
             py::overload_cast<const wmorph::ExactValue&>(&wmorph::ExactValue::operator-,
                                                          py::const_))
        .def("__eq__", [](const wmorph::ExactValue& a,
                          const wmorph::ExactValue& b) { return a == b; })
        .def("__repr__", [](const wmorph::ExactValue& v) {
            return "ExactValue(" + v.to_string() + ")";
        })
        .def("__str__", &wmorph::ExactValue::to_string);

    py::class_<wmorph::BallPoint>(m, "BallPoint", "Point of the open unit ball in C^n")
        .def(py::init<std::vector<wmorph::Complex>>())
        .def_property_readonly("coords", &wmorph::BallPoint::coords)
        .def_property_readonly("dim", &wmorph::BallPoint::dim)
        .def_property_readonly("norm_sq", &wmorph::BallPoint::norm_sq);

    py::class_<wmorph::ProjPoint>(m, "ProjPoint", "Homogeneous coordinates on CP^n")
        .def(py::init<std::vector<wmorph::Complex>>())
        .def_property_readonly("coords", &wmorph::ProjPoint::coords)
        .def_property_readonly("dim", &wmorph::ProjPoint::dim)
        .def("canonical", &wmorph::ProjPoint::canonical);

    py::class_<wmorph::SU2Element>(m, "SU2Element")
        .def(py::init<wmorph::Complex, wmorph::Complex>(), py::arg("a"), py::arg("b"))
        .def_property_readonly("a", &wmorph::SU2Element::a)
        .def_property_readonly("b", &wmorph::SU2Element::b)
        .def("inverse", &wmorph::SU2Element::inverse)
        .def("__mul__", &wmorph::SU2Element::operator*)
        .def_static("identity", &wmorph::SU2Element::identity);

    py::class_<wmorph::QuadratureSpec>(m, "QuadratureSpec")
        .def(py::init([](int radial_nodes, int angular_nodes, double fd_step,
                         bool force_finite_differences) {
                 wmorph::QuadratureSpec spec;
                 spec.radial_nodes = radial_nodes;
                 spec.angular_nodes = angular_nodes;
                 spec.fd_step = fd_step;
                 spec.force_finite_differences = force_finite_differences;
                 spec.validate();
                 return spec;
             }),
             py::arg("radial_nodes") = 32, py::arg("angular_nodes") = 32,
             py::arg("fd_step") = 1e-5, py::arg("force_finite_differences") = false)
        .def_readonly("radial_nodes", &wmorph::QuadratureSpec::radial_nodes)
        .def_readonly("angular_nodes", &wmorph::QuadratureSpec::angular_nodes)
        .def_readonly("fd_step", &wmorph::QuadratureSpec::fd_step);

    py::class_<wmorph::CappingMap>(m, "CappingMap")
        .def_property_readonly("k", &wmorph::CappingMap::k)
        .def_property_readonly("n", &wmorph::CappingMap::n)
        .def_static("flat_disk", &wmorph::CappingMap::flat_disk, py::arg("n"),
                    py::arg("z1"), py::arg("z2"))
        .def_static("warped", &wmorph::CappingMap::warped, py::arg("base"),
                    py::arg("amplitude"), py::arg("real_coord_index"));

    py::class_<wmorph::PeriodGroup>(m, "PeriodGroup")
        .def_readonly("k", &wmorph::PeriodGroup::k)
        .def_readonly("n", &wmorph::PeriodGroup::n)
        .def_readonly("generator", &wmorph::PeriodGroup::generator);

    py::class_<wmorph::MorphismEstimate>(m, "MorphismEstimate")
        .def_readonly("value", &wmorph::MorphismEstimate::value)
        .def_readonly("stderr", &wmorph::MorphismEstimate::std_error)
        .def_readonly("samples", &wmorph::MorphismEstimate::samples)
        .def_readonly("seed", &wmorph::MorphismEstimate::seed)
        .def_property_readonly("convention",
                               [](const wmorph::MorphismEstimate& e) {
                                   return to_string(e.convention);
                               })
        .def_readonly("reduced", &wmorph::MorphismEstimate::reduced)
        .def_readonly("period", &wmorph::MorphismEstimate::period)
        .def("__repr__", [](const wmorph::MorphismEstimate& e) {
            return "MorphismEstimate(value=" + wmorph::format_sig(e.value) +
                   ", stderr=" + wmorph::format_sig(e.std_error, 3) + ")";
        });

    m.def("exact_to_real", &wmorph::exact_to_real);
    m.def("exact_add", &wmorph::exact_add);

    m.def("proj_equal", &wmorph::proj_equal, py::arg("p"), py::arg("q"), py::arg("tol"));
    m.def("proj_distance", &wmorph::proj_distance);

    m.def(
        "embed",
        [](const wmorph::BallPoint& z) { return wmorph::embed(wmorph::Chart(z.dim()), z); },
        py::arg("z"));
    m.def(
        "chart_inverse",
        [](const wmorph::ProjPoint& p) {
            return wmorph::chart_inverse(wmorph::Chart(p.dim()), p);
        },
        py::arg("p"));
    m.def("act_proj", &wmorph::act_proj, py::arg("A"), py::arg("p"));
    m.def("act_ball", &wmorph::act_ball, py::arg("A"), py::arg("z"));
    m.def("orbit_point", &wmorph::orbit_point, py::arg("A"), py::arg("z"));

    m.def(
        "haar_sample",
        [](uint64_t seed, uint64_t index) {
            wmorph::rng::Stream stream(seed, index);
            return wmorph::haar_sample(stream);
        },
        py::arg("seed"), py::arg("index") = 0);
    m.def(
        "sample_ball",
        [](int n, uint64_t seed, uint64_t index) {
            wmorph::rng::Stream stream(seed, index);
            return wmorph::sample_ball(n, stream);
        },
        py::arg("n"), py::arg("seed"), py::arg("index") = 0);

    m.def(
        "omega_power_eval",
        [](const std::vector<std::vector<double>>& vectors, int k,
           const std::string& convention) {
            wmorph::Frame frame;
            if (vectors.empty()) throw py::value_error("need 2k frame vectors");
            frame.point.assign(vectors.front().size(), 0.0);
            frame.vectors = vectors;
            return wmorph::omega_power_eval(frame, k, conv_arg(convention));
        },
        py::arg("vectors"), py::arg("k"), py::arg("convention") = "normalized");

    m.def(
        "flat_disk_closed_form",
        [](wmorph::Complex z1, wmorph::Complex z2, const std::string& convention) {
            return wmorph::flat_disk_closed_form(z1, z2, conv_arg(convention));
        },
        py::arg("z1"), py::arg("z2"), py::arg("convention") = "normalized");

    m.def(
        "integrate_pullback",
        [](const wmorph::CappingMap& cap, const wmorph::QuadratureSpec& spec,
           const std::string& convention, int workers) {
            return wmorph::integrate_pullback(cap, spec, conv_arg(convention), workers);
        },
        py::arg("cap"), py::arg("spec") = wmorph::QuadratureSpec{},
        py::arg("convention") = "normalized", py::arg("workers") = 0);

    m.def(
        "orbit_area_pointwise",
        [](const wmorph::BallPoint& z, const std::string& convention,
           const std::string& method, const wmorph::QuadratureSpec& spec, int workers) {
            const auto m_enum = method == "numeric" ? wmorph::PointwiseMethod::numeric
                                                    : wmorph::PointwiseMethod::closed_form;
            if (method != "numeric" && method != "closed_form") {
                throw py::value_error("method must be closed_form or numeric");
            }
            return wmorph::orbit_area_pointwise(z, conv_arg(convention), m_enum, spec,
                                                workers);
        },
        py::arg("z"), py::arg("convention") = "normalized",
        py::arg("method") = "closed_form", py::arg("spec") = wmorph::QuadratureSpec{},
        py::arg("workers") = 0);

    m.def(
        "chart_area_closed_form",
        [](const wmorph::ProjPoint& p, const std::string& convention) {
            return wmorph::chart_area_closed_form(p, conv_arg(convention));
        },
        py::arg("p"), py::arg("convention") = "normalized");

    m.def(
        "average_mc",
        [](int n, uint64_t samples, uint64_t seed, const std::string& convention,
           int workers) {
            wmorph::SamplerConfig cfg;
            cfg.n = n;
            cfg.samples = samples;
            cfg.seed = seed;
            cfg.convention = conv_arg(convention);
            cfg.workers = workers;
            return wmorph::average_mc(cfg);
        },
        py::arg("n"), py::arg("samples"), py::arg("seed") = 42,
        py::arg("convention") = "normalized", py::arg("workers") = 0);

    m.def(
        "average_mc_selftest",
        [](int n, uint64_t samples, uint64_t seed, int workers) {
            wmorph::SamplerConfig cfg;
            cfg.n = n;
            cfg.samples = samples;
            cfg.seed = seed;
            cfg.workers = workers;
            return wmorph::average_mc_selftest(cfg);
        },
        py::arg("n"), py::arg("samples"), py::arg("seed") = 42, py::arg("workers") = 0,
        "Same sampling pipeline with the integrand replaced by 1; the mean is "
        "exactly 1 and the standard error exactly 0 when healthy.");

    m.def(
        "average_quadrature",
        [](int n, const std::string& convention) {
            return wmorph::average_quadrature(n, conv_arg(convention));
        },
        py::arg("n"), py::arg("convention") = "normalized");

    m.def(
        "closed_form_average",
        [](int n, const std::string& source, const std::string& convention) {
            wmorph::ClosedFormSource src;
            if (source == "paper") {
                src = wmorph::ClosedFormSource::paper;
            } else if (source == "derived") {
                src = wmorph::ClosedFormSource::derived;
            } else {
                throw py::value_error("source must be paper or derived");
            }
            return wmorph::closed_form_average(n, src, conv_arg(convention));
        },
        py::arg("n"), py::arg("source"), py::arg("convention") = "normalized");

    m.def(
        "discrepancy_report_json",
        [](int n, uint64_t samples, uint64_t seed, const std::string& convention,
           int workers) {
            wmorph::SamplerConfig cfg;
            cfg.samples = samples;
            cfg.seed = seed;
            cfg.convention = conv_arg(convention);
            cfg.workers = workers;
            return wmorph::discrepancy_to_json(wmorph::discrepancy_report(n, cfg)).dump();
        },
        py::arg("n"), py::arg("samples") = 100000, py::arg("seed") = 42,
        py::arg("convention") = "normalized", py::arg("workers") = 0);

    m.def(
        "period_generator",
        [](int n, const std::string& convention) {
            return wmorph::period_generator(n, conv_arg(convention));
        },
        py::arg("n"), py::arg("convention") = "normalized");

    m.def("reduce_mod", &wmorph::reduce_mod, py::arg("v"), py::arg("period"));

    m.def(
        "order_exact",
        [](const wmorph::ExactValue& v, const wmorph::PeriodGroup& period) {
            return order_to_dict(wmorph::order_exact(v, period));
        },
        py::arg("v"), py::arg("period"));
    m.def(
        "order_numeric",
        [](double v, const wmorph::PeriodGroup& period, uint64_t qmax, double tol) {
            return order_to_dict(wmorph::order_numeric(v, period, qmax, tol));
        },
        py::arg("v"), py::arg("period"), py::arg("qmax") = 1000000,
        py::arg("tol") = 1e-9);

    m.def(
        "verify_suite",
        [](const std::string& suite, uint64_t trials, double tol, uint64_t seed) {
            wmorph::VerifyOptions opts;
            opts.trials = trials;
            opts.tol = tol;
            opts.seed = seed;
            py::list out;
            for (const auto& r : wmorph::verify_suite(suite, opts)) {
                py::dict item;
                item["name"] = r.name;
                item["pass"] = r.pass;
                item["worst"] = r.worst;
                item["tol"] = r.tol;
                item["counterexample"] = r.detail;
                out.append(std::move(item));
            }
            return out;
        },
        py::arg("suite"), py::arg("trials") = 0, py::arg("tol") = 0.0,
        py::arg("seed") = 42);

#ifdef VERSION_INFO
#define WMORPH_STR_IMPL(x) #x
#define WMORPH_STR(x) WMORPH_STR_IMPL(x)
    m.attr("__version__") = WMORPH_STR(VERSION_INFO);
#else
    m.attr("__version__") = "0.1.0";
#endif
}
