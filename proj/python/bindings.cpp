#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "thermalnoon/analytic.hpp"
#include "thermalnoon/errors.hpp"
#include "thermalnoon/fockstate.hpp"
#include "thermalnoon/geometry.hpp"
#include "thermalnoon/pathsum.hpp"
#include "thermalnoon/speckle.hpp"

namespace py = pybind11;
namespace tn = thermalnoon;

namespace {

tn::SourceArray make_sources(std::vector<int> prefactors, std::vector<double> nbar) {
    return tn::SourceArray(std::move(prefactors), std::move(nbar));
}

py::int_ to_py(const tn::BigInt& v) {
    return py::module_::import("builtins").attr("int")(v.str());
}

py::dict curve_dict(const tn::CorrelationCurve& c) {
    py::dict d;
    d["grid"] = c.grid;
    d["values"] = c.values;
    d["stderr"] = c.stderr_values ? py::cast(*c.stderr_values) : py::none();
    d["order"] = c.order;
    d["m1"] = c.m1;
    d["m2"] = c.m2;
    d["layout"] = c.layout;
    d["seed"] = c.seed;
    d["frames"] = c.frames;
    return d;
}

py::dict fit_dict(const tn::FitResult& f) {
    py::dict d;
    d["A"] = f.offset;
    d["B"] = f.amplitude;
    d["visibility"] = f.visibility;
    d["stderr_visibility"] = f.stderr_visibility;
    d["stderr_B"] = f.stderr_amplitude;
    d["frequency"] = f.dominant_frequency;
    d["fit_frequency"] = f.fit_frequency;
    d["parity_ok"] = f.parity_ok;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Correlation functions of thermal sources at magic detector positions";

    py::register_exception<tn::InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
    py::register_exception<tn::CapacityExceeded>(m, "CapacityExceeded", PyExc_OverflowError);
    py::register_exception<tn::TruncationError>(m, "TruncationError", PyExc_RuntimeError);
    py::register_exception<tn::ZeroProbabilityEvent>(m, "ZeroProbabilityEvent", PyExc_RuntimeError);
    py::register_exception<tn::NumericalFailure>(m, "NumericalFailure", PyExc_ArithmeticError);

    m.def("magic_positions", &tn::magic_positions, py::arg("m"));
    m.def("moving_magic_positions", &tn::moving_magic_positions, py::arg("delta1"), py::arg("m"));
    m.def("phase_from_angle", &tn::phase_from_angle, py::arg("k"), py::arg("d"), py::arg("theta"));

    m.def("enumerate_partitions", [](std::size_t sources, unsigned photons) {
        std::vector<std::vector<unsigned>> out;
        for (auto& p : tn::enumerate_partitions(sources, photons)) out.push_back(p.counts);
        return out;
    }, py::arg("sources"), py::arg("photons"));
    m.def("multiset_phase_sum", [](std::vector<int> prefactors, std::vector<double> deltas) {
        return tn::multiset_phase_sum(std::move(prefactors), deltas);
    }, py::arg("prefactors"), py::arg("deltas"));
    m.def("correlation_pathsum",
          [](std::vector<int> prefactors, std::vector<double> deltas, std::vector<double> nbar) {
              return tn::correlation_pathsum(make_sources(std::move(prefactors), std::move(nbar)),
                                             deltas);
          },
          py::arg("prefactors"), py::arg("deltas"), py::arg("nbar") = std::vector<double>{});
    m.def("correlation_permanent",
          [](std::vector<int> prefactors, std::vector<double> deltas, std::vector<double> nbar) {
              return tn::correlation_permanent(make_sources(std::move(prefactors), std::move(nbar)),
                                               deltas);
          },
          py::arg("prefactors"), py::arg("deltas"), py::arg("nbar") = std::vector<double>{});

    m.def("setup1_g", &tn::setup1_g, py::arg("order"), py::arg("delta1"));
    m.def("setup1_visibility", &tn::setup1_visibility, py::arg("order"));
    m.def("setup2_coeffs", [](unsigned m1, unsigned m2) {
        const auto c = tn::setup2_coeffs(m1, m2);
        py::dict d;
        d["c1"] = to_py(c.c1);
        d["c2"] = to_py(c.c2);
        d["m1"] = c.m1;
        d["m2"] = c.m2;
        d["parity_sign"] = c.parity_sign;
        return d;
    }, py::arg("m1"), py::arg("m2"));
    m.def("setup2_g", &tn::setup2_g, py::arg("m1"), py::arg("m2"), py::arg("delta1"));
    m.def("setup2_visibility", &tn::setup2_visibility, py::arg("m1"), py::arg("m2"));
    m.def("crossover_threshold", &tn::crossover_threshold, py::arg("m2"));

    m.def("simulate_curve",
          [](unsigned m1, unsigned m2, std::uint64_t frames, std::uint64_t seed,
             std::string layout, std::size_t sources, double nbar, std::size_t grid,
             unsigned workers, std::size_t shifts) {
              tn::SpeckleConfig cfg;
              cfg.sources = tn::SourceArray::equidistant(sources, nbar);
              const auto kind = tn::moving_kind_from_string(layout);
              cfg.layout = kind == tn::MovingKind::MmpSpread ? tn::DetectorLayout::mmp_spread(m2)
                                                             : tn::DetectorLayout::co_located(m1, m2);
              cfg.frames = frames;
              cfg.seed = seed;
              cfg.grid = tn::uniform_grid(grid);
              cfg.workers = workers;
              cfg.shifts = shifts;
              tn::CorrelationCurve curve;
              {
                  py::gil_scoped_release release;
                  curve = tn::simulate_curve(cfg);
              }
              const unsigned freq = kind == tn::MovingKind::MmpSpread ? m2 : std::max(1u, m2);
              py::dict out = curve_dict(curve);
              out["fit"] = fit_dict(tn::fit_cosine(curve, freq));
              return out;
          },
          py::arg("m1"), py::arg("m2"), py::arg("frames"), py::arg("seed"),
          py::arg("layout") = "co-located", py::arg("sources") = 2, py::arg("nbar") = 1.0,
          py::arg("grid") = tn::kDefaultGridPoints, py::arg("workers") = 1, py::arg("shifts") = 0);

    m.def("fit_cosine", [](std::vector<double> grid, std::vector<double> values, unsigned frequency,
                           std::size_t m2, std::string layout) {
        tn::CorrelationCurve c;
        c.grid = std::move(grid);
        c.values = std::move(values);
        c.m2 = m2;
        c.layout = std::move(layout);
        return fit_dict(tn::fit_cosine(c, frequency));
    }, py::arg("grid"), py::arg("values"), py::arg("frequency"), py::arg("m2") = 0,
       py::arg("layout") = "co-located");

    m.def("verify_isomorphism", [](double nbar, unsigned m1, unsigned m2, double delta1,
                                   unsigned cutoff) {
        const auto r = tn::verify_isomorphism(nbar, m1, m2, delta1, cutoff);
        py::dict d;
        d["lhs"] = r.lhs;
        d["rhs"] = r.rhs;
        d["g_magic"] = r.g_magic;
        d["relative_gap"] = r.relative_gap;
        d["ok"] = r.ok;
        return d;
    }, py::arg("nbar"), py::arg("m1"), py::arg("m2"), py::arg("delta1"), py::arg("cutoff") = 30);
    m.def("project_magic_support_violation", [](double nbar, unsigned m2, unsigned cutoff) {
        return tn::project_magic(tn::thermal_two_mode(nbar, cutoff), m2).max_outside_support(m2);
    }, py::arg("nbar"), py::arg("m2"), py::arg("cutoff") = 30);
    m.def("noon_overlap", [](double nbar, unsigned m2, unsigned cutoff) {
        return tn::noon_overlap(tn::project_magic(tn::thermal_two_mode(nbar, cutoff), m2), m2);
    }, py::arg("nbar"), py::arg("m2"), py::arg("cutoff") = 30);
}
