#include "hullwalk/error.hpp"
#include "hullwalk/geom2d.hpp"
#include "hullwalk/hullstream.hpp"
#include "hullwalk/limits.hpp"
#include "hullwalk/montecarlo.hpp"
#include "hullwalk/rng.hpp"
#include "hullwalk/walkgen.hpp"

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace hullwalk;

namespace {

using Points = py::array_t<double, py::array::c_style | py::array::forcecast>;

std::vector<Vec2> to_points(const Points& a) {
    if (a.ndim() != 2 || a.shape(1) != 2) throw Error(ErrorCode::InvalidArgument, "points must have shape (m, 2)");
    std::vector<Vec2> out(static_cast<std::size_t>(a.shape(0)));
    auto r = a.unchecked<2>();
    for (py::ssize_t i = 0; i < a.shape(0); ++i) out[i] = {r(i, 0), r(i, 1)};
    return out;
}

Points to_array(std::span<const Vec2> pts) {
    Points out({static_cast<py::ssize_t>(pts.size()), py::ssize_t{2}});
    auto w = out.mutable_unchecked<2>();
    for (std::size_t i = 0; i < pts.size(); ++i) {
        w(i, 0) = pts[i].x;
        w(i, 1) = pts[i].y;
    }
    return out;
}

py::dict series_dict(const FunctionalSeries& s) {
    py::dict d;
    d["n"] = s.checkpoints;
    d["L"] = s.L;
    d["A"] = s.A;
    d["r"] = s.r;
    return d;
}

py::dict estimate_dict(const MonteCarloEstimate& e) {
    py::dict d;
    d["value"] = e.value;
    d["std_error"] = e.std_error;
    return d;
}

CheckpointSchedule schedule_from(const py::object& sched) {
    if (py::isinstance<py::str>(sched)) return CheckpointSchedule::parse(sched.cast<std::string>());
    return CheckpointSchedule::explicit_steps(sched.cast<std::vector<std::size_t>>());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Core routines of the hullwalk library";
    m.attr("__version__") = "0.1.0";

    // The module keeps the type alive; the translator only borrows it.
    static PyObject* error_type = py::exception<Error>(m, "HullwalkError", PyExc_ValueError).ptr();
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::object exc = py::handle(error_type)(e.what());
            exc.attr("code") = std::string(to_string(e.code()));
            PyErr_SetObject(error_type, exc.ptr());
        }
    });

    // geometry
    m.def("convex_hull", [](const Points& pts) { return to_array(convex_hull(to_points(pts)).vertices()); },
          py::arg("points"), "Hull vertices in counter-clockwise order, shape (h, 2).");
    m.def("perimeter", [](const Points& pts) { return perimeter(convex_hull(to_points(pts))); }, py::arg("points"),
          "Perimeter of the hull of the points; a segment counts twice.");
    m.def("area", [](const Points& pts) { return area(convex_hull(to_points(pts))); }, py::arg("points"));
    m.def("cauchy_perimeter", [](const Points& pts, int n_angles) { return cauchy_perimeter(to_points(pts), n_angles); },
          py::arg("points"), py::arg("n_angles") = 4096);
    m.def(
        "hull_functionals",
        [](const Points& pts) {
            const auto h = convex_hull(to_points(pts));
            return py::make_tuple(perimeter(h), area(h), dist_origin_to_boundary(h));
        },
        py::arg("points"), "(L, A, r) of the hull; the origin must lie in it.");

    // walks
    m.def("normalize_model", [](const std::string& spec) { return to_spec(parse_model(spec)); }, py::arg("spec"));
    m.def(
        "moments",
        [](const std::string& spec) {
            const auto s = moments(parse_model(spec));
            py::dict d;
            d["mu"] = py::make_tuple(s.mu.x, s.mu.y);
            d["sigma"] = py::make_tuple(s.sigma.xx, s.sigma.xy, s.sigma.yy);
            d["sigma2"] = s.sigma2;
            d["sigma2_mu"] = s.sigma2_mu;
            d["sigma2_perp"] = s.sigma2_perp;
            d["det_sigma"] = s.det_sigma;
            d["rho_cross"] = s.rho_cross;
            d["finite_variance"] = s.finite_variance;
            return d;
        },
        py::arg("spec"));
    m.def(
        "sample_path",
        [](const std::string& spec, std::size_t n, std::uint64_t seed, std::uint64_t stream) {
            RngStream rng(seed, stream);
            return to_array(sample_path(parse_model(spec), n, rng).positions);
        },
        py::arg("model"), py::arg("n"), py::arg("seed") = 1, py::arg("stream") = 0,
        "Positions S_0..S_n, shape (n + 1, 2).");
    m.def(
        "functional_series",
        [](const Points& path, const py::object& sched) {
            return series_dict(functional_series(WalkPath{to_points(path)}, schedule_from(sched)));
        },
        py::arg("path"), py::arg("schedule") = "geom:10,1.25",
        "L, A and r at each checkpoint; schedule is a spec string or a list of step counts.");
    m.def(
        "batch_series",
        [](const Points& path, const py::object& sched) {
            return series_dict(batch_series(WalkPath{to_points(path)}, schedule_from(sched)));
        },
        py::arg("path"), py::arg("schedule") = "geom:10,1.25");

    // Monte Carlo
    m.def(
        "estimate",
        [](const std::string& spec, std::size_t n, const py::object& sched, std::uint64_t replicates,
           std::uint64_t seed, unsigned threads) {
            const auto model = parse_model(spec);
            const auto schedule = schedule_from(sched);
            std::vector<CheckpointSummary> rows;
            {
                py::gil_scoped_release release;
                rows = estimate(model, n, schedule, replicates, seed, {threads});
            }
            py::list out;
            for (const auto& r : rows) {
                py::dict d;
                d["n"] = r.n;
                d["mean_L"] = estimate_dict(r.mean_L);
                d["var_L"] = estimate_dict(r.var_L);
                d["mean_A"] = estimate_dict(r.mean_A);
                d["var_A"] = estimate_dict(r.var_A);
                d["mean_r"] = estimate_dict(r.mean_r);
                out.append(d);
            }
            return out;
        },
        py::arg("model"), py::arg("n"), py::arg("schedule") = "geom:10,1.25", py::arg("replicates") = 1000,
        py::arg("seed") = 1, py::arg("threads") = 0);
    m.def(
        "clt_test",
        [](const std::string& spec, std::size_t n, std::uint64_t replicates, std::uint64_t seed) {
            const auto model = parse_model(spec);
            CltResult r;
            {
                py::gil_scoped_release release;
                r = clt_test(model, n, replicates, seed);
            }
            py::dict d;
            d["D"] = r.D;
            d["threshold"] = r.threshold;
            d["pass"] = r.pass;
            return d;
        },
        py::arg("model"), py::arg("n"), py::arg("replicates"), py::arg("seed") = 1);
    m.def(
        "enumerate_exact",
        [](const std::string& spec, std::size_t n) {
            const auto e = enumerate_exact(parse_model(spec), n);
            py::dict d;
            d["EL"] = e.EL;
            d["VarL"] = e.VarL;
            d["EA"] = e.EA;
            d["VarA"] = e.VarA;
            return d;
        },
        py::arg("model"), py::arg("n"));
    m.def(
        "martingale_decomposition_check",
        [](const std::string& spec, std::size_t n) {
            const auto c = martingale_decomposition_check(parse_model(spec), n);
            return py::make_tuple(c.lhs, c.rhs);
        },
        py::arg("model"), py::arg("n"));

    // limits
    m.def(
        "limit_constants",
        [](const std::string& spec) {
            py::dict d;
            for (const auto& c : limit_constants(moments(parse_model(spec)))) d[py::str(c.name)] = c.value;
            return d;
        },
        py::arg("model"));
    m.def(
        "variance_bounds",
        [](double trace, bool is_identity) {
            const auto b = variance_bounds(trace, is_identity);
            py::dict d;
            d["u0_low"] = b.u0_low;
            d["u0_high"] = b.u0_high;
            d["v0_low"] = b.v0_low;
            d["v0_high"] = b.v0_high;
            d["vplus_low"] = b.vplus_low;
            d["vplus_high"] = b.vplus_high;
            return d;
        },
        py::arg("trace_sigma") = 2.0, py::arg("is_identity") = true);
    m.def(
        "expected_norm_gaussian",
        [](double s11, double s12, double s22) {
            const auto e = expected_norm_gaussian(Mat2{s11, s12, s22});
            return py::make_tuple(e.value, e.lower, e.upper);
        },
        py::arg("s11"), py::arg("s12"), py::arg("s22"), "(E||Y||, lower bound, upper bound) for Y ~ N(0, Sigma).");
    m.def("rogers_shepp_second_moment", &rogers_shepp_second_moment, py::arg("tol") = 1e-6);
    m.def("goldman_bridge_variance", &goldman_bridge_variance);
    m.def("partial_sum_pi", &partial_sum_pi, py::arg("k"));
}
