#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lattheta/lattheta.hpp"

namespace py = pybind11;
using namespace lattheta;

namespace {

TruncationPolicy policy(double tol) {
    TruncationPolicy p;
    p.target_tol = tol;
    return p;
}

py::dict certified(const CertifiedValue& v) {
    py::dict d;
    d["value"] = v.value;
    d["tail_bound"] = v.tail_bound;
    d["terms_used"] = v.terms_used;
    d["converged"] = v.converged;
    return d;
}

py::dict min_result(const MinResult& m) {
    py::dict d;
    d["value"] = m.value.value;
    d["tail_bound"] = m.value.tail_bound;
    d["argmin"] = py::make_tuple(m.argmin.u, m.argmin.v);
    return d;
}

}  // namespace

PYBIND11_MODULE(_lattheta, m) {
    m.doc() = "Lattice theta functions, their minima over shifts, and applications";

    py::register_exception<Error>(m, "LatthetaError", PyExc_ValueError);

    py::class_<Lattice>(m, "Lattice")
        .def(py::init(&lattice_from_tau), py::arg("x"), py::arg("y"))
        .def_readonly("x", &Lattice::x)
        .def_readonly("y", &Lattice::y)
        .def_property_readonly("generator",
                               [](const Lattice& L) {
                                   return py::make_tuple(py::make_tuple(L.gen.a, L.gen.b), py::make_tuple(L.gen.c, L.gen.d));
                               })
        .def("covolume", &Lattice::covolume)
        .def("__repr__", [](const Lattice& L) {
            return "Lattice(x=" + std::to_string(L.x) + ", y=" + std::to_string(L.y) + ")";
        });

    m.def("hexagonal_lattice", &hexagonal_lattice);
    m.def("square_lattice", &square_lattice);
    m.def("dual_lattice", &dual_lattice);
    m.def("special_point_a", [](double x, double y) {
        const PhasePoint p = special_point_a(x, y);
        return py::make_tuple(p.u, p.v);
    });
    m.def("special_point_b", [](double x, double y) {
        const PhasePoint p = special_point_b(x, y);
        return py::make_tuple(p.u, p.v);
    });
    m.def("reduce_to_fundamental", [](double x, double y) {
        const ReductionTrace t = reduce_to_fundamental({x, y});
        std::vector<std::string> word;
        for (Generator g : t.word) word.emplace_back(generator_name(g));
        return py::make_tuple(t.tau_out.real(), t.tau_out.imag(), word);
    });

    m.def("theta1d", [](double beta, double t, double tol) { return certified(theta1d(beta, t, policy(tol))); },
          py::arg("beta"), py::arg("t"), py::arg("tol") = 1e-12);
    m.def("montgomery_Q", [](double beta, double t) { return montgomery_Q(beta, t).value; });
    m.def(
        "gaussian_sum",
        [](const Lattice& L, double u, double v, double alpha, double tol) {
            return certified(lattice_gaussian_sum(L, {u, v}, alpha, policy(tol)));
        },
        py::arg("lattice"), py::arg("u"), py::arg("v"), py::arg("alpha"), py::arg("tol") = 1e-12);
    m.def(
        "theta_charged",
        [](const Lattice& L, double u, double v, double alpha, double tol) {
            return certified(theta_charged(L, {u, v}, alpha, policy(tol)));
        },
        py::arg("lattice"), py::arg("u"), py::arg("v"), py::arg("alpha"), py::arg("tol") = 1e-12);
    m.def("functional_equation_residual",
          [](const Lattice& L, double u, double v, double alpha) { return functional_equation_residual(L, {u, v}, alpha); });

    m.def(
        "minimize_over_cell",
        [](const Lattice& L, double alpha, std::size_t grid_n) { return min_result(minimize_over_cell(L, alpha, grid_n)); },
        py::arg("lattice"), py::arg("alpha"), py::arg("grid_n") = 64);
    m.def(
        "sweep",
        [](const std::vector<double>& alphas, const std::vector<double>& xs, const std::vector<double>& ys,
           std::size_t grid_n) {
            py::list rows;
            for (const SweepRecord& r : sweep_fundamental_domain(alphas, xs, ys, grid_n, false)) {
                py::dict d;
                d["x"] = r.x;
                d["y"] = r.y;
                d["alpha"] = r.alpha;
                d["min_value"] = r.min_value;
                d["argmin_u"] = r.argmin_u;
                d["argmin_v"] = r.argmin_v;
                d["tail_bound"] = r.tail_bound;
                rows.append(d);
            }
            return rows;
        },
        py::arg("alphas"), py::arg("xs"), py::arg("ys"), py::arg("grid_n") = 64);

    m.def(
        "frame_bounds",
        [](double x, double y, long density) {
            const FrameBounds fb = gabor_frame_bounds(x, y, density);
            py::dict d;
            d["A"] = fb.lower_A;
            d["B"] = fb.upper_B;
            d["ratio"] = fb.upper_B / fb.lower_A;
            return d;
        },
        py::arg("x"), py::arg("y"), py::arg("density") = 2);
    m.def("heat_kernel", [](const Lattice& L, double u, double v, double t) {
        return certified(heat_kernel_torus(L, {u, v}, t));
    });
    m.def("heat_kernel_spectral", [](const Lattice& L, double u, double v, double t) {
        return certified(heat_kernel_torus_spectral(L, {u, v}, t));
    });
    m.def(
        "epstein_zeta",
        [](const Lattice& L, double u, double v, double s, double tol) {
            return certified(epstein_zeta_shifted(L, {u, v}, s, policy(tol)));
        },
        py::arg("lattice"), py::arg("u"), py::arg("v"), py::arg("s"), py::arg("tol") = 1e-8);
    m.def("epstein_zeta_quadrature",
          [](const Lattice& L, double u, double v, double s) { return epstein_zeta_quadrature(L, {u, v}, s); });
    m.def("epsilon_opt_hexagonal", [](long N) { return epsilon_opt_hexagonal(N).weights; });
    m.def(
        "born_energy",
        [](const Lattice& L, long N, const std::vector<double>& weights, double alpha) {
            CMPotential p;
            p.nodes = {{alpha, 1.0}};
            return born_energy(L, ChargeDistribution{N, weights}, p);
        },
        py::arg("lattice"), py::arg("period"), py::arg("weights"), py::arg("alpha") = 1.0);
    m.def("landau_constants", [] {
        const LandauConstants c = landau_constants();
        py::dict d;
        d["L_hex"] = c.L_hex;
        d["A_hex"] = c.A_hex;
        d["product"] = c.product;
        d["L_square"] = c.L_square;
        return d;
    });
    m.def(
        "verify_lemmas",
        [](const std::string& suite) {
            py::list out;
            for (const LemmaReport& r : run_lemma_suite(suite)) {
                py::dict d;
                d["lemma_id"] = r.lemma_id;
                d["params_tested"] = r.params_tested;
                d["worst_margin"] = r.worst_margin;
                d["pass"] = r.pass;
                d["details"] = r.details;
                out.append(d);
            }
            return out;
        },
        py::arg("suite") = "all");
}
