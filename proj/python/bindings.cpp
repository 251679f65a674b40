// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ucalos Authors

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "ucalos/design.hpp"
#include "ucalos/jacobi_svd.hpp"
#include "ucalos/sim.hpp"
#include "ucalos/spectrum.hpp"
#include "ucalos/transceiver.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using namespace ucalos;

PYBIND11_MODULE(_ucalos, m)
{
    m.doc() = "LoS MIMO between uniform circular arrays";

    py::register_exception<ModelValidityError>(m, "ModelValidityError", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

    py::class_<ArrayConfig>(m, "ArrayConfig")
        .def(py::init([](int n, double wavelength, double rt, double rr, double d) {
                 ArrayConfig c{n, wavelength, rt, rr, d};
                 c.validate();
                 return c;
             }),
             "n_antennas"_a = 4, "wavelength"_a = 0.004, "radius_tx"_a = 0.31, "radius_rx"_a = 0.31,
             "distance"_a = 100.0)
        .def_readwrite("n_antennas", &ArrayConfig::n_antennas)
        .def_readwrite("wavelength", &ArrayConfig::wavelength)
        .def_readwrite("radius_tx", &ArrayConfig::radius_tx)
        .def_readwrite("radius_rx", &ArrayConfig::radius_rx)
        .def_readwrite("distance", &ArrayConfig::distance)
        .def("rpdr", &ArrayConfig::rpdr);

    py::class_<Misalignment>(m, "Misalignment")
        .def(py::init([](int n, double to, double tcs, double pcs, double px, double py_, bool wrap) {
                 return Misalignment::make(n, to, tcs, pcs, px, py_,
                                           wrap ? AnglePolicy::wrap : AnglePolicy::strict);
             }),
             "n_antennas"_a, "theta_o"_a = 0.0, "theta_cs"_a = 0.0, "phi_cs"_a = 0.0, "phi_x"_a = 0.0,
             "phi_y"_a = 0.0, "wrap"_a = false)
        .def_readonly("theta_o", &Misalignment::theta_o)
        .def_readonly("theta_cs", &Misalignment::theta_cs)
        .def_readonly("phi_cs", &Misalignment::phi_cs)
        .def_readonly("phi_x", &Misalignment::phi_x)
        .def_readonly("phi_y", &Misalignment::phi_y);

    m.def("distance_exact", &distance_exact, "cfg"_a, "mis"_a, "n"_a, "m"_a);
    m.def("distance_closed_form", &distance_closed_form, "cfg"_a, "mis"_a, "n"_a, "m"_a);

    m.def(
        "channel",
        [](const ArrayConfig& cfg, const Misalignment& mis, bool exact) {
            return build_channel(cfg, mis, exact ? ChannelModel::exact_distance : ChannelModel::approximate)
                .entries;
        },
        "cfg"_a, "mis"_a, "exact"_a = false);

    m.def(
        "closed_form_svd",
        [](const ArrayConfig& cfg, const Misalignment& mis) {
            const SvdTriple s = closed_form_svd(cfg, mis);
            return py::make_tuple(s.u, s.sigma, s.v);
        },
        "cfg"_a, "mis"_a);
    m.def(
        "numerical_svd",
        [](const CMatrix& a) {
            const SvdTriple s = numerical_svd(a);
            return py::make_tuple(s.u, s.sigma, s.v);
        },
        "a"_a);

    m.def("singular_values", &singular_values, "n_antennas"_a, "beta"_a, "theta_o"_a = 0.0);
    m.def(
        "water_fill",
        [](const RVector& sigmas, double p_total, double noise) {
            return water_fill(sigmas, p_total, noise).powers;
        },
        "sigmas"_a, "p_total"_a, "noise"_a = 1.0);
    m.def("capacity", &capacity, "sigmas"_a, "p_total"_a, "noise"_a = 1.0);
    m.def("condition_number", py::overload_cast<const RVector&>(&condition_number), "sigmas"_a);

    m.def(
        "design",
        [](int n, double snr_db, double theta_o, double wavelength, double distance) {
            const DesignResult d = design_arrays(n, snr_db, theta_o, wavelength, distance);
            return py::dict("beta_opt"_a = d.beta_opt, "capacity"_a = d.capacity,
                            "condition_number"_a = d.condition_number, "radius"_a = d.radius_equal,
                            "radii_product"_a = d.radii_product);
        },
        "n_antennas"_a, "snr_db"_a, "theta_o"_a = 0.0, "wavelength"_a = 0.004, "distance"_a = 100.0);

    m.def(
        "zf_rate", [](const CMatrix& h, double p, double n) { return zf_rate(h, p, n).rate; }, "h"_a,
        "p_total"_a, "noise"_a = 1.0);
    m.def(
        "zf_sic_rate", [](const CMatrix& h, double p, double n) { return zf_sic_rate(h, p, n).rate; },
        "h"_a, "p_total"_a, "noise"_a = 1.0);

    m.def(
        "codebook_angles",
        [](int l1, int l2, double lo, double hi) {
            const Codebook cb = build_codebook(l1, l2, {lo, hi});
            std::vector<std::pair<double, double>> out;
            for (std::size_t l = 1; l <= cb.size(); ++l) out.emplace_back(cb.entry(l).theta_cs, cb.entry(l).phi_cs);
            return out;
        },
        "l1_bits"_a, "l2_bits"_a, "phi_lo"_a = -0.175, "phi_hi"_a = 0.175);

    m.def(
        "simulate_csv",
        [](int trials, std::uint64_t seed, std::vector<int> ns, std::vector<double> distances) {
            TrialConfig cfg;
            cfg.n_trials = trials;
            cfg.seed = seed;
            cfg.n_antennas_list = std::move(ns);
            cfg.distances = std::move(distances);
            std::vector<ResultRow> rows;
            {
                py::gil_scoped_release release;
                rows = run_rate_sweep(cfg);
            }
            std::ostringstream os;
            write_csv(os, rows);
            return os.str();
        },
        "trials"_a = 10, "seed"_a = 1, "n_antennas"_a = std::vector<int>{4},
        "distances"_a = std::vector<double>{100.0});
}
