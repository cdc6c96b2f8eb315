#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "coarse/audit.hpp"
#include "coarse/cohomology.hpp"
#include "coarse/combing.hpp"
#include "coarse/cones.hpp"
#include "coarse/corona.hpp"
#include "coarse/groups.hpp"
#include "coarse/metric_space.hpp"
#include "coarse/rips.hpp"
#include "coarse/runner.hpp"
#include "coarse/serialize.hpp"

namespace py = pybind11;
using namespace coarse;

namespace {

// reports cross the boundary as JSON strings: one stable schema for C++ and python
std::string audit_json(const AuditReport& r) { return audit_to_json(r).dump(2); }

std::shared_ptr<FiniteMetricSpace> make_cayley(const std::string& kind, int rank, int radius) {
    GroupSpec spec;
    if (kind == "free_group")
        spec.kind = GroupSpec::Kind::FreeGroup;
    else if (kind == "free_abelian")
        spec.kind = GroupSpec::Kind::FreeAbelian;
    else
        throw std::runtime_error("unknown group kind '" + kind + "'");
    spec.rank = rank;
    return std::make_shared<FiniteMetricSpace>(build_cayley_graph(spec, radius));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "finite-stage combing audits, coarse cohomology and corona approximations";

    py::class_<FiniteMetricSpace, std::shared_ptr<FiniteMetricSpace>>(m, "Space")
        .def_property_readonly("size", &FiniteMetricSpace::size)
        .def_readonly("scale", &FiniteMetricSpace::scale)
        .def_readonly("truncation_radius", &FiniteMetricSpace::truncation_radius)
        .def_readonly("labels", &FiniteMetricSpace::labels)
        .def("d", &FiniteMetricSpace::d)
        .def("to_json", [](const FiniteMetricSpace& s) { return space_to_json(s).dump(2); });

    py::class_<Combing>(m, "Combing")
        .def_readonly("base", &Combing::base)
        .def_readonly("horizon", &Combing::horizon)
        .def("H", &Combing::H)
        .def("validate", &Combing::validate)
        .def("to_json", [](const Combing& c) { return combing_to_json(c).dump(2); });

    m.def("cayley_ball", &make_cayley, py::arg("kind"), py::arg("rank"), py::arg("radius"));
    m.def("segment_space",
          [](int T) { return std::make_shared<FiniteMetricSpace>(segment_space(T)); });
    m.def("cycle_space",
          [](int k) { return std::make_shared<FiniteMetricSpace>(cycle_space(k)); });

    m.def("ball", &ball);
    m.def("annulus", &annulus);
    m.def("gromov_product",
          [](const FiniteMetricSpace& s, PointId x, PointId y) { return gromov_product(s, x, y).twice; },
          "twice the Gromov product (exact integer)");
    m.def("estimate_hyperbolicity",
          [](const FiniteMetricSpace& s, std::size_t budget) {
              return estimate_hyperbolicity(s, budget).twice;
          },
          py::arg("space"), py::arg("sample_budget") = 2000,
          "twice the four-point defect over the sampled quadruples");
    m.def("estimate_asdim_upper", [](const FiniteMetricSpace& s, const std::vector<Dist>& scales) {
        AsdimEstimate e = estimate_asdim_upper(s, scales);
        return py::make_tuple(e.scales, e.nerve_dims, e.upper_bound);
    });

    m.def("geodesic_combing",
          [](std::shared_ptr<FiniteMetricSpace> s) { return geodesic_combing(std::move(s)); });
    m.def("bresenham_combing",
          [](std::shared_ptr<FiniteMetricSpace> s) { return bresenham_combing(std::move(s)); });
    m.def("nonproper_example", &nonproper_example);
    m.def("noncoherent_example", &noncoherent_example);

    m.def("audit_controlled",
          [](const Combing& c) { return audit_json(audit_controlled(c)); });
    m.def("audit_proper",
          [](const Combing& c, Dist k_radius) { return audit_json(audit_proper(c, k_radius)); });
    m.def("audit_coherent", [](const Combing& c) { return audit_json(audit_coherent(c)); });
    m.def("audit_expanding",
          [](const Combing& c, const std::vector<Dist>& r_list, const std::vector<int>& n_list) {
              return audit_json(audit_expanding(c, r_list, n_list));
          });

    m.def("rips_counts", [](const FiniteMetricSpace& s, Dist R, int dim_cap) {
        SimplicialComplex cx = rips_complex(s, R, dim_cap);
        std::vector<std::size_t> counts;
        for (int q = 0; q <= dim_cap; ++q) counts.push_back(cx.count(q));
        return counts;
    });
    m.def("cohomology_betti",
          [](const FiniteMetricSpace& s, Dist R, int dim_cap, const std::vector<int>& degrees) {
              SimplicialComplex cx = rips_complex(s, R, dim_cap);
              return cohomology(cx, Ring::Z(), degrees).betti;
          });

    m.def("boundary_clusters",
          [](const Combing& c, const std::vector<PointId>& pts, int stage, Dist threshold) {
              ClusterPartition p = boundary_clusters(c, pts, stage, threshold);
              return p.clusters;
          });
    m.def("ray_gap", &ray_gap);

    m.def("run_config", [](const std::string& config, const std::string& out_dir) {
        RunResult r = run_config(config, out_dir);
        return py::make_tuple(r.exit_code, r.report_files, r.error);
    });
    m.def("verify_report", [](const std::string& path) {
        std::string diag;
        int rc = verify_report(path, &diag);
        return py::make_tuple(rc, diag);
    });
}
