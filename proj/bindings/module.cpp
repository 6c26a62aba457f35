#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hyperflow/hypergraph.hpp"
#include "hyperflow/io.hpp"
#include "hyperflow/refinement.hpp"

namespace py = pybind11;
using namespace hyperflow;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Flow-based hypergraph partition refinement";

  py::class_<Hypergraph>(m, "Hypergraph")
      .def(py::init<NodeID, std::vector<std::vector<NodeID>>, std::vector<Weight>,
                    std::vector<Weight>>(),
           py::arg("num_vertices"), py::arg("pins"), py::arg("vertex_weights") = std::vector<Weight>{},
           py::arg("hyperedge_weights") = std::vector<Weight>{})
      .def_property_readonly("num_vertices", &Hypergraph::num_vertices)
      .def_property_readonly("num_hyperedges", &Hypergraph::num_hyperedges)
      .def_property_readonly("num_pins", &Hypergraph::num_pins)
      .def_property_readonly("total_vertex_weight", &Hypergraph::total_vertex_weight)
      .def("vertex_weight", &Hypergraph::vertex_weight)
      .def("hyperedge_weight", &Hypergraph::hyperedge_weight)
      .def("pins",
           [](const Hypergraph& hg, HyperedgeID e) {
             auto span = hg.pins(e);
             return std::vector<NodeID>(span.begin(), span.end());
           });

  py::class_<Partition>(m, "Partition")
      .def(py::init<NodeID, std::vector<NodeID>, const Hypergraph&>(), py::arg("k"),
           py::arg("assignment"), py::arg("hypergraph"))
      .def_property_readonly("k", &Partition::k)
      .def_property_readonly("assignment", &Partition::assignment)
      .def_property_readonly("block_weights", &Partition::block_weights);

  py::register_exception<ParseError>(m, "ParseError");

  m.def("parse_hmetis_file", &parse_hmetis_file, py::arg("path"));
  m.def("parse_partition_file", &parse_partition_file, py::arg("path"), py::arg("hypergraph"),
        py::arg("k"));
  m.def("write_partition_file", &write_partition_file, py::arg("path"), py::arg("partition"));
  m.def("connectivity_metric", &connectivity_metric, py::arg("hypergraph"), py::arg("partition"));
  m.def("imbalance", &imbalance, py::arg("hypergraph"), py::arg("partition"));
  m.def("greedy_initial_partition", &greedy_initial_partition, py::arg("hypergraph"), py::arg("k"),
        py::arg("eps") = 0.03, py::arg("seed") = 1);

  m.def(
      "refine",
      [](const Hypergraph& hg, const Partition& p, double eps, uint64_t seed,
         const std::string& mode, bool use_isolated_dp, bool use_distance, bool use_mbc,
         int mbc_repetitions) {
        RefineConfig config;
        config.eps = eps;
        config.seed = seed;
        config.mode = mode == "hfc-star" ? ExtractionMode::HfcStar : ExtractionMode::Hfc;
        config.use_isolated_dp = use_isolated_dp;
        config.use_distance = use_distance;
        config.use_mbc = use_mbc;
        config.mbc_repetitions = mbc_repetitions;
        RefineStats stats;
        Partition refined = refine_kway(hg, p, config, &stats);
        py::dict d;
        d["flow_problems"] = stats.flow_problems;
        d["flow_problem_vertices"] = stats.flow_problem_vertices;
        d["improvements"] = stats.improvements;
        d["total_gain"] = stats.total_gain;
        d["pierce_steps"] = stats.pierce_steps;
        d["flow_computations"] = stats.flow_computations;
        d["isolated_vertices"] = stats.isolated_vertices;
        d["mbc_improvements"] = stats.mbc_improvements;
        return py::make_tuple(refined, d);
      },
      py::arg("hypergraph"), py::arg("partition"), py::arg("eps") = 0.03, py::arg("seed") = 1,
      py::arg("mode") = "hfc", py::arg("use_isolated_dp") = true, py::arg("use_distance") = true,
      py::arg("use_mbc") = true, py::arg("mbc_repetitions") = 7);
}
