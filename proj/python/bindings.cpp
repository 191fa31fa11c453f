#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "condtree/cli.hpp"
#include "condtree/error.hpp"
#include "condtree/exact_enum.hpp"
#include "condtree/gw_sampler.hpp"
#include "condtree/io.hpp"
#include "condtree/quadmap.hpp"
#include "condtree/snake_limit.hpp"
#include "condtree/spatial_tree.hpp"

namespace py = pybind11;
using namespace condtree;

namespace {

using Labelled = std::pair<std::vector<std::uint32_t>, std::vector<double>>;

std::vector<std::uint32_t> counts_of(const PlaneTree& t) {
  std::vector<std::uint32_t> out;
  for (std::size_t v = 0; v < t.size(); ++v) out.push_back(t.child_count(v));
  return out;
}

Labelled pack(const SpatialTree<double>& s) { return {counts_of(s.tree), s.labels}; }

SpatialTree<int> well_labelled(const std::vector<std::uint32_t>& counts, const std::vector<int>& labels) {
  return {PlaneTree::from_preorder(counts), labels};
}

}  // namespace

PYBIND11_MODULE(_condtree, m) {
  m.doc() = "Conditioned spatial trees, quadrangulations and the Brownian snake";

  py::register_exception<Error>(m, "Error", PyExc_ValueError);

  m.def(
      "sample_tree",
      [](const std::string& measure, std::optional<std::size_t> n, double x, const std::string& mu,
         const std::string& gamma, std::uint64_t seed, std::uint64_t stream) {
        SampleConfig config;
        config.seed = seed;
        config.measure = parse_measure(measure);
        config.n = n;
        config.x = x;
        config.validate();
        Rng rng = make_stream(seed, stream);
        return pack(sample_measure(config, parse_offspring(mu), parse_step(gamma), rng));
      },
      py::arg("measure"), py::arg("n") = py::none(), py::arg("x") = 0.0, py::arg("mu") = "geometric-half",
      py::arg("gamma") = "uniform3", py::arg("seed"), py::arg("stream") = 0,
      "Draw one labelled tree; returns (preorder child counts, labels).");

  m.def(
      "reroot",
      [](const std::vector<std::uint32_t>& counts, const std::vector<double>& labels, std::size_t v0) {
        return pack(reroot_at(SpatialTree<double>(PlaneTree::from_preorder(counts), labels), v0));
      },
      py::arg("counts"), py::arg("labels"), py::arg("vertex"), "Re-root at a preorder index, shifting labels.");

  m.def(
      "verify_identity_json",
      [](const std::string& identity, std::size_t n, const std::string& mu, const std::string& gamma) {
        const auto off = parse_offspring(mu);
        const auto step = parse_step(gamma);
        if (identity == "reroot") return verify_reroot_identity(n, off, step).to_json().dump();
        if (identity == "reroot-closed") return verify_reroot_identity_closed(n, off, step).to_json().dump();
        throw Error(ErrorCode::InvalidArgument, "identity must be reroot or reroot-closed");
      },
      py::arg("identity"), py::arg("n"), py::arg("mu") = "geometric-half", py::arg("gamma") = "uniform3");

  m.def(
      "count_well_labelled",
      [](std::size_t n) {
        const auto c = count_well_labelled(n);
        return py::dict(py::arg("n") = n, py::arg("all") = py::int_(py::str(c.count_all.get_str())),
                        py::arg("well_labelled") = py::int_(py::str(c.count_well_labelled.get_str())),
                        py::arg("ratio") = to_string(c.ratio),
                        py::arg("tutte") = py::int_(py::str(c.tutte.get_str())),
                        py::arg("matches_formulas") = c.matches_formulas);
      },
      py::arg("n"));

  m.def(
      "quad_from_tree_json",
      [](const std::vector<std::uint32_t>& counts, const std::vector<int>& labels) {
        return to_json(cvs_build(well_labelled(counts, labels))).dump();
      },
      py::arg("counts"), py::arg("labels"), "Map of a well-labelled tree as JSON text.");

  m.def(
      "tree_from_quad_json",
      [](const std::string& text) {
        const auto t = cvs_inverse(quad_from_json(nlohmann::json::parse(text)));
        return std::make_pair(counts_of(t.tree), t.labels);
      },
      py::arg("text"));

  m.def(
      "quad_distances",
      [](const std::string& text) { return distances_from_root(quad_from_json(nlohmann::json::parse(text))); },
      py::arg("text"), "Distances from the root vertex, indexed by vertex id.");

  m.def(
      "quad_code",
      [](const std::string& text) { return py::bytes(canonical_code(quad_from_json(nlohmann::json::parse(text)))); },
      py::arg("text"));

  m.def(
      "sample_quad_json",
      [](std::size_t n, std::uint64_t seed, std::uint64_t stream) {
        Rng rng = make_stream(seed, stream);
        return to_json(sample_uniform_quad(n, rng)).dump();
      },
      py::arg("n"), py::arg("seed"), py::arg("stream") = 0);

  m.def(
      "sample_snake",
      [](std::size_t grid, std::uint64_t seed, bool conditioned, std::uint64_t stream) {
        Rng rng = make_stream(seed, stream);
        const auto p = conditioned ? sample_conditioned_snake(grid, rng) : sample_snake(grid, 0.0, rng);
        return std::make_pair(p.excursion, p.head);
      },
      py::arg("grid"), py::arg("seed"), py::arg("conditioned") = false, py::arg("stream") = 0,
      "Returns (excursion, head) at grid times i/grid.");

  m.def("ks_two_sample", [](const std::vector<double>& a, const std::vector<double>& b) { return ks_two_sample(a, b); },
        py::arg("a"), py::arg("b"));

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int status = run(args, out, err);
        return py::make_tuple(status, out.str(), err.str());
      },
      py::arg("args"), "Run a command-line invocation; returns (status, stdout, stderr).");
}
