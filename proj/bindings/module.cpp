// Python face of the library. Arrays cross the boundary as three parallel
// lists (rows, cols, vals); everything heavy stays in C++.

#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "hiersparse/assoc_array.hpp"
#include "hiersparse/bench.hpp"
#include "hiersparse/hier_array.hpp"
#include "hiersparse/rmat.hpp"
#include "hiersparse/semiring.hpp"
#include "hiersparse/triple_io.hpp"

namespace py = pybind11;
using namespace hiersparse;

namespace {

TripleList to_triple_list(std::vector<std::string> rows,
                          std::vector<std::string> cols,
                          std::vector<double> vals) {
  TripleList t;
  t.rows = std::move(rows);
  t.cols = std::move(cols);
  t.vals = std::move(vals);
  return t;
}

py::tuple from_triple_list(const TripleList& t) {
  return py::make_tuple(t.rows, t.cols, t.vals);
}

KeySelection to_selection(const std::optional<std::vector<std::string>>& keys) {
  return keys ? KeySelection::of(*keys) : KeySelection::all();
}

} // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Hypersparse associative arrays over semirings, with an N-layer "
      "hierarchical structure for high-rate streaming updates.";

  py::class_<Semiring>(m, "Semiring")
      .def(py::init([](std::string_view name) { return Semiring::named(name); }),
           py::arg("name"))
      .def_static("named",
                  [](std::string_view name) { return Semiring::named(name); },
                  py::arg("name"))
      .def_static("builtin_names",
                  [] {
                    std::vector<std::string> names;
                    for (std::string_view n : Semiring::builtin_names()) {
                      names.emplace_back(n);
                    }
                    return names;
                  })
      .def_property_readonly(
          "name", [](const Semiring& s) { return std::string(s.name()); })
      .def_property_readonly("zero", &Semiring::zero)
      .def_property_readonly("one", &Semiring::one)
      .def("plus", &Semiring::plus, py::arg("a"), py::arg("b"))
      .def("times", &Semiring::times, py::arg("a"), py::arg("b"))
      .def(py::self == py::self)
      .def("__repr__", [](const Semiring& s) {
        return "Semiring('" + std::string(s.name()) + "')";
      });

  py::class_<AssocArray>(m, "AssocArray")
      .def(py::init<Semiring>(), py::arg("semiring"),
           "Empty array over the given semiring.")
      .def_static(
          "build",
          [](std::vector<std::string> rows, std::vector<std::string> cols,
             std::vector<double> vals, const Semiring& s) {
            return AssocArray::build(
                to_triple_list(std::move(rows), std::move(cols),
                               std::move(vals)),
                s);
          },
          py::arg("rows"), py::arg("cols"), py::arg("vals"),
          py::arg("semiring"),
          "Builds from parallel triple lists; duplicate coordinates "
          "collapse with plus, zeros are dropped.")
      .def_property_readonly("semiring", &AssocArray::semiring)
      .def_property_readonly("nnz", &AssocArray::nnz)
      .def_property_readonly(
          "row_keys", [](const AssocArray& a) { return a.row_keys().keys(); })
      .def_property_readonly(
          "col_keys", [](const AssocArray& a) { return a.col_keys().keys(); })
      .def("at", &AssocArray::at, py::arg("row"), py::arg("col"),
           "Stored value at (row, col), or None.")
      .def("to_triples",
           [](const AssocArray& a) { return from_triple_list(a.to_triples()); },
           "(rows, cols, vals) of the stored entries, row-major sorted.")
      .def("transposed", &AssocArray::transposed)
      .def(
          "extract",
          [](const AssocArray& a,
             const std::optional<std::vector<std::string>>& rows,
             const std::optional<std::vector<std::string>>& cols) {
            return a.extract(to_selection(rows), to_selection(cols));
          },
          py::arg("rows") = std::nullopt, py::arg("cols") = std::nullopt,
          "Sub-array restricted to the given keys (None = all).")
      .def("__add__", [](const AssocArray& a,
                         const AssocArray& b) { return ew_add(a, b); })
      .def("__mul__", [](const AssocArray& a,
                         const AssocArray& b) { return ew_mult(a, b); })
      .def("__matmul__", [](const AssocArray& a,
                            const AssocArray& b) { return array_mult(a, b); })
      .def(py::self == py::self)
      .def("__len__", &AssocArray::nnz)
      .def("__repr__", [](const AssocArray& a) {
        std::ostringstream out;
        out << "AssocArray(" << a.semiring().name() << ", nnz=" << a.nnz()
            << ", rows=" << a.row_keys().size()
            << ", cols=" << a.col_keys().size() << ")";
        return out.str();
      });

  m.def("ew_add", &ew_add, py::arg("a"), py::arg("b"));
  m.def("ew_mult", &ew_mult, py::arg("a"), py::arg("b"));
  m.def("array_mult", &array_mult, py::arg("a"), py::arg("b"));

  py::class_<CutSpec>(m, "CutSpec")
      .def(py::init<>())
      .def(py::init<std::vector<std::uint64_t>>(), py::arg("cuts"))
      .def_static("parse", &CutSpec::parse, py::arg("text"))
      .def_static("geometric", &CutSpec::geometric, py::arg("layer_count"))
      .def_property_readonly("values", &CutSpec::values)
      .def_property_readonly("layer_count", &CutSpec::layer_count)
      .def(py::self == py::self)
      .def("__repr__",
           [](const CutSpec& c) { return "CutSpec(" + c.to_string() + ")"; });

  py::class_<HierArray>(m, "HierArray")
      .def(py::init<CutSpec, Semiring>(), py::arg("cuts"), py::arg("semiring"))
      .def("update", &HierArray::update, py::arg("batch"),
           "Adds a batch to the lowest layer, cascading overflow upward.")
      .def("flush", &HierArray::flush,
           "Plus-sum of all layers; non-destructive.")
      .def("compact", &HierArray::compact)
      .def_property_readonly("layer_count", &HierArray::layer_count)
      .def_property_readonly("cuts", &HierArray::cuts)
      .def("layer", &HierArray::layer, py::arg("i"),
           py::return_value_policy::reference_internal)
      .def("layer_nnz", &HierArray::layer_nnz)
      .def("cascade_counts", &HierArray::cascade_counts)
      .def("__repr__", [](const HierArray& h) {
        std::ostringstream out;
        out << "HierArray(layers=" << h.layer_count() << ", nnz=";
        const auto nnz = h.layer_nnz();
        for (std::size_t i = 0; i < nnz.size(); ++i) {
          out << (i ? "/" : "") << nnz[i];
        }
        out << ")";
        return out.str();
      });

  py::class_<RmatConfig>(m, "RmatConfig")
      .def(py::init<>())
      .def(py::init([](std::uint32_t scale, std::uint64_t total_edges,
                       std::uint64_t batch_size, std::uint64_t seed) {
             RmatConfig c;
             c.scale = scale;
             c.total_edges = total_edges;
             c.batch_size = batch_size;
             c.seed = seed;
             return c;
           }),
           py::arg("scale"), py::arg("total_edges"), py::arg("batch_size"),
           py::arg("seed") = 1)
      .def_readwrite("scale", &RmatConfig::scale)
      .def_readwrite("total_edges", &RmatConfig::total_edges)
      .def_readwrite("batch_size", &RmatConfig::batch_size)
      .def_readwrite("probs", &RmatConfig::probs)
      .def_readwrite("seed", &RmatConfig::seed)
      .def("validate", &RmatConfig::validate);

  py::class_<RmatGenerator>(m, "RmatGenerator")
      .def(py::init<RmatConfig>(), py::arg("config"))
      .def_property_readonly("batch_count", &RmatGenerator::batch_count)
      .def("batch_size", &RmatGenerator::batch_size, py::arg("batch_index"),
           "Edges in one batch (the last batch may be short).")
      .def("edge", &RmatGenerator::edge, py::arg("edge_index"),
           "(source id, destination id) for one edge.")
      .def("batch",
           [](const RmatGenerator& g, std::uint64_t i) {
             return from_triple_list(g.batch(i));
           },
           py::arg("batch_index"),
           "(rows, cols, vals) triples for one batch.")
      .def("vertex_key", &RmatGenerator::vertex_key, py::arg("id"));

  m.def("write_triples", &write_triples, py::arg("array"), py::arg("path"),
        "TSV row<TAB>col<TAB>value, written atomically.");
  m.def("read_triples", &read_triples, py::arg("path"), py::arg("semiring"),
        "Parses a TSV triple file; duplicates collapse with plus.");

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<AlgebraError>(m, "AlgebraError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);
}
