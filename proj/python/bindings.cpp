#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "flatcover/anneal.hpp"
#include "flatcover/classifier.hpp"
#include "flatcover/poly.hpp"
#include "flatcover/reduce1d.hpp"
#include "flatcover/reduce2d.hpp"
#include "flatcover/solver.hpp"

namespace py = pybind11;
using namespace flatcover;

namespace {

std::vector<std::pair<int, int>> to_pairs(const std::vector<Cell>& cells) {
  std::vector<std::pair<int, int>> out;
  out.reserve(cells.size());
  for (Cell c : cells) out.emplace_back(c.x, c.y);
  return out;
}

std::vector<Cell> from_pairs(const std::vector<std::pair<int, int>>& v) {
  std::vector<Cell> out;
  out.reserve(v.size());
  for (auto [x, y] : v) out.push_back({x, y});
  return out;
}

SearchBudget budget(std::optional<std::uint64_t> nodes, std::optional<double> seconds) {
  SearchBudget b;
  b.max_nodes = nodes;
  if (seconds) b.max_time = std::chrono::milliseconds(static_cast<std::int64_t>(*seconds * 1000));
  return b;
}

py::dict witness_dict(const CoverWitness& w) {
  py::list placements;
  for (const Placement& p : w.placements) placements.append(py::make_tuple(p.orientation, p.offset.x, p.offset.y));
  py::dict d;
  d["placements"] = placements;
  d["valid"] = verify_cover(w);
  return d;
}

}  // namespace

PYBIND11_MODULE(_flatcover, m) {
  m.doc() = "Flat covers of polyomino stains";

  py::register_exception<PolyError>(m, "PolyError", PyExc_ValueError);
  py::register_exception<CatalogError>(m, "CatalogError", PyExc_RuntimeError);

  py::enum_<Outcome>(m, "Outcome")
      .value("Coverable", Outcome::Coverable)
      .value("NotCoverable", Outcome::NotCoverable)
      .value("Unknown", Outcome::Unknown);

  py::class_<Polyomino>(m, "Polyomino")
      .def(py::init([](const std::string& text) { return parse_poly(text); }), py::arg("text"))
      .def_static("from_cells", [](const std::vector<std::pair<int, int>>& cells) {
        const auto c = from_pairs(cells);
        return Polyomino::from_cells(c);
      })
      .def_property_readonly("cells", [](const Polyomino& p) { return to_pairs(p.cells()); })
      .def_property_readonly("width", &Polyomino::width)
      .def_property_readonly("height", &Polyomino::height)
      .def("__len__", &Polyomino::size)
      .def("__contains__", [](const Polyomino& p, std::pair<int, int> c) { return p.contains({c.first, c.second}); })
      .def("__eq__", [](const Polyomino& a, const Polyomino& b) { return a == b; })
      .def("__hash__", [](const Polyomino& p) { return py::hash(py::str(render(p))); })
      .def("__str__", [](const Polyomino& p) { return render(p); })
      .def("__repr__", [](const Polyomino& p) {
        return "<Polyomino " + std::to_string(p.size()) + " cells " + std::to_string(p.width()) + "x" +
               std::to_string(p.height()) + ">";
      })
      .def("render", [](const Polyomino& p) { return render(p); })
      .def("svg", [](const Polyomino& p, int unit) { return render_svg(p, unit); }, py::arg("unit") = 10)
      .def("transformed", [](const Polyomino& p, int t) { return transformed(p, Transform(t)); })
      .def("canonical", [](const Polyomino& p) { return canonical(p); })
      .def("is_simply_connected", [](const Polyomino& p) { return is_simply_connected(p); })
      .def("includes", [](const Polyomino& area, const Polyomino& q) { return includes(area.cells(), q); })
      .def("enlarge", [](const Polyomino& p, int n) { return enlarge(p, n); });

  m.def("free_polyominoes", &free_polyominoes, py::arg("size"));

  m.def(
      "decide",
      [](const Polyomino& sticker, const Polyomino& stain, std::optional<std::uint64_t> nodes,
         std::optional<double> seconds, int interference_depth, int jobs) {
        SolverOptions opt;
        opt.interference_depth = interference_depth;
        opt.jobs = jobs;
        Decision d;
        {
          py::gil_scoped_release release;
          d = flat_cover_decide(sticker, stain, budget(nodes, seconds), opt);
        }
        py::dict out;
        out["outcome"] = d.outcome;
        out["nodes"] = d.nodes;
        out["seconds"] = d.seconds;
        out["witness"] = d.witness ? py::object(witness_dict(*d.witness)) : py::object(py::none());
        return out;
      },
      py::arg("sticker"), py::arg("stain"), py::arg("nodes") = py::none(), py::arg("seconds") = py::none(),
      py::arg("interference_depth") = 0, py::arg("jobs") = 1);

  m.def(
      "minimal_covers",
      [](const Polyomino& sticker, const Polyomino& stain, std::size_t cap) {
        const CoverEnumeration e = enumerate_minimal_covers(sticker, stain, SearchBudget::unlimited(), cap);
        py::list covers;
        for (const CoverWitness& w : e.covers) covers.append(witness_dict(w)["placements"]);
        return py::make_tuple(covers, e.complete);
      },
      py::arg("sticker"), py::arg("stain"), py::arg("cap") = 1000);

  m.def("brute_force_oracle", &brute_force_oracle, py::arg("sticker"), py::arg("stain"));

  m.def(
      "classify",
      [](const Polyomino& q) {
        const Classification c = classify(q);
        py::dict out;
        out["always_coverable"] = c.always_coverable;
        out["entry"] = c.entry;
        out["counterexample"] = c.counterexample ? py::cast(*c.counterexample) : py::object(py::none());
        return out;
      },
      py::arg("stain"));

  m.def("catalog_dir", [] { return default_catalog_dir(); });

  m.def("partition_check", [] {
    const PartitionReport r = exhaustive_partition_check();
    py::dict out;
    out["counts"] = std::vector<std::size_t>(r.counts.begin() + 1, r.counts.end());
    out["include_I"] = std::vector<std::size_t>(r.include_I.begin() + 1, r.include_I.end());
    out["inside_J"] = std::vector<std::size_t>(r.inside_J.begin() + 1, r.inside_J.end());
    out["violations"] = r.violations;
    out["passed"] = r.passed();
    return out;
  });

  m.def("golomb_ruler", &reduce1d::golomb_ruler, py::arg("r"));

  m.def(
      "reduce_1d",
      [](int q, const std::vector<std::array<int, 3>>& sets) {
        const reduce1d::X3CInstance inst{q, sets};
        reduce1d::validate(inst);
        const reduce1d::OneDTemplate t = reduce1d::build_template(inst);
        py::dict out;
        out["positions"] = t.positions;
        out["N"] = t.element_size;
        out["L"] = t.target_length;
        out["W"] = t.gadget_size;
        out["ruler"] = t.ruler;
        return out;
      },
      py::arg("q"), py::arg("sets"));

  m.def(
      "solve_1d",
      [](const std::vector<std::int64_t>& positions, std::int64_t length, std::optional<std::uint64_t> nodes) {
        reduce1d::OneDDecision d;
        {
          py::gil_scoped_release release;
          d = reduce1d::solve_1d(positions, length, budget(nodes, std::nullopt));
        }
        py::dict out;
        out["outcome"] = d.outcome;
        out["shifts"] = d.witness ? py::cast(d.witness->shifts) : py::object(py::none());
        out["nodes"] = d.nodes;
        return out;
      },
      py::arg("positions"), py::arg("length"), py::arg("nodes") = py::none());

  m.def("gadget_sticker", &reduce2d::gadget_sticker);
  m.def("gadget_q0", &reduce2d::gadget_q0);

  m.def(
      "reduce_2d",
      [](const std::string& text) {
        const reduce2d::ReductionOutput r = reduce2d::build_instance(reduce2d::parse_instance(text));
        return py::make_tuple(r.sticker, r.stain);
      },
      py::arg("instance_text"));

  m.def(
      "roundtrip_2d",
      [](const std::string& text, std::uint64_t nodes) {
        reduce2d::RoundTripReport r;
        const auto inst = reduce2d::parse_instance(text);
        {
          py::gil_scoped_release release;
          r = reduce2d::roundtrip(inst, SearchBudget::nodes(nodes));
        }
        py::dict out;
        out["satisfiable"] = r.satisfiable;
        out["cover"] = r.cover;
        out["witness_verified"] = r.witness_verified;
        out["agree"] = r.agree;
        out["inconclusive"] = r.inconclusive;
        return out;
      },
      py::arg("instance_text"), py::arg("nodes") = 1'000'000);

  m.def(
      "anneal",
      [](const Polyomino& stain, const std::string& config) {
        const anneal::SearchParams p = anneal::parse_params(config);
        anneal::SearchOutcome o;
        {
          py::gil_scoped_release release;
          o = anneal::anneal(stain, p);
        }
        py::dict out;
        out["found"] = o.found;
        out["counterexample"] = o.counterexample ? py::cast(*o.counterexample) : py::object(py::none());
        out["best"] = o.best.shape();
        out["best_energy"] = o.best_energy;
        out["two_sticker_covers"] = o.best_penalty.two_sticker_covers;
        out["steps"] = o.steps;
        out["verifications"] = o.verifications;
        return out;
      },
      py::arg("stain"), py::arg("config") = "");
}
