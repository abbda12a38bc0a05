#include <pairheap/analyzer.hpp>
#include <pairheap/oracle.hpp>
#include <pairheap/replay.hpp>
#include <pairheap/workloads.hpp>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <sstream>

namespace py = pybind11;
using namespace pairheap;

namespace {

using Key = std::int64_t;
using Heap = PairingHeap<Key>;
using Analyzed = InstrumentedHeap<Key>;

NodeHandle handle(std::uint32_t id) { return NodeHandle{id}; }

py::dict breakdown(const PotentialBreakdown &p) {
	py::dict d;
	d["node"] = p.node;
	d["edge"] = p.edge;
	d["size"] = p.size;
	d["total"] = p.total;
	return d;
}

py::dict op_row(const OpRecord &op) {
	py::dict d;
	d["kind"] = to_string(op.kind);
	d["actual"] = op.actual_cost;
	d["amortized"] = op.amortized;
	d["n_before"] = op.n_before;
	d["n_after"] = op.n_after;
	d["sticky_before"] = op.sticky_before;
	d["sticky_after"] = op.sticky_after;
	d["phi_before"] = breakdown(op.phi_before);
	d["phi_after"] = breakdown(op.phi_after);
	d["first_pass_pairings"] = op.first_pass.total();
	d["second_pass_pairings"] = op.second_pass.total();
	return d;
}

py::dict report_dict(const Report &r) {
	py::dict d;
	d["name"] = r.name;
	d["ok"] = r.ok();
	d["violations"] = r.violation_count;
	py::list kept;
	for (const auto &v : r.violations)
		kept.append(py::make_tuple(v.check, v.op_index, v.detail));
	d["examples"] = kept;
	d["metrics"] = r.metrics;
	return d;
}

Trace trace_from(const std::string &text) { return parse_trace(text); }

} // namespace

PYBIND11_MODULE(_core, m) {
	m.doc() = "Instrumented two-pass pairing heap with potential analysis";

	auto base = py::register_exception<HeapError>(m, "HeapError", PyExc_RuntimeError);
	py::register_exception<EmptyHeap>(m, "EmptyHeap", base.ptr());
	py::register_exception<InvalidHandle>(m, "InvalidHandle", base.ptr());
	py::register_exception<NotADecrease>(m, "NotADecrease", base.ptr());
	py::register_exception<TraceParseError>(m, "TraceParseError", PyExc_ValueError);
	py::register_exception<TraceError>(m, "TraceError", PyExc_ValueError);

	py::class_<Heap>(m, "PairingHeap", "Pairing heap of 64-bit integer keys. Handles are ints.")
	        .def(py::init<>())
	        .def("insert", [](Heap &h, Key k) { return h.insert(k).id(); }, py::arg("key"))
	        .def("get_min", &Heap::get_min)
	        .def("delete_min", &Heap::delete_min)
	        .def("decrease_key",
	             [](Heap &h, std::uint32_t id, Key k) { h.decrease_key(handle(id), k); },
	             py::arg("handle"), py::arg("key"))
	        .def("key", [](const Heap &h, std::uint32_t id) { return h.key(handle(id)); })
	        .def("__contains__", [](const Heap &h, std::uint32_t id) { return h.contains(handle(id)); })
	        .def(
	                "merge", [](Heap &h, Heap &other) { return h.merge(std::move(other)); },
	                "Absorb `other`, leaving it empty. Its handles map to handle + returned offset.")
	        .def_property_readonly("pairings", &Heap::pairings)
	        .def("__len__", &Heap::size)
	        .def("__bool__", [](const Heap &h) { return !h.empty(); })
	        .def("potential",
	             [](const Heap &h) {
		             StickyTracker t;
		             t.settle(h.size());
		             return breakdown(total_potential(h.topology(), t));
	             },
	             "Potential of the current shape with the sticky size settled to len(heap).")
	        .def("classic_potential", [](const Heap &h) { return classic_potential(h.topology()); });

	py::class_<Analyzed>(m, "AnalyzedHeap",
	                     "Pairing heap whose every operation is recorded with its potential change.")
	        .def(py::init([](bool verify) {
		             return std::make_unique<Analyzed>(AnalyzerOptions{true, verify});
	             }),
	             py::arg("verify_every_op") = false)
	        .def("insert", [](Analyzed &h, Key k) { return h.insert(k).id(); }, py::arg("key"))
	        .def("get_min", &Analyzed::get_min)
	        .def("delete_min", &Analyzed::delete_min)
	        .def("decrease_key",
	             [](Analyzed &h, std::uint32_t id, Key k) { h.decrease_key(handle(id), k); },
	             py::arg("handle"), py::arg("key"))
	        .def("merge", [](Analyzed &h, Heap &other) { return h.merge(std::move(other)); })
	        .def("__len__", [](const Analyzed &h) { return h.heap().size(); })
	        .def_property_readonly("sticky", [](const Analyzed &h) { return h.analyzer().sticky().size(); })
	        .def("potential", [](const Analyzed &h) { return breakdown(h.analyzer().potential()); })
	        .def("classic_potential", [](const Analyzed &h) { return h.analyzer().classic(); })
	        .def("ledger",
	             [](const Analyzed &h) {
		             py::list rows;
		             for (const auto &op : h.analyzer().ledger().ops)
			             rows.append(op_row(op));
		             return rows;
	             })
	        .def("last_op", [](const Analyzed &h) {
		        const auto &ops = h.analyzer().ledger().ops;
		        if (ops.empty())
			        throw py::index_error("no operations recorded");
		        return op_row(ops.back());
	        })
	        .def("verify", [](const Analyzed &h) -> std::optional<std::string> {
		        if (auto problem = verify_structure(h.heap()))
			        return problem;
		        return h.analyzer().verify_against_recount();
	        });

	m.def("node_potential",
	      [](std::uint64_t left, std::uint64_t right, std::uint64_t sticky) {
		      return node_potential({left, right}, sticky);
	      },
	      py::arg("left"), py::arg("right"), py::arg("sticky"));
	m.def("classify",
	      [](std::uint64_t left, std::uint64_t right, std::uint64_t sticky) {
		      return to_string(classify({left, right}, sticky));
	      },
	      py::arg("left"), py::arg("right"), py::arg("sticky"));
	m.def("size_potential", &size_potential, py::arg("sticky"), py::arg("n"));

	m.def("gen_sorted", [](std::uint64_t n, bool asc) { return format_trace(gen_sorted(n, asc)); },
	      py::arg("n"), py::arg("ascending") = true, "Trace text: n sorted inserts, n deletemins.");
	m.def("gen_random",
	      [](std::uint64_t n, std::uint64_t extra, std::uint64_t seed) {
		      return format_trace(gen_random(n, extra, seed));
	      },
	      py::arg("n"), py::arg("ops_extra"), py::arg("seed"));
	m.def("gen_dijkstra",
	      [](std::uint64_t v, std::uint64_t e, std::uint64_t seed) {
		      return format_trace(gen_dijkstra_like(v, e, seed));
	      },
	      py::arg("v"), py::arg("e"), py::arg("seed"));

	m.def("compare_with_oracle", [](const std::string &text) {
		const OracleReport r = run_and_compare(trace_from(text));
		py::dict d;
		d["matched"] = r.matched;
		d["compared"] = r.compared;
		d["message"] = r.message;
		return d;
	});
	m.def("replay_outputs", [](const std::string &text) {
		return replay(trace_from(text), {.analyze = false}).outputs;
	});
	m.def(
	        "validate",
	        [](const std::string &text, std::size_t ranges) {
		        py::gil_scoped_release release;
		        const ReplayResult r = replay(trace_from(text));
		        std::vector<Report> reports{r.structure,
		                                    check_ledger_consistency(r.ledger),
		                                    check_telescoping(r.ledger, ranges, 1),
		                                    check_linear_range(r.ledger),
		                                    check_amortized_bounds(r.ledger),
		                                    check_pairing_lemmas(r.ledger)};
		        py::gil_scoped_acquire acquire;
		        py::dict out;
		        for (const auto &rep : reports)
			        out[py::str(rep.name)] = report_dict(rep);
		        return out;
	        },
	        py::arg("trace"), py::arg("ranges") = 100,
	        "Replay trace text through the analyzer and run every check suite.");
	m.def("ledger_csv", [](const std::string &text) {
		const ReplayResult r = replay(trace_from(text));
		std::ostringstream out;
		write_ledger_csv(out, r.ledger);
		return out.str();
	});
}
