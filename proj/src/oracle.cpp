#include <pairheap/oracle.hpp>
#include <pairheap/pairing_heap.hpp>

#include <variant>

namespace pairheap {

namespace {

// Runs one side, turning its precondition failures into a "no key" result
// so the two sides can still be compared.
template <typename F>
std::optional<std::int64_t> attempt(F &&f, std::string &error) {
	try {
		return f();
	} catch (const HeapError &e) {
		error = e.what();
		return std::nullopt;
	}
}

} // namespace

OracleReport run_and_compare(const Trace &trace) {
	OracleReport report;
	PairingHeap<std::int64_t> heap;
	NaiveQueue<std::int64_t> oracle;
	std::vector<NodeHandle> handles;

	for (std::size_t i = 0; i < trace.size(); ++i) {
		std::string heap_error, oracle_error;
		std::optional<std::int64_t> from_heap, from_oracle;
		bool produces = false;
		const TraceOp &op = trace[i];
		if (const auto *ins = std::get_if<InsertOp>(&op)) {
			handles.push_back(heap.insert(ins->key));
			oracle.insert(ins->key);
		} else if (std::holds_alternative<DeleteMinOp>(op)) {
			produces = true;
			from_heap = attempt([&] { return heap.delete_min(); }, heap_error);
			from_oracle = attempt([&] { return oracle.delete_min(); }, oracle_error);
		} else if (std::holds_alternative<GetMinOp>(op)) {
			produces = true;
			from_heap = attempt([&] { return heap.get_min(); }, heap_error);
			from_oracle = attempt([&] { return oracle.get_min(); }, oracle_error);
		} else {
			const auto &dk = std::get<DecreaseKeyOp>(op);
			const NodeHandle h = dk.id < handles.size() ? handles[dk.id] : NodeHandle{};
			attempt(
			        [&]() -> std::int64_t {
				        heap.decrease_key(h, dk.key);
				        return 0;
			        },
			        heap_error);
			attempt(
			        [&]() -> std::int64_t {
				        oracle.decrease_key(dk.id, dk.key);
				        return 0;
			        },
			        oracle_error);
		}

		const bool heap_failed = !heap_error.empty();
		const bool oracle_failed = !oracle_error.empty();
		if (produces && !heap_failed && !oracle_failed)
			++report.compared;
		if (heap_failed != oracle_failed || (produces && from_heap != from_oracle)) {
			report.matched = false;
			report.op_index = i;
			report.heap_key = from_heap;
			report.oracle_key = from_oracle;
			report.message = "op " + std::to_string(i) + ": heap "
			                 + (heap_failed ? heap_error
			                                : from_heap ? std::to_string(*from_heap) : "ok")
			                 + ", oracle "
			                 + (oracle_failed ? oracle_error
			                                  : from_oracle ? std::to_string(*from_oracle) : "ok");
			return report;
		}
		if (heap_failed) {
			// Both rejected the op: the trace itself is invalid.
			report.matched = false;
			report.op_index = i;
			report.message = "op " + std::to_string(i) + ": invalid trace: " + heap_error;
			return report;
		}
	}
	report.message = "matched " + std::to_string(report.compared) + " keys";
	return report;
}

} // namespace pairheap
