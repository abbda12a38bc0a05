#include <pairheap/replay.hpp>

#include <bit>
#include <memory>
#include <variant>

namespace pairheap {

std::optional<std::string> verify_sticky(std::uint64_t sticky, std::uint64_t n) {
	if (!std::has_single_bit(sticky))
		return "N = " + std::to_string(sticky) + " is not a power of two";
	if (n <= 1)
		return sticky == 1 ? std::nullopt
		                   : std::optional<std::string>("N = " + std::to_string(sticky)
		                                                + " with n = " + std::to_string(n));
	if (sticky > 2 * n || n >= 2 * sticky)
		return "N = " + std::to_string(sticky) + " out of range for n = " + std::to_string(n);
	return std::nullopt;
}

namespace {

using Heap = InstrumentedHeap<std::int64_t>;

// Checks the nodes an operation touched: link symmetry, heap order against
// the new leftmost child, and the size cache against its children.
std::optional<std::string> verify_local(const Heap &ih) {
	const Topology &topo = ih.heap().topology();
	const Analyzer &an = ih.analyzer();
	for (const NodeHandle h : an.last_touched()) {
		if (!topo.is_live(h))
			continue;
		const std::string at = "node " + std::to_string(h.id());
		const NodeHandle l = topo.left(h), r = topo.right(h), p = topo.parent(h);
		if (l && topo.parent(l) != h)
			return at + ": left child has a wrong parent link";
		if (r && topo.parent(r) != h)
			return at + ": right child has a wrong parent link";
		if (p && topo.left(p) != h && topo.right(p) != h)
			return at + ": parent does not link back";
		if (!p && topo.root() != h)
			return at + ": parentless node is not the root";
		if (l && ih.heap().key(l) < ih.heap().key(h))
			return at + ": heap order violated by its leftmost child";
		const SizePair s = an.cached_sizes(h);
		const std::uint64_t below_l = l ? an.cached_sizes(l).total() : 0;
		const std::uint64_t below_r = r ? an.cached_sizes(r).total() : 0;
		if (s.left != below_l || s.right != below_r)
			return at + ": cached subtree sizes disagree with its children";
	}
	return std::nullopt;
}

std::optional<std::string> verify_root(const Heap &ih) {
	const Topology &topo = ih.heap().topology();
	const NodeHandle root = topo.root();
	if (root && (topo.parent(root) || topo.right(root)))
		return "root has a parent or right sibling";
	if (root && ih.analyzer().cached_sizes(root).total() != topo.size())
		return "root subtree holds " + std::to_string(ih.analyzer().cached_sizes(root).total())
		       + " nodes, size is " + std::to_string(topo.size());
	if (topo.size() >= 4 && ih.analyzer().cached_category(root) != NodeCategory::Mixed)
		return "root is not mixed with n = " + std::to_string(topo.size());
	return verify_sticky(ih.analyzer().sticky().size(), topo.size());
}

std::optional<std::string> verify_full(const Heap &ih) {
	if (auto problem = verify_structure(ih.heap()))
		return problem;
	if (auto problem = verify_root(ih))
		return problem;
	return ih.analyzer().verify_against_recount();
}

ReplayResult replay_plain(const Trace &trace) {
	ReplayResult result;
	result.structure.name = "structure";
	PairingHeap<std::int64_t> heap;
	std::vector<NodeHandle> handles;
	for (std::size_t i = 0; i < trace.size(); ++i) {
		try {
			const TraceOp &op = trace[i];
			if (const auto *ins = std::get_if<InsertOp>(&op)) {
				handles.push_back(heap.insert(ins->key));
			} else if (std::holds_alternative<DeleteMinOp>(op)) {
				result.outputs.push_back(heap.delete_min());
			} else if (std::holds_alternative<GetMinOp>(op)) {
				result.outputs.push_back(heap.get_min());
			} else {
				const auto &dk = std::get<DecreaseKeyOp>(op);
				heap.decrease_key(dk.id < handles.size() ? handles[dk.id] : NodeHandle{}, dk.key);
			}
		} catch (const HeapError &e) {
			throw TraceError(i, e.what());
		}
		result.max_n = std::max(result.max_n, heap.size());
	}
	result.pairings = heap.pairings();
	return result;
}

} // namespace

ReplayResult replay(const Trace &trace, const ReplayOptions &options) {
	if (!options.analyze)
		return replay_plain(trace);

	ReplayResult result;
	result.structure.name = "structure";
	auto ih = std::make_unique<Heap>(options.analyzer);
	std::vector<NodeHandle> handles;
	auto note = [&](std::size_t op, const char *check, std::optional<std::string> problem) {
		if (problem)
			result.structure.add({check, op, *problem});
	};

	for (std::size_t i = 0; i < trace.size(); ++i) {
		const TraceOp &op = trace[i];
		const bool is_delete_min = std::holds_alternative<DeleteMinOp>(op);
		try {
			if (const auto *ins = std::get_if<InsertOp>(&op)) {
				handles.push_back(ih->insert(ins->key));
			} else if (is_delete_min) {
				result.outputs.push_back(ih->delete_min());
			} else if (std::holds_alternative<GetMinOp>(op)) {
				result.outputs.push_back(ih->get_min());
			} else {
				const auto &dk = std::get<DecreaseKeyOp>(op);
				ih->decrease_key(dk.id < handles.size() ? handles[dk.id] : NodeHandle{}, dk.key);
			}
		} catch (const HeapError &e) {
			throw TraceError(i, e.what());
		}

		const std::size_t n = ih->heap().size();
		result.max_n = std::max(result.max_n, n);
		result.max_classic = std::max(result.max_classic, ih->analyzer().classic());

		const bool checkpoint = options.checkpoint_interval != 0
		                        && (i + 1) % options.checkpoint_interval == 0;
		// Every link an operation changes is incident to a node it touched, so
		// the local check after each op keeps the whole shape verified between
		// full checkpoints.
		if (checkpoint || (is_delete_min && options.full_check_after_delete_min)) {
			note(i, "full", verify_full(*ih));
		} else {
			note(i, "local", verify_local(*ih));
			note(i, "root", verify_root(*ih));
		}
	}
	note(trace.size() ? trace.size() - 1 : 0, "final", verify_full(*ih));
	result.pairings = ih->heap().pairings();
	result.ledger = ih->analyzer().take_ledger();
	return result;
}

} // namespace pairheap
