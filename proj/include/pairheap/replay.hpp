#ifndef PAIRHEAP_REPLAY_HPP
#define PAIRHEAP_REPLAY_HPP

#include <pairheap/analyzer.hpp>
#include <pairheap/pairing_heap.hpp>
#include <pairheap/trace.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pairheap {

// A trace op violated a heap precondition during replay.
class TraceError : public std::runtime_error {
public:
	TraceError(std::size_t op_index, const std::string &what)
	: std::runtime_error("op " + std::to_string(op_index) + ": " + what), op_index_{op_index} {}
	std::size_t op_index() const { return op_index_; }

private:
	std::size_t op_index_;
};

struct ReplayOptions {
	// Run through an InstrumentedHeap and keep the ledger.
	bool analyze = true;
	// Full structural check and cache recount every this many ops (0 = only
	// at the end).
	std::size_t checkpoint_interval = 1000;
	// Full check after every delete-min. Otherwise every op gets a local
	// check of the nodes it touched.
	bool full_check_after_delete_min = false;
	AnalyzerOptions analyzer;
};

struct ReplayResult {
	Ledger ledger;
	// Keys returned by getmin and deletemin, in order.
	std::vector<std::int64_t> outputs;
	Report structure; // link, order, size-cache and sticky checks
	std::size_t max_n = 0;
	double max_classic = 0.0;
	std::uint64_t pairings = 0;
};

// Throws TraceError on the first op that violates a precondition.
ReplayResult replay(const Trace &trace, const ReplayOptions &options = {});

// Full traversal: link symmetry, heap order against the general-tree parent,
// node count, and the root having no parent or sibling. Returns the first
// problem found.
template <typename Key, typename Compare>
std::optional<std::string> verify_structure(const PairingHeap<Key, Compare> &heap) {
	const Topology &topo = heap.topology();
	const NodeHandle root = topo.root();
	if (!root)
		return topo.size() == 0 ? std::nullopt
		                        : std::optional<std::string>("no root but size "
		                                                     + std::to_string(topo.size()));
	if (!topo.is_live(root))
		return "root is not live";
	if (topo.parent(root) || topo.right(root))
		return "root has a parent or right sibling";

	Compare compare{};
	std::size_t count = 0;
	// (node, general-tree parent)
	std::vector<std::pair<NodeHandle, NodeHandle>> stack{{root, NodeHandle{}}};
	while (!stack.empty()) {
		auto [h, up] = stack.back();
		stack.pop_back();
		if (!topo.is_live(h))
			return "dead node " + std::to_string(h.id()) + " reachable";
		if (++count > topo.size())
			return "more reachable nodes than size " + std::to_string(topo.size());
		if (up && compare(heap.key(h), heap.key(up)))
			return "heap order violated at node " + std::to_string(h.id());
		if (const NodeHandle l = topo.left(h)) {
			if (topo.parent(l) != h)
				return "left child of " + std::to_string(h.id()) + " has a wrong parent link";
			stack.push_back({l, h});
		}
		if (const NodeHandle r = topo.right(h)) {
			if (topo.parent(r) != h)
				return "right child of " + std::to_string(h.id()) + " has a wrong parent link";
			stack.push_back({r, up});
		}
	}
	if (count != topo.size())
		return "reached " + std::to_string(count) + " nodes, size is "
		       + std::to_string(topo.size());
	return std::nullopt;
}

// Sticky-size invariants: N a power of two, N <= 2n and n < 2N (N = 1 when
// the heap is empty or has one node).
std::optional<std::string> verify_sticky(std::uint64_t sticky, std::uint64_t n);

} // namespace pairheap

#endif
