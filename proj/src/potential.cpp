#include <pairheap/potential.hpp>

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace pairheap {

StickyTracker::StickyTracker(std::uint64_t size) : size_{size} {
	if (!std::has_single_bit(size))
		throw std::invalid_argument("sticky size must be a power of two");
}

unsigned StickyTracker::lg() const {
	return static_cast<unsigned>(std::countr_zero(size_));
}

void StickyTracker::update(std::uint64_t n) {
	if (n >= 2 * size_)
		size_ *= 2;
	else if (size_ > 1 && 2 * n <= size_)
		size_ /= 2;
}

void StickyTracker::settle(std::uint64_t n) {
	for (;;) {
		const std::uint64_t before = size_;
		update(n);
		if (size_ == before)
			return;
	}
}

StickyTracker update_sticky(StickyTracker tracker, std::uint64_t n) {
	tracker.update(n);
	return tracker;
}

StickyTracker merged_sticky(StickyTracker a, StickyTracker b, std::uint64_t n) {
	StickyTracker t{std::max(a.size(), b.size())};
	t.settle(n);
	return t;
}

const char *to_string(NodeCategory category) {
	switch (category) {
	case NodeCategory::Small: return "S";
	case NodeCategory::Mixed: return "M";
	case NodeCategory::Large: return "L";
	}
	return "?";
}

namespace {

unsigned checked_lg(std::uint64_t sticky) {
	if (!std::has_single_bit(sticky))
		throw std::invalid_argument("sticky size must be a power of two");
	return static_cast<unsigned>(std::countr_zero(sticky));
}

} // namespace

NodeCategory classify(SizePair sizes, std::uint64_t sticky) {
	const std::uint64_t threshold = checked_lg(sticky);
	const bool left_big = sizes.left > threshold;
	const bool right_big = sizes.right > threshold;
	if (left_big && right_big)
		return NodeCategory::Large;
	if (left_big || right_big)
		return NodeCategory::Mixed;
	return NodeCategory::Small;
}

double node_potential(SizePair sizes, std::uint64_t sticky) {
	const unsigned lg_n = checked_lg(sticky);
	switch (classify(sizes, sticky)) {
	case NodeCategory::Small:
		return 0.0;
	case NodeCategory::Large:
		return kNodeBase + kNodeScale * std::log2(static_cast<double>(sizes.total()));
	case NodeCategory::Mixed: {
		const double light = static_cast<double>(std::min(sizes.left, sizes.right));
		const double divisor = static_cast<double>(std::max(lg_n, 1u));
		return kNodeBase
		       + kNodeScale * (light / divisor) * std::log2(static_cast<double>(sizes.total()));
	}
	}
	return 0.0;
}

double combined_node_potential(SizePair sizes, std::uint64_t sticky) {
	const double divisor = static_cast<double>(std::max(checked_lg(sticky), 1u));
	const double light = static_cast<double>(std::min(sizes.left, sizes.right));
	return kNodeBase
	       + kNodeScale * std::min(1.0, light / divisor)
	                 * std::log2(static_cast<double>(sizes.total()));
}

double edge_potential_value(NodeCategory parent, NodeCategory right_child) {
	return parent == NodeCategory::Large && right_child == NodeCategory::Large ? kLargeEdge : 0.0;
}

double size_potential(std::uint64_t sticky, std::uint64_t n) {
	const std::uint64_t gap = sticky > n ? sticky - n : n - sticky;
	return kSizeWeight * static_cast<double>(gap);
}

std::vector<SizePair> subtree_sizes(const Topology &topo) {
	std::vector<SizePair> sizes(topo.slot_count());
	if (!topo.root())
		return sizes;

	std::vector<NodeHandle> order;
	order.reserve(topo.size());
	std::vector<NodeHandle> stack{topo.root()};
	while (!stack.empty()) {
		const NodeHandle v = stack.back();
		stack.pop_back();
		order.push_back(v);
		if (NodeHandle l = topo.left(v))
			stack.push_back(l);
		if (NodeHandle r = topo.right(v))
			stack.push_back(r);
	}
	// Reverse preorder visits children before their parent.
	for (auto it = order.rbegin(); it != order.rend(); ++it) {
		SizePair &s = sizes[it->id()];
		if (NodeHandle l = topo.left(*it))
			s.left = sizes[l.id()].total();
		if (NodeHandle r = topo.right(*it))
			s.right = sizes[r.id()].total();
	}
	return sizes;
}

PotentialBreakdown total_potential(const Topology &topo, const StickyTracker &tracker) {
	return total_potential(topo, subtree_sizes(topo), tracker.size());
}

PotentialBreakdown total_potential(const Topology &topo, const std::vector<SizePair> &sizes,
                                   std::uint64_t sticky) {
	long double node = 0.0L;
	long double edge = 0.0L;
	if (topo.root()) {
		std::vector<NodeHandle> stack{topo.root()};
		while (!stack.empty()) {
			const NodeHandle v = stack.back();
			stack.pop_back();
			node += node_potential(sizes[v.id()], sticky);
			if (NodeHandle l = topo.left(v))
				stack.push_back(l);
			if (NodeHandle r = topo.right(v)) {
				edge += edge_potential_value(classify(sizes[v.id()], sticky),
				                             classify(sizes[r.id()], sticky));
				stack.push_back(r);
			}
		}
	}
	return PotentialBreakdown::from_parts(static_cast<double>(node), static_cast<double>(edge),
	                                      size_potential(sticky, topo.size()));
}

} // namespace pairheap
