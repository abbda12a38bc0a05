#ifndef PAIRHEAP_POTENTIAL_HPP
#define PAIRHEAP_POTENTIAL_HPP

#include <pairheap/topology.hpp>

#include <cstdint>
#include <vector>

namespace pairheap {

// Potential constants.
inline constexpr double kNodeBase = 400.0;
inline constexpr double kNodeScale = 100.0;
inline constexpr double kLargeEdge = -7.0;
inline constexpr double kSizeWeight = 900.0;

// Sticky size N: a power of two that follows the heap size n by doubling
// when n >= 2N and halving when n <= N/2. Starts at 1.
class StickyTracker {
public:
	StickyTracker() = default;
	// Throws std::invalid_argument unless `size` is a power of two.
	explicit StickyTracker(std::uint64_t size);

	std::uint64_t size() const { return size_; }
	// Exact integer lg N.
	unsigned lg() const;

	// One step of the doubling/halving rule for the current heap size.
	void update(std::uint64_t n);
	// Repeats update() until N no longer moves.
	void settle(std::uint64_t n);

	friend bool operator==(const StickyTracker &, const StickyTracker &) = default;

private:
	std::uint64_t size_ = 1;
};

StickyTracker update_sticky(StickyTracker tracker, std::uint64_t n);

// Sticky size after merging two heaps into one of size `n`: the larger of
// the two, settled against `n`.
StickyTracker merged_sticky(StickyTracker a, StickyTracker b, std::uint64_t n);

enum class NodeCategory : std::uint8_t { Small, Mixed, Large };

const char *to_string(NodeCategory category);

// Binary-view subtree sizes |x_L| and |x_R| of one node.
struct SizePair {
	std::uint64_t left = 0;
	std::uint64_t right = 0;

	std::uint64_t total() const { return left + right + 1; }
	friend bool operator==(const SizePair &, const SizePair &) = default;
};

// The three categories, thresholded on the integer lg N. `sticky` must be a
// power of two.
NodeCategory classify(SizePair sizes, std::uint64_t sticky);

// Per-node potential: 0 for small nodes, 400 + 100 lg|x| for large nodes and
// 400 + 100 (min side / lg N) lg|x| for mixed nodes. The mixed divisor is
// clamped to at least 1, which only matters while N <= 2.
double node_potential(SizePair sizes, std::uint64_t sticky);

// The single-expression form 400 + 100 min(1, min(|x_L|,|x_R|) / lg N) lg|x|,
// which agrees with node_potential on every mixed or large node once N >= 4.
double combined_node_potential(SizePair sizes, std::uint64_t sticky);

// Potential of a binary-view edge from a node to its right child.
double edge_potential_value(NodeCategory parent, NodeCategory right_child);

double size_potential(std::uint64_t sticky, std::uint64_t n);

struct PotentialBreakdown {
	double node = 0.0;
	double edge = 0.0;
	double size = 0.0;
	double total = 0.0;

	static PotentialBreakdown from_parts(double node, double edge, double size) {
		return {node, edge, size, node + edge + size};
	}
};

// Binary-view subtree sizes of every live node, indexed by handle id. Dead
// slots hold {0, 0}. Iterative, O(n).
std::vector<SizePair> subtree_sizes(const Topology &topo);

PotentialBreakdown total_potential(const Topology &topo, const StickyTracker &tracker);

// Same evaluation from precomputed sizes.
PotentialBreakdown total_potential(const Topology &topo, const std::vector<SizePair> &sizes,
                                   std::uint64_t sticky);

} // namespace pairheap

#endif
