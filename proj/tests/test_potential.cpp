#include "reference_heap.hpp"

#include <pairheap/pairing_heap.hpp>
#include <pairheap/potential.hpp>
#include <pairheap/splitmix.hpp>

#include <gtest/gtest.h>

#include <cmath>

using namespace pairheap;

TEST(StickyTracker, StartsAtOne) {
	StickyTracker t;
	EXPECT_EQ(t.size(), 1u);
	EXPECT_EQ(t.lg(), 0u);
	EXPECT_THROW(StickyTracker{6}, std::invalid_argument);
}

TEST(StickyTracker, UpdateRule) {
	EXPECT_EQ(update_sticky(StickyTracker{1}, 2).size(), 2u);
	EXPECT_EQ(update_sticky(StickyTracker{8}, 4).size(), 4u);
	EXPECT_EQ(update_sticky(StickyTracker{4}, 5).size(), 4u);
	EXPECT_EQ(update_sticky(StickyTracker{4}, 7).size(), 4u);
	EXPECT_EQ(update_sticky(StickyTracker{4}, 8).size(), 8u);
	EXPECT_EQ(update_sticky(StickyTracker{1}, 0).size(), 1u);
	EXPECT_EQ(StickyTracker{16}.lg(), 4u);
}

TEST(StickyTracker, SettleAndMerge) {
	StickyTracker t;
	t.settle(100);
	EXPECT_EQ(t.size(), 64u);
	t.settle(3);
	EXPECT_EQ(t.size(), 4u);
	EXPECT_EQ(merged_sticky(StickyTracker{4}, StickyTracker{16}, 20).size(), 16u);
	EXPECT_EQ(merged_sticky(StickyTracker{4}, StickyTracker{4}, 9).size(), 8u);
}

TEST(Potential, Classify) {
	EXPECT_EQ(classify({0, 0}, 16), NodeCategory::Small);
	EXPECT_EQ(classify({5, 5}, 16), NodeCategory::Large);
	EXPECT_EQ(classify({4, 5}, 16), NodeCategory::Mixed);
	EXPECT_EQ(classify({4, 4}, 16), NodeCategory::Small);
	EXPECT_EQ(classify({1, 0}, 1), NodeCategory::Mixed);
}

TEST(Potential, NodePotentialValues) {
	EXPECT_EQ(node_potential({3, 2}, 16), 0.0);
	EXPECT_NEAR(node_potential({7, 7}, 16), 790.689, 1e-3);
	EXPECT_NEAR(node_potential({2, 9}, 16), 579.248, 1e-3);
	EXPECT_NEAR(node_potential({7, 7}, 16), 400 + 100 * std::log2(15.0), 1e-9);
	EXPECT_NEAR(node_potential({2, 9}, 16), 400 + 100 * 0.5 * std::log2(12.0), 1e-9);
}

TEST(Potential, CombinedFormAgreesOnNonSmallNodes) {
	for (std::uint64_t big_n : {4u, 16u, 1024u})
		for (std::uint64_t a = 0; a < 40; ++a)
			for (std::uint64_t b = 0; b < 40; ++b) {
				const SizePair s{a, b};
				if (classify(s, big_n) == NodeCategory::Small)
					continue;
				EXPECT_NEAR(node_potential(s, big_n), combined_node_potential(s, big_n), 1e-9)
				        << a << ' ' << b << ' ' << big_n;
			}
}

TEST(Potential, EdgeValues) {
	EXPECT_EQ(edge_potential_value(NodeCategory::Large, NodeCategory::Large), -7.0);
	EXPECT_EQ(edge_potential_value(NodeCategory::Large, NodeCategory::Mixed), 0.0);
	EXPECT_EQ(edge_potential_value(NodeCategory::Mixed, NodeCategory::Large), 0.0);
	EXPECT_EQ(edge_potential_value(NodeCategory::Small, NodeCategory::Small), 0.0);
}

TEST(Potential, SizeValues) {
	EXPECT_EQ(size_potential(4, 4), 0.0);
	EXPECT_EQ(size_potential(8, 5), 2700.0);
	EXPECT_EQ(size_potential(2, 3), 900.0);
}

TEST(Potential, SubtreeSizes) {
	PairingHeap<int> h;
	const NodeHandle a = h.insert(3);
	auto sizes = subtree_sizes(h.topology());
	EXPECT_EQ(sizes[a.id()], (SizePair{0, 0}));
	const NodeHandle b = h.insert(5);
	sizes = subtree_sizes(h.topology());
	EXPECT_EQ(sizes[a.id()], (SizePair{1, 0}));
	EXPECT_EQ(sizes[b.id()], (SizePair{0, 0}));
}

TEST(Potential, SubtreeSizesAddUp) {
	PairingHeap<int> h;
	for (int k = 1; k <= 9; ++k)
		h.insert(k);
	h.delete_min();
	const auto sizes = subtree_sizes(h.topology());
	const Topology &t = h.topology();
	for (std::uint32_t v = 0; v < t.slot_count(); ++v) {
		const NodeHandle x{v};
		if (!t.is_live(x))
			continue;
		const std::uint64_t l = t.left(x) ? sizes[t.left(x).id()].total() : 0;
		const std::uint64_t r = t.right(x) ? sizes[t.right(x).id()].total() : 0;
		EXPECT_EQ(sizes[v], (SizePair{l, r}));
	}
	EXPECT_EQ(sizes[t.root().id()].total(), h.size());
}

TEST(Potential, EmptyHeapIs900) {
	PairingHeap<int> h;
	const auto p = total_potential(h.topology(), StickyTracker{});
	EXPECT_EQ(p.node, 0.0);
	EXPECT_EQ(p.edge, 0.0);
	EXPECT_EQ(p.size, 900.0);
	EXPECT_EQ(p.total, 900.0);
}

TEST(Potential, ThreeChain) {
	PairingHeap<int> h;
	h.insert(3);
	h.insert(2);
	h.insert(1);
	const auto p = total_potential(h.topology(), StickyTracker{2});
	EXPECT_DOUBLE_EQ(p.node, 400.0);
	EXPECT_EQ(p.edge, 0.0);
	EXPECT_EQ(p.size, 900.0);
	EXPECT_DOUBLE_EQ(p.total, 1300.0);
}

// Library evaluation against the from-definition evaluation in the test
// reference, on random shapes and every sticky size that could apply.
TEST(Potential, MatchesReferenceEvaluation) {
	for (std::uint64_t seed = 0; seed < 10; ++seed) {
		SplitMix64 rng{seed};
		PairingHeap<std::int64_t> h;
		reftest::RefHeap ref;
		for (int step = 0; step < 3000; ++step) {
			if (rng.below(10) < 6 || h.empty()) {
				const auto key = static_cast<std::int64_t>(rng.below(1u << 20)) * 4096 + step;
				h.insert(key);
				ref.insert(key);
			} else {
				h.delete_min();
				ref.delete_min();
			}
			if (step % 97 != 0)
				continue;
			for (std::uint64_t big_n = 1; big_n <= 4096; big_n *= 2) {
				const auto got = total_potential(h.topology(), StickyTracker{big_n});
				const auto want = reftest::ref_potential(ref.binary(), ref.root, big_n, ref.n);
				ASSERT_NEAR(got.node, want.node, 1e-6 * (1 + want.node));
				ASSERT_EQ(got.edge, want.edge);
				ASSERT_EQ(got.size, want.size);
				ASSERT_GE(got.total, 0.0);
			}
		}
	}
}

TEST(Potential, MonotoneInBothSides) {
	SplitMix64 rng{12345};
	for (int i = 0; i < 20000; ++i) {
		const std::uint64_t a = rng.below(1u << 16) + 1;
		const std::uint64_t b = rng.below(1u << 16) + 1;
		const std::uint64_t big_n = std::uint64_t{4} << rng.below(15);
		const double base = node_potential({a, b}, big_n);
		EXPECT_LE(base, node_potential({a + 1, b}, big_n) + 1e-9);
		EXPECT_LE(base, node_potential({a, b + 1}, big_n) + 1e-9);
	}
}
