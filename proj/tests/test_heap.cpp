#include "reference_heap.hpp"

#include <pairheap/pairing_heap.hpp>
#include <pairheap/splitmix.hpp>

#include <gtest/gtest.h>

#include <vector>

using namespace pairheap;

namespace {

using Heap = PairingHeap<int>;

// Collects pairings in emission order.
struct Recorder : HeapListener {
	std::vector<HeapEvent> events;
	void on_event(const HeapEvent &e) override { events.push_back(e); }
	std::vector<HeapEvent> pairings(PairingPass pass) const {
		std::vector<HeapEvent> out;
		for (const auto &e : events)
			if (e.kind == HeapEvent::Kind::Pairing && e.pass == pass)
				out.push_back(e);
		return out;
	}
};

// General-view children of `h`, leftmost first.
std::vector<int> children(const Heap &heap, NodeHandle h) {
	std::vector<int> keys;
	for (NodeHandle c = heap.topology().left(h); c; c = heap.topology().right(c))
		keys.push_back(heap.key(c));
	return keys;
}

} // namespace

TEST(PairingHeap, EmptyHeap) {
	Heap h;
	EXPECT_EQ(h.size(), 0u);
	EXPECT_FALSE(h.topology().root());
	EXPECT_THROW(h.get_min(), EmptyHeap);
	EXPECT_THROW(h.delete_min(), EmptyHeap);
}

TEST(PairingHeap, InsertSingle) {
	Heap h;
	h.insert(5);
	EXPECT_EQ(h.get_min(), 5);
	h.insert(7);
	EXPECT_EQ(h.get_min(), 5);
}

TEST(PairingHeap, InsertIntoEmptyPerformsNoPairing) {
	Heap h;
	h.insert(7);
	EXPECT_EQ(h.pairings(), 0u);
	EXPECT_EQ(h.get_min(), 7);
	EXPECT_EQ(h.size(), 1u);
}

TEST(PairingHeap, PairSmallerKeyWins) {
	for (bool smaller_first : {true, false}) {
		Heap h;
		if (smaller_first) {
			h.insert(3);
			h.insert(5);
		} else {
			h.insert(5);
			h.insert(3);
		}
		const NodeHandle root = h.topology().root();
		EXPECT_EQ(h.key(root), 3);
		EXPECT_EQ(children(h, root), std::vector<int>{5});
		EXPECT_EQ(h.pairings(), 1u);
	}
}

TEST(PairingHeap, TieGoesToFirstArgument) {
	Heap h;
	const NodeHandle a = h.insert(4);
	const NodeHandle b = h.insert(4);
	// Insert pairs (new node, root), so the new node wins the tie.
	EXPECT_EQ(h.topology().root(), b);
	EXPECT_EQ(h.topology().left(b), a);
}

TEST(PairingHeap, GetMinAfterDecrease) {
	Heap h;
	h.insert(3);
	h.insert(5);
	const NodeHandle seven = h.insert(7);
	EXPECT_EQ(h.get_min(), 3);
	h.decrease_key(seven, 1);
	EXPECT_EQ(h.get_min(), 1);
}

TEST(PairingHeap, DeleteMinNineAscending) {
	Heap h;
	Recorder rec;
	h.set_listener(&rec);
	for (int k = 1; k <= 9; ++k)
		h.insert(k);
	EXPECT_EQ(children(h, h.topology().root()), (std::vector<int>{9, 8, 7, 6, 5, 4, 3, 2}));

	rec.events.clear();
	const auto before = h.pairings();
	EXPECT_EQ(h.delete_min(), 1);
	EXPECT_EQ(h.pairings() - before + 1, 8u);

	const auto first = rec.pairings(PairingPass::First);
	ASSERT_EQ(first.size(), 4u);
	const std::vector<std::pair<int, int>> expected{{9, 8}, {7, 6}, {5, 4}, {3, 2}};
	for (std::size_t i = 0; i < 4; ++i) {
		EXPECT_EQ(h.key(first[i].first), expected[i].first);
		EXPECT_EQ(h.key(first[i].second), expected[i].second);
	}
	const auto second = rec.pairings(PairingPass::Second);
	ASSERT_EQ(second.size(), 3u);
	// Right to left: (4, 2), (6, 2), (8, 2).
	EXPECT_EQ(h.key(second[0].first), 4);
	EXPECT_EQ(h.key(second[1].first), 6);
	EXPECT_EQ(h.key(second[2].first), 8);
	EXPECT_EQ(h.get_min(), 2);
	EXPECT_EQ(children(h, h.topology().root()), (std::vector<int>{8, 6, 4, 3}));
}

TEST(PairingHeap, DeleteMinSingleton) {
	Heap h;
	h.insert(4);
	EXPECT_EQ(h.delete_min(), 4);
	EXPECT_TRUE(h.empty());
	EXPECT_EQ(h.pairings(), 0u);
}

TEST(PairingHeap, DeleteMinOneChild) {
	Heap h;
	h.insert(3);
	h.insert(5);
	const auto before = h.pairings();
	EXPECT_EQ(h.delete_min(), 3);
	EXPECT_EQ(h.get_min(), 5);
	EXPECT_EQ(h.pairings(), before);
}

TEST(PairingHeap, DecreaseRootKeyOnly) {
	Heap h;
	const NodeHandle r = h.insert(3);
	h.insert(5);
	const auto before = h.pairings();
	const NodeHandle left = h.topology().left(r);
	h.decrease_key(r, 1);
	EXPECT_EQ(h.get_min(), 1);
	EXPECT_EQ(h.pairings(), before);
	EXPECT_EQ(h.topology().left(r), left);
}

TEST(PairingHeap, DecreaseKeyDetachesAndPairs) {
	Heap h;
	std::vector<NodeHandle> at(10);
	for (int k = 1; k <= 9; ++k)
		at[k] = h.insert(k);
	// Root 1, children 9, 8, ..., 2.
	h.decrease_key(at[9], 0);
	EXPECT_EQ(h.topology().root(), at[9]);
	EXPECT_EQ(h.topology().left(at[9]), at[1]);
	EXPECT_EQ(h.topology().left(at[1]), at[8]);
	EXPECT_EQ(h.topology().parent(at[8]), at[1]);
	EXPECT_EQ(children(h, at[1]), (std::vector<int>{8, 7, 6, 5, 4, 3, 2}));
}

TEST(PairingHeap, DecreaseKeyErrors) {
	Heap h;
	const NodeHandle a = h.insert(5);
	const NodeHandle b = h.insert(6);
	EXPECT_THROW(h.decrease_key(b, 6), NotADecrease);
	EXPECT_THROW(h.decrease_key(b, 7), NotADecrease);
	EXPECT_THROW(h.decrease_key(NodeHandle{}, 1), InvalidHandle);
	EXPECT_THROW(h.decrease_key(NodeHandle{42}, 1), InvalidHandle);
	h.delete_min();
	EXPECT_THROW(h.decrease_key(a, 1), InvalidHandle);
}

TEST(PairingHeap, MergeWithEmpty) {
	Heap a, b;
	b.insert(2);
	b.insert(9);
	a.merge(std::move(b));
	EXPECT_EQ(a.size(), 2u);
	EXPECT_EQ(a.get_min(), 2);
	EXPECT_TRUE(b.empty());
}

TEST(PairingHeap, MergeSingles) {
	Heap a, b;
	a.insert(3);
	b.insert(5);
	a.merge(std::move(b));
	EXPECT_EQ(a.size(), 2u);
	EXPECT_EQ(a.get_min(), 3);
	EXPECT_EQ(children(a, a.topology().root()), std::vector<int>{5});
}

TEST(PairingHeap, MergeTwoPairs) {
	Heap a, b;
	a.insert(1);
	a.insert(4);
	const NodeHandle two = b.insert(2);
	b.insert(3);
	const std::uint32_t offset = a.merge(std::move(b));
	const NodeHandle moved{two.id() + offset};
	EXPECT_EQ(a.get_min(), 1);
	EXPECT_EQ(a.topology().left(a.topology().root()), moved);
	EXPECT_EQ(a.key(moved), 2);
	EXPECT_EQ(children(a, a.topology().root()), (std::vector<int>{2, 4}));
}

TEST(PairingHeap, CopyIsIndependentAndUnobserved) {
	Heap a;
	Recorder rec;
	a.set_listener(&rec);
	a.insert(2);
	Heap copy = a;
	rec.events.clear();
	copy.insert(1);
	EXPECT_TRUE(rec.events.empty());
	EXPECT_EQ(a.get_min(), 2);
	EXPECT_EQ(copy.get_min(), 1);
}

TEST(PairingHeap, EventsPrecedeMutation) {
	struct Probe : HeapListener {
		const Heap *heap = nullptr;
		bool saw_right_child = true;
		void on_event(const HeapEvent &e) override {
			if (e.kind == HeapEvent::Kind::Pairing && e.pass == PairingPass::First)
				saw_right_child &= heap->topology().right(e.first) == e.second;
		}
	} probe;
	Heap h;
	probe.heap = &h;
	h.set_listener(&probe);
	for (int k = 1; k <= 20; ++k)
		h.insert(k);
	h.delete_min();
	EXPECT_TRUE(probe.saw_right_child);
}

// Random operations mirrored on the child-list reference heap; the binary
// views must agree link for link after every step.
TEST(PairingHeap, MatchesReferenceShape) {
	for (std::uint64_t seed = 0; seed < 20; ++seed) {
		SplitMix64 rng{seed};
		Heap h;
		reftest::RefHeap ref;
		std::vector<NodeHandle> handles;
		std::int64_t counter = 0;
		for (int step = 0; step < 600; ++step) {
			const auto draw = rng.below(10);
			if (draw < 5 || h.empty()) {
				const int key = static_cast<int>(rng.below(1000)) * 1000 + counter++;
				handles.push_back(h.insert(key));
				ref.insert(key);
			} else if (draw < 8) {
				EXPECT_EQ(h.delete_min(), ref.delete_min());
			} else {
				const auto id = rng.below(handles.size());
				if (!h.contains(handles[id]) || h.key(handles[id]) < 1000)
					continue;
				const int key = h.key(handles[id]) - 1000;
				h.decrease_key(handles[id], key);
				ref.decrease_key(static_cast<int>(id), key);
			}
			const auto expect = ref.binary();
			ASSERT_EQ(reftest::id_of(h.topology().root()), ref.root) << "seed " << seed;
			for (std::size_t v = 0; v < handles.size(); ++v) {
				if (!h.contains(handles[v]))
					continue;
				const NodeHandle x = handles[v];
				ASSERT_EQ(reftest::id_of(h.topology().left(x)), expect[v].left);
				ASSERT_EQ(reftest::id_of(h.topology().right(x)), expect[v].right);
				ASSERT_EQ(reftest::id_of(h.topology().parent(x)), expect[v].parent);
			}
		}
	}
}

TEST(PairingHeap, DescendingInsertsBuildChain) {
	Heap h;
	const int n = 64;
	for (int k = n; k >= 1; --k)
		h.insert(k);
	// Every node but the single leaf has exactly one child.
	int leaves = 0;
	for (NodeHandle v = h.topology().root(); v; v = h.topology().left(v)) {
		EXPECT_FALSE(h.topology().right(v));
		if (!h.topology().left(v))
			++leaves;
	}
	EXPECT_EQ(leaves, 1);
}
