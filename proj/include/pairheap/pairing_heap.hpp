#ifndef PAIRHEAP_PAIRING_HEAP_HPP
#define PAIRHEAP_PAIRING_HEAP_HPP

#include <pairheap/errors.hpp>
#include <pairheap/topology.hpp>

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace pairheap {

// Two-pass pairing heap stored in the binary view: a node's left link is its
// leftmost child, its right link is its next sibling, and the parent link
// points to the binary-view parent.
//
// Nodes live in an arena owned by the heap. Every pairing is announced to the
// attached HeapListener before any link changes.
template <typename Key, typename Compare = std::less<Key>>
class PairingHeap {
public:
	using key_type = Key;

	PairingHeap() = default;
	explicit PairingHeap(Compare compare) : compare_{std::move(compare)} {}

	// Moving transfers the arena; the listener stays with neither copy.
	PairingHeap(PairingHeap &&other) noexcept
	: topo_{std::move(other.topo_)}, keys_{std::move(other.keys_)},
	  compare_{std::move(other.compare_)}, pairings_{other.pairings_} {
		other.reset_after_move();
	}
	PairingHeap &operator=(PairingHeap &&other) noexcept {
		if (this != &other) {
			topo_ = std::move(other.topo_);
			keys_ = std::move(other.keys_);
			compare_ = std::move(other.compare_);
			pairings_ = other.pairings_;
			listener_ = nullptr;
			other.reset_after_move();
		}
		return *this;
	}
	// Copies share no state; the copy starts without a listener.
	PairingHeap(const PairingHeap &other)
	: topo_{other.topo_}, keys_{other.keys_}, compare_{other.compare_},
	  pairings_{other.pairings_} {}
	PairingHeap &operator=(const PairingHeap &other) {
		if (this != &other) {
			PairingHeap copy{other};
			*this = std::move(copy);
		}
		return *this;
	}

	void set_listener(HeapListener *listener) { listener_ = listener; }

	std::size_t size() const { return topo_.size(); }
	bool empty() const { return topo_.empty(); }
	const Topology &topology() const { return topo_; }

	// Total pairings performed over the heap's lifetime. An operation's
	// actual cost is one plus the growth of this counter.
	std::uint64_t pairings() const { return pairings_; }

	bool contains(NodeHandle h) const { return topo_.is_live(h); }

	const Key &key(NodeHandle h) const {
		check_handle(h);
		return keys_[h.id()];
	}

	NodeHandle insert(Key key) {
		if (topo_.slot_count() >= NodeHandle::kNone)
			throw HeapError("node arena exhausted");
		NodeHandle node{static_cast<std::uint32_t>(topo_.slot_count())};
		topo_.links_.push_back({});
		topo_.live_.push_back(1);
		keys_.push_back(std::move(key));
		++topo_.size_;
		if (!topo_.root_)
			topo_.root_ = node;
		else
			topo_.root_ = pair_roots(node, topo_.root_, PairingPass::Insert);
		return node;
	}

	const Key &get_min() const {
		if (empty())
			throw EmptyHeap{};
		return keys_[topo_.root_.id()];
	}

	Key delete_min() {
		if (empty())
			throw EmptyHeap{};
		const NodeHandle old_root = topo_.root_;
		emit({HeapEvent::Kind::RootRemoved, PairingPass::First, old_root, {}});

		NodeHandle first = topo_.left(old_root);
		topo_.at(old_root) = {};
		topo_.live_[old_root.id()] = 0;
		--topo_.size_;
		topo_.root_ = NodeHandle{};
		if (!first)
			return std::move(keys_[old_root.id()]);
		topo_.at(first).parent = NodeHandle{};

		// First pass: pair left to right in groups of two. An odd leftover
		// stays unpaired until the second pass.
		NodeHandle cursor = first;
		NodeHandle last_winner;
		while (cursor && topo_.right(cursor)) {
			last_winner = pair_with_right(cursor, PairingPass::First);
			cursor = topo_.right(last_winner);
		}

		// Second pass: fold the two rightmost trees until one remains.
		NodeHandle acc = cursor ? cursor : last_winner;
		while (NodeHandle up = topo_.parent(acc))
			acc = pair_with_right(up, PairingPass::Second);

		topo_.root_ = acc;
		return std::move(keys_[old_root.id()]);
	}

	// Lowers the key at `h` to `key`, which must be strictly smaller. A
	// non-root node is cut out together with its leftmost-child subtree and
	// paired with the root.
	void decrease_key(NodeHandle h, Key key) {
		check_handle(h);
		if (!compare_(key, keys_[h.id()]))
			throw NotADecrease("new key is not strictly less than the current key");
		keys_[h.id()] = std::move(key);
		if (h == topo_.root_)
			return;

		emit({HeapEvent::Kind::Detach, PairingPass::DecreaseKey, h, {}});
		const NodeHandle up = topo_.parent(h);
		const NodeHandle next = topo_.right(h);
		if (topo_.left(up) == h)
			topo_.at(up).left = next;
		else
			topo_.at(up).right = next;
		if (next)
			topo_.at(next).parent = up;
		topo_.at(h).right = NodeHandle{};
		topo_.at(h).parent = NodeHandle{};

		topo_.root_ = pair_roots(h, topo_.root_, PairingPass::DecreaseKey);
	}

	// Absorbs `other` into this heap. Nodes of `other` are appended to this
	// arena; a handle `h` issued by `other` is valid here as
	// `NodeHandle{h.id() + offset}` where `offset` is the return value.
	std::uint32_t merge(PairingHeap &&other) {
		if (topo_.slot_count() + other.topo_.slot_count() >= NodeHandle::kNone)
			throw HeapError("node arena exhausted");
		const auto offset = static_cast<std::uint32_t>(topo_.slot_count());
		auto shift = [offset](NodeHandle h) {
			return h ? NodeHandle{h.id() + offset} : h;
		};
		for (const auto &l : other.topo_.links_)
			topo_.links_.push_back({shift(l.left), shift(l.right), shift(l.parent)});
		topo_.live_.insert(topo_.live_.end(), other.topo_.live_.begin(), other.topo_.live_.end());
		for (auto &k : other.keys_)
			keys_.push_back(std::move(k));

		const NodeHandle other_root = shift(other.topo_.root_);
		topo_.size_ += other.topo_.size_;
		other.reset_after_move();

		if (!other_root)
			return offset;
		if (!topo_.root_)
			topo_.root_ = other_root;
		else
			topo_.root_ = pair_roots(topo_.root_, other_root, PairingPass::Merge);
		return offset;
	}

private:
	void reset_after_move() {
		topo_ = Topology{};
		keys_.clear();
		pairings_ = 0;
		listener_ = nullptr;
	}

	void check_handle(NodeHandle h) const {
		if (!topo_.is_live(h))
			throw InvalidHandle(h ? "node " + std::to_string(h.id()) + " is not in the heap"
			                      : "null handle");
	}

	void emit(const HeapEvent &event) {
		if (listener_)
			listener_->on_event(event);
	}

	// Ties go to `a`.
	bool first_wins(NodeHandle a, NodeHandle b) const {
		return !compare_(keys_[b.id()], keys_[a.id()]);
	}

	// Links two standalone roots and returns the winner, which is left
	// without parent or sibling.
	NodeHandle pair_roots(NodeHandle a, NodeHandle b, PairingPass pass) {
		emit({HeapEvent::Kind::Pairing, pass, a, b});
		++pairings_;
		const bool a_wins = first_wins(a, b);
		const NodeHandle winner = a_wins ? a : b;
		const NodeHandle loser = a_wins ? b : a;
		adopt(winner, loser);
		topo_.at(winner).right = NodeHandle{};
		topo_.at(winner).parent = NodeHandle{};
		return winner;
	}

	// Pairs `x` with its right sibling in place. The winner takes over x's
	// position and the sibling list beyond the pair.
	NodeHandle pair_with_right(NodeHandle x, PairingPass pass) {
		const NodeHandle y = topo_.right(x);
		emit({HeapEvent::Kind::Pairing, pass, x, y});
		++pairings_;
		const NodeHandle up = topo_.parent(x);
		const NodeHandle rest = topo_.right(y);
		const bool up_left = up && topo_.left(up) == x;

		const bool x_wins = first_wins(x, y);
		const NodeHandle winner = x_wins ? x : y;
		const NodeHandle loser = x_wins ? y : x;
		adopt(winner, loser);

		topo_.at(winner).right = rest;
		if (rest)
			topo_.at(rest).parent = winner;
		topo_.at(winner).parent = up;
		if (up) {
			if (up_left)
				topo_.at(up).left = winner;
			else
				topo_.at(up).right = winner;
		}
		return winner;
	}

	// Makes `loser` the leftmost child of `winner`.
	void adopt(NodeHandle winner, NodeHandle loser) {
		const NodeHandle old_first = topo_.left(winner);
		topo_.at(loser).right = old_first;
		if (old_first)
			topo_.at(old_first).parent = loser;
		topo_.at(winner).left = loser;
		topo_.at(loser).parent = winner;
	}

	Topology topo_;
	std::vector<Key> keys_;
	Compare compare_{};
	HeapListener *listener_ = nullptr;
	std::uint64_t pairings_ = 0;
};

} // namespace pairheap

#endif
