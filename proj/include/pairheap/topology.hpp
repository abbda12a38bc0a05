#ifndef PAIRHEAP_TOPOLOGY_HPP
#define PAIRHEAP_TOPOLOGY_HPP

#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

namespace pairheap {

// Stable identifier of a heap node. Handles index the heap's arena and are
// never re-issued within one heap's lifetime, so a handle to a deleted node
// stays detectably stale.
class NodeHandle {
public:
	static constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

	constexpr NodeHandle() = default;
	constexpr explicit NodeHandle(std::uint32_t id) : id_{id} {}

	constexpr std::uint32_t id() const { return id_; }
	constexpr explicit operator bool() const { return id_ != kNone; }

	friend constexpr bool operator==(NodeHandle, NodeHandle) = default;

private:
	std::uint32_t id_ = kNone;
};

// Which step of which operation performed a pairing.
enum class PairingPass : std::uint8_t { First, Second, Insert, DecreaseKey, Merge };

const char *to_string(PairingPass pass);

// Instrumentation record. Emitted synchronously, before the heap mutates any
// link, so a listener can still read the pre-operation shape.
struct HeapEvent {
	enum class Kind : std::uint8_t { Pairing, RootRemoved, Detach };

	Kind kind;
	PairingPass pass = PairingPass::First; // Pairing only
	// Pairing: `first` is the left participant (or the first argument of a
	// root pairing), `second` its right binary child (or the second root).
	// RootRemoved / Detach: `first` is the node concerned.
	NodeHandle first;
	NodeHandle second;
};

class HeapListener {
public:
	virtual ~HeapListener() = default;
	virtual void on_event(const HeapEvent &event) = 0;
};

template <typename Key, typename Compare>
class PairingHeap;

// Key-agnostic shape of a pairing heap in the binary (leftmost-child,
// right-sibling) view. Read-only for everyone but the heap that owns it.
class Topology {
public:
	NodeHandle root() const { return root_; }
	std::size_t size() const { return size_; }
	bool empty() const { return size_ == 0; }

	// Number of arena slots ever allocated, live or dead.
	std::size_t slot_count() const { return links_.size(); }

	bool is_live(NodeHandle h) const {
		return h && h.id() < live_.size() && live_[h.id()] != 0;
	}

	NodeHandle left(NodeHandle h) const { return links_[h.id()].left; }
	NodeHandle right(NodeHandle h) const { return links_[h.id()].right; }
	NodeHandle parent(NodeHandle h) const { return links_[h.id()].parent; }

private:
	template <typename Key, typename Compare>
	friend class PairingHeap;

	struct Links {
		NodeHandle left;
		NodeHandle right;
		NodeHandle parent;
	};

	Links &at(NodeHandle h) { return links_[h.id()]; }

	std::vector<Links> links_;
	std::vector<std::uint8_t> live_;
	NodeHandle root_;
	std::size_t size_ = 0;
};

inline const char *to_string(PairingPass pass) {
	switch (pass) {
	case PairingPass::First: return "first";
	case PairingPass::Second: return "second";
	case PairingPass::Insert: return "insert";
	case PairingPass::DecreaseKey: return "decrease-key";
	case PairingPass::Merge: return "merge";
	}
	return "?";
}

} // namespace pairheap

#endif
