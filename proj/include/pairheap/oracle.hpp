#ifndef PAIRHEAP_ORACLE_HPP
#define PAIRHEAP_ORACLE_HPP

#include <pairheap/errors.hpp>
#include <pairheap/trace.hpp>

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace pairheap {

// Reference priority queue: a sorted multiset of (key, id) where id is the
// insertion index. Equal keys leave in insertion order.
template <typename Key>
class NaiveQueue {
public:
	std::uint64_t insert(Key key) {
		const std::uint64_t id = keys_.size();
		order_.insert({key, id});
		keys_.push_back(std::move(key));
		present_.push_back(1);
		return id;
	}

	std::size_t size() const { return order_.size(); }

	const Key &get_min() const {
		if (order_.empty())
			throw EmptyHeap{};
		return order_.begin()->first;
	}

	Key delete_min() {
		if (order_.empty())
			throw EmptyHeap{};
		auto [key, id] = *order_.begin();
		order_.erase(order_.begin());
		present_[id] = 0;
		return key;
	}

	void decrease_key(std::uint64_t id, Key key) {
		if (id >= keys_.size() || !present_[id])
			throw InvalidHandle("id " + std::to_string(id) + " is not in the queue");
		if (!(key < keys_[id]))
			throw NotADecrease("new key is not strictly less than the current key");
		order_.erase({keys_[id], id});
		keys_[id] = key;
		order_.insert({std::move(key), id});
	}

private:
	std::set<std::pair<Key, std::uint64_t>> order_;
	std::vector<Key> keys_;
	std::vector<std::uint8_t> present_;
};

struct OracleReport {
	bool matched = true;
	std::size_t compared = 0;
	// First divergence, if any.
	std::size_t op_index = 0;
	std::optional<std::int64_t> heap_key;
	std::optional<std::int64_t> oracle_key;
	std::string message;
};

// Replays `trace` on a PairingHeap and on a NaiveQueue and compares every
// key returned by getmin and deletemin.
OracleReport run_and_compare(const Trace &trace);

} // namespace pairheap

#endif
