#include <pairheap/splitmix.hpp>
#include <pairheap/workloads.hpp>

#include <limits>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

namespace pairheap {

Trace gen_sorted(std::uint64_t n, bool ascending) {
	if (n < 1)
		throw std::invalid_argument("gen_sorted needs n >= 1");
	Trace trace;
	trace.reserve(2 * n);
	for (std::uint64_t i = 0; i < n; ++i)
		trace.push_back(InsertOp{static_cast<std::int64_t>(ascending ? i + 1 : n - i)});
	for (std::uint64_t i = 0; i < n; ++i)
		trace.push_back(DeleteMinOp{});
	return trace;
}

namespace {

constexpr unsigned kCounterBits = 24;
constexpr std::uint64_t kValueRange = std::uint64_t{1} << 30;

// Live elements with O(1) uniform sampling and O(log n) min extraction.
class LiveSet {
public:
	std::uint64_t add(std::int64_t key) {
		const std::uint64_t id = keys_.size();
		keys_.push_back(key);
		slot_.push_back(ids_.size());
		ids_.push_back(id);
		order_.insert({key, id});
		return id;
	}
	bool empty() const { return ids_.empty(); }
	std::uint64_t sample(SplitMix64 &rng) const { return ids_[rng.below(ids_.size())]; }
	std::int64_t key(std::uint64_t id) const { return keys_[id]; }

	void pop_min() {
		const std::uint64_t id = order_.begin()->second;
		order_.erase(order_.begin());
		const std::size_t at = slot_[id];
		ids_[at] = ids_.back();
		slot_[ids_[at]] = at;
		ids_.pop_back();
	}
	void rekey(std::uint64_t id, std::int64_t key) {
		order_.erase({keys_[id], id});
		keys_[id] = key;
		order_.insert({key, id});
	}

private:
	std::vector<std::int64_t> keys_;
	std::vector<std::size_t> slot_;
	std::vector<std::uint64_t> ids_;
	std::set<std::pair<std::int64_t, std::uint64_t>> order_;
};

} // namespace

Trace gen_random(std::uint64_t n, std::uint64_t ops_extra, std::uint64_t seed) {
	if (n + ops_extra >= (std::uint64_t{1} << kCounterBits))
		throw std::invalid_argument("gen_random supports fewer than 2^24 operations");
	SplitMix64 rng{seed};
	std::uint64_t counter = 0;
	auto make_key = [&counter](std::uint64_t value) {
		return static_cast<std::int64_t>((value << kCounterBits) | counter++);
	};

	Trace trace;
	trace.reserve(n + ops_extra);
	LiveSet live;
	auto insert = [&] {
		const std::int64_t key = make_key(rng.below(kValueRange));
		live.add(key);
		trace.push_back(InsertOp{key});
	};
	for (std::uint64_t i = 0; i < n; ++i)
		insert();
	for (std::uint64_t i = 0; i < ops_extra; ++i) {
		const std::uint64_t draw = rng.below(100);
		if (draw < 50) {
			insert();
		} else if (draw < 80) {
			if (live.empty())
				continue;
			live.pop_min();
			trace.push_back(DeleteMinOp{});
		} else if (draw < 95) {
			if (live.empty())
				continue;
			const std::uint64_t id = live.sample(rng);
			const auto value = static_cast<std::uint64_t>(live.key(id)) >> kCounterBits;
			if (value == 0)
				continue;
			const std::int64_t key = make_key(rng.below(value));
			live.rekey(id, key);
			trace.push_back(DecreaseKeyOp{id, key});
		} else {
			if (live.empty())
				continue;
			trace.push_back(GetMinOp{});
		}
	}
	return trace;
}

Trace gen_dijkstra_like(std::uint64_t v, std::uint64_t e, std::uint64_t seed) {
	if (v < 1 || e + 1 < v)
		throw std::invalid_argument("gen_dijkstra_like needs v >= 1 and e >= v - 1");
	if (v >= (std::uint64_t{1} << 20))
		throw std::invalid_argument("gen_dijkstra_like supports fewer than 2^20 vertices");
	constexpr unsigned kVertexBits = 20;
	constexpr std::uint64_t kInfinity = std::uint64_t{1} << 40;
	SplitMix64 rng{seed};

	struct Arc {
		std::uint64_t to;
		std::uint64_t weight;
	};
	std::vector<std::vector<Arc>> adj(v);
	auto connect = [&](std::uint64_t a, std::uint64_t b) {
		const std::uint64_t w = 1 + rng.below(100);
		adj[a].push_back({b, w});
		adj[b].push_back({a, w});
	};
	// Random spanning tree first so every vertex is reachable.
	for (std::uint64_t i = 1; i < v; ++i)
		connect(i, rng.below(i));
	for (std::uint64_t i = v - 1; i < e; ++i) {
		if (v < 2)
			break;
		const std::uint64_t a = rng.below(v);
		std::uint64_t b = rng.below(v - 1);
		if (b >= a)
			++b;
		connect(a, b);
	}

	auto key_of = [](std::uint64_t dist, std::uint64_t vertex) {
		return static_cast<std::int64_t>((dist << kVertexBits) | vertex);
	};
	Trace trace;
	std::vector<std::uint64_t> dist(v, kInfinity);
	std::vector<char> settled(v, 0);
	std::set<std::pair<std::int64_t, std::uint64_t>> queue;
	dist[0] = 0;
	for (std::uint64_t i = 0; i < v; ++i) {
		const std::int64_t key = key_of(dist[i], i);
		trace.push_back(InsertOp{key});
		queue.insert({key, i});
	}
	while (!queue.empty()) {
		const std::uint64_t u = queue.begin()->second;
		queue.erase(queue.begin());
		trace.push_back(DeleteMinOp{});
		settled[u] = 1;
		for (const Arc &arc : adj[u]) {
			if (settled[arc.to] || dist[u] + arc.weight >= dist[arc.to])
				continue;
			queue.erase({key_of(dist[arc.to], arc.to), arc.to});
			dist[arc.to] = dist[u] + arc.weight;
			const std::int64_t key = key_of(dist[arc.to], arc.to);
			queue.insert({key, arc.to});
			trace.push_back(DecreaseKeyOp{arc.to, key});
		}
	}
	return trace;
}

} // namespace pairheap
