#ifndef PAIRHEAP_WORKLOADS_HPP
#define PAIRHEAP_WORKLOADS_HPP

#include <pairheap/trace.hpp>

#include <cstdint>

namespace pairheap {

// n inserts of the keys 1..n in the given order, then n deletemins.
Trace gen_sorted(std::uint64_t n, bool ascending);

// n warm-up inserts, then `ops_extra` draws: 50% insert, 30% deletemin,
// 15% decreasekey, 5% getmin. Draws that would be invalid (deletemin or
// getmin on an empty queue, a decreasekey with no room below the current
// key) emit nothing. Keys are distinct: a drawn value in [0, 2^30) scaled by
// 2^24 plus a running counter.
Trace gen_random(std::uint64_t n, std::uint64_t ops_extra, std::uint64_t seed);

// Dijkstra's algorithm from vertex 0 on a random connected multigraph with
// v vertices, e >= v - 1 edges and weights in [1, 100]. All vertices are
// inserted up front (the source at distance 0, the rest at "infinity");
// relaxations become decreasekeys. Keys are distance * 2^20 + vertex.
Trace gen_dijkstra_like(std::uint64_t v, std::uint64_t e, std::uint64_t seed);

} // namespace pairheap

#endif
