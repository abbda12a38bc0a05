#ifndef PAIRHEAP_SPLITMIX_HPP
#define PAIRHEAP_SPLITMIX_HPP

#include <cstdint>

namespace pairheap {

// SplitMix64 (Steele, Lea, Flood 2014). Fixed so that generated workloads
// are bit-identical on every platform.
class SplitMix64 {
public:
	explicit SplitMix64(std::uint64_t seed) : state_{seed} {}

	std::uint64_t next() {
		std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
		z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
		z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
		return z ^ (z >> 31);
	}

	// Uniform in [0, bound) by rejection; bound must be positive.
	std::uint64_t below(std::uint64_t bound) {
		const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
		std::uint64_t v;
		do {
			v = next();
		} while (v >= limit);
		return v % bound;
	}

private:
	std::uint64_t state_;
};

} // namespace pairheap

#endif
