#ifndef PAIRHEAP_ANALYZER_HPP
#define PAIRHEAP_ANALYZER_HPP

#include <pairheap/pairing_heap.hpp>
#include <pairheap/potential.hpp>
#include <pairheap/topology.hpp>

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace pairheap {

enum class OpKind : std::uint8_t { Insert, GetMin, DeleteMin, DecreaseKey, Merge };

const char *to_string(OpKind kind);

// Unordered category pair of a pairing's two participants.
enum class CategoryPair : std::uint8_t { LL, MM, SS, ML, MS, LS };
inline constexpr std::size_t kCategoryPairCount = 6;

CategoryPair category_pair(NodeCategory a, NodeCategory b);
const char *to_string(CategoryPair pair);

struct PassTally {
	std::array<std::uint64_t, kCategoryPairCount> count{};
	// Sum of node + edge potential change of the pairings in each bucket.
	std::array<double, kCategoryPairCount> potential{};

	std::uint64_t operator[](CategoryPair p) const { return count[static_cast<std::size_t>(p)]; }
	double potential_of(CategoryPair p) const { return potential[static_cast<std::size_t>(p)]; }
	std::uint64_t total() const;
};

// One pairing as seen by the analyzer. `x` is the left participant and `y`
// its right binary child (for root pairings: first and second argument).
// Sizes and categories are taken before the pairing.
struct PairingRecord {
	std::size_t op_index = 0;
	PairingPass pass = PairingPass::First;
	NodeHandle x;
	NodeHandle y;
	bool x_won = true;
	std::uint64_t sticky = 1;
	SizePair size_x;
	SizePair size_y;
	NodeCategory cat_x = NodeCategory::Small;
	NodeCategory cat_y = NodeCategory::Small;
	NodeCategory winner_after = NodeCategory::Small;
	NodeCategory loser_after = NodeCategory::Small;
	double delta_node = 0.0;
	double delta_edge = 0.0;
	std::uint64_t y_right_size = 0;
	// Mixed-large only: |y_R| > lg N.
	bool normal = false;

	CategoryPair categories() const { return category_pair(cat_x, cat_y); }
};

struct OpRecord {
	OpKind kind = OpKind::GetMin;
	std::uint64_t actual_cost = 1;
	PotentialBreakdown phi_before;
	PotentialBreakdown phi_after;
	double amortized = 0.0;
	std::uint64_t n_before = 0;
	std::uint64_t n_after = 0;
	std::uint64_t sticky_before = 1;
	std::uint64_t sticky_after = 1;
	PassTally first_pass;
	PassTally second_pass;
	// Decomposition of phi_after.total - phi_before.total (merges also
	// include the absorbed heap, see Analyzer::begin_merge).
	double delta_pairings = 0.0;
	double delta_root_removal = 0.0;
	double delta_detach = 0.0;
	double delta_reclassify = 0.0;
	double classic_after = 0.0;
	std::size_t pairing_begin = 0;
	std::size_t pairing_end = 0;
};

struct Ledger {
	std::vector<OpRecord> ops;
	std::vector<PairingRecord> pairings;

	std::span<const PairingRecord> pairings_of(const OpRecord &op) const {
		return std::span<const PairingRecord>(pairings).subspan(op.pairing_begin,
		                                                        op.pairing_end - op.pairing_begin);
	}
};

class InstrumentationGap : public std::runtime_error {
public:
	explicit InstrumentationGap(const std::string &what)
	: std::runtime_error("InstrumentationGap: " + what) {}
};

struct AnalyzerOptions {
	// Keep PairingRecords of insert and decrease-key pairings too; delete-min
	// pairings are always kept.
	bool keep_root_pairings = true;
	// Compare every cache against a full recount after each operation.
	bool verify_every_op = false;
};

// Shadows one heap. Consumes the heap's events to maintain a subtree-size
// cache and the potential incrementally, and appends one OpRecord per
// operation bracketed by begin_operation / record_operation.
class Analyzer final : public HeapListener {
public:
	explicit Analyzer(const Topology &topo, AnalyzerOptions options = {});

	void begin_operation(OpKind kind, std::uint64_t pairings_before);
	// A merge absorbs another heap; its potential (under its own sticky size)
	// is counted in the merge's phi_before.
	void begin_merge(std::uint64_t pairings_before, PotentialBreakdown absorbed,
	                 StickyTracker absorbed_sticky);
	const OpRecord &record_operation(std::uint64_t pairings_after);
	// Drops an operation that failed before touching the heap.
	void abandon_operation();

	void on_event(const HeapEvent &event) override;

	const Ledger &ledger() const { return ledger_; }
	Ledger take_ledger();

	const StickyTracker &sticky() const { return sticky_; }
	PotentialBreakdown potential() const;
	double classic() const { return static_cast<double>(classic_sum_); }

	SizePair cached_sizes(NodeHandle h) const;
	NodeCategory cached_category(NodeHandle h) const { return cat_[h.id()]; }

	// Nodes whose links or sizes changed in the last recorded operation.
	const std::vector<NodeHandle> &last_touched() const { return touched_; }

	// Compares the size cache, potential and classic potential with a full
	// recount; returns a description of the first disagreement.
	std::optional<std::string> verify_against_recount() const;

private:
	struct LocalPotential {
		long double node = 0.0L;
		std::int64_t negative_edges = 0;
	};
	struct PendingPairing {
		std::size_t record;
		NodeHandle x, y;
		LocalPotential before;
	};
	struct PendingDetach {
		NodeHandle node;
		std::vector<NodeHandle> path; // node, then its binary ancestors bottom-up
		LocalPotential before;
	};

	std::uint64_t size_of(NodeHandle h) const { return h ? size_[h.id()] : 0; }
	SizePair pair_of(NodeHandle h) const;
	void track_new_slots();
	void absorb_subtree(NodeHandle root);
	void refresh_node(NodeHandle h);
	LocalPotential local_potential(std::span<const NodeHandle> nodes);
	void flush();
	void flush_pairing();
	void flush_detach();
	void on_pairing(const HeapEvent &event);
	void on_root_removed(NodeHandle root);
	void on_detach(NodeHandle node);
	long double reclassify_all();
	void require_active(const char *what) const;

	const Topology *topo_;
	AnalyzerOptions options_;
	StickyTracker sticky_;

	std::vector<std::uint32_t> size_;
	std::vector<NodeCategory> cat_;
	std::vector<double> phi_;
	std::vector<std::uint32_t> mark_;
	std::uint32_t epoch_ = 0;
	std::size_t tracked_ = 0;

	long double node_sum_ = 0.0L;
	std::int64_t negative_edges_ = 0;
	long double classic_sum_ = 0.0L;

	bool active_ = false;
	OpRecord current_;
	std::uint64_t pairings_before_ = 0;
	std::uint64_t pairing_events_ = 0;
	PotentialBreakdown absorbed_;
	StickyTracker absorbed_sticky_;
	std::optional<PendingPairing> pending_pairing_;
	std::optional<PendingDetach> pending_detach_;
	std::vector<NodeHandle> touched_;

	Ledger ledger_;
};

// A heap wired to its own analyzer. Pinned in memory because the analyzer
// observes the heap's topology by reference.
template <typename Key, typename Compare = std::less<Key>>
class InstrumentedHeap {
public:
	explicit InstrumentedHeap(AnalyzerOptions options = {}) : analyzer_{heap_.topology(), options} {
		heap_.set_listener(&analyzer_);
	}
	InstrumentedHeap(const InstrumentedHeap &) = delete;
	InstrumentedHeap &operator=(const InstrumentedHeap &) = delete;

	const PairingHeap<Key, Compare> &heap() const { return heap_; }
	const Analyzer &analyzer() const { return analyzer_; }
	Analyzer &analyzer() { return analyzer_; }

	NodeHandle insert(Key key) {
		return run(OpKind::Insert, [&] { return heap_.insert(std::move(key)); });
	}
	Key get_min() {
		return run(OpKind::GetMin, [&] { return heap_.get_min(); });
	}
	Key delete_min() {
		return run(OpKind::DeleteMin, [&] { return heap_.delete_min(); });
	}
	void decrease_key(NodeHandle h, Key key) {
		run(OpKind::DecreaseKey, [&] {
			heap_.decrease_key(h, std::move(key));
			return 0;
		});
	}
	// Absorbs a plain heap; see PairingHeap::merge for handle translation.
	std::uint32_t merge(PairingHeap<Key, Compare> &&other) {
		StickyTracker other_sticky;
		other_sticky.settle(other.size());
		analyzer_.begin_merge(heap_.pairings(), total_potential(other.topology(), other_sticky),
		                      other_sticky);
		const std::uint32_t offset = heap_.merge(std::move(other));
		analyzer_.record_operation(heap_.pairings());
		return offset;
	}

private:
	template <typename F>
	auto run(OpKind kind, F &&body) {
		analyzer_.begin_operation(kind, heap_.pairings());
		try {
			auto result = body();
			analyzer_.record_operation(heap_.pairings());
			return result;
		} catch (const HeapError &) {
			analyzer_.abandon_operation();
			throw;
		}
	}

	PairingHeap<Key, Compare> heap_;
	Analyzer analyzer_;
};

// ---- assertion suites over a finished ledger ----

struct Violation {
	std::string check;
	std::size_t op_index = 0;
	std::string detail;
};

struct Report {
	std::string name;
	std::size_t violation_count = 0;
	std::vector<Violation> violations; // first kMaxKept, plus the first of each check
	std::vector<std::string> notes;
	// Also counts violations per check as "violations.<check>".
	std::map<std::string, double> metrics;

	static constexpr std::size_t kMaxKept = 32;

	bool ok() const { return violation_count == 0; }
	void add(Violation v);
	// Folds another report in: counts add, metrics named max_* keep the
	// maximum, min_* the minimum, everything else sums.
	void absorb(const Report &other);
};

std::ostream &operator<<(std::ostream &os, const Report &report);

// Every state satisfies 0 <= total <= 1700 n + 2000.
Report check_linear_range(const Ledger &ledger);

// Per-pairing-category inequalities of the delete-min analysis (checks a-k),
// gated on n >= 4 and N >= 4 before the operation.
Report check_pairing_lemmas(const Ledger &ledger);

// Insert <= 1302, decrease-key <= 1000 (lg n + 2); delete-min amortized /
// (lg n + 2) is reported as max_delete_min_ratio and, when a constant is
// supplied, bounded by it. get-min must cost exactly 1.
Report check_amortized_bounds(const Ledger &ledger,
                              std::optional<double> delete_min_constant = std::nullopt);

// amortized == actual + delta phi per record, phi chains from one record to
// the next (merges excepted), and the delta decomposition adds up.
Report check_ledger_consistency(const Ledger &ledger);

// Sum of actual costs over `ranges` random contiguous ranges equals
// phi_before(first) - phi_after(last) + sum of amortized costs.
Report check_telescoping(const Ledger &ledger, std::size_t ranges, std::uint64_t seed);

// Sum over nodes of lg |x|.
double classic_potential(const Topology &topo);

// One row per operation; see README for the column list.
void write_ledger_csv(std::ostream &os, const Ledger &ledger);

} // namespace pairheap

#endif
