#include <pairheap/analyzer.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace pairheap {

const char *to_string(OpKind kind) {
	switch (kind) {
	case OpKind::Insert: return "insert";
	case OpKind::GetMin: return "getmin";
	case OpKind::DeleteMin: return "deletemin";
	case OpKind::DecreaseKey: return "decreasekey";
	case OpKind::Merge: return "merge";
	}
	return "?";
}

CategoryPair category_pair(NodeCategory a, NodeCategory b) {
	if (a > b)
		std::swap(a, b);
	using C = NodeCategory;
	if (a == C::Large)
		return CategoryPair::LL;
	if (a == C::Mixed)
		return b == C::Mixed ? CategoryPair::MM : CategoryPair::ML;
	switch (b) {
	case C::Small: return CategoryPair::SS;
	case C::Mixed: return CategoryPair::MS;
	case C::Large: return CategoryPair::LS;
	}
	return CategoryPair::SS;
}

const char *to_string(CategoryPair pair) {
	switch (pair) {
	case CategoryPair::LL: return "LL";
	case CategoryPair::MM: return "MM";
	case CategoryPair::SS: return "SS";
	case CategoryPair::ML: return "ML";
	case CategoryPair::MS: return "MS";
	case CategoryPair::LS: return "LS";
	}
	return "?";
}

std::uint64_t PassTally::total() const {
	std::uint64_t sum = 0;
	for (auto c : count)
		sum += c;
	return sum;
}

namespace {

double lg_size(std::uint64_t size) {
	return size == 0 ? 0.0 : std::log2(static_cast<double>(size));
}

} // namespace

Analyzer::Analyzer(const Topology &topo, AnalyzerOptions options)
: topo_{&topo}, options_{options} {
	const auto sizes = subtree_sizes(topo);
	tracked_ = topo.slot_count();
	size_.assign(tracked_, 0);
	cat_.assign(tracked_, NodeCategory::Small);
	phi_.assign(tracked_, 0.0);
	mark_.assign(tracked_, 0);
	for (std::size_t i = 0; i < tracked_; ++i) {
		if (!topo.is_live(NodeHandle{static_cast<std::uint32_t>(i)}))
			continue;
		size_[i] = static_cast<std::uint32_t>(sizes[i].total());
		classic_sum_ += lg_size(size_[i]);
	}
	sticky_.settle(topo.size());
	reclassify_all();
}

SizePair Analyzer::pair_of(NodeHandle h) const {
	return {size_of(topo_->left(h)), size_of(topo_->right(h))};
}

SizePair Analyzer::cached_sizes(NodeHandle h) const { return pair_of(h); }

PotentialBreakdown Analyzer::potential() const {
	return PotentialBreakdown::from_parts(static_cast<double>(node_sum_),
	                                      kLargeEdge * static_cast<double>(negative_edges_),
	                                      size_potential(sticky_.size(), topo_->size()));
}

Ledger Analyzer::take_ledger() {
	Ledger out = std::move(ledger_);
	ledger_ = {};
	return out;
}

void Analyzer::require_active(const char *what) const {
	if (!active_)
		throw InstrumentationGap(std::string(what) + " outside of an operation");
}

void Analyzer::track_new_slots() {
	const std::size_t slots = topo_->slot_count();
	for (std::size_t i = tracked_; i < slots; ++i) {
		// A fresh insert: a lone node, small under every N.
		const bool live = topo_->is_live(NodeHandle{static_cast<std::uint32_t>(i)});
		size_.push_back(live ? 1 : 0);
		cat_.push_back(NodeCategory::Small);
		phi_.push_back(0.0);
		mark_.push_back(0);
	}
	tracked_ = slots;
}

// Brings in the nodes of a tree appended by merge, which arrive with their
// own shape rather than as lone nodes.
void Analyzer::absorb_subtree(NodeHandle root) {
	const std::size_t first_new = tracked_;
	const std::size_t slots = topo_->slot_count();
	size_.resize(slots, 0);
	cat_.resize(slots, NodeCategory::Small);
	phi_.resize(slots, 0.0);
	mark_.resize(slots, 0);
	tracked_ = slots;
	if (!root || root.id() < first_new)
		return;

	std::vector<NodeHandle> order;
	std::vector<NodeHandle> stack{root};
	while (!stack.empty()) {
		const NodeHandle v = stack.back();
		stack.pop_back();
		order.push_back(v);
		if (NodeHandle l = topo_->left(v))
			stack.push_back(l);
		if (NodeHandle r = topo_->right(v))
			stack.push_back(r);
	}
	for (auto it = order.rbegin(); it != order.rend(); ++it) {
		size_[it->id()] = static_cast<std::uint32_t>(1 + size_of(topo_->left(*it))
		                                             + size_of(topo_->right(*it)));
		classic_sum_ += lg_size(size_[it->id()]);
		refresh_node(*it);
	}
	for (NodeHandle v : order) {
		const NodeHandle r = topo_->right(v);
		if (r && cat_[v.id()] == NodeCategory::Large && cat_[r.id()] == NodeCategory::Large)
			++negative_edges_;
	}
}

void Analyzer::refresh_node(NodeHandle h) {
	const SizePair s = pair_of(h);
	const double phi = node_potential(s, sticky_.size());
	node_sum_ += static_cast<long double>(phi) - static_cast<long double>(phi_[h.id()]);
	phi_[h.id()] = phi;
	cat_[h.id()] = classify(s, sticky_.size());
}

long double Analyzer::reclassify_all() {
	node_sum_ = 0.0L;
	negative_edges_ = 0;
	const std::size_t slots = tracked_;
	for (std::size_t i = 0; i < slots; ++i) {
		const NodeHandle h{static_cast<std::uint32_t>(i)};
		if (!topo_->is_live(h))
			continue;
		const SizePair s = pair_of(h);
		phi_[i] = node_potential(s, sticky_.size());
		cat_[i] = classify(s, sticky_.size());
		node_sum_ += phi_[i];
	}
	for (std::size_t i = 0; i < slots; ++i) {
		const NodeHandle h{static_cast<std::uint32_t>(i)};
		if (!topo_->is_live(h))
			continue;
		const NodeHandle r = topo_->right(h);
		if (r && cat_[i] == NodeCategory::Large && cat_[r.id()] == NodeCategory::Large)
			++negative_edges_;
	}
	return node_sum_ + static_cast<long double>(kLargeEdge) * negative_edges_;
}

// Node potential of `nodes` plus the count of -7 edges touching them. Edges
// with both ends in the set are counted once.
Analyzer::LocalPotential Analyzer::local_potential(std::span<const NodeHandle> nodes) {
	if (++epoch_ == 0) {
		std::fill(mark_.begin(), mark_.end(), 0);
		epoch_ = 1;
	}
	for (NodeHandle v : nodes)
		mark_[v.id()] = epoch_;

	LocalPotential out;
	auto large = [this](NodeHandle h) { return cat_[h.id()] == NodeCategory::Large; };
	for (NodeHandle v : nodes) {
		out.node += phi_[v.id()];
		const NodeHandle r = topo_->right(v);
		if (r && large(v) && large(r))
			++out.negative_edges;
		const NodeHandle p = topo_->parent(v);
		if (p && topo_->right(p) == v && mark_[p.id()] != epoch_ && large(p) && large(v))
			++out.negative_edges;
	}
	return out;
}

void Analyzer::begin_operation(OpKind kind, std::uint64_t pairings_before) {
	if (active_)
		throw InstrumentationGap("begin_operation while another operation is open");
	active_ = true;
	touched_.clear();
	current_ = OpRecord{};
	current_.kind = kind;
	current_.phi_before = potential();
	current_.n_before = topo_->size();
	current_.sticky_before = sticky_.size();
	current_.pairing_begin = ledger_.pairings.size();
	pairings_before_ = pairings_before;
	pairing_events_ = 0;
}

void Analyzer::begin_merge(std::uint64_t pairings_before, PotentialBreakdown absorbed,
                           StickyTracker absorbed_sticky) {
	begin_operation(OpKind::Merge, pairings_before);
	const PotentialBreakdown mine = current_.phi_before;
	current_.phi_before = PotentialBreakdown::from_parts(
	        mine.node + absorbed.node, mine.edge + absorbed.edge, mine.size + absorbed.size);
	absorbed_ = absorbed;
	absorbed_sticky_ = absorbed_sticky;
}

void Analyzer::abandon_operation() {
	if (pairing_events_ != 0 || pending_pairing_ || pending_detach_)
		throw InstrumentationGap("operation abandoned after it started mutating the heap");
	active_ = false;
}

void Analyzer::on_event(const HeapEvent &event) {
	require_active("heap event");
	switch (event.kind) {
	case HeapEvent::Kind::Pairing: on_pairing(event); break;
	case HeapEvent::Kind::RootRemoved: on_root_removed(event.first); break;
	case HeapEvent::Kind::Detach: on_detach(event.first); break;
	}
}

void Analyzer::flush() {
	if (pending_pairing_)
		flush_pairing();
	if (pending_detach_)
		flush_detach();
}

void Analyzer::on_pairing(const HeapEvent &event) {
	flush();
	if (current_.kind == OpKind::Merge && tracked_ < topo_->slot_count())
		absorb_subtree(event.second);
	track_new_slots();
	++pairing_events_;

	PairingRecord rec;
	rec.op_index = ledger_.ops.size();
	rec.pass = event.pass;
	rec.x = event.first;
	rec.y = event.second;
	rec.sticky = sticky_.size();
	rec.size_x = pair_of(rec.x);
	rec.size_y = pair_of(rec.y);
	rec.cat_x = cat_[rec.x.id()];
	rec.cat_y = cat_[rec.y.id()];
	rec.y_right_size = size_of(topo_->right(rec.y));
	rec.normal = rec.categories() == CategoryPair::ML && rec.y_right_size > sticky_.lg();

	const std::array<NodeHandle, 2> pair{rec.x, rec.y};
	pending_pairing_ = PendingPairing{0, rec.x, rec.y, local_potential(pair)};
	ledger_.pairings.push_back(rec);
	pending_pairing_->record = ledger_.pairings.size() - 1;
	touched_.push_back(rec.x);
	touched_.push_back(rec.y);
}

void Analyzer::flush_pairing() {
	const PendingPairing pending = *pending_pairing_;
	pending_pairing_.reset();
	const NodeHandle x = pending.x;
	const NodeHandle y = pending.y;

	bool x_won;
	if (topo_->parent(y) == x && topo_->left(x) == y)
		x_won = true;
	else if (topo_->parent(x) == y && topo_->left(y) == x)
		x_won = false;
	else
		throw InstrumentationGap("pairing of nodes " + std::to_string(x.id()) + " and "
		                         + std::to_string(y.id()) + " left no parent-child link");
	const NodeHandle winner = x_won ? x : y;
	const NodeHandle loser = x_won ? y : x;

	for (NodeHandle v : {loser, winner}) {
		const auto old_size = size_[v.id()];
		size_[v.id()] = static_cast<std::uint32_t>(1 + size_of(topo_->left(v))
		                                           + size_of(topo_->right(v)));
		classic_sum_ += lg_size(size_[v.id()]) - lg_size(old_size);
		refresh_node(v);
	}

	const std::array<NodeHandle, 2> pair{x, y};
	const LocalPotential after = local_potential(pair);
	const std::int64_t edge_change = after.negative_edges - pending.before.negative_edges;
	negative_edges_ += edge_change;

	PairingRecord &rec = ledger_.pairings[pending.record];
	rec.x_won = x_won;
	rec.delta_node = static_cast<double>(after.node - pending.before.node);
	rec.delta_edge = kLargeEdge * static_cast<double>(edge_change);
	rec.winner_after = cat_[winner.id()];
	rec.loser_after = cat_[loser.id()];
	const double delta = rec.delta_node + rec.delta_edge;
	current_.delta_pairings += delta;

	PassTally *tally = rec.pass == PairingPass::First    ? &current_.first_pass
	                   : rec.pass == PairingPass::Second ? &current_.second_pass
	                                                     : nullptr;
	if (tally) {
		const auto bucket = static_cast<std::size_t>(rec.categories());
		++tally->count[bucket];
		tally->potential[bucket] += delta;
	} else if (!options_.keep_root_pairings && pending.record + 1 == ledger_.pairings.size()) {
		ledger_.pairings.pop_back();
	}
}

void Analyzer::on_detach(NodeHandle node) {
	flush();
	track_new_slots();
	PendingDetach pending;
	pending.node = node;
	for (NodeHandle v = node; v; v = topo_->parent(v))
		pending.path.push_back(v);
	pending.before = local_potential(pending.path);
	touched_.push_back(node);
	touched_.push_back(topo_->parent(node));
	pending_detach_ = std::move(pending);
}

void Analyzer::flush_detach() {
	PendingDetach pending = std::move(*pending_detach_);
	pending_detach_.reset();
	// The cut node keeps only its left subtree; every ancestor shrinks by
	// the same amount. Recomputed bottom-up from the children's cached sizes.
	for (NodeHandle v : pending.path) {
		const auto old_size = size_[v.id()];
		size_[v.id()] = static_cast<std::uint32_t>(1 + size_of(topo_->left(v))
		                                           + size_of(topo_->right(v)));
		classic_sum_ += lg_size(size_[v.id()]) - lg_size(old_size);
		refresh_node(v);
	}
	const LocalPotential after = local_potential(pending.path);
	const std::int64_t edge_change = after.negative_edges - pending.before.negative_edges;
	negative_edges_ += edge_change;
	current_.delta_detach += static_cast<double>(after.node - pending.before.node)
	                         + kLargeEdge * static_cast<double>(edge_change);
}

void Analyzer::on_root_removed(NodeHandle root) {
	flush();
	track_new_slots();
	if (topo_->right(root) || topo_->parent(root))
		throw InstrumentationGap("removed root has a sibling or parent");
	current_.delta_root_removal -= phi_[root.id()];
	node_sum_ -= phi_[root.id()];
	classic_sum_ -= lg_size(size_[root.id()]);
	phi_[root.id()] = 0.0;
	size_[root.id()] = 0;
	cat_[root.id()] = NodeCategory::Small;
	touched_.push_back(root);
}

const OpRecord &Analyzer::record_operation(std::uint64_t pairings_after) {
	require_active("record_operation");
	flush();
	if (current_.kind == OpKind::Merge && tracked_ < topo_->slot_count())
		absorb_subtree(topo_->root());
	track_new_slots();

	const std::uint64_t pairings = pairings_after - pairings_before_;
	if (pairings != pairing_events_) {
		active_ = false;
		throw InstrumentationGap("heap reports " + std::to_string(pairings) + " pairings but "
		                         + std::to_string(pairing_events_) + " pairing events arrived");
	}
	current_.actual_cost = 1 + pairings;
	current_.n_after = topo_->size();

	const StickyTracker old_sticky = sticky_;
	if (current_.kind == OpKind::Merge)
		sticky_ = merged_sticky(sticky_, absorbed_sticky_, current_.n_after);
	else
		sticky_.update(current_.n_after);
	if (!(sticky_ == old_sticky)) {
		const long double before =
		        node_sum_ + static_cast<long double>(kLargeEdge) * negative_edges_;
		current_.delta_reclassify = static_cast<double>(reclassify_all() - before);
	}
	current_.sticky_after = sticky_.size();
	current_.phi_after = potential();
	current_.amortized = static_cast<double>(current_.actual_cost) + current_.phi_after.total
	                     - current_.phi_before.total;
	current_.classic_after = classic();
	current_.pairing_end = ledger_.pairings.size();
	ledger_.ops.push_back(current_);
	active_ = false;

	if (options_.verify_every_op) {
		if (auto mismatch = verify_against_recount())
			throw InstrumentationGap("after op " + std::to_string(ledger_.ops.size() - 1) + ": "
			                         + *mismatch);
	}
	return ledger_.ops.back();
}

std::optional<std::string> Analyzer::verify_against_recount() const {
	const auto sizes = subtree_sizes(*topo_);
	long double classic = 0.0L;
	for (std::size_t i = 0; i < topo_->slot_count(); ++i) {
		const NodeHandle h{static_cast<std::uint32_t>(i)};
		if (!topo_->is_live(h))
			continue;
		if (i >= tracked_ || size_[i] != sizes[i].total())
			return "size cache of node " + std::to_string(i) + " is "
			       + (i < tracked_ ? std::to_string(size_[i]) : std::string("untracked"))
			       + ", recount gives " + std::to_string(sizes[i].total());
		if (cat_[i] != classify(sizes[i], sticky_.size()))
			return "category cache of node " + std::to_string(i) + " is stale";
		classic += lg_size(sizes[i].total());
	}
	const PotentialBreakdown recount = total_potential(*topo_, sizes, sticky_.size());
	const PotentialBreakdown mine = potential();
	constexpr double kTol = 1e-6;
	auto differs = [](double a, double b) { return std::fabs(a - b) > kTol; };
	std::ostringstream msg;
	msg.precision(17);
	if (differs(mine.node, recount.node) || differs(mine.edge, recount.edge)
	    || differs(mine.size, recount.size))
		msg << "incremental potential (" << mine.node << ", " << mine.edge << ", " << mine.size
		    << ") != recount (" << recount.node << ", " << recount.edge << ", " << recount.size
		    << ")";
	else if (differs(static_cast<double>(classic_sum_), static_cast<double>(classic)))
		msg << "incremental classic potential " << static_cast<double>(classic_sum_)
		    << " != recount " << static_cast<double>(classic);
	else
		return std::nullopt;
	return msg.str();
}

double classic_potential(const Topology &topo) {
	const auto sizes = subtree_sizes(topo);
	long double sum = 0.0L;
	for (std::size_t i = 0; i < topo.slot_count(); ++i)
		if (topo.is_live(NodeHandle{static_cast<std::uint32_t>(i)}))
			sum += lg_size(sizes[i].total());
	return static_cast<double>(sum);
}

} // namespace pairheap
