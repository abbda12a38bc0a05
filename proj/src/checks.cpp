// Assertion suites run over a finished Ledger. All are read-only.

#include <pairheap/analyzer.hpp>
#include <pairheap/splitmix.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

namespace pairheap {

void Report::add(Violation v) {
	++violation_count;
	// The first example of each check is always kept.
	const bool first_of_check = (metrics["violations." + v.check] += 1) == 1;
	if (violations.size() < kMaxKept || first_of_check)
		violations.push_back(std::move(v));
}

void Report::absorb(const Report &other) {
	violation_count += other.violation_count;
	for (const auto &v : other.violations) {
		const bool seen = std::any_of(violations.begin(), violations.end(),
		                              [&](const Violation &k) { return k.check == v.check; });
		if (violations.size() < kMaxKept || !seen)
			violations.push_back(v);
	}
	for (const auto &n : other.notes)
		if (notes.size() < kMaxKept)
			notes.push_back(n);
	for (const auto &[key, value] : other.metrics) {
		auto [it, fresh] = metrics.emplace(key, value);
		if (fresh)
			continue;
		if (key.starts_with("max_"))
			it->second = std::max(it->second, value);
		else if (key.starts_with("min_"))
			it->second = std::min(it->second, value);
		else
			it->second += value;
	}
}

std::ostream &operator<<(std::ostream &os, const Report &report) {
	os << report.name << ": " << (report.ok() ? "ok" : "FAILED") << " ("
	   << report.violation_count << " violations)\n";
	for (const auto &[key, value] : report.metrics)
		os << "  " << key << " = " << value << '\n';
	for (const auto &v : report.violations)
		os << "  violation [" << v.check << "] op " << v.op_index << ": " << v.detail << '\n';
	for (const auto &n : report.notes)
		os << "  note: " << n << '\n';
	return os;
}

namespace {

constexpr double kSlack = 1e-3;
constexpr double kExact = 1e-6;

double lg(double v) { return std::log2(v); }

std::string describe(const PairingRecord &r) {
	std::ostringstream os;
	os << to_string(r.pass) << " pass " << to_string(r.cat_x) << to_string(r.cat_y)
	   << " x=" << r.x.id() << " (" << r.size_x.left << "," << r.size_x.right << ")"
	   << " y=" << r.y.id() << " (" << r.size_y.left << "," << r.size_y.right << ")"
	   << " N=" << r.sticky << " winner " << (r.x_won ? "x" : "y") << " -> "
	   << to_string(r.winner_after) << ", loser -> " << to_string(r.loser_after)
	   << " dNode=" << r.delta_node << " dEdge=" << r.delta_edge;
	return os.str();
}

void bump_max(Report &report, const std::string &key, double value) {
	auto [it, fresh] = report.metrics.emplace(key, value);
	if (!fresh)
		it->second = std::max(it->second, value);
}

void bump_min(Report &report, const std::string &key, double value) {
	auto [it, fresh] = report.metrics.emplace(key, value);
	if (!fresh)
		it->second = std::min(it->second, value);
}

bool lemma_gate(const OpRecord &op) { return op.n_before >= 4 && op.sticky_before >= 4; }

} // namespace

Report check_linear_range(const Ledger &ledger) {
	Report report;
	report.name = "linear-range";
	auto check_state = [&](std::size_t op, std::uint64_t n, const PotentialBreakdown &phi) {
		const double bound = 1700.0 * static_cast<double>(n) + 2000.0;
		if (phi.total < -kExact)
			report.add({"nonnegative", op, "total potential " + std::to_string(phi.total)});
		if (phi.total > bound + kExact)
			report.add({"upper", op,
			            "total potential " + std::to_string(phi.total) + " > "
			                    + std::to_string(bound) + " at n=" + std::to_string(n)});
		bump_max(report, "max_total", phi.total);
		bump_min(report, "min_total", phi.total);
		if (n >= 1)
			bump_max(report, "max_total_per_n", phi.total / static_cast<double>(n));
		report.metrics["states"] += 1;
	};
	for (std::size_t i = 0; i < ledger.ops.size(); ++i) {
		const OpRecord &op = ledger.ops[i];
		if (i == 0)
			check_state(i, op.n_before, op.phi_before);
		check_state(i, op.n_after, op.phi_after);
	}
	return report;
}

Report check_pairing_lemmas(const Ledger &ledger) {
	Report report;
	report.name = "pairing-lemmas";
	std::array<double, kCategoryPairCount> buckets{};
	double first_pass_total = 0;
	double checked = 0;
	double ml_excess = 0;
	double max_ml_second_losses = 0;
	double max_ml_second_net_edge = 0;

	for (std::size_t i = 0; i < ledger.ops.size(); ++i) {
		const OpRecord &op = ledger.ops[i];
		if (op.kind != OpKind::DeleteMin || !lemma_gate(op))
			continue;
		++checked;
		const double lg_big_n = lg(static_cast<double>(op.sticky_before));
		const auto threshold = static_cast<std::uint64_t>(std::llround(lg_big_n));
		const double lg_n = lg(static_cast<double>(op.n_before));

		std::vector<const PairingRecord *> first;
		std::vector<const PairingRecord *> second;
		for (const PairingRecord &r : ledger.pairings_of(op)) {
			if (r.pass == PairingPass::First)
				first.push_back(&r);
			else if (r.pass == PairingPass::Second)
				second.push_back(&r);
		}
		first_pass_total += static_cast<double>(first.size());
		for (const auto *r : first)
			buckets[static_cast<std::size_t>(r->categories())] += 1;

		// (a) large-large, first pass, aggregated.
		{
			double sum = 0;
			std::uint64_t count = 0;
			for (const auto *r : first)
				if (r->categories() == CategoryPair::LL) {
					sum += r->delta_node + r->delta_edge;
					++count;
				}
			const double bound = -393.0 * static_cast<double>(count) + 200.0 * lg_n + 400.0;
			// lg(|x|^2 / 4) = 2 lg|x| - 2, so a pairing provably releases 200,
			// not 400; the weaker aggregate is reported only.
			const double release_200 = -193.0 * static_cast<double>(count) + 200.0 * lg_n + 400.0;
			if (count > 0 && sum > release_200 + kSlack)
				report.metrics["ll_over_release_200_bound"] += 1;
			if (count > 0 && sum > bound + kSlack)
				report.add({"a:LL-first-pass", i,
				            "p_LL=" + std::to_string(sum) + " > " + std::to_string(bound)
				                    + " with k_LL=" + std::to_string(count)});
		}
		// (b) no large-large pairing in the second pass.
		for (const auto *r : second)
			if (r->categories() == CategoryPair::LL)
				report.add({"b:LL-second-pass", i, describe(*r)});

		// (c), (d), (e) mixed-mixed, first pass.
		{
			int left_heavy = 0;
			for (const auto *r : first) {
				if (r->categories() != CategoryPair::MM)
					continue;
				if (r->size_x.left > threshold || r->size_y.left > threshold) {
					++left_heavy;
					continue;
				}
				if (r->winner_after == NodeCategory::Mixed) {
					if (r->delta_node > -150.0 + kSlack)
						report.add({"c:MM-winner-mixed", i, describe(*r)});
				} else if (r->winner_after == NodeCategory::Large) {
					if (r->delta_node > -300.0 + kSlack)
						report.add({"d:MM-winner-large", i, describe(*r)});
				} else {
					report.add({"c:MM-winner-small", i, describe(*r)});
				}
			}
			if (left_heavy > 1)
				report.add({"e:MM-left-heavy", i,
				            std::to_string(left_heavy) + " left-heavy MM pairings in one pass"});
		}
		// (f) mixed-mixed, second pass: no gain.
		for (const auto *r : second)
			if (r->categories() == CategoryPair::MM && r->delta_node > kSlack)
				report.add({"f:MM-second-pass", i, describe(*r)});

		// (g) mixed-small plus large-small, first pass.
		{
			std::uint64_t count = 0;
			for (const auto *r : first)
				if (r->categories() == CategoryPair::MS || r->categories() == CategoryPair::LS)
					++count;
			if (count > 2)
				report.add({"g:MS+LS", i, std::to_string(count) + " MS/LS pairings"});
		}
		// (h) small-small, per pass.
		for (const auto *pass : {&first, &second}) {
			std::uint64_t count = 0;
			std::uint64_t promoted = 0;
			for (const auto *r : *pass)
				if (r->categories() == CategoryPair::SS) {
					++count;
					if (r->winner_after != NodeCategory::Small)
						++promoted;
				}
			if (static_cast<double>(count) >= lg_big_n + 1.0)
				report.add({"h:SS-count", i,
				            std::to_string(count) + " SS pairings with lg N="
				                    + std::to_string(threshold)});
			if (promoted > 1)
				report.add({"h:SS-promoted", i,
				            std::to_string(promoted) + " SS winners left the small class"});
		}
		// (i) mixed-large, second pass.
		{
			std::uint64_t edge_losses = 0;
			double net_edge = 0;
			for (const auto *r : second) {
				if (r->categories() != CategoryPair::ML)
					continue;
				if (r->delta_node > kSlack)
					report.add({"i:ML-second-node", i, describe(*r)});
				if (r->delta_edge > kSlack)
					++edge_losses;
				net_edge += r->delta_edge;
			}
			max_ml_second_losses = std::max(max_ml_second_losses, static_cast<double>(edge_losses));
			max_ml_second_net_edge = std::max(max_ml_second_net_edge, net_edge);
			if (edge_losses > 1)
				report.add({"i:ML-second-edge", i,
				            std::to_string(edge_losses) + " second-pass ML edge losses"});
		}
		// (j), (k) mixed-large, first pass.
		{
			std::uint64_t abnormal = 0;
			double node_sum = 0;
			for (const auto *r : first)
				if (r->categories() == CategoryPair::ML) {
					node_sum += r->delta_node;
					if (!r->normal)
						++abnormal;
				}
			if (abnormal > 1)
				report.add({"j:ML-abnormal", i,
				            std::to_string(abnormal) + " abnormal ML pairings in one pass"});
			const double ml_bound = 200.0 * lg_n + 800.0;
			if (node_sum > ml_bound + kSlack) {
				++ml_excess;
				if (report.notes.size() < Report::kMaxKept)
					report.notes.push_back("op " + std::to_string(i) + ": first-pass ML node sum "
					                       + std::to_string(node_sum) + " exceeds "
					                       + std::to_string(ml_bound));
			}
			auto normal_ml = [](const PairingRecord *r) {
				return r->categories() == CategoryPair::ML && r->normal;
			};
			for (std::size_t j = 0; j + 2 < first.size(); ++j) {
				if (!normal_ml(first[j]) || !normal_ml(first[j + 1]) || !normal_ml(first[j + 2]))
					continue;
				const double edge =
				        first[j]->delta_edge + first[j + 1]->delta_edge + first[j + 2]->delta_edge;
				if (edge > kLargeEdge + kSlack)
					report.add({"k:ML-triple", i,
				            "three normal ML pairings from first-pass index " + std::to_string(j)
				                    + " changed edge potential by " + std::to_string(edge)});
			}
		}
	}
	report.metrics["checked_delete_mins"] = checked;
	report.metrics["first_pass_pairings"] = first_pass_total;
	for (std::size_t b = 0; b < kCategoryPairCount; ++b)
		report.metrics[std::string("first_pass_") + to_string(static_cast<CategoryPair>(b))] =
		        buckets[b];
	report.metrics["ml_node_sum_over_bound"] = ml_excess;
	report.metrics["max_second_pass_ML_edge_losses"] = max_ml_second_losses;
	report.metrics["max_second_pass_ML_net_edge"] = max_ml_second_net_edge;
	return report;
}

Report check_amortized_bounds(const Ledger &ledger, std::optional<double> delete_min_constant) {
	Report report;
	report.name = "amortized-bounds";
	for (std::size_t i = 0; i < ledger.ops.size(); ++i) {
		const OpRecord &op = ledger.ops[i];
		if (op.kind == OpKind::GetMin) {
			if (op.amortized != 1.0)
				report.add({"getmin", i, "amortized " + std::to_string(op.amortized)});
			continue;
		}
		if (op.kind == OpKind::Merge || op.n_before < 4)
			continue;
		const double scale = lg(static_cast<double>(op.n_before)) + 2.0;
		switch (op.kind) {
		case OpKind::Insert:
			bump_max(report, "max_insert", op.amortized);
			if (op.amortized > 1302.0 + kSlack)
				report.add({"insert", i, "amortized " + std::to_string(op.amortized)});
			break;
		case OpKind::DecreaseKey:
			bump_max(report, "max_decrease_key_ratio", op.amortized / scale);
			if (op.amortized > 1000.0 * scale)
				report.add({"decrease-key", i,
				            "amortized " + std::to_string(op.amortized) + " > 1000(lg n + 2) = "
				                    + std::to_string(1000.0 * scale)});
			break;
		case OpKind::DeleteMin:
			bump_max(report, "max_delete_min_ratio", op.amortized / scale);
			if (delete_min_constant && op.amortized > *delete_min_constant * scale)
				report.add({"delete-min", i,
				            "amortized " + std::to_string(op.amortized) + " > "
				                    + std::to_string(*delete_min_constant) + "(lg n + 2)"});
			break;
		default: break;
		}
	}
	return report;
}

Report check_ledger_consistency(const Ledger &ledger) {
	Report report;
	report.name = "ledger-consistency";
	for (std::size_t i = 0; i < ledger.ops.size(); ++i) {
		const OpRecord &op = ledger.ops[i];
		const double expect = static_cast<double>(op.actual_cost) + op.phi_after.total
		                      - op.phi_before.total;
		if (op.amortized != expect)
			report.add({"amortized", i, "amortized field differs from actual + delta phi"});
		for (const auto *phi : {&op.phi_before, &op.phi_after}) {
			const double sum = phi->node + phi->edge + phi->size;
			if (std::fabs(sum - phi->total) > 1e-9 * std::max(1.0, std::fabs(sum)))
				report.add({"breakdown", i, "total != node + edge + size"});
		}
		if (op.kind == OpKind::Merge)
			continue;
		if (i > 0 && ledger.ops[i - 1].phi_after.total != op.phi_before.total)
			report.add({"chain", i, "phi_before differs from previous phi_after"});
		const double parts = op.delta_pairings + op.delta_root_removal + op.delta_detach
		                     + op.delta_reclassify + (op.phi_after.size - op.phi_before.size);
		const double delta = op.phi_after.total - op.phi_before.total;
		if (std::fabs(parts - delta) > kExact)
			report.add({"decomposition", i,
			            "components sum to " + std::to_string(parts) + ", delta phi is "
			                    + std::to_string(delta)});
		if (op.pairing_end - op.pairing_begin == op.actual_cost - 1) {
			double sum = 0;
			for (const auto &r : ledger.pairings_of(op))
				sum += r.delta_node + r.delta_edge;
			if (std::fabs(sum - op.delta_pairings) > kExact)
				report.add({"pairing-sum", i, "pairing records do not add up to delta_pairings"});
		}
	}
	return report;
}

Report check_telescoping(const Ledger &ledger, std::size_t ranges, std::uint64_t seed) {
	Report report;
	report.name = "telescoping";
	const std::size_t m = ledger.ops.size();
	if (m == 0)
		return report;
	std::vector<std::uint64_t> actual(m + 1, 0);
	std::vector<long double> amortized(m + 1, 0.0L);
	std::vector<std::size_t> merges(m + 1, 0);
	for (std::size_t k = 0; k < m; ++k) {
		actual[k + 1] = actual[k] + ledger.ops[k].actual_cost;
		amortized[k + 1] = amortized[k] + ledger.ops[k].amortized;
		merges[k + 1] = merges[k] + (ledger.ops[k].kind == OpKind::Merge ? 1 : 0);
	}
	SplitMix64 rng{seed};
	double worst = 0;
	std::size_t skipped = 0;
	for (std::size_t r = 0; r < ranges; ++r) {
		const std::size_t i = rng.below(m);
		const std::size_t j = i + rng.below(m - i);
		// Merges bring in the absorbed heap's potential, which breaks the chain.
		if (merges[j + 1] - merges[i + 1] != 0) {
			++skipped;
			continue;
		}
		const long double lhs = static_cast<long double>(actual[j + 1] - actual[i]);
		const long double rhs = static_cast<long double>(ledger.ops[i].phi_before.total)
		                        - ledger.ops[j].phi_after.total + (amortized[j + 1] - amortized[i]);
		const double err = static_cast<double>(std::fabs(lhs - rhs));
		const double tol = kExact * static_cast<double>(j - i + 1);
		worst = std::max(worst, err / static_cast<double>(j - i + 1));
		if (err > tol)
			report.add({"identity", i,
			            "range [" + std::to_string(i) + ", " + std::to_string(j) + "] off by "
			                    + std::to_string(err)});
	}
	report.metrics["ranges"] = static_cast<double>(ranges - skipped);
	report.metrics["max_error_per_op"] = worst;
	return report;
}

namespace {

void put_double(std::ostream &os, double v) {
	if (v == 0.0)
		v = 0.0; // no "-0" from an empty edge sum
	char buf[64];
	auto res = std::to_chars(buf, buf + sizeof buf, v);
	os.write(buf, res.ptr - buf);
}

} // namespace

void write_ledger_csv(std::ostream &os, const Ledger &ledger) {
	os << "op,kind,n,N,actual,phi_node,phi_edge,phi_size,phi_total,amortized";
	for (const char *pass : {"k1_", "k2_"})
		for (std::size_t b = 0; b < kCategoryPairCount; ++b)
			os << ',' << pass << to_string(static_cast<CategoryPair>(b));
	os << '\n';
	for (std::size_t i = 0; i < ledger.ops.size(); ++i) {
		const OpRecord &op = ledger.ops[i];
		os << i << ',' << to_string(op.kind) << ',' << op.n_after << ',' << op.sticky_after << ','
		   << op.actual_cost;
		for (double v : {op.phi_after.node, op.phi_after.edge, op.phi_after.size,
		                 op.phi_after.total, op.amortized}) {
			os << ',';
			put_double(os, v);
		}
		for (const PassTally *t : {&op.first_pass, &op.second_pass})
			for (auto c : t->count)
				os << ',' << c;
		os << '\n';
	}
}

} // namespace pairheap
