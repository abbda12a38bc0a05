// Acceptance run: replays the fixed workload set through the analyzer and
// prints one PASS/FAIL line per criterion. Exit status is 1 if any fails.

#include <pairheap/analyzer.hpp>
#include <pairheap/oracle.hpp>
#include <pairheap/replay.hpp>
#include <pairheap/splitmix.hpp>
#include <pairheap/workloads.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace pairheap;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
	return std::chrono::duration<double>(Clock::now() - t0).count();
}

double metric(const Report &r, const std::string &name, double fallback = 0.0) {
	auto it = r.metrics.find(name);
	return it == r.metrics.end() ? fallback : it->second;
}

std::string fmt(double v) {
	char buf[64];
	std::snprintf(buf, sizeof buf, "%.6g", v);
	return buf;
}

struct Workload {
	std::string label;
	std::function<Trace()> make;
	enum class Group { Random, Sorted, Dijkstra, Scaling } group;
	bool descending = false;
	std::uint64_t scale_n = 0;
};

// Per-suite totals over every acceptance trace.
struct Totals {
	Report range, lemmas, bounds, telescoping, consistency, structure;
	Report dijkstra_bounds;
	std::map<std::string, double> sorted_max_per_n;
	double descending_classic = 0.0;
	std::map<std::uint64_t, double> scaling_ratio; // n -> M(n)
	std::size_t traces = 0;
	std::size_t ops = 0;
};

// Prefixes each kept example with the trace it came from.
Report labelled(Report r, const std::string &trace) {
	for (auto &v : r.violations)
		v.detail = trace + ": " + v.detail;
	return r;
}

// First example of each check, then the per-check counts.
void show_violations(const Report &r) {
	std::set<std::string> shown;
	for (const auto &v : r.violations)
		if (shown.insert(v.check).second)
			std::cout << "    [" << v.check << "] op " << v.op_index << ": " << v.detail << '\n';
	for (const auto &[k, v] : r.metrics)
		if (k.rfind("violations.", 0) == 0)
			std::cout << "    " << k << " = " << v << '\n';
}

int failures = 0;

void verdict(int number, const std::string &name, bool pass, const std::string &detail) {
	std::cout << "criterion " << number << " (" << name << "): " << (pass ? "PASS" : "FAIL")
	          << " | " << detail << std::endl;
	if (!pass)
		++failures;
}

std::vector<Workload> workloads() {
	std::vector<Workload> w;
	for (std::uint64_t seed = 0; seed < 10; ++seed)
		w.push_back({"random(1e4,1e5," + std::to_string(seed) + ")",
		             [seed] { return gen_random(10000, 100000, seed); }, Workload::Group::Random});
	w.push_back({"sorted(2^16,asc)", [] { return gen_sorted(1 << 16, true); },
	             Workload::Group::Sorted});
	w.push_back({"sorted(2^16,desc)", [] { return gen_sorted(1 << 16, false); },
	             Workload::Group::Sorted, true});
	for (std::uint64_t seed = 0; seed < 5; ++seed)
		w.push_back({"dijkstra(2^14,2^17," + std::to_string(seed) + ")",
		             [seed] { return gen_dijkstra_like(1 << 14, 1 << 17, seed); },
		             Workload::Group::Dijkstra});
	for (unsigned lg_n : {10u, 12u, 14u, 16u})
		for (std::uint64_t seed = 0; seed < 5; ++seed) {
			const std::uint64_t n = std::uint64_t{1} << lg_n;
			w.push_back({"random(2^" + std::to_string(lg_n) + ",2n," + std::to_string(seed) + ")",
			             [n, seed] { return gen_random(n, 2 * n, seed); }, Workload::Group::Scaling,
			             false, n});
		}
	return w;
}

// Criterion 8: node potential never decreases when either side grows.
std::pair<std::size_t, double> monotonicity_samples(std::size_t samples) {
	SplitMix64 rng{0x5eed};
	std::size_t violations = 0;
	const auto t0 = Clock::now();
	for (std::size_t i = 0; i < samples; ++i) {
		const std::uint64_t a = rng.below(std::uint64_t{1} << 16);
		const std::uint64_t b = rng.below(std::uint64_t{1} << 16);
		const std::uint64_t big_n = std::uint64_t{4} << rng.below(15);
		const double base = node_potential({a, b}, big_n);
		if (node_potential({a + 1, b}, big_n) < base - 1e-9)
			++violations;
		if (node_potential({a, b + 1}, big_n) < base - 1e-9)
			++violations;
	}
	return {violations, seconds_since(t0)};
}

} // namespace

int main() {
	Totals t;
	t.range.name = "linear-range";
	t.lemmas.name = "pairing-lemmas";
	t.bounds.name = "amortized-bounds";
	t.telescoping.name = "telescoping";
	t.consistency.name = "ledger-consistency";
	t.structure.name = "structure";
	t.dijkstra_bounds.name = "amortized-bounds (dijkstra)";

	bool oracle_ok = true;
	std::size_t oracle_keys = 0;
	double oracle_seconds = 0.0;
	std::string oracle_detail;

	const auto start = Clock::now();
	std::uint64_t telescoping_seed = 1;
	for (const Workload &w : workloads()) {
		const auto t0 = Clock::now();
		const Trace trace = w.make();
		if (w.group == Workload::Group::Random) {
			const OracleReport o = run_and_compare(trace);
			oracle_keys += o.compared;
			if (!o.matched) {
				oracle_ok = false;
				oracle_detail += " " + w.label + ": " + o.message;
			}
		}
		ReplayResult r = replay(trace);
		const Report range = labelled(check_linear_range(r.ledger), w.label);
		const Report lemmas = labelled(check_pairing_lemmas(r.ledger), w.label);
		const Report bounds = labelled(check_amortized_bounds(r.ledger), w.label);
		const Report tele = labelled(check_telescoping(r.ledger, 100, telescoping_seed++), w.label);
		const Report cons = labelled(check_ledger_consistency(r.ledger), w.label);
		const double secs = seconds_since(t0);
		if (w.group == Workload::Group::Random)
			oracle_seconds += secs;

		t.range.absorb(range);
		t.lemmas.absorb(lemmas);
		t.bounds.absorb(bounds);
		t.telescoping.absorb(tele);
		t.consistency.absorb(cons);
		t.structure.absorb(r.structure);
		if (w.group == Workload::Group::Dijkstra)
			t.dijkstra_bounds.absorb(bounds);
		if (w.group == Workload::Group::Sorted)
			t.sorted_max_per_n[w.label] = metric(range, "max_total_per_n");
		if (w.descending)
			t.descending_classic = r.max_classic;
		if (w.group == Workload::Group::Scaling) {
			double &m = t.scaling_ratio[w.scale_n];
			m = std::max(m, metric(bounds, "max_delete_min_ratio"));
		}
		++t.traces;
		t.ops += r.ledger.ops.size();

		std::cout << w.label << ": " << r.ledger.ops.size() << " ops, max n " << r.max_n
		          << ", lemma violations " << lemmas.violation_count << ", structure "
		          << r.structure.violation_count << ", " << fmt(secs) << " s" << std::endl;
	}
	std::cout << t.traces << " traces, " << t.ops << " ops, " << fmt(seconds_since(start))
	          << " s\n\n";

	// 1
	verdict(1, "oracle equivalence", oracle_ok && oracle_seconds < 30.0,
	        std::to_string(oracle_keys) + " keys compared over 10 traces in " + fmt(oracle_seconds)
	                + " s (limit 30 s) including replay and checkpoint recounts" + oracle_detail);

	// 2
	verdict(2, "linear range", t.range.ok(),
	        std::to_string(t.range.violation_count) + " violations over "
	                + fmt(metric(t.range, "states")) + " states; min total "
	                + fmt(metric(t.range, "min_total")) + ", max total/n "
	                + fmt(metric(t.range, "max_total_per_n")));
	if (!t.range.ok())
		show_violations(t.range);

	// 3
	{
		const double n = 65536.0;
		const double classic_floor = n / 2 * (std::log2(n) - 1);
		bool ok = t.descending_classic >= classic_floor;
		std::string detail;
		for (const auto &[label, per_n] : t.sorted_max_per_n) {
			ok = ok && per_n <= 1700.0;
			detail += label + " max total/n " + fmt(per_n) + "; ";
		}
		detail += "descending classic max " + fmt(t.descending_classic) + " >= " + fmt(classic_floor);
		verdict(3, "range contrast on sorted inserts", ok && t.sorted_max_per_n.size() == 2, detail);
	}

	// 4
	{
		const double bad = metric(t.bounds, "violations.insert");
		verdict(4, "insert amortized <= 1302", bad == 0,
		        fmt(bad) + " violations; max insert amortized " + fmt(metric(t.bounds, "max_insert")));
	}

	// 5
	{
		const double bad = metric(t.dijkstra_bounds, "violations.decrease-key");
		verdict(5, "decrease-key amortized <= 1000(lg n + 2)", bad == 0,
		        fmt(bad) + " violations on dijkstra traces; max ratio "
		                + fmt(metric(t.dijkstra_bounds, "max_decrease_key_ratio"))
		                + "; all traces " + fmt(metric(t.bounds, "violations.decrease-key"))
		                + " violations");
	}

	// 6
	{
		const double m10 = t.scaling_ratio[1u << 10];
		const double m12 = t.scaling_ratio[1u << 12];
		const double m14 = t.scaling_ratio[1u << 14];
		const double m16 = t.scaling_ratio[1u << 16];
		const double calibrated = std::max(m10, m12);
		verdict(6, "delete-min scaling", m16 <= 1.1 * calibrated,
		        "M(2^10)=" + fmt(m10) + " M(2^12)=" + fmt(m12) + " M(2^14)=" + fmt(m14)
		                + " M(2^16)=" + fmt(m16) + "; need M(2^16) <= " + fmt(1.1 * calibrated));
	}

	// 7
	{
		const double pairings = metric(t.lemmas, "first_pass_pairings");
		const double ll = metric(t.lemmas, "first_pass_LL");
		const double mm = metric(t.lemmas, "first_pass_MM");
		const double ss = metric(t.lemmas, "first_pass_SS");
		const double ml = metric(t.lemmas, "first_pass_ML");
		const double ms_ls = metric(t.lemmas, "first_pass_MS") + metric(t.lemmas, "first_pass_LS");
		const bool coverage = pairings >= 1e5 && ll > 0 && mm > 0 && ss > 0 && ml > 0 && ms_ls > 0;
		verdict(7, "per-pairing lemma suite", t.lemmas.ok() && coverage,
		        std::to_string(t.lemmas.violation_count) + " violations; first-pass pairings "
		                + fmt(pairings) + " (LL " + fmt(ll) + ", MM " + fmt(mm) + ", SS " + fmt(ss)
		                + ", ML " + fmt(ml) + ", MS+LS " + fmt(ms_ls) + "); max second-pass ML"
		                + " edge losses per delete-min "
		                + fmt(metric(t.lemmas, "max_second_pass_ML_edge_losses"))
		                + "; ML node sum over bound " + fmt(metric(t.lemmas, "ml_node_sum_over_bound"))
		                + " and LL sums over -193 k + 200 lg n + 400 "
		                + fmt(metric(t.lemmas, "ll_over_release_200_bound")) + " (reported only)");
		if (!t.lemmas.ok())
			show_violations(t.lemmas);
	}

	// 8
	{
		const auto [bad, secs] = monotonicity_samples(100000);
		verdict(8, "monotonicity", bad == 0 && secs < 1.0,
		        std::to_string(bad) + " violations in 100000 samples, " + fmt(secs) + " s");
	}

	// 9
	verdict(9, "telescoping identity", t.telescoping.ok() && t.consistency.ok(),
	        std::to_string(t.telescoping.violation_count) + " violations over "
	                + fmt(metric(t.telescoping, "ranges")) + " ranges; max error per op "
	                + fmt(metric(t.telescoping, "max_error_per_op")) + "; ledger consistency "
	                + std::to_string(t.consistency.violation_count) + " violations");
	if (!t.telescoping.ok())
		show_violations(t.telescoping);
	if (!t.consistency.ok())
		show_violations(t.consistency);

	// 10
	verdict(10, "structural invariants", t.structure.ok(),
	        std::to_string(t.structure.violation_count)
	                + " violations (full check and cache recount every 1000 ops and at the end,"
	                  " local check of touched nodes after every op)");
	if (!t.structure.ok())
		show_violations(t.structure);

	std::cout << '\n' << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
	          << std::endl;
	return failures == 0 ? 0 : 1;
}
