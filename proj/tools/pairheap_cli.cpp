// pairheap: generate workload traces, replay them through the instrumented
// heap, and run the potential-analysis checks.
//
// Exit status: 0 success, 1 a check failed, 2 bad input (malformed trace,
// precondition violation, unknown flag).

#include <pairheap/analyzer.hpp>
#include <pairheap/oracle.hpp>
#include <pairheap/replay.hpp>
#include <pairheap/workloads.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <vector>

using namespace pairheap;

namespace {

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kBadInput = 2;

// Raised for input problems that map to exit status 2.
struct BadInput : std::runtime_error {
	using std::runtime_error::runtime_error;
};

std::uint64_t parse_count(const std::string &s, const char *what) {
	std::size_t used = 0;
	unsigned long long v = 0;
	try {
		v = std::stoull(s, &used);
	} catch (const std::exception &) {
		used = 0;
	}
	if (used != s.size() || s.empty() || s[0] == '-')
		throw BadInput(std::string("bad ") + what + " '" + s + "'");
	return v;
}

Trace generate(const std::string &kind, const std::vector<std::string> &p) {
	auto need = [&](std::size_t n, const char *usage) {
		if (p.size() != n)
			throw BadInput(std::string("usage: generate ") + usage);
	};
	try {
		if (kind == "sorted") {
			need(2, "sorted N asc|desc");
			if (p[1] != "asc" && p[1] != "desc")
				throw BadInput("order must be asc or desc");
			return gen_sorted(parse_count(p[0], "N"), p[1] == "asc");
		}
		if (kind == "random") {
			need(3, "random N OPS SEED");
			return gen_random(parse_count(p[0], "N"), parse_count(p[1], "OPS"),
			                  parse_count(p[2], "SEED"));
		}
		if (kind == "dijkstra") {
			need(3, "dijkstra V E SEED");
			return gen_dijkstra_like(parse_count(p[0], "V"), parse_count(p[1], "E"),
			                         parse_count(p[2], "SEED"));
		}
	} catch (const std::invalid_argument &e) {
		throw BadInput(e.what());
	}
	throw BadInput("unknown workload '" + kind + "' (sorted, random, dijkstra)");
}

Trace read_trace(const std::string &path) {
	try {
		return load_trace(path);
	} catch (const TraceParseError &e) {
		throw BadInput(path + ": " + e.what());
	} catch (const std::runtime_error &e) {
		throw BadInput(e.what());
	}
}

ReplayResult replay_or_throw(const Trace &trace, const ReplayOptions &options = {}) {
	try {
		return replay(trace, options);
	} catch (const TraceError &e) {
		throw BadInput(e.what());
	}
}

int report_status(const std::vector<Report> &reports) {
	int status = kOk;
	for (const Report &r : reports) {
		std::cout << r << '\n';
		if (!r.ok()) {
			std::cerr << "FAILED: " << r.name << ": " << r.violation_count << " violation(s)\n";
			for (const auto &v : r.violations)
				std::cerr << "  [" << v.check << "] op " << v.op_index << ": " << v.detail << '\n';
			status = kViolation;
		}
	}
	return status;
}

int cmd_run(const std::string &path, const std::string &csv) {
	const Trace trace = read_trace(path);
	const ReplayResult r = replay_or_throw(trace);
	std::uint64_t actual = 0;
	for (const auto &op : r.ledger.ops)
		actual += op.actual_cost;
	const PotentialBreakdown last = r.ledger.ops.empty() ? PotentialBreakdown::from_parts(0, 0, 900)
	                                                     : r.ledger.ops.back().phi_after;
	std::cout << "ops " << r.ledger.ops.size() << "\n"
	          << "outputs " << r.outputs.size() << "\n"
	          << "pairings " << r.pairings << "\n"
	          << "actual_cost " << actual << "\n"
	          << "max_n " << r.max_n << "\n"
	          << "final_phi node=" << last.node << " edge=" << last.edge << " size=" << last.size
	          << " total=" << last.total << "\n";
	if (!csv.empty()) {
		std::ofstream out{csv};
		if (!out)
			throw BadInput("cannot write " + csv);
		write_ledger_csv(out, r.ledger);
		std::cout << "ledger written to " << csv << "\n";
	}
	return report_status({r.structure});
}

int cmd_validate(const std::string &path, std::optional<double> dm_constant, std::size_t ranges,
                 std::uint64_t seed) {
	const Trace trace = read_trace(path);
	if (auto problem = find_trace_problem(trace))
		throw BadInput("op " + std::to_string(problem->op_index) + ": " + problem->message);
	const OracleReport oracle = run_and_compare(trace);
	Report oracle_report;
	oracle_report.name = "oracle";
	oracle_report.notes.push_back(oracle.message);
	if (!oracle.matched)
		oracle_report.add({"divergence", oracle.op_index, oracle.message});

	const ReplayResult r = replay_or_throw(trace);
	return report_status({oracle_report, r.structure, check_ledger_consistency(r.ledger),
	                      check_telescoping(r.ledger, ranges, seed), check_linear_range(r.ledger),
	                      check_amortized_bounds(r.ledger, dm_constant),
	                      check_pairing_lemmas(r.ledger)});
}

int cmd_range(const std::string &path) {
	const Trace trace = read_trace(path);
	const ReplayResult r = replay_or_throw(trace);
	const Report range = check_linear_range(r.ledger);
	const double n = static_cast<double>(r.max_n);
	const double classic_floor = n >= 2 ? n / 2 * (std::log2(n) - 1) : 0.0;
	std::cout << "max_n " << r.max_n << "\n"
	          << "max_total " << range.metrics.at("max_total") << "\n"
	          << "max_total_per_n " << (r.max_n ? range.metrics.at("max_total_per_n") : 0.0)
	          << " (bound 1700)\n"
	          << "max_classic " << r.max_classic << "\n"
	          << "classic_reference (n/2)(lg n - 1) at max_n " << classic_floor << "\n"
	          << "classic_reaches_reference " << (r.max_classic >= classic_floor ? "yes" : "no")
	          << "\n";
	return report_status({range});
}

int cmd_bench(const std::string &path, std::size_t repeat, std::size_t jobs, bool analyze) {
	const Trace trace = read_trace(path);
	if (auto problem = find_trace_problem(trace))
		throw BadInput("op " + std::to_string(problem->op_index) + ": " + problem->message);
	if (repeat == 0)
		throw BadInput("--repeat must be positive");
	jobs = std::clamp<std::size_t>(jobs, 1, repeat);

	// Independent replays; each worker owns its heap and analyzer.
	std::vector<double> seconds(repeat);
	std::atomic<std::size_t> next{0};
	auto worker = [&] {
		for (std::size_t i; (i = next++) < repeat;) {
			const auto t0 = std::chrono::steady_clock::now();
			replay(trace, {.analyze = analyze, .checkpoint_interval = 0});
			seconds[i] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
		}
	};
	std::vector<std::thread> pool;
	for (std::size_t j = 1; j < jobs; ++j)
		pool.emplace_back(worker);
	worker();
	for (auto &th : pool)
		th.join();

	std::sort(seconds.begin(), seconds.end());
	const double mean = std::accumulate(seconds.begin(), seconds.end(), 0.0) / repeat;
	const double median = seconds[repeat / 2];
	std::cout << "ops " << trace.size() << "\n"
	          << "repeat " << repeat << " jobs " << jobs << (analyze ? " analyzed" : " plain") << "\n"
	          << "seconds min " << seconds.front() << " median " << median << " mean " << mean
	          << " max " << seconds.back() << "\n"
	          << "ops_per_second " << static_cast<double>(trace.size()) / median << "\n";
	return kOk;
}

} // namespace

int main(int argc, char **argv) {
	CLI::App app{"Instrumented pairing heap: workloads, replay and potential checks"};
	app.require_subcommand(1);

	std::string kind, out_path;
	std::vector<std::string> params;
	auto *gen = app.add_subcommand("generate", "Write a workload trace");
	gen->add_option("kind", kind, "sorted | random | dijkstra")->required();
	gen->add_option("params", params, "sorted N asc|desc; random N OPS SEED; dijkstra V E SEED");
	gen->add_option("-o,--output", out_path, "Trace file to write")->required();

	std::string trace_path, csv_path;
	auto *run = app.add_subcommand("run", "Replay a trace through the analyzer");
	run->add_option("file", trace_path, "Trace file")->required();
	run->add_option("--csv", csv_path, "Write the per-operation ledger as CSV");

	std::optional<double> dm_constant;
	std::size_t ranges = 100;
	std::uint64_t seed = 1;
	auto *validate = app.add_subcommand("validate", "Oracle comparison plus every check suite");
	validate->add_option("file", trace_path, "Trace file")->required();
	validate->add_option("--dm-constant", dm_constant,
	                     "Bound delete-min amortized cost by C (lg n + 2)");
	validate->add_option("--ranges", ranges, "Random ranges for the telescoping check");
	validate->add_option("--seed", seed, "Seed for choosing telescoping ranges");

	auto *range = app.add_subcommand("range", "Potential range and classic-potential contrast");
	range->add_option("file", trace_path, "Trace file")->required();

	std::size_t repeat = 1, jobs = 1;
	bool plain = false;
	auto *bench = app.add_subcommand("bench", "Time repeated replays");
	bench->add_option("file", trace_path, "Trace file")->required();
	bench->add_option("--repeat", repeat, "Number of replays")->required();
	bench->add_option("--jobs", jobs, "Parallel workers");
	bench->add_flag("--plain", plain, "Replay without the analyzer");

	try {
		app.parse(argc, argv);
	} catch (const CLI::Success &e) {
		return app.exit(e);
	} catch (const CLI::ParseError &e) {
		app.exit(e);
		return kBadInput;
	}

	try {
		if (*gen) {
			const Trace trace = generate(kind, params);
			try {
				save_trace(out_path, trace);
			} catch (const std::runtime_error &e) {
				throw BadInput(e.what());
			}
			std::cout << "wrote " << trace.size() << " ops to " << out_path << "\n";
			return kOk;
		}
		if (*run)
			return cmd_run(trace_path, csv_path);
		if (*validate)
			return cmd_validate(trace_path, dm_constant, ranges, seed);
		if (*range)
			return cmd_range(trace_path);
		if (*bench)
			return cmd_bench(trace_path, repeat, jobs, !plain);
	} catch (const BadInput &e) {
		std::cerr << "error: " << e.what() << "\n";
		return kBadInput;
	} catch (const std::exception &e) {
		std::cerr << "error: " << e.what() << "\n";
		return kViolation;
	}
	return kBadInput;
}
