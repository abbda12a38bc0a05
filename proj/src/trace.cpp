#include <pairheap/trace.hpp>

#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

namespace pairheap {

namespace {

std::vector<std::string_view> split_words(std::string_view line) {
	std::vector<std::string_view> words;
	std::size_t i = 0;
	while (i < line.size()) {
		while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r'))
			++i;
		std::size_t j = i;
		while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r')
			++j;
		if (j > i)
			words.push_back(line.substr(i, j - i));
		i = j;
	}
	return words;
}

template <typename Int>
Int parse_int(std::string_view word, std::size_t line, const char *what) {
	Int value{};
	const char *end = word.data() + word.size();
	auto [ptr, ec] = std::from_chars(word.data(), end, value);
	if (ec != std::errc{} || ptr != end)
		throw TraceParseError(line, std::string("bad ") + what + " '" + std::string(word) + "'");
	return value;
}

TraceOp parse_line(const std::vector<std::string_view> &words, std::size_t line) {
	const std::string_view op = words[0];
	auto expect_args = [&](std::size_t n) {
		if (words.size() != n + 1)
			throw TraceParseError(line, std::string(op) + " takes " + std::to_string(n)
			                                    + " argument(s)");
	};
	if (op == "insert") {
		expect_args(1);
		return InsertOp{parse_int<std::int64_t>(words[1], line, "key")};
	}
	if (op == "deletemin") {
		expect_args(0);
		return DeleteMinOp{};
	}
	if (op == "getmin") {
		expect_args(0);
		return GetMinOp{};
	}
	if (op == "decreasekey") {
		expect_args(2);
		return DecreaseKeyOp{parse_int<std::uint64_t>(words[1], line, "id"),
		                     parse_int<std::int64_t>(words[2], line, "key")};
	}
	throw TraceParseError(line, "unknown operation '" + std::string(op) + "'");
}

} // namespace

Trace parse_trace(std::istream &in) {
	Trace trace;
	std::string line;
	std::size_t number = 0;
	while (std::getline(in, line)) {
		++number;
		const auto words = split_words(line);
		if (words.empty() || words[0].starts_with('#'))
			continue;
		trace.push_back(parse_line(words, number));
	}
	return trace;
}

Trace parse_trace(std::string_view text) {
	std::istringstream in{std::string(text)};
	return parse_trace(in);
}

void write_trace(std::ostream &out, const Trace &trace) {
	for (const TraceOp &op : trace) {
		std::visit(
		        [&out](const auto &o) {
			        using T = std::decay_t<decltype(o)>;
			        if constexpr (std::is_same_v<T, InsertOp>)
				        out << "insert " << o.key << '\n';
			        else if constexpr (std::is_same_v<T, DeleteMinOp>)
				        out << "deletemin\n";
			        else if constexpr (std::is_same_v<T, GetMinOp>)
				        out << "getmin\n";
			        else
				        out << "decreasekey " << o.id << ' ' << o.key << '\n';
		        },
		        op);
	}
}

std::string format_trace(const Trace &trace) {
	std::ostringstream out;
	write_trace(out, trace);
	return out.str();
}

Trace load_trace(const std::string &path) {
	std::ifstream in{path};
	if (!in)
		throw std::runtime_error("cannot open trace file " + path);
	return parse_trace(in);
}

void save_trace(const std::string &path, const Trace &trace) {
	std::ofstream out{path};
	if (!out)
		throw std::runtime_error("cannot write trace file " + path);
	write_trace(out, trace);
	if (!out)
		throw std::runtime_error("error writing trace file " + path);
}

std::optional<TraceProblem> find_trace_problem(const Trace &trace) {
	std::map<std::uint64_t, std::int64_t> present;
	std::set<std::pair<std::int64_t, std::uint64_t>> order;
	std::uint64_t next_id = 0;
	for (std::size_t i = 0; i < trace.size(); ++i) {
		if (const auto *ins = std::get_if<InsertOp>(&trace[i])) {
			present[next_id] = ins->key;
			order.insert({ins->key, next_id});
			++next_id;
		} else if (std::holds_alternative<DeleteMinOp>(trace[i])) {
			if (order.empty())
				return TraceProblem{i, "EmptyHeap: deletemin on an empty queue"};
			present.erase(order.begin()->second);
			order.erase(order.begin());
		} else if (std::holds_alternative<GetMinOp>(trace[i])) {
			if (order.empty())
				return TraceProblem{i, "EmptyHeap: getmin on an empty queue"};
		} else {
			const auto &dk = std::get<DecreaseKeyOp>(trace[i]);
			auto it = present.find(dk.id);
			if (it == present.end())
				return TraceProblem{i, "InvalidHandle: id " + std::to_string(dk.id)
				                               + " is not present"};
			if (dk.key >= it->second)
				return TraceProblem{i, "NotADecrease: id " + std::to_string(dk.id) + " holds "
				                               + std::to_string(it->second) + ", new key "
				                               + std::to_string(dk.key)};
			order.erase({it->second, dk.id});
			it->second = dk.key;
			order.insert({dk.key, dk.id});
		}
	}
	return std::nullopt;
}

} // namespace pairheap
