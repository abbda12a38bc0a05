#ifndef PAIRHEAP_TRACE_HPP
#define PAIRHEAP_TRACE_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace pairheap {

struct InsertOp {
	std::int64_t key;
	friend bool operator==(const InsertOp &, const InsertOp &) = default;
};
struct DeleteMinOp {
	friend bool operator==(const DeleteMinOp &, const DeleteMinOp &) = default;
};
struct GetMinOp {
	friend bool operator==(const GetMinOp &, const GetMinOp &) = default;
};
// `id` is the zero-based index of the insert that created the element.
struct DecreaseKeyOp {
	std::uint64_t id;
	std::int64_t key;
	friend bool operator==(const DecreaseKeyOp &, const DecreaseKeyOp &) = default;
};

using TraceOp = std::variant<InsertOp, DeleteMinOp, GetMinOp, DecreaseKeyOp>;
using Trace = std::vector<TraceOp>;

class TraceParseError : public std::runtime_error {
public:
	TraceParseError(std::size_t line, const std::string &what)
	: std::runtime_error("line " + std::to_string(line) + ": " + what), line_{line} {}
	std::size_t line() const { return line_; }

private:
	std::size_t line_;
};

// Text format, one op per line:
//   insert <key> | deletemin | getmin | decreasekey <id> <key>
// Blank lines and lines starting with '#' are ignored.
Trace parse_trace(std::istream &in);
Trace parse_trace(std::string_view text);
void write_trace(std::ostream &out, const Trace &trace);
std::string format_trace(const Trace &trace);

Trace load_trace(const std::string &path);
void save_trace(const std::string &path, const Trace &trace);

struct TraceProblem {
	std::size_t op_index;
	std::string message;
};

// First violation of the trace preconditions: every decreasekey names a
// present element and lowers its key strictly; no deletemin/getmin on an
// empty queue.
std::optional<TraceProblem> find_trace_problem(const Trace &trace);

} // namespace pairheap

#endif
