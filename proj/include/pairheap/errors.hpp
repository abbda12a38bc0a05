#ifndef PAIRHEAP_ERRORS_HPP
#define PAIRHEAP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pairheap {

class HeapError : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

class EmptyHeap : public HeapError {
public:
	EmptyHeap() : HeapError("EmptyHeap: operation requires a nonempty heap") {}
};

class InvalidHandle : public HeapError {
public:
	explicit InvalidHandle(const std::string &what)
	: HeapError("InvalidHandle: " + what) {}
};

class NotADecrease : public HeapError {
public:
	explicit NotADecrease(const std::string &what)
	: HeapError("NotADecrease: " + what) {}
};

} // namespace pairheap

#endif
