#ifndef RCST_ERRORS_HPP
#define RCST_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace rcst {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input text. line is 1-based, 0 when not tied to a line.
struct ParseError : Error {
    int line;
    ParseError(int line_, const std::string& what_)
        : Error("parse error at line " + std::to_string(line_) + ": " + what_), line(line_) {}
};

// A structurally invalid input (invariant violation on construction).
struct InvariantError : Error {
    using Error::Error;
};

struct OverflowError : Error {
    using Error::Error;
};

// Arithmetic attempted between original-unit and scaled-unit values.
struct UnitMismatchError : Error {
    using Error::Error;
};

struct NotATreeError : Error {
    enum class Reason { wrong_edge_count, cycle, disconnected };
    Reason reason;
    NotATreeError(Reason r, const std::string& what_) : Error(what_), reason(r) {}
    explicit NotATreeError(Reason r)
        : NotATreeError(r, r == Reason::wrong_edge_count ? "edge set has the wrong size for a tree"
                           : r == Reason::cycle          ? "edge set contains a cycle"
                                                         : "edge set does not span the graph") {}
};

struct CapExceededError : Error {
    long long cap;
    explicit CapExceededError(long long cap_)
        : Error("spanning tree enumeration cap of " + std::to_string(cap_) + " exceeded"), cap(cap_) {}
};

struct NoneReachableError : Error {
    using Error::Error;
    NoneReachableError() : Error("no candidate vertex is reachable") {}
};

struct BudgetExceededError : Error {
    using Error::Error;
};

// The two-source construction produced something that failed validation.
struct ConstructionInvalidError : Error {
    enum class Part { t1, t2, combined };
    Part part;
    ConstructionInvalidError(Part p, const std::string& what_) : Error(what_), part(p) {}
    explicit ConstructionInvalidError(Part p)
        : ConstructionInvalidError(p, p == Part::t1 ? "source side subtree failed validation"
                                      : p == Part::t2 ? "far side subtree failed validation"
                                                      : "joined construction is not a spanning tree") {
    }
};

// A documented precondition was violated by the caller.
struct PreconditionError : std::logic_error {
    using std::logic_error::logic_error;
};

} // namespace rcst

#endif
