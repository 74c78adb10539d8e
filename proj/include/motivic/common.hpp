#ifndef MOTIVIC_COMMON_HPP
#define MOTIVIC_COMMON_HPP

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <utility>

namespace motivic {

// Exact arbitrary-precision scalars. All coefficient arithmetic in the
// library goes through these; no floating point anywhere.
using Int = mpz_class;
using Rat = mpq_class;

// Exponent pair (p, q) for powers of u, v.
using Exp2 = std::pair<long, long>;

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised by filtration_index / norm on the zero value.
struct NormUndefinedError : Error {
    NormUndefinedError() : Error("index undefined (norm is 0)") {}
};

struct DimensionMismatchError : Error {
    using Error::Error;
};

// Bittner rewriting: a reachable non-smooth-projective record has no
// compactification or stratification data.
struct UnresolvableGeneratorError : Error {
    std::string record;
    explicit UnresolvableGeneratorError(const std::string& rec)
        : Error("unresolvable generator: record '" + rec +
                "' is not smooth projective and carries no geometry data"),
          record(rec) {}
};

struct CyclicGeometryError : Error {
    std::string record;
    explicit CyclicGeometryError(const std::string& rec)
        : Error("cyclic geometry reference through record '" + rec + "'"), record(rec) {}
};

struct UnevaluableGeneratorError : Error {
    std::string record;
    UnevaluableGeneratorError(const std::string& family, const std::string& rec)
        : Error("family '" + family + "' has no table for generator '" + rec + "'"),
          record(rec) {}
};

struct DivergenceError : Error {
    using Error::Error;
};

struct MalformedRecordError : Error {
    using Error::Error;
};

struct IncompleteStrataError : Error {
    using Error::Error;
};

struct LogTerminalityError : Error {
    using Error::Error;
};

struct InvalidFanError : Error {
    using Error::Error;
};

struct NotQGorensteinError : Error {
    using Error::Error;
};

struct BoxLimitError : Error {
    using Error::Error;
};

// Mismatched inputs to a checker (e.g. different ambient spaces).
struct SetupError : Error {
    using Error::Error;
};

struct ParseError : Error {
    std::size_t position;
    ParseError(const std::string& msg, std::size_t pos)
        : Error(msg + " (at position " + std::to_string(pos) + ")"), position(pos) {}
};

}  // namespace motivic

#endif
