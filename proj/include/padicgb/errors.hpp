#pragma once

#include <stdexcept>
#include <string>

namespace padicgb {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct ContextMismatch : Error {
    ContextMismatch() : Error("operands belong to different coefficient fields") {}
};

struct DivisionByExactZero : Error {
    DivisionByExactZero() : Error("division by exact zero") {}
};

// The divisor's stored digits are all zero, so its valuation (and hence the
// quotient) cannot be certified at the available precision.
struct AmbiguousDivisor : Error {
    AmbiguousDivisor() : Error("divisor is indistinguishable from zero at current precision") {}
};

struct PrecisionExhausted : Error {
    explicit PrecisionExhausted(const std::string& what)
        : Error("precision exhausted: " + what) {}
};

struct ZeroPolynomial : Error {
    ZeroPolynomial() : Error("operation requires a nonzero polynomial") {}
};

struct AmbiguousLeadingTerm : Error {
    AmbiguousLeadingTerm()
        : Error("leading monomial cannot be certified: a higher coefficient is "
                "indistinguishable from zero") {}
};

struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& what) : Error(what) {}
};

// Raised by full row-echelon computation when a working column holds entries
// that are indistinguishable from zero but not exactly zero: the echelon
// shape of the matrix cannot be certified.
struct AmbiguousColumn : Error {
    int column;
    explicit AmbiguousColumn(int col)
        : Error("echelon shape uncertifiable at column " + std::to_string(col)),
          column(col) {}
};

// Single failure signal of the weak Matrix-F5 loop.  The three possible causes
// (sequence not regular, ideals not weakly-w, precision too low) cannot be
// told apart by the algorithm, so one error carries the diagnostics.
struct StructureOrPrecisionFailure : Error {
    int degree;
    int index;
    int column;
    StructureOrPrecisionFailure(int d, int i, int col)
        : Error("matrix completion failed at degree " + std::to_string(d) +
                ", generator " + std::to_string(i) + ", column " + std::to_string(col) +
                ": the ideals are not weakly-w, the sequence is not regular, "
                "or the precision is not enough"),
          degree(d), index(i), column(col) {}
};

struct LiftVerificationFailure : Error {
    explicit LiftVerificationFailure(const std::string& what)
        : Error("lift verification failed: " + what) {}
};

struct ResourceCapExceeded : Error {
    explicit ResourceCapExceeded(const std::string& what)
        : Error("resource cap exceeded: " + what) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& what) : Error("parse error: " + what) {}
};

}  // namespace padicgb
