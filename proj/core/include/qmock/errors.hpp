#ifndef QMOCK_ERRORS_HPP
#define QMOCK_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qmock {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// series-core
struct ZeroLeadingCoefficient : Error {
    using Error::Error;
};
struct PrecisionExceeded : Error {
    using Error::Error;
};

// theta-products
struct ZeroTheta : Error {
    using Error::Error;
};
struct DivergentProduct : Error {
    using Error::Error;
};

// appell-lerch
struct NonGenericParameters : Error {
    using Error::Error;
};
struct RuleNotApplicable : Error {
    using Error::Error;
};

// modular-prover
struct UnsupportedLevel : Error {
    using Error::Error;
};
struct LevelMismatch : Error {
    using Error::Error;
};

// dsl
struct SourceSpan {
    std::size_t start = 0;
    std::size_t end = 0;
};

struct SyntaxError : Error {
    SyntaxError(const std::string& what, SourceSpan where) : Error(what), span(where) {}
    SourceSpan span;
};
struct UnknownName : SyntaxError {
    using SyntaxError::SyntaxError;
};
struct NotAThetaCombination : SyntaxError {
    using SyntaxError::SyntaxError;
};

// manifest
struct SchemaError : Error {
    using Error::Error;
};

} // namespace qmock

#endif
