#pragma once

#include <stdexcept>
#include <string>

namespace turlab {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the function (negative entropy
/// production, non-finite input, bad ordering of support magnitudes...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A distribution is malformed: wrong dimensions, unnormalized, negative
/// probabilities, or a support point without its mirror image.
class StructuralError : public Error {
public:
    using Error::Error;
};

/// The inputs are well-formed but cannot come from any distribution obeying
/// the exchange fluctuation theorem (e.g. zero dissipation with a nonzero mean).
class InconsistencyError : public Error {
public:
    using Error::Error;
};

/// A constrained construction has no admissible solution.
class InfeasibleError : public Error {
public:
    using Error::Error;
};

} // namespace turlab
