#pragma once

#include <stdexcept>
#include <string>

namespace plastiflow {

// Base class for every structured failure the library reports.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// An iterative kernel (projection, support ascent, conjugate bracket) hit its cap.
struct NonConvergence : Error {
    using Error::Error;
};

// Input too close to a set boundary for stable finite differencing.
struct DegenerateInput : Error {
    using Error::Error;
};

// A value left the representable range; raised instead of returning inf.
struct Overflow : Error {
    using Error::Error;
};

// Geometric bracket growth exceeded its cap in the 1D conjugate.
struct BracketFailure : Error {
    using Error::Error;
};

// Scalar monotone root-find failed (should be unreachable).
struct RootFindFailure : Error {
    using Error::Error;
};

struct CflViolation : Error {
    using Error::Error;
};

struct NewtonDivergence : Error {
    using Error::Error;
};

struct WindowTooSmall : Error {
    using Error::Error;
};

// Quasi-static reduction preconditions not met.
struct ReductionUnavailable : Error {
    using Error::Error;
};

// Numerical Hessian quotients degenerated while sampling a boundary.
struct NotSmooth : Error {
    using Error::Error;
};

// Scenario or config violates a documented invariant; message names it.
struct ValidationError : Error {
    using Error::Error;
};

}  // namespace plastiflow
