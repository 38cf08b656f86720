#pragma once

#include <stdexcept>
#include <string>

namespace coneproj {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An input contains NaN or infinity.
class NonFinite : public Error {
public:
    using Error::Error;
};

/// The generator matrix is not invertible to working precision.
class SingularGenerators : public Error {
public:
    using Error::Error;
};

/// Vector/matrix sizes do not agree with the cone dimension.
class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// A Gram principal-submatrix solve failed numerically.
class SolveFailure : public Error {
public:
    using Error::Error;
};

/// The exact method was asked for a dimension above its guard.
class DimensionGuard : public Error {
public:
    using Error::Error;
};

/// Subset enumeration exhausted without a feasible sector (tolerance
/// mis-tuning or a corrupted cone; impossible for a valid instance).
class NoSectorFound : public Error {
public:
    using Error::Error;
};

/// Subdual-only routine called on a cone that is not subdual.
class NotSubdual : public Error {
public:
    using Error::Error;
};

/// Random cone sampling kept drawing singular matrices.
class GenerationFailure : public Error {
public:
    using Error::Error;
};

/// Malformed input file or stream (CSV parse problems and the like).
class InputError : public Error {
public:
    using Error::Error;
};

} // namespace coneproj
