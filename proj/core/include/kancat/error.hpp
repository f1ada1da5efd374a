#pragma once

#include <stdexcept>
#include <string>

namespace kancat {

// Base class for every engine error. Law violations are reported as data, not
// thrown; exceptions signal inputs the engine refuses to work with.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A configured bound (search cap, position cap, window) would be exceeded.
class BoundExceeded : public Error {
public:
    using Error::Error;
};

// Operands have incompatible shapes (different bases, wrong kinds, arity).
class ShapeError : public Error {
public:
    using Error::Error;
};

// The requested output is infinite (e.g. free category on a cyclic graph).
class InfiniteResult : public Error {
public:
    using Error::Error;
};

// A structure the engine built failed its own law check. Never swallowed.
class LawFailure : public Error {
public:
    using Error::Error;
};

// Unknown object, morphism or builtin name.
class LookupError : public Error {
public:
    using Error::Error;
};

}  // namespace kancat
