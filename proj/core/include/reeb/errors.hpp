#pragma once

#include <stdexcept>
#include <string>

namespace reeb {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Operands live over different coefficient rings, or an operation needs a
// field and was handed the integers.
class RingMismatchError : public Error {
public:
    using Error::Error;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

// Malformed descriptor, plan or report document. The message carries the
// JSON path of the offending field.
class SchemaError : public Error {
public:
    using Error::Error;
};

// Integer cohomology has torsion where a product was requested.
class TorsionError : public Error {
public:
    using Error::Error;
};

// A file could not be read or written.
class IoError : public Error {
public:
    using Error::Error;
};

// The simplicial oracle cannot model this descriptor.
class UnsupportedModelError : public Error {
public:
    using Error::Error;
};

} // namespace reeb
