#pragma once

#include <stdexcept>
#include <string>

namespace aladaen {

/// Root of the library's exception hierarchy.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Tensor or batch dimensions do not agree.
class ShapeError : public Error {
public:
    using Error::Error;
};

/// A precondition on an argument value was violated.
class ArgumentError : public Error {
public:
    using Error::Error;
};

/// Batch normalization was asked to normalize a batch of one in train mode.
class DegenerateBatchError : public ArgumentError {
public:
    using ArgumentError::ArgumentError;
};

/// A loss or gradient evaluated to NaN or infinity.
class NumericError : public Error {
public:
    using Error::Error;
};

/// Malformed input file content.
class FormatError : public Error {
public:
    using Error::Error;
};

/// Referential problems: duplicate ids, ids that do not resolve.
class IntegrityError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

/// The oracle session ended before all pending queries were labeled.
/// The run can be resumed from its last snapshot.
class SuspendedError : public Error {
public:
    using Error::Error;
};

}  // namespace aladaen
