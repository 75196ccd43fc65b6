#pragma once

#include <stdexcept>
#include <string>

namespace kvc {

/// Base for every error raised by the library.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input: bad file syntax, loops, duplicate edges, ids out of range.
class input_error : public error {
public:
    using error::error;
};

/// An operation was called outside its precondition (k < 1, W not a subset of A, ...).
class precondition_error : public error {
public:
    using error::error;
};

/// A guard refused to run an exhaustive search at this scale.
class scale_error : public error {
public:
    using error::error;
};

} // namespace kvc
