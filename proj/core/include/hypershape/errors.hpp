#pragma once

#include <stdexcept>

namespace hypershape {

/// Invalid parameter combination: out-of-domain arguments, vanishing
/// series denominators, dimension mismatches.
class parameter_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Gamma function evaluated at a non-positive integer.
class pole_error : public parameter_error {
public:
    using parameter_error::parameter_error;
};

/// Polynomial density requested for an (N, K) pair whose series never
/// terminates.
class parity_error : public parameter_error {
public:
    using parameter_error::parameter_error;
};

/// Series terms keep growing under the requested truncation policy.
class divergence_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A configured ceiling (degree, table size, retry budget) was exceeded.
class resource_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Degenerate configuration or a matrix that should be positive definite
/// and is not.
class singular_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input file.
class io_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace hypershape
