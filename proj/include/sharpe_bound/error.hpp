#pragma once

#include <stdexcept>
#include <string>

namespace sharpe_bound {

/// Base class for every error raised by the library.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or too-short input (e.g. fewer than two returns for a ratio).
class input_error : public error {
public:
    using error::error;
};

/// A value lies outside its mathematical domain (return below -1, B <= 0, ...).
class domain_error : public error {
public:
    using error::error;
};

/// The requested supremum is infinite (one-sided bound with B >= 1).
class divergence_error : public domain_error {
public:
    using domain_error::domain_error;
};

/// A search found no candidate satisfying the constraints.
class infeasible_error : public domain_error {
public:
    using domain_error::domain_error;
};

/// Ratio requested where the relevant deviation is zero.
class undefined_ratio_error : public domain_error {
public:
    using domain_error::domain_error;
};

}  // namespace sharpe_bound
