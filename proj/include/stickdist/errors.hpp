#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace stickdist {

/// Argument outside the mathematical domain of an operation.
class domain_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A numerical routine could not deliver its contract (no sign change,
/// non-finite samples, missing real roots, solver stalls).
class numeric_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class no_sign_change : public numeric_error {
public:
    using numeric_error::numeric_error;
};

class non_finite : public numeric_error {
public:
    using numeric_error::numeric_error;
};

class no_real_triple : public numeric_error {
public:
    using numeric_error::numeric_error;
};

class not_formable : public domain_error {
public:
    using domain_error::domain_error;
};

class no_convergence : public numeric_error {
public:
    using numeric_error::numeric_error;
};

class tolerance_not_met : public numeric_error {
public:
    using numeric_error::numeric_error;
};

namespace detail {

inline std::string fmt_num(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

} // namespace detail
} // namespace stickdist
