#ifndef WPCN_ERRORS_HPP
#define WPCN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace wpcn {

/// Input outside an operation's domain (bad parameter, size mismatch, bad config value).
class invalid_input : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Iterative procedure hit its iteration cap. Carries the last bracket/bound it held.
class iteration_limit : public std::runtime_error {
public:
    iteration_limit(const std::string& what, double lo, double hi)
        : std::runtime_error(what), lo_(lo), hi_(hi) {}

    double lower() const noexcept { return lo_; }
    double upper() const noexcept { return hi_; }

private:
    double lo_;
    double hi_;
};

/// Problem has no meaningful solution (every effective SNR is zero, no active weight, ...).
class degenerate_instance : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace wpcn

#endif
