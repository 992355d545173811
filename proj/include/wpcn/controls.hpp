#ifndef WPCN_CONTROLS_HPP
#define WPCN_CONTROLS_HPP

#include <wpcn/errors.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>

namespace wpcn {

/// Tolerances and iteration caps for every iterative procedure in the library.
struct SolverControls {
    double rel_tol = 1e-12;
    double abs_tol = 1e-14;
    int max_iters = 200;

    double bisection_tol = 1e-5;  // delta of the common-rate bisection [bps/Hz]
    double rate_tol = 1e-6;       // equal-rate / target slack [bps/Hz]
    double ellipsoid_gap = 1e-7;  // stop once the dual upper bound is this close to zero
    int ellipsoid_max_iters = 0;  // 0 selects max(500, 20 K^2)

    int ellipsoid_cap(std::size_t users) const {
        if (ellipsoid_max_iters > 0)
            return ellipsoid_max_iters;
        return std::max(500, int(20 * users * users));
    }

    void validate() const {
        if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
            throw invalid_input("solver tolerances must be > 0");
        if (max_iters < 1)
            throw invalid_input("max_iters must be >= 1");
        if (!(bisection_tol > 0.0) || !(rate_tol > 0.0) || !(ellipsoid_gap > 0.0))
            throw invalid_input("bisection_tol, rate_tol and ellipsoid_gap must be > 0");
        if (ellipsoid_max_iters < 0)
            throw invalid_input("ellipsoid_max_iters must be >= 0");
    }
};

} // namespace wpcn

#endif
