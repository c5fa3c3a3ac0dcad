#pragma once

#include <functional>

namespace pihl::num {

// Finds a root of f on [lo, hi] by bisection.  Requires lo < hi and a sign
// change (or an exact zero) at the endpoints; throws std::invalid_argument
// otherwise.  Stops when the bracket width falls below tol and returns the
// bracket midpoint.
double find_root(const std::function<double(double)>& f, double lo, double hi,
                 double tol = 1e-12);

} // namespace pihl::num
