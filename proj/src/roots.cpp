#include "pihl/roots.hpp"

#include <cmath>
#include <stdexcept>

namespace pihl::num {

double find_root(const std::function<double(double)>& f, double lo, double hi, double tol) {
    if (!(lo < hi))
        throw std::invalid_argument("find_root: empty bracket");
    if (!(tol > 0.0))
        throw std::invalid_argument("find_root: tolerance must be positive");
    double flo = f(lo);
    double fhi = f(hi);
    if (!std::isfinite(flo) || !std::isfinite(fhi))
        throw std::invalid_argument("find_root: endpoint evaluation not finite");
    if (flo == 0.0)
        return lo;
    if (fhi == 0.0)
        return hi;
    if ((flo < 0.0) == (fhi < 0.0))
        throw std::invalid_argument("find_root: no sign change on bracket");

    for (int iter = 0; iter < 200 && hi - lo > tol; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double fmid = f(mid);
        if (fmid == 0.0)
            return mid;
        if ((fmid < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace pihl::num
