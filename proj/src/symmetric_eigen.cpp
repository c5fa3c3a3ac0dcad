#include "pihl/symmetric_eigen.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace pihl::num {

SymmetricMatrix::SymmetricMatrix(int dim) : dim_(dim) {
    if (dim < 1)
        throw std::invalid_argument("SymmetricMatrix dimension must be positive");
    data_.assign(static_cast<std::size_t>(dim) * dim, 0.0);
}

std::size_t SymmetricMatrix::index(int j, int k) const {
    if (j < 0 || k < 0 || j >= dim_ || k >= dim_)
        throw std::out_of_range("SymmetricMatrix index");
    return static_cast<std::size_t>(j) * dim_ + k;
}

void SymmetricMatrix::set(int j, int k, double value) {
    if (!std::isfinite(value))
        throw std::invalid_argument("SymmetricMatrix entries must be finite");
    data_[index(j, k)] = value;
    data_[index(k, j)] = value;
}

double SymmetricMatrix::norm() const {
    double s = 0.0;
    for (double v : data_)
        s += v * v;
    return std::sqrt(s);
}

namespace {

void canonical_sign(std::vector<double>& v) {
    std::size_t imax = 0;
    for (std::size_t i = 1; i < v.size(); ++i)
        if (std::abs(v[i]) > std::abs(v[imax]))
            imax = i;
    if (v[imax] < 0.0)
        for (double& x : v)
            x = -x;
}

// Scales by the largest entry first so near-singular inverse-iteration
// solves (entries ~ 1/DBL_MIN) cannot overflow the norm accumulation.
void normalize(std::vector<double>& v) {
    double amax = 0.0;
    for (double x : v)
        amax = std::max(amax, std::abs(x));
    if (amax == 0.0)
        throw std::runtime_error("eigenvector collapsed to zero");
    if (!std::isfinite(amax))
        throw std::runtime_error("eigenvector overflowed");
    double s = 0.0;
    for (double& x : v) {
        x /= amax;
        s += x * x;
    }
    s = std::sqrt(s);
    for (double& x : v)
        x /= s;
}

double off_diagonal_norm(const std::vector<double>& a, int n) {
    double s = 0.0;
    for (int p = 0; p < n; ++p)
        for (int q = p + 1; q < n; ++q) {
            const double v = a[static_cast<std::size_t>(p) * n + q];
            s += 2.0 * v * v;
        }
    return std::sqrt(s);
}

EigenPair jacobi_min(const SymmetricMatrix& m) {
    const int n = m.dim();
    std::vector<double> a = m.raw();
    std::vector<double> v(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i)
        v[static_cast<std::size_t>(i) * n + i] = 1.0;

    const double scale = std::max(m.norm(), std::numeric_limits<double>::min());
    const double tol = 1e-13 * scale;
    auto at = [&](int i, int j) -> double& { return a[static_cast<std::size_t>(i) * n + j]; };

    for (int sweep = 0; sweep < 60; ++sweep) {
        if (off_diagonal_norm(a, n) <= tol)
            break;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = at(p, q);
                if (apq == 0.0)
                    continue;
                const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
                double t;
                if (std::abs(theta) > 1e150) {
                    t = 1.0 / (2.0 * theta);
                } else {
                    t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                    if (theta < 0.0)
                        t = -t;
                }
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const double tau = s / (1.0 + c);

                at(p, p) -= t * apq;
                at(q, q) += t * apq;
                at(p, q) = 0.0;
                at(q, p) = 0.0;
                for (int i = 0; i < n; ++i) {
                    if (i == p || i == q)
                        continue;
                    const double aip = at(i, p);
                    const double aiq = at(i, q);
                    at(i, p) = aip - s * (aiq + tau * aip);
                    at(p, i) = at(i, p);
                    at(i, q) = aiq + s * (aip - tau * aiq);
                    at(q, i) = at(i, q);
                }
                for (int i = 0; i < n; ++i) {
                    const double vip = v[static_cast<std::size_t>(i) * n + p];
                    const double viq = v[static_cast<std::size_t>(i) * n + q];
                    v[static_cast<std::size_t>(i) * n + p] = vip - s * (viq + tau * vip);
                    v[static_cast<std::size_t>(i) * n + q] = viq + s * (vip - tau * viq);
                }
            }
        }
    }

    int argmin = 0;
    for (int i = 1; i < n; ++i)
        if (at(i, i) < at(argmin, argmin))
            argmin = i;

    EigenPair out;
    out.value = at(argmin, argmin);
    out.vector.resize(n);
    for (int i = 0; i < n; ++i)
        out.vector[i] = v[static_cast<std::size_t>(i) * n + argmin];
    normalize(out.vector);
    canonical_sign(out.vector);
    return out;
}

bool is_tridiagonal(const SymmetricMatrix& m) {
    const int n = m.dim();
    if (n <= 2)
        return false; // nothing to gain; run the dense path
    for (int j = 0; j < n; ++j)
        for (int k = j + 2; k < n; ++k)
            if (m(j, k) != 0.0)
                return false;
    return true;
}

// Number of eigenvalues strictly below sigma (Sturm sequence on the
// shifted LDL^T recurrence).
int sturm_count(const std::vector<double>& diag, const std::vector<double>& off, double sigma) {
    const double tiny = std::numeric_limits<double>::min() * 4.0;
    int count = 0;
    double q = diag[0] - sigma;
    if (q < 0.0)
        ++count;
    for (std::size_t i = 1; i < diag.size(); ++i) {
        if (std::abs(q) < tiny)
            q = (q < 0.0) ? -tiny : tiny;
        q = diag[i] - sigma - off[i - 1] * off[i - 1] / q;
        if (q < 0.0)
            ++count;
    }
    return count;
}

// Solves (T - sigma I) x = b in place for symmetric tridiagonal T with
// sigma below the spectrum, so the factorization needs no pivoting.
void shifted_tridiag_solve(const std::vector<double>& diag, const std::vector<double>& off,
                           double sigma, std::vector<double>& x) {
    const std::size_t n = diag.size();
    const double tiny = std::numeric_limits<double>::min() * 4.0;
    std::vector<double> c(n > 1 ? n - 1 : 0);
    double piv = diag[0] - sigma;
    if (std::abs(piv) < tiny)
        piv = tiny;
    std::vector<double> d(n);
    d[0] = piv;
    for (std::size_t i = 1; i < n; ++i) {
        c[i - 1] = off[i - 1] / d[i - 1];
        double di = diag[i] - sigma - c[i - 1] * off[i - 1];
        if (std::abs(di) < tiny)
            di = tiny;
        d[i] = di;
    }
    for (std::size_t i = 1; i < n; ++i)
        x[i] -= c[i - 1] * x[i - 1];
    x[n - 1] /= d[n - 1];
    for (std::size_t i = n - 1; i-- > 0;)
        x[i] = x[i] / d[i] - c[i] * x[i + 1];
}

EigenPair tridiag_min(const SymmetricMatrix& m) {
    const int n = m.dim();
    std::vector<double> diag(n), off(n - 1);
    for (int i = 0; i < n; ++i)
        diag[i] = m(i, i);
    for (int i = 0; i + 1 < n; ++i)
        off[i] = m(i, i + 1);

    double lo = diag[0], hi = diag[0];
    for (int i = 0; i < n; ++i) {
        const double r = (i > 0 ? std::abs(off[i - 1]) : 0.0) + (i + 1 < n ? std::abs(off[i]) : 0.0);
        lo = std::min(lo, diag[i] - r);
        hi = std::max(hi, diag[i] + r);
    }
    const double scale = std::max({std::abs(lo), std::abs(hi), 1.0});
    // Bisect for the smallest eigenvalue; keep count(lo) == 0 so lo stays
    // strictly below the spectrum (used as the inverse-iteration shift).
    for (int iter = 0; iter < 200 && hi - lo > 1e-15 * scale; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (sturm_count(diag, off, mid) >= 1)
            hi = mid;
        else
            lo = mid;
    }

    std::vector<double> x(n);
    std::uint64_t state = 0x9e3779b97f4a7c15ull; // fixed seed; any dense start vector works
    for (int i = 0; i < n; ++i) {
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        x[i] = 0.5 + static_cast<double>(state >> 11) / 9007199254740992.0;
    }
    normalize(x);
    for (int iter = 0; iter < 6; ++iter) {
        shifted_tridiag_solve(diag, off, lo, x);
        normalize(x);
    }

    // Rayleigh quotient as the final eigenvalue estimate.
    double lambda = 0.0;
    for (int i = 0; i < n; ++i) {
        double tv = diag[i] * x[i];
        if (i > 0)
            tv += off[i - 1] * x[i - 1];
        if (i + 1 < n)
            tv += off[i] * x[i + 1];
        lambda += x[i] * tv;
    }

    EigenPair out;
    out.value = lambda;
    out.vector = std::move(x);
    canonical_sign(out.vector);
    return out;
}

} // namespace

EigenPair sym_eig_min(const SymmetricMatrix& a) {
    if (a.dim() == 1)
        return EigenPair{a(0, 0), {1.0}};
    if (is_tridiagonal(a))
        return tridiag_min(a);
    return jacobi_min(a);
}

} // namespace pihl::num
