/**
 * Independent reference computations used by the tests: dense sign
 * sampling, finite differences and random instance generators.  None of them
 * calls into the root isolation code they are compared against.
 */

#ifndef FEWNOMIAL_TESTS_ORACLES_HPP
#define FEWNOMIAL_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <vector>

#include "fewnomial/univar.hpp"

namespace oracle {

/** Sign changes of sum c_i exp(a_i s) on a uniform grid of [-half, half], refined by bisection; roots in s. */
inline std::vector<double> expsum_sign_roots(const std::vector<double>& c, const std::vector<double>& a, double half,
                                             std::size_t samples)
{
    const std::size_t m = c.size();
    const double h = 2 * half / static_cast<double>(samples);
    auto value = [&](double s) {
        double v = 0;
        for (std::size_t i = 0; i < m; ++i) v += c[i] * std::exp(a[i] * s);
        return v;
    };
    // Each term is advanced by its constant ratio exp(a h); restarted every 4096 steps to bound drift.
    std::vector<double> term(m), ratio(m);
    for (std::size_t i = 0; i < m; ++i) ratio[i] = std::exp(a[i] * h);
    std::vector<double> roots;
    double prev = 0.0;
    for (std::size_t k = 0; k <= samples; ++k) {
        const double s = -half + static_cast<double>(k) * h;
        if (k % 4096 == 0) {
            for (std::size_t i = 0; i < m; ++i) term[i] = c[i] * std::exp(a[i] * s);
        } else {
            for (std::size_t i = 0; i < m; ++i) term[i] *= ratio[i];
        }
        double v = 0;
        for (double t : term) v += t;
        if (k > 0 && ((prev < 0 && v > 0) || (prev > 0 && v < 0))) {
            double lo = s - h, hi = s, flo = value(lo);
            for (int it = 0; it < 80; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double fm = value(mid);
                if ((fm < 0) == (flo < 0)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            roots.push_back(0.5 * (lo + hi));
        }
        if (v != 0) prev = v;
    }
    return roots;
}

/** Smallest gap between consecutive sorted values (infinity for fewer than two). */
inline double min_gap(std::vector<double> v)
{
    std::sort(v.begin(), v.end());
    double g = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < v.size(); ++i) g = std::min(g, v[i] - v[i - 1]);
    return g;
}

/** Fourth-order central difference. */
template <class F>
double derivative(F f, double t, double h)
{
    return (8 * (f(t + h) - f(t - h)) - (f(t + 2 * h) - f(t - 2 * h))) / (12 * h);
}

/** Random homogeneous polynomial of degree d in n symbols with every monomial present. */
inline fewnomial::HomogeneousPolynomial random_homogeneous(std::size_t n, int d, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    fewnomial::HomogeneousPolynomial p(n);
    std::vector<int> e(n, 0);
    // Enumerate compositions of d into n parts.
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
        if (i + 1 == n) {
            e[i] = left;
            p.add(e, coef(rng));
            return;
        }
        for (int k = 0; k <= left; ++k) {
            e[i] = k;
            rec(i + 1, left - k);
        }
    };
    rec(0, d);
    return p;
}

}  // namespace oracle

#endif
