#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "planetary/errors.hpp"
#include "planetary/geometry.hpp"
#include "planetary/kepler.hpp"

namespace testing_support {

// Kind tag of the planetary::Error thrown by f, or "" when nothing is thrown.
template <class F>
std::string thrown_kind(F&& f) {
    try {
        f();
    } catch (const planetary::Error& e) {
        return e.kind();
    }
    return "";
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = a.size() == b.size() ? 0.0 : INFINITY;
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline double vec_diff(const planetary::Vec3& a, const planetary::Vec3& b) { return planetary::norm(a - b); }

// Elements of a bound orbit with the given geometry.
inline planetary::TwoBodyElements elements(double a, double e, double incl, double node, double peri, double ell,
                                           double mu = 1.0, double M = 1.0) {
    using namespace planetary;
    const Vec3 n = rotate_about(kE1, kE3, node);
    const Vec3 khat = rotate_about(kE3, n, incl);
    TwoBodyElements el;
    el.a = a;
    el.e = e;
    el.mu = mu;
    el.M = M;
    el.mean_anomaly = ell;
    el.C = khat * (mu * std::sqrt(M * a) * std::sqrt(1 - e * e));
    el.P = rotate_about(n, khat, peri);
    return el;
}

}  // namespace testing_support
