// Independent reference computations. None of these call into the library's numerics.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <functional>
#include <limits>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

inline constexpr double kPi = 3.14159265358979323846;

// Kepler's equation by plain bisection on [0, 2pi].
inline double kepler_bisection(double e, double ell) {
    ell = std::fmod(ell, 2.0 * kPi);
    if (ell < 0) ell += 2.0 * kPi;
    double lo = 0.0, hi = 2.0 * kPi;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid - e * std::sin(mid) - ell > 0) hi = mid;
        else lo = mid;
    }
    return 0.5 * (lo + hi);
}

// b_s^(j)(alpha) = (s)_j / j! alpha^j 2F1(s, s+j; j+1; alpha^2)
inline double laplace_series(double s, int j, double alpha) {
    j = std::abs(j);
    double pref = 1.0;  // exponential Fourier convention
    for (int i = 0; i < j; ++i) pref *= (s + i) / (i + 1) * alpha;
    double term = 1.0, sum = 1.0;
    const double x = alpha * alpha;
    for (int k = 0; k < 100000; ++k) {
        term *= (s + k) * (s + j + k) / ((j + 1.0 + k) * (k + 1.0)) * x;
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return pref * sum;
}

// Minimum value of a unimodal function on [a, b].
inline double golden_min(const std::function<double(double)>& f, double a, double b) {
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - g * (b - a), d = a + g * (b - a);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < 200 && b - a > 1e-14; ++it) {
        if (fc < fd) {
            b = d; d = c; fd = fc;
            c = b - g * (b - a); fc = f(c);
        } else {
            a = c; c = d; fc = fd;
            d = a + g * (b - a); fd = f(d);
        }
    }
    return std::min(fc, fd);
}

// Real roots of the monic polynomial with coefficients (c_{n-1}, ..., c_0) via companion eigenvalues.
inline std::vector<double> companion_real_roots(const std::vector<double>& coeffs) {
    const int n = int(coeffs.size());
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) m(0, i) = -coeffs[i];
    for (int i = 1; i < n; ++i) m(i, i - 1) = 1.0;
    Eigen::EigenSolver<Eigen::MatrixXd> es(m, false);
    std::vector<double> out;
    for (int i = 0; i < n; ++i) {
        const std::complex<double> z = es.eigenvalues()[i];
        if (std::abs(z.imag()) < 1e-9 * std::max(1.0, std::abs(z))) out.push_back(z.real());
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<double> symmetric_eigs(const std::vector<std::vector<double>>& a) {
    const int n = int(a.size());
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = a[i][j];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) out[i] = es.eigenvalues()[i];
    return out;
}

// Multi-scale Diophantine scan over the whole box [-K, K]^d. Keeps representatives with the first
// nonzero entry positive; the worst k minimizes (slack, |k|_1, lexicographic order).
struct DiophantineVerdict {
    bool passes = true;
    double min_slack = std::numeric_limits<double>::infinity();
    std::vector<int> witness;
    int block = -1;
};

inline DiophantineVerdict diophantine_box(const std::vector<double>& omega, const std::vector<int>& blocks,
                                          const std::vector<double>& gammas, double tau, int K) {
    const int d = int(omega.size());
    std::vector<int> owner;
    for (int b = 0; b < int(blocks.size()); ++b)
        for (int c = 0; c < blocks[b]; ++c) owner.push_back(b);
    DiophantineVerdict best;
    int best_norm = 0;
    std::vector<int> k(d, -K);
    while (true) {
        int l1 = 0, first = -1;
        for (int i = 0; i < d; ++i) {
            l1 += std::abs(k[i]);
            if (first < 0 && k[i] != 0) first = i;
        }
        if (first >= 0 && k[first] > 0 && l1 <= K) {
            double dot = 0.0;
            for (int i = 0; i < d; ++i) dot += omega[i] * k[i];
            const double slack = std::abs(dot) - gammas[owner[first]] / std::pow(double(l1), tau);
            const bool better = best.witness.empty() || slack < best.min_slack ||
                                (slack == best.min_slack && (l1 < best_norm || (l1 == best_norm && k < best.witness)));
            if (better) {
                best.min_slack = slack;
                best.witness = k;
                best.block = owner[first];
                best_norm = l1;
            }
        }
        int i = d - 1;
        while (i >= 0 && k[i] == K) k[i--] = -K;
        if (i < 0) break;
        ++k[i];
    }
    best.passes = best.min_slack >= 0.0;
    return best;
}

}  // namespace oracle
