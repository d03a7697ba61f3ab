#include "planetary/secular.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "planetary/errors.hpp"
#include "planetary/kepler.hpp"
#include "planetary/symplectic.hpp"

namespace planetary {

namespace {

using cplx = std::complex<double>;

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

// Planet positions and momenta at each node of the fast-angle grid. Planet i only
// depends on its own fast angle, so one lift per node serves every planet at once.
struct NodeTable {
    std::vector<std::vector<Vec3>> x, y;  // [planet][node]
};

NodeTable node_table(const std::string& chart, const std::vector<double>& point, const QuadratureSpec& quad,
                     const MassSystem& ms) {
    quad.validate();
    const int n = ms.n();
    const std::vector<int> slots = fast_angle_slots(chart, n);
    if (quad.dims != int(slots.size()))
        fail("InvalidInput", "quadrature dims " + std::to_string(quad.dims) + " but the chart has " +
                                 std::to_string(slots.size()) + " fast angles");
    const ChartSpec spec = chart_spec(chart, n, ms);
    if (point.size() != spec.momenta.size() + spec.angles.size())
        fail("InvalidInput", "chart point has the wrong length for " + chart);
    const int N = quad.nodes_per_angle;
    NodeTable t{std::vector<std::vector<Vec3>>(n, std::vector<Vec3>(N)),
                std::vector<std::vector<Vec3>>(n, std::vector<Vec3>(N))};
    std::vector<double> v = point;
    for (int k = 0; k < N; ++k) {
        const double angle = 2.0 * kPi * k / N;
        for (int s : slots) v[s] = angle;
        CartesianState c;
        try {
            c = unflatten(spec.to_cartesian(v));
        } catch (const Error& e) {
            fail("DomainError", "chart lift failed at node " + std::to_string(k) + " (" + e.what() + ")");
        }
        for (int i = 0; i < n; ++i) {
            t.x[i][k] = c.x[i];
            t.y[i][k] = c.y[i];
        }
    }
    return t;
}

// Neumaier-compensated running sum; second differences of the averages divide
// rounding noise by h^2, so plain accumulation is not enough.
struct CompensatedSum {
    double sum = 0.0, carry = 0.0;
    void add(double v) {
        const double t = sum + v;
        carry += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
        sum = t;
    }
    double value() const { return sum + carry; }
};

// Mean over the N x N product grid of g(x_i(k), x_j(l)), accumulated in a fixed order.
template <class F>
double pair_mean(const std::vector<Vec3>& xi, const std::vector<Vec3>& xj, F g) {
    const std::size_t N = xi.size();
    CompensatedSum total;
    for (std::size_t k = 0; k < N; ++k)
        for (std::size_t l = 0; l < N; ++l) total.add(g(xi[k], xj[l]));
    return total.value() / double(N * N);
}

Vec3 mean(const std::vector<Vec3>& v) {
    Vec3 s;
    for (const Vec3& w : v) s = s + w;
    return s * (1.0 / double(v.size()));
}

constexpr double kAutoStep0 = 5e-4;
constexpr int kAutoSteps = 7;

// Hessian and gradient of f over the listed coordinates by central differences.
struct Stencil {
    Matrix hessian;
    std::vector<double> gradient;
    double value = 0.0;
};

Stencil central_stencil(const std::function<double(const std::vector<double>&)>& f, const std::vector<double>& base,
                        const std::vector<int>& coords, double h) {
    const int m = int(coords.size());
    Stencil st{Matrix(m, m), std::vector<double>(m), f(base)};
    auto at = [&](std::initializer_list<std::pair<int, double>> shifts) {
        std::vector<double> v = base;
        for (auto [c, d] : shifts) v[coords[c]] += d;
        return f(v);
    };
    for (int a = 0; a < m; ++a) {
        const double fp = at({{a, h}}), fm = at({{a, -h}});
        st.hessian(a, a) = (fp - 2.0 * st.value + fm) / (h * h);
        st.gradient[a] = (fp - fm) / (2.0 * h);
        for (int b = 0; b < a; ++b) {
            const double d = (at({{a, h}, {b, h}}) - at({{a, h}, {b, -h}}) - at({{a, -h}, {b, h}}) +
                              at({{a, -h}, {b, -h}})) /
                             (4.0 * h * h);
            st.hessian(a, b) = d;
            st.hessian(b, a) = d;
        }
    }
    return st;
}

}  // namespace

void QuadratureSpec::validate() const {
    if (nodes_per_angle < 16 || !power_of_two(nodes_per_angle))
        fail("InvalidInput", "nodes_per_angle must be a power of two >= 16");
    if (dims < 1) fail("InvalidInput", "quadrature needs at least one angle");
}

std::vector<int> fast_angle_slots(const std::string& chart, int n) {
    std::vector<int> s;
    if (chart == "delaunay" || chart == "poincare" || chart == "depritaa" || chart == "rps") {
        for (int i = 0; i < n; ++i) s.push_back(3 * n + i);
    } else if (chart == "pmap") {
        for (int i = 0; i < n; ++i) s.push_back(5 * n + i);
    } else if (chart == "rpspi") {
        if (n != 2) fail("Unsupported", "rpspi is defined for n = 2 only");
        s = {6, 7};
    } else if (chart == "cartesian" || chart == "deprit" || chart == "kmap" || chart == "broken") {
        fail("Unsupported", "chart '" + chart + "' has no fast angles to average over");
    } else {
        fail("InvalidInput", "unknown chart '" + chart + "'");
    }
    return s;
}

AveragedPerturbation average_perturbation_parts(const std::string& chart, const std::vector<double>& point,
                                                const QuadratureSpec& quad, const MassSystem& ms) {
    ms.validate();
    const NodeTable t = node_table(chart, point, quad, ms);
    const int n = ms.n();
    AveragedPerturbation r;
    for (int i = 0; i < n; ++i) {
        const Vec3 yi = mean(t.y[i]);
        for (int j = i + 1; j < n; ++j) {
            const double inv = pair_mean(t.x[i], t.x[j], [](const Vec3& a, const Vec3& b) { return 1.0 / norm(a - b); });
            r.newtonian -= ms.m[i] * ms.m[j] * inv;
            r.indirect += dot(yi, mean(t.y[j])) / ms.m0;
        }
    }
    r.value = r.newtonian + r.indirect;
    return r;
}

double average_perturbation(const std::string& chart, const std::vector<double>& point, const QuadratureSpec& quad,
                            const MassSystem& ms) {
    return average_perturbation_parts(chart, point, quad, ms).value;
}

double average_quadrupole(const std::string& chart, const std::vector<double>& point, const QuadratureSpec& quad,
                          const MassSystem& ms) {
    ms.validate();
    const NodeTable t = node_table(chart, point, quad, ms);
    const int n = ms.n();
    double total = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double q = pair_mean(t.x[i], t.x[j], [](const Vec3& a, const Vec3& b) {
                const double aa = dot(a, a), ab = dot(a, b);
                return (3.0 * ab * ab - aa * dot(b, b)) / (2.0 * aa * aa * std::sqrt(aa));
            });
            total -= ms.m[i] * ms.m[j] * q;
        }
    return total;
}

double laplace_coefficient(double s, int j, double alpha) {
    if (!(alpha >= 0.0) || !(alpha < 1.0)) fail("DomainError", "Laplace coefficients need 0 <= alpha < 1");
    auto g = [&](double th) { return std::cos(j * th) / std::pow(1.0 - 2.0 * alpha * std::cos(th) + alpha * alpha, s); };
    // trapezoid on [0, 2pi); doubling reuses the previous nodes
    int N = 8;
    double sum = 0.0;
    for (int k = 0; k < N; ++k) sum += g(2.0 * kPi * k / N);
    double prev = sum / N;
    for (int level = 0; level < 24; ++level) {
        for (int k = 0; k < N; ++k) sum += g(2.0 * kPi * (k + 0.5) / N);
        N *= 2;
        const double cur = sum / N;
        if (std::abs(cur - prev) < 1e-12 * std::max(1.0, std::abs(cur))) return cur;
        prev = cur;
    }
    fail("EvaluationError", "Laplace coefficient did not converge");
}

double semi_major_axis(double Lambda, const MassSystem& ms, int i) {
    const double mu = ms.mu(i);
    return Lambda * Lambda / (mu * mu * ms.M(i));
}

double action_for_axis(double a, const MassSystem& ms, int i) { return ms.mu(i) * std::sqrt(ms.M(i) * a); }

SecularSpectrum quadratic_forms(const std::vector<double>& Lambda, const MassSystem& ms, const QuadratureSpec& quad,
                                double fd_step) {
    const int n = int(Lambda.size());
    if (n != ms.n()) fail("InvalidInput", "Lambda and masses disagree in length");
    if (!(fd_step >= 0.0)) fail("InvalidInput", "fd_step must be non-negative");
    // Poincare layout: Lambda, uh, up | lambda, ux, uq
    std::vector<double> base(6 * n, 0.0);
    for (int i = 0; i < n; ++i) base[i] = Lambda[i];
    auto f = [&](const std::vector<double>& v) {
        try {
            return average_perturbation("poincare", v, quad, ms);
        } catch (const Error& e) {
            fail("EvaluationError", e.what());
        }
    };
    std::vector<int> uh, up;
    for (int i = 0; i < n; ++i) {
        uh.push_back(n + i);
        up.push_back(2 * n + i);
    }
    // Richardson: (4 D(h) - D(2h)) / 3 cancels the h^2 error of the quartic terms
    auto richardson = [&](const Matrix& fine, const Matrix& coarse) {
        Matrix out(n, n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) out(a, b) = (4.0 * fine(a, b) - coarse(a, b)) / 3.0;
        return out;
    };
    auto hessian = [&](const std::vector<int>& coords) {
        if (fd_step > 0.0)
            return richardson(central_stencil(f, base, coords, fd_step).hessian,
                              central_stencil(f, base, coords, 2.0 * fd_step).hessian);
        // Rounding grows like 1/h^2 and truncation like h^4; keep the step where
        // neighbouring extrapolations agree best.
        std::vector<Matrix> d;
        for (int k = 0; k <= kAutoSteps + 1; ++k)
            d.push_back(central_stencil(f, base, coords, kAutoStep0 * std::ldexp(1.0, k)).hessian);
        std::vector<Matrix> r;
        for (int k = 0; k <= kAutoSteps; ++k) r.push_back(richardson(d[k], d[k + 1]));
        int best = 0;
        double best_gap = std::numeric_limits<double>::infinity();
        for (int k = 0; k < kAutoSteps; ++k) {
            double gap = 0.0;
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) gap = std::max(gap, std::abs(r[k](a, b) - r[k + 1](a, b)));
            if (gap < best_gap) {
                best_gap = gap;
                best = k;
            }
        }
        return r[best];
    };
    SecularSpectrum sp;
    sp.Qh = hessian(uh);
    sp.Qv = hessian(up);
    sp.sigma = symmetric_eigenvalues(sp.Qh);
    sp.varsigma = symmetric_eigenvalues(sp.Qv);
    double smallest = std::abs(sp.varsigma[0]), sum = 0.0;
    for (double v : sp.varsigma) {
        smallest = std::min(smallest, std::abs(v));
        sum += v;
    }
    for (double v : sp.sigma) sum += v;
    sp.herman_residuals = {smallest, std::abs(sum)};
    return sp;
}

Matrix rho_v_rotation(const std::vector<double>& Lambda) {
    const int n = int(Lambda.size());
    if (n < 1) fail("InvalidInput", "empty Lambda");
    double total = 0.0;
    for (double L : Lambda) {
        if (!(L > 0.0)) fail("InvalidInput", "Lambda must be positive");
        total += L;
    }
    // rows of the inverse: an orthonormal completion, then the fixed last row
    std::vector<std::vector<double>> rows;
    std::vector<double> last(n);
    for (int i = 0; i < n; ++i) last[i] = std::sqrt(Lambda[i] / total);
    std::vector<std::vector<double>> basis{last};
    for (int e = 0; e < n && int(basis.size()) < n; ++e) {
        std::vector<double> v(n, 0.0);
        v[e] = 1.0;
        for (const auto& b : basis) {
            double d = 0.0;
            for (int i = 0; i < n; ++i) d += v[i] * b[i];
            for (int i = 0; i < n; ++i) v[i] -= d * b[i];
        }
        double len = 0.0;
        for (double c : v) len += c * c;
        len = std::sqrt(len);
        if (len < 1e-8) continue;
        for (double& c : v) c /= len;
        basis.push_back(v);
    }
    Matrix inv(n, n);
    for (int r = 0; r + 1 < n; ++r)
        for (int c = 0; c < n; ++c) inv(r, c) = basis[r + 1][c];
    for (int c = 0; c < n; ++c) inv(n - 1, c) = last[c];
    // fix the orientation through the sign of the determinant (Gaussian elimination)
    Matrix lu = inv;
    double det = 1.0;
    for (int k = 0; k < n; ++k) {
        int piv = k;
        for (int r = k + 1; r < n; ++r)
            if (std::abs(lu(r, k)) > std::abs(lu(piv, k))) piv = r;
        if (piv != k) {
            for (int c = 0; c < n; ++c) std::swap(lu(k, c), lu(piv, c));
            det = -det;
        }
        det *= lu(k, k);
        for (int r = k + 1; r < n; ++r) {
            const double fct = lu(r, k) / lu(k, k);
            for (int c = k; c < n; ++c) lu(r, c) -= fct * lu(k, c);
        }
    }
    if (det < 0.0 && n > 1)
        for (int c = 0; c < n; ++c) inv(0, c) = -inv(0, c);
    return inv.transpose();
}

double f2_closed_form(const PState& p, const MassSystem& ms) {
    if (p.Theta.size() != 2 || ms.n() != 2) fail("Unsupported", "the closed form is implemented for n = 2");
    const double L1 = p.Lambda[0], L2 = p.Lambda[1];
    if (!(L1 > 0.0) || !(L2 > 0.0)) fail("InvalidInput", "Lambda must be positive");
    const double T1 = p.Theta[0], T2 = p.Theta[1];
    const double chi1 = p.chi[0];  // |C|
    const double chi0 = T1;
    if (!(T1 > 0.0) || chi1 * chi1 < T2 * T2 || chi0 * chi0 < T2 * T2)
        fail("InvalidInput", "P state violates |Theta_2| <= min(Theta_1, chi_1)");
    const double a1 = semi_major_axis(L1, ms, 0), a2 = semi_major_axis(L2, ms, 1);
    const double v = p.vartheta[1];
    const double T2s = T2 * T2, c0 = chi0 * chi0, c1 = chi1 * chi1;
    // squared length of the inner planet's angular momentum
    const double C2sq = c1 + c0 - 2.0 * T2s + 2.0 * std::sqrt((c1 - T2s) * (c0 - T2s)) * std::cos(v);
    const double sv = std::sin(v);
    const double bracket = 2.5 * (3.0 * T2s - c0) - 1.5 * (4.0 * T2s - c0) / (L2 * L2) * C2sq +
                           1.5 * (c0 - T2s) * (c1 - T2s) / (L2 * L2) * sv * sv;
    // chi_{-1} = 0, so chi_0^2 (chi_0 - chi_{-1})^3 = Theta_1^5
    return ms.m[0] * ms.m[1] * a2 * a2 / (4.0 * a1 * a1 * a1) * L1 * L1 * L1 / std::pow(T1, 5) * bracket;
}

MassSystem secular_masses() {
    MassSystem ms;
    ms.m0 = 1.0;
    ms.m = {0.25, 4.0};
    ms.mu_scaling = 1e-3;
    return ms;
}

CartesianState two_planet_state(double alpha, const ScalingGeometry& g, const MassSystem& ms) {
    if (ms.n() != 2) fail("InvalidInput", "two planets expected");
    if (!(alpha > 0.0) || !(alpha < 1.0)) fail("InvalidInput", "alpha must lie in (0, 1)");
    const Vec3 up{0.0, 0.0, 1.0};
    const Vec3 tilted = rotate_about(up, Vec3{std::cos(g.node), std::sin(g.node), 0.0}, g.inclination);
    const Vec3 normals[2] = {up, tilted};
    const double a[2] = {g.a_outer, alpha * g.a_outer};
    const double e[2] = {g.e_outer, g.e_inner};
    const double w[2] = {g.perihelion_outer, g.perihelion_inner};
    CartesianState s;
    for (int i = 0; i < 2; ++i) {
        TwoBodyElements el;
        el.mu = ms.mu(i);
        el.M = ms.M(i);
        el.a = a[i];
        el.e = e[i];
        // perihelion measured from a fixed direction in the orbit plane
        const Vec3 ref = unit(cross(normals[i], Vec3{0.3, 0.7, 0.1}));
        el.P = rotate_about(ref, normals[i], w[i]);
        el.C = normals[i] * (el.Lambda() * std::sqrt(1.0 - e[i] * e[i]));
        el.mean_anomaly = 0.0;
        const PhasePoint q = cartesian_from_elements(el);
        s.y.push_back(q.y);
        s.x.push_back(q.x);
    }
    return s;
}

std::vector<ScalingRow> f2_scaling_study(const std::vector<double>& alphas, const MassSystem& ms,
                                         const ScalingGeometry& g, const QuadratureSpec& quad) {
    std::vector<ScalingRow> rows;
    for (double alpha : alphas) {
        const PState p = p_from_cartesian(two_planet_state(alpha, g, ms), ms);
        std::vector<double> flat;
        for (const auto* b : {&p.Theta, &p.chi, &p.Lambda, &p.vartheta, &p.kappa, &p.ell})
            flat.insert(flat.end(), b->begin(), b->end());
        ScalingRow r;
        r.alpha = alpha;
        r.value = average_perturbation("pmap", flat, quad, ms) + ms.m[0] * ms.m[1] / g.a_outer;
        r.closed_form = f2_closed_form(p, ms);
        r.residual = std::abs(r.value - r.closed_form);
        rows.push_back(r);
    }
    return rows;
}

double fitted_exponent(const std::vector<double>& alphas, const std::vector<double>& values) {
    if (alphas.size() != values.size() || alphas.size() < 2) fail("InvalidInput", "need at least two points");
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const double n = double(alphas.size());
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        const double x = std::log(alphas[i]), y = std::log(values[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

RetroSpectrum retro_spectrum(const std::vector<double>& Lambda, const MassSystem& ms) {
    if (Lambda.size() != 2 || ms.n() != 2) fail("Unsupported", "the retrograde spectrum is defined for n = 2");
    const double L1 = Lambda[0], L2 = Lambda[1];
    if (!(L1 > 0.0) || !(L2 > 0.0)) fail("InvalidInput", "Lambda must be positive");
    RetroSpectrum r;
    r.a_outer = semi_major_axis(L1, ms, 0);
    r.a_inner = semi_major_axis(L2, ms, 1);
    r.alpha = r.a_inner / r.a_outer;
    if (!(r.alpha < 1.0)) fail("DomainError", "the retrograde spectrum needs a_2 < a_1");
    const double mm = ms.m[0] * ms.m[1];
    const double pref = mm * r.alpha / (2.0 * r.a_outer);
    r.s = -pref * laplace_coefficient(1.5, 1, r.alpha);
    r.s_tilde = pref * laplace_coefficient(1.5, 2, r.alpha);
    const cplx off(0.0, -r.s_tilde / std::sqrt(L1 * L2));
    r.sigma_matrix = {{{cplx(-r.s / L1), off}, {off, cplx(r.s / L2)}}};
    const double tr = r.s * (1.0 / L2 - 1.0 / L1);
    const double d = 1.0 / L2 - 1.0 / L1;
    r.discriminant = d * d * r.s * r.s + 4.0 * (r.s * r.s - r.s_tilde * r.s_tilde) / (L1 * L2);
    const double root = std::sqrt(std::max(0.0, r.discriminant));
    r.sigma1 = 0.5 * tr + 0.5 * root;
    r.sigma2 = 0.5 * tr - 0.5 * root;
    r.varsigma = -d * r.s;
    return r;
}

Hyperbolicity hyperbolicity_coeffs(double Lambda2, double C, double Theta1) {
    if (!(Lambda2 > 0.0) || !(C > 0.0) || !(Theta1 >= 0.0)) fail("InvalidInput", "need Lambda2, C > 0 and Theta1 >= 0");
    Hyperbolicity h;
    h.a = 5.0 * Lambda2 * Lambda2 * C - (C + Theta1) * (C + Theta1) * (4.0 * C + Theta1);
    h.b = C - Theta1;
    h.hyperbolic = h.a * h.b < 0.0;
    return h;
}

DalembertReport dalembert_filter(const TaylorSeries& series, double tol) {
    DalembertReport r;
    for (const auto& [k, c] : series) r.scale = std::max(r.scale, std::abs(c));
    for (const auto& [k, c] : series) {
        int sa = 0, sb = 0;
        for (int e : k.first) sa += e;
        for (int e : k.second) sb += e;
        if (sa == sb)
            r.kept[k] = c;
        else if (std::abs(c) > tol * r.scale)
            r.violations.push_back(k);
    }
    return r;
}

TaylorSeries rpspi_quadratic_series(const std::vector<double>& Lambda, const MassSystem& ms, const QuadratureSpec& quad,
                                    double fd_step) {
    if (Lambda.size() != 2 || ms.n() != 2) fail("Unsupported", "rpspi is defined for n = 2 only");
    // rpspi layout: Lambda1, Lambda2, eta1, eta2, p, P | lambda1, lambda2, xi1, xi2, q, Q
    std::vector<double> base(12, 0.0);
    base[0] = Lambda[0];
    base[1] = Lambda[1];
    const std::vector<int> z = {2, 3, 4, 5, 8, 9, 10, 11};  // eta1 eta2 p P xi1 xi2 q Q
    auto f = [&](const std::vector<double>& v) { return average_perturbation("rpspi", v, quad, ms); };
    const Stencil st = central_stencil(f, base, z, fd_step);

    // z = L w with w = (t1, t2, t3, T, t1*, t2*, t3*, T*)
    const double s = 1.0 / std::sqrt(2.0);
    const cplx i(0.0, 1.0);
    std::array<std::array<cplx, 8>, 8> L{};
    L[0][0] = -i * s; L[0][4] = s;      // eta1 = (-i t1 + t1*)/sqrt2
    L[1][1] = s;      L[1][5] = i * s;  // eta2 = (t2 + i t2*)/sqrt2
    L[2][2] = -i * s; L[2][6] = s;      // p
    L[3][3] = s;      L[3][7] = i * s;  // P
    L[4][0] = -s;     L[4][4] = i * s;  // xi1 = (i t1* - t1)/sqrt2
    L[5][1] = i * s;  L[5][5] = s;      // xi2 = (t2* + i t2)/sqrt2
    L[6][2] = -s;     L[6][6] = i * s;  // q
    L[7][3] = i * s;  L[7][7] = s;      // Q

    auto key = [](std::initializer_list<int> w) {
        MultiIndex k{std::vector<int>(4, 0), std::vector<int>(4, 0)};
        for (int a : w) (a < 4 ? k.first[a] : k.second[a - 4]) += 1;
        return k;
    };
    TaylorSeries out;
    out[key({})] = st.value;
    for (int a = 0; a < 8; ++a) {
        cplx g = 0.0;
        for (int r = 0; r < 8; ++r) g += st.gradient[r] * L[r][a];
        out[key({a})] = g;
    }
    for (int a = 0; a < 8; ++a)
        for (int b = a; b < 8; ++b) {
            cplx h = 0.0;
            for (int r = 0; r < 8; ++r)
                for (int c = 0; c < 8; ++c) h += L[r][a] * st.hessian(r, c) * L[c][b];
            out[key({a, b})] = a == b ? 0.5 * h : h;
        }
    return out;
}

}  // namespace planetary
