#include "planetary/geometry.hpp"

#include <algorithm>
#include <string>

#include "planetary/errors.hpp"

namespace planetary {

Vec3 unit(const Vec3& v) {
    const double n = norm(v);
    if (!(n > 0.0)) fail("GeometryError", "unit vector of a zero vector");
    return v / n;
}

Mat3 Mat3::identity() {
    Mat3 r;
    for (int i = 0; i < 3; ++i) r.m[i][i] = 1.0;
    return r;
}

Vec3 Mat3::operator*(const Vec3& v) const {
    return {m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
            m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
            m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z};
}

Mat3 Mat3::operator*(const Mat3& o) const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double s = 0.0;
            for (int k = 0; k < 3; ++k) s += m[i][k] * o.m[k][j];
            r.m[i][j] = s;
        }
    return r;
}

Mat3 Mat3::transpose() const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r.m[i][j] = m[j][i];
    return r;
}

double Mat3::det() const {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

static void require_finite(double a) {
    if (!std::isfinite(a)) fail("InvalidInput", "non-finite rotation angle");
}

Mat3 rot1(double angle) {
    require_finite(angle);
    const double c = std::cos(angle), s = std::sin(angle);
    Mat3 r;
    r.m = {{{1, 0, 0}, {0, c, -s}, {0, s, c}}};
    return r;
}

Mat3 rot3(double angle) {
    require_finite(angle);
    const double c = std::cos(angle), s = std::sin(angle);
    Mat3 r;
    r.m = {{{c, -s, 0}, {s, c, 0}, {0, 0, 1}}};
    return r;
}

Vec3 rotate_about(const Vec3& v, const Vec3& axis, double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    return v * c + cross(axis, v) * s + axis * (dot(axis, v) * (1.0 - c));
}

double wrap_angle(double a) {
    double r = std::fmod(a, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    if (r >= kTwoPi) r = 0.0;
    return r;
}

double angle_distance(double a, double b) {
    const double d = wrap_angle(a - b);
    return std::min(d, kTwoPi - d);
}

double oriented_angle(const Vec3& u, const Vec3& v, const Vec3& w) {
    const double nu = norm(u), nv = norm(v), nw = norm(w);
    if (!(nu > 0.0) || !(nv > 0.0) || !(nw > 0.0))
        fail("GeometryError", "oriented angle with a zero vector");
    const double tol = 1e-9;
    if (std::abs(dot(u, w)) > tol * nu * nw || std::abs(dot(v, w)) > tol * nv * nw)
        fail("GeometryError", "oriented angle arguments not orthogonal to the axis");
    const double s = dot(cross(u, v), w) / nw;
    const double c = dot(u, v);
    return wrap_angle(std::atan2(s, c));
}

Matrix Matrix::identity(int n) {
    Matrix r(n, n);
    for (int i = 0; i < n; ++i) r(i, i) = 1.0;
    return r;
}

Matrix Matrix::transpose() const {
    Matrix r(cols, rows);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) r(j, i) = (*this)(i, j);
    return r;
}

Matrix Matrix::operator*(const Matrix& o) const {
    Matrix r(rows, o.cols);
    for (int i = 0; i < rows; ++i)
        for (int k = 0; k < cols; ++k) {
            const double a = (*this)(i, k);
            if (a == 0.0) continue;
            for (int j = 0; j < o.cols; ++j) r(i, j) += a * o(k, j);
        }
    return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
    Matrix r = *this;
    for (std::size_t i = 0; i < data.size(); ++i) r.data[i] -= o.data[i];
    return r;
}

double Matrix::max_abs() const {
    double m = 0.0;
    for (double v : data) m = std::max(m, std::abs(v));
    return m;
}

Matrix fd_jacobian(const VectorMap& map, const std::vector<double>& point, double step) {
    const int n = int(point.size());
    Matrix jac;
    std::vector<double> p = point;
    for (int j = 0; j < n; ++j) {
        const double h = step * std::max(1.0, std::abs(point[j]));
        std::vector<double> fp, fm;
        const double up = point[j] + h, down = point[j] - h;
        try {
            p[j] = up;
            fp = map(p);
            p[j] = down;
            fm = map(p);
        } catch (const Error& e) {
            fail("EvaluationError", "map failed at coordinate " + std::to_string(j) +
                                        " offset +-" + std::to_string(h) + " (" + e.what() + ")");
        }
        p[j] = point[j];
        if (j == 0) jac = Matrix(int(fp.size()), n);
        for (int i = 0; i < jac.rows; ++i) jac(i, j) = (fp[i] - fm[i]) / (up - down);  // the step actually taken
    }
    return jac;
}

std::vector<double> symmetric_eigenvalues(const Matrix& a) {
    const int n = a.rows;
    std::vector<double> ev;
    if (n == 1) {
        ev = {a(0, 0)};
    } else if (n == 2) {
        const double tr = a(0, 0) + a(1, 1);
        const double d = a(0, 0) - a(1, 1);
        const double off = 0.5 * (a(0, 1) + a(1, 0));
        const double r = std::hypot(d, 2.0 * off);
        // the smaller-magnitude root from the product avoids cancellation
        const double big = tr >= 0 ? 0.5 * (tr + r) : 0.5 * (tr - r);
        const double det = a(0, 0) * a(1, 1) - off * off;
        const double small = big != 0.0 ? det / big : 0.0;
        ev = {big, small};
    } else {
        Matrix m = a;
        for (int sweep = 0; sweep < 100; ++sweep) {
            double off = 0.0, scale = 0.0;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    if (i != j) off += m(i, j) * m(i, j);
                    scale += m(i, j) * m(i, j);
                }
            if (std::sqrt(off) <= 1e-12 * std::sqrt(scale) || off == 0.0) break;
            for (int p = 0; p < n - 1; ++p)
                for (int q = p + 1; q < n; ++q) {
                    if (m(p, q) == 0.0) continue;
                    const double theta = (m(q, q) - m(p, p)) / (2.0 * m(p, q));
                    const double t = (theta >= 0 ? 1.0 : -1.0) /
                                     (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                    const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
                    for (int k = 0; k < n; ++k) {
                        const double mkp = m(k, p), mkq = m(k, q);
                        m(k, p) = c * mkp - s * mkq;
                        m(k, q) = s * mkp + c * mkq;
                    }
                    for (int k = 0; k < n; ++k) {
                        const double mpk = m(p, k), mqk = m(q, k);
                        m(p, k) = c * mpk - s * mqk;
                        m(q, k) = s * mpk + c * mqk;
                    }
                }
        }
        for (int i = 0; i < n; ++i) ev.push_back(m(i, i));
    }
    std::sort(ev.begin(), ev.end());
    return ev;
}

}  // namespace planetary
