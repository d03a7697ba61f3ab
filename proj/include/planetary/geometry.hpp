#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <vector>

namespace planetary {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
    double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator-() const { return {-x, -y, -z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
    Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
    bool operator==(const Vec3&) const = default;
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }
inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }
Vec3 unit(const Vec3& v);

inline const Vec3 kE1{1, 0, 0};
inline const Vec3 kE2{0, 1, 0};
inline const Vec3 kE3{0, 0, 1};

struct Mat3 {
    std::array<std::array<double, 3>, 3> m{};

    static Mat3 identity();
    Vec3 operator*(const Vec3& v) const;
    Mat3 operator*(const Mat3& o) const;
    Mat3 transpose() const;
    double det() const;
};

// Rotation about the first axis, [[1,0,0],[0,c,-s],[0,s,c]].
Mat3 rot1(double angle);
// Rotation about the third axis, [[c,-s,0],[s,c,0],[0,0,1]].
Mat3 rot3(double angle);
// Rotation by `angle` about the unit vector `axis` (right-hand rule).
Vec3 rotate_about(const Vec3& v, const Vec3& axis, double angle);

double wrap_angle(double a);                  // into [0, 2pi)
double angle_distance(double a, double b);    // min(|d|, 2pi-|d|) of the wrapped difference

// Positively oriented angle from u to v about w, in [0, 2pi).
double oriented_angle(const Vec3& u, const Vec3& v, const Vec3& w);

// Dense row-major matrix, enough for Jacobians and small symmetric problems.
struct Matrix {
    int rows = 0, cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(int r, int c, double fill = 0.0) : rows(r), cols(c), data(std::size_t(r) * c, fill) {}
    double& operator()(int i, int j) { return data[std::size_t(i) * cols + j]; }
    double operator()(int i, int j) const { return data[std::size_t(i) * cols + j]; }
    static Matrix identity(int n);
    Matrix transpose() const;
    Matrix operator*(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    double max_abs() const;
};

using VectorMap = std::function<std::vector<double>(const std::vector<double>&)>;

// Central-difference Jacobian with per-coordinate step h_j = step * max(1, |p_j|).
Matrix fd_jacobian(const VectorMap& map, const std::vector<double>& point, double step = 1e-5);

// Eigenvalues of a symmetric matrix, ascending. Closed form for n <= 2,
// cyclic Jacobi otherwise.
std::vector<double> symmetric_eigenvalues(const Matrix& a);

}  // namespace planetary
