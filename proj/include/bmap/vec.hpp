#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace bmap {

// Dense n-dimensional vectors. Dimension is a runtime parameter everywhere,
// so these are thin helpers over std::vector<double>.
using Vec = std::vector<double>;

inline double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm(std::span<const double> v) {
    return std::sqrt(dot(v, v));
}

inline double distance(std::span<const double> a, std::span<const double> b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

// v / |v|; returns false (v untouched) when |v| is too small to divide by.
inline bool normalize(Vec& v, double min_norm = 1e-300) {
    double n = norm(v);
    if (!(n > min_norm)) return false;
    for (double& x : v) x /= n;
    return true;
}

inline void add_scaled(Vec& acc, std::span<const double> v, double s) {
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += s * v[i];
}

inline Vec sub(std::span<const double> a, std::span<const double> b) {
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

} // namespace bmap
