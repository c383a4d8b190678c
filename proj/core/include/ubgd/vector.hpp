#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace ubgd {

// Point / gradient in R^k. Dimension is fixed per run; entries are expected
// to stay finite, which the drivers and the CLI check at their boundaries.
using Vector = std::vector<double>;

inline bool all_finite(const Vector& v) {
    for (double c : v) {
        if (!std::isfinite(c)) return false;
    }
    return true;
}

inline double squared_norm(const Vector& v) {
    double s = 0.0;
    for (double c : v) s += c * c;
    return s;
}

// Euclidean norm; >= 0, and 0 only for the zero vector.
inline double norm(const Vector& v) {
    return std::sqrt(squared_norm(v));
}

// s * v
inline Vector scaled(double s, const Vector& v) {
    Vector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = s * v[i];
    return out;
}

// a - b
inline Vector minus(const Vector& a, const Vector& b) {
    Vector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

inline double distance(const Vector& a, const Vector& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

}  // namespace ubgd
