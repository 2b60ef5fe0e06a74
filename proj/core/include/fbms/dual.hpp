#pragma once

#include <cmath>

namespace fbms::detail {

/// Forward-mode scalar with one derivative slot. Nest (Dual<Dual<double>>)
/// for exact second partials.
template <class T>
struct Dual {
    T val{};
    T dot{};

    Dual() = default;
    Dual(T v) : val(v) {}
    Dual(T v, T d) : val(v), dot(d) {}

    friend Dual operator+(const Dual& a, const Dual& b) {
        return {a.val + b.val, a.dot + b.dot};
    }
    friend Dual operator-(const Dual& a, const Dual& b) {
        return {a.val - b.val, a.dot - b.dot};
    }
    friend Dual operator-(const Dual& a) { return {-a.val, -a.dot}; }
    friend Dual operator*(const Dual& a, const Dual& b) {
        return {a.val * b.val, a.dot * b.val + a.val * b.dot};
    }
    friend Dual operator/(const Dual& a, const Dual& b) {
        const T q = a.val / b.val;
        return {q, (a.dot - q * b.dot) / b.val};
    }
};

template <class T>
Dual<T> sqrt(const Dual<T>& a) {
    using std::sqrt;
    const T r = sqrt(a.val);
    return {r, a.dot / (r + r)};
}

using std::sqrt;

}  // namespace fbms::detail
