#pragma once

// Class numbers of imaginary quadratic discriminants, by two independent
// routes: counting reduced forms, and the finite Dirichlet character sum.

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "pexp/modarith.hpp"

namespace pexp {

using i64 = std::int64_t;

class Discriminant {
public:
    explicit Discriminant(i64 value) : value_(value)
    {
        const i64 r = ((value % 4) + 4) % 4;
        if (value >= 0 || (r != 0 && r != 1))
            throw std::invalid_argument("not a negative discriminant: " + std::to_string(value));
    }

    i64 value() const { return value_; }
    u64 abs() const { return static_cast<u64>(-value_); }

    bool is_fundamental() const
    {
        const i64 r = ((value_ % 4) + 4) % 4;
        if (r == 1)
            return squarefree(abs());
        // value = 4m with m == 2, 3 mod 4, m squarefree
        const i64 m = value_ / 4;
        const i64 mr = ((m % 4) + 4) % 4;
        return (mr == 2 || mr == 3) && squarefree(static_cast<u64>(-m));
    }

private:
    static bool squarefree(u64 n)
    {
        for (auto [p, e] : factorize(n)) {
            (void)p;
            if (e > 1)
                return false;
        }
        return true;
    }

    i64 value_;
};

struct QuadraticForm {
    i64 a, b, c;
    friend bool operator==(const QuadraticForm&, const QuadraticForm&) = default;
};

/// Boundary convention for |B| = A or A = C. The standard choice keeps B >= 0;
/// the mirrored one keeps B <= 0. Both select exactly one form per class.
enum class BoundaryConvention { NonNegative, NonPositive };

/// Reduced primitive forms (A, B, C) of discriminant d: |B| <= A <= C.
inline std::vector<QuadraticForm> reduced_forms(const Discriminant& d,
                                                BoundaryConvention conv = BoundaryConvention::NonNegative)
{
    const i64 D = d.value();
    const i64 n = -D;
    std::vector<QuadraticForm> forms;
    // 3A^2 <= |D| for reduced forms
    for (i64 a = 1; 3 * a * a <= n; ++a) {
        for (i64 b = -a + 1; b <= a; ++b) {
            if (((b - D) & 1) != 0)
                continue;
            const i64 num = b * b - D;
            if (num % (4 * a) != 0)
                continue;
            const i64 c = num / (4 * a);
            if (c < a)
                continue;
            i64 bb = b;
            if (conv == BoundaryConvention::NonPositive) {
                // mirror B: |B| = A boundary moves to B = -A
                bb = -b;
            }
            if (a == c && ((conv == BoundaryConvention::NonNegative && bb < 0) ||
                           (conv == BoundaryConvention::NonPositive && bb > 0)))
                continue;
            if (std::gcd(std::gcd(a, b < 0 ? -b : b), c) != 1)
                continue;
            forms.push_back({a, bb, c});
        }
    }
    return forms;
}

inline u64 class_number_forms(const Discriminant& d)
{
    return reduced_forms(d).size();
}

/// Kronecker symbol (a/n) for n >= 1.
inline int kronecker(i64 a, u64 n)
{
    if (n == 0)
        return (a == 1 || a == -1) ? 1 : 0;
    int result = 1;
    while (n % 2 == 0) {
        n /= 2;
        const i64 r = ((a % 8) + 8) % 8;
        if (r == 0 || r == 2 || r == 4 || r == 6)
            return 0;
        if (r == 3 || r == 5)
            result = -result;
    }
    // Jacobi symbol (a/n), n odd
    i64 aa = a % static_cast<i64>(n);
    if (aa < 0)
        aa += static_cast<i64>(n);
    u64 x = static_cast<u64>(aa);
    while (x != 0) {
        while (x % 2 == 0) {
            x /= 2;
            if (n % 8 == 3 || n % 8 == 5)
                result = -result;
        }
        std::swap(x, n);
        if (x % 4 == 3 && n % 4 == 3)
            result = -result;
        x %= n;
    }
    return n == 1 ? result : 0;
}

/// h(d) = -(w / 2|d|) * sum_{k=1}^{|d|} (d/k) k, fundamental d only.
inline u64 class_number_analytic(const Discriminant& d)
{
    if (!d.is_fundamental())
        throw std::invalid_argument("class_number_analytic: " + std::to_string(d.value()) +
                                    " is not fundamental");
    const u64 n = d.abs();
    const i64 w = n == 3 ? 6 : n == 4 ? 4 : 2;
    __int128 sum = 0;
    for (u64 k = 1; k < n; ++k)
        sum += static_cast<__int128>(kronecker(d.value(), k)) * static_cast<__int128>(k);
    const __int128 num = -sum * w;
    const __int128 den = 2 * static_cast<__int128>(n);
    if (num <= 0 || num % den != 0)
        throw std::logic_error("class_number_analytic: character sum not divisible");
    return static_cast<u64>(num / den);
}

/// Odd divisors > 1 of h(-4b), ascending.
inline std::vector<u64> z2_candidates(u64 b)
{
    if (b % 2 == 0 || !is_prime(b))
        throw std::invalid_argument("z2_candidates: b must be an odd prime, got " + std::to_string(b));
    if (b % 4 != 1)
        throw std::invalid_argument("z2_candidates: b must be 1 mod 4, got " + std::to_string(b));
    u64 h = class_number_forms(Discriminant(-4 * static_cast<i64>(b)));
    while (h % 2 == 0)
        h /= 2;
    std::vector<u64> out;
    for (u64 k = 3; k <= h; k += 2)
        if (h % k == 0)
            out.push_back(k);
    return out;
}

} // namespace pexp
