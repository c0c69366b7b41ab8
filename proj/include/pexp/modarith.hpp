#pragma once

// Modular and 2-adic arithmetic primitives used throughout pexp.
//
// Everything here works on 64-bit unsigned values; products go through
// unsigned __int128 so no intermediate result wraps.

#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pexp {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

/// A residue class r mod m with 0 <= r < m.
class ResidueClass {
public:
    ResidueClass(u64 residue, u64 modulus) : residue_(0), modulus_(modulus)
    {
        if (modulus == 0)
            throw std::invalid_argument("ResidueClass: modulus must be positive");
        residue_ = residue % modulus;
    }

    u64 residue() const { return residue_; }
    u64 modulus() const { return modulus_; }

    bool contains(u64 n) const { return n % modulus_ == residue_; }

    friend bool operator==(const ResidueClass&, const ResidueClass&) = default;

private:
    u64 residue_;
    u64 modulus_;
};

inline u64 mul_mod(u64 a, u64 b, u64 m)
{
    return static_cast<u64>(static_cast<u128>(a) * b % m);
}

inline u64 pow_mod(u64 base, u64 exponent, u64 modulus)
{
    if (modulus == 0)
        throw std::invalid_argument("pow_mod: modulus must be positive");
    if (modulus == 1)
        return 0;
    u64 result = 1;
    base %= modulus;
    while (exponent > 0) {
        if (exponent & 1)
            result = mul_mod(result, base, modulus);
        base = mul_mod(base, base, modulus);
        exponent >>= 1;
    }
    return result;
}

/// 2-adic valuation: the largest t with 2^t | n.
inline unsigned v2(u64 n)
{
    if (n == 0)
        throw std::invalid_argument("v2: n must be positive");
    return static_cast<unsigned>(__builtin_ctzll(n));
}

inline u64 lcm_checked(u64 a, u64 b)
{
    const u64 g = std::gcd(a, b);
    const u128 l = static_cast<u128>(a / g) * b;
    if (l > UINT64_MAX)
        throw std::overflow_error("lcm overflows 64 bits");
    return static_cast<u64>(l);
}

/// Trial-division factorisation into (prime, exponent) pairs, ascending.
inline std::vector<std::pair<u64, unsigned>> factorize(u64 n)
{
    std::vector<std::pair<u64, unsigned>> out;
    for (u64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p)
            continue;
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    if (n > 1)
        out.emplace_back(n, 1);
    return out;
}

inline bool is_prime(u64 n)
{
    if (n < 2)
        return false;
    if (n % 2 == 0)
        return n == 2;
    for (u64 d = 3; d * d <= n; d += 2)
        if (n % d == 0)
            return false;
    return true;
}

/// Returns p when n = p^k for a prime p and k >= 1, otherwise nothing.
inline std::optional<u64> prime_power_base(u64 n)
{
    if (n < 2)
        return std::nullopt;
    auto f = factorize(n);
    if (f.size() != 1)
        return std::nullopt;
    return f.front().first;
}

/// Exponent of the unit group (Z/mZ)^*.
inline u64 carmichael_lambda(u64 m)
{
    if (m == 0)
        throw std::invalid_argument("carmichael_lambda: m must be positive");
    u64 result = 1;
    for (auto [p, e] : factorize(m)) {
        u64 part;
        if (p == 2) {
            part = e == 1 ? 1 : e == 2 ? 2 : (u64{1} << (e - 2));
        } else {
            part = p - 1;
            for (unsigned i = 1; i < e; ++i)
                part *= p;
        }
        result = lcm_checked(result, part);
    }
    return result;
}

/// Least t >= 1 with a^t == 1 (mod m). Requires gcd(a, m) = 1.
inline u64 multiplicative_order(u64 a, u64 m)
{
    if (m == 0)
        throw std::invalid_argument("multiplicative_order: m must be positive");
    if (std::gcd(a, m) != 1)
        throw std::invalid_argument("multiplicative_order: gcd(" + std::to_string(a) + ", " +
                                    std::to_string(m) + ") != 1");
    if (m == 1)
        return 1;
    u64 order = carmichael_lambda(m);
    for (auto [p, e] : factorize(order)) {
        (void)e;
        while (order % p == 0 && pow_mod(a, order / p, m) == 1)
            order /= p;
    }
    return order;
}

/// Extended Euclid on signed 128-bit values; returns (g, s) with s*a == g (mod b).
inline std::pair<__int128, __int128> ext_gcd(__int128 a, __int128 b)
{
    __int128 old_r = a, r = b, old_s = 1, s = 0;
    while (r != 0) {
        const __int128 q = old_r / r;
        std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
        std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
    }
    return {old_r, old_s};
}

/// The residue class mod lcm(m1, m2) congruent to both inputs, or nothing when
/// they disagree mod gcd(m1, m2).
inline std::optional<ResidueClass> crt_merge(const ResidueClass& r1, const ResidueClass& r2)
{
    const u64 m1 = r1.modulus(), m2 = r2.modulus();
    const u64 g = std::gcd(m1, m2);
    const u64 a1 = r1.residue(), a2 = r2.residue();
    if (a1 % g != a2 % g)
        return std::nullopt;
    const u64 l = lcm_checked(m1, m2);
    if (m1 % m2 == 0)
        return r1;
    if (m2 % m1 == 0)
        return r2;
    // x = a1 + m1 * t, with t = (a2 - a1)/g * inv(m1/g) mod (m2/g)
    const u64 m2g = m2 / g;
    auto [gg, inv] = ext_gcd(static_cast<__int128>(m1 / g), static_cast<__int128>(m2g));
    (void)gg;
    const __int128 m = m2g;
    const __int128 diff = (static_cast<__int128>(a2) - static_cast<__int128>(a1)) / static_cast<__int128>(g);
    const auto d = static_cast<u128>((diff % m + m) % m);
    const auto i = static_cast<u128>((inv % m + m) % m);
    const u128 t = d * i % static_cast<u128>(m);
    const u128 x = static_cast<u128>(a1) + static_cast<u128>(m1) * t;
    return ResidueClass(static_cast<u64>(x % l), l);
}

} // namespace pexp
