#pragma once

// Explaining survivors.
//
// Some (b, case, z2) keep a candidate forever because the residue system has
// an exact solution with y1 = 0:
//
//     2^x1 + b^0 = c0,   2^x2 + b^y2 = c0^z2
//
// e.g. b = 61: 2^2 + 1 = 5 and 2^6 + 61 = 5^3. Such a point satisfies every
// congruence modulo any q prime to 2b, so no sieve modulus removes it, but it
// is not a solution in positive exponents.

#include <optional>
#include <string>

#include "pexp/enumerate.hpp"
#include "pexp/sieve.hpp"

namespace pexp {

struct ExponentZeroIdentity {
    u64 x1, x2, y2, c0;
};

inline std::string describe(const ExponentZeroIdentity& id, u64 b, u64 z2)
{
    return "2^" + std::to_string(id.x1) + " + " + std::to_string(b) + "^0 = " + std::to_string(id.c0) + ", 2^" +
           std::to_string(id.x2) + " + " + std::to_string(b) + "^" + std::to_string(id.y2) + " = " +
           std::to_string(id.c0) + "^" + std::to_string(z2);
}

/// Searches x1, x2 <= exponent_bound for an exponent-zero identity whose
/// residue tuple is still in `survivors`.
inline std::optional<ExponentZeroIdentity> find_exponent_zero_identity(u64 b, const CaseSplit& cs, u64 z2,
                                                                       const CandidateSet& survivors,
                                                                       u64 exponent_bound)
{
    if (survivors.empty())
        return std::nullopt;
    for (u64 x1 = 2; x1 <= std::min<u64>(exponent_bound, 62); x1 += 2) {
        if (cs.forced_x1() && x1 != *cs.forced_x1())
            continue;
        const u64 c0 = (u64{1} << x1) + 1;
        const BigInt target = boost::multiprecision::pow(BigInt(c0), static_cast<unsigned>(z2));
        BigInt bp = b;
        for (u64 y2 = 1; bp < target; y2 += 2, bp *= BigInt(b) * b) {
            const BigInt d = target - bp;
            if (d <= 0 || (d & (d - 1)) != 0)
                continue;
            const u64 x2 = boost::multiprecision::msb(d);
            if (x2 % 2 != 0 || x2 == 0 || x2 > exponent_bound)
                continue;
            if (cs.forced_x2() && x2 != *cs.forced_x2())
                continue;
            Tuple t{};
            unsigned k = 0;
            if (!cs.forced_x1())
                t[k++] = x1;
            t[k++] = 0;
            if (!cs.forced_x2())
                t[k++] = x2;
            t[k++] = y2;
            if (survivors.contains(t))
                return ExponentZeroIdentity{x1, x2, y2, c0};
        }
    }
    return std::nullopt;
}

} // namespace pexp
