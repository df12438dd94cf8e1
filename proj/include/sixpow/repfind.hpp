#ifndef SIXPOW_REPFIND_HPP
#define SIXPOW_REPFIND_HPP

#include <cstdint>
#include <vector>

#include "sixpow/arith.hpp"

namespace sixpow {

/// k = (a/m)^6 + (b/m)^6 with 0 < a <= b and gcd(a, m) = gcd(b, m) = 1.
struct Representation {
    BigInt k;
    BigInt a, b;
    uint64_t m;
    bool operator==(const Representation&) const = default;
};

/// Rational (non-integer) representations with denominator m: for every q
/// with q^6 = -1 (mod m^6) -- the elements of order 4 or 12 -- reduce the
/// lattice y = q x (mod m^6) and evaluate short vectors.  Requires every
/// prime factor of m to be 1 (mod 4); m = 1 yields nothing (integer
/// representations are excluded).  Sorted by k.
std::vector<Representation> find_representation(uint64_t m);

struct FamilyWitness {
    int64_t t;
    BigInt k;
};

struct FamilyResult {
    bool all_ok;             // every t in range: integral, positive, = 5 (mod 13)
    bool coefficient_claim;  // t^1..t^6 coefficients divisible by 13, constant = 5
    bool five_not_a_sum_mod_13;
    std::vector<FamilyWitness> witnesses;  // |t| <= 2 samples
};

/// f1 = (2863 + 10764 t)/13, f2 = (1207 + 26455 t)/13: f1^6 + f2^6 is a
/// positive integer = 5 (mod 13) for every integer t, hence never a sum of
/// two integer sixth powers.
FamilyResult verify_family(int64_t t_lo, int64_t t_hi);

struct OddPowerRep {
    unsigned n;
    BigRat x, y;  // halves pair
    BigInt k;     // x^n + y^n, an integer
};

/// x = (2^(n-1) - 1)/2, y = (2^(n-1) + 1)/2 for odd n >= 3.
OddPowerRep odd_power_rep(unsigned n);

/// Exact check of k = (a/m)^6 + (b/m)^6.
bool verify_rep(const BigInt& k, const BigInt& a, const BigInt& b, const BigInt& m);

}  // namespace sixpow

#endif
