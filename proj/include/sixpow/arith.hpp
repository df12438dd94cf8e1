#ifndef SIXPOW_ARITH_HPP
#define SIXPOW_ARITH_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace sixpow {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

/// Thrown when an internal soundness invariant is violated.  The CLI maps
/// this to exit code 2 (everything user-facing maps to exit code 1).
struct internal_error : std::logic_error {
    using std::logic_error::logic_error;
};

// ---------------------------------------------------------------------------
// machine-word modular arithmetic
// ---------------------------------------------------------------------------

inline uint64_t mul_mod(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

uint64_t pow_mod(uint64_t a, uint64_t e, uint64_t m);

/// Inverse of a modulo m; requires gcd(a, m) = 1.
uint64_t inv_mod(uint64_t a, uint64_t m);

/// Nonnegative residue of v modulo m, as a machine word.
uint64_t mod_u64(const BigInt& v, uint64_t m);

// ---------------------------------------------------------------------------
// primality and factorization
// ---------------------------------------------------------------------------

bool is_prime(uint64_t n);

/// Deterministic below 3.3e24 (fixed Miller-Rabin base set); inputs in this
/// project stay far below that bound.
bool is_prime(const BigInt& n);

std::vector<uint32_t> primes_up_to(uint32_t limit);

/// (prime, exponent) pairs, ascending.  Trial division by primes up to 1e7,
/// then a primality check on the cofactor; throws internal_error if the
/// cofactor is a large composite (never the case for the sizes used here).
std::vector<std::pair<uint64_t, int>> factorize(uint64_t n);

/// Least n >= 1 with a^n = 1 (mod m).  Requires gcd(a, m) = 1.
uint64_t multiplicative_order(uint64_t a, uint64_t m);

struct SixthPowerSplit {
    bool is_free;    // true iff no p^6 divides k
    uint64_t core;   // k0 sixth-power-free
    uint64_t root;   // m with k = k0 * m^6
};
SixthPowerSplit sixth_power_split(uint64_t k);

/// k / m^2 with the square part m^2 maximal; the result is squarefree.
uint64_t squarefree_part(uint64_t k);

// ---------------------------------------------------------------------------
// big-integer roots and powers
// ---------------------------------------------------------------------------

BigInt ipow(BigInt base, unsigned e);
BigInt isqrt_floor(const BigInt& n);
std::optional<BigInt> exact_sqrt(const BigInt& n);

/// Floor of the r-th root of n >= 0.
BigInt iroot_floor(const BigInt& n, unsigned r);

/// Exact r-th root if one exists; negative n allowed for odd r.
std::optional<BigInt> exact_root(const BigInt& n, unsigned r);

// ---------------------------------------------------------------------------
// rank-2 lattice reduction
// ---------------------------------------------------------------------------

struct Vec2 {
    BigInt x, y;
    bool operator==(const Vec2&) const = default;
};

/// The lattice { (x, y) in Z^2 : y = q*x (mod m6) }; any basis has
/// determinant +-m6.
struct Lattice2D {
    BigInt m6;   // modulus, >= 1
    BigInt q;    // multiplier
};

/// Lagrange-Gauss reduced basis: |v1| <= |v2| <= |v2 +- v1| in the Euclidean
/// norm, v1 a shortest nonzero vector.  Output is canonicalized (signs
/// normalized, ties broken lexicographically) so results are reproducible.
std::pair<Vec2, Vec2> lagrange_reduce(const Lattice2D& lat);

}  // namespace sixpow

#endif
