#ifndef SIXPOW_CURVE_LOCAL_HPP
#define SIXPOW_CURVE_LOCAL_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sixpow/arith.hpp"

namespace sixpow {

/// The plane curve x^6 + y^6 = k z^6 for a positive sixth-power-free k.
struct SexticCurve {
    uint64_t k;
    explicit SexticCurve(uint64_t k_) : k(k_) {
        if (k == 0 || !sixth_power_split(k).is_free)
            throw std::invalid_argument("SexticCurve: k must be positive and sixth-power-free");
    }
};

// ---------------------------------------------------------------------------
// sums of two sixth powers modulo p
// ---------------------------------------------------------------------------

/// Characteristic set of { a^6 + b^6 mod p : a, b in F_p }.
struct SumsetCache {
    uint64_t p;
    std::vector<bool> bits;  // bits[r] <=> r is a sum of two sixth powers mod p
    bool contains(uint64_t r) const { return bits[r % p]; }
};

SumsetCache sumset_mod_p(uint64_t p);

// ---------------------------------------------------------------------------
// local solvability
// ---------------------------------------------------------------------------

enum class LocalReason {
    Passes,
    NotSixthPowerFree,
    BadPrime3Mod4,   // an odd prime factor p = 3 (mod 4) divides k
    FailsModP,       // no F_p point pattern at detail_p (2, 3, 7 or a sumset prime)
    IntegerSum,      // k = a^6 + b^6 over Z; solvable but outside the pipeline
};

struct LocalCertificate {
    uint64_t k = 0;
    bool locally_solvable = false;
    LocalReason reason = LocalReason::Passes;
    uint64_t detail_p = 0;           // set for BadPrime3Mod4 / FailsModP
    uint64_t sum_a = 0, sum_b = 0;   // set for IntegerSum
};

/// Full classification; never throws on valid k >= 1.
LocalCertificate classify_local(uint64_t k);

/// Finite criterion for C_k(Q_p) != 0 at every place.  Requires k
/// sixth-power-free (throws std::invalid_argument otherwise).
LocalCertificate is_locally_solvable(uint64_t k);

/// Decides C_k(Q_p) != 0 by enumerating residues modulo powers of p and
/// Hensel-lifting nonsingular points.  Independent of the criterion above;
/// intended for p <= 400 or p | 6k.
bool qp_solvable_oracle(uint64_t k, uint64_t p);

/// (a, b) with a^6 + b^6 = k and a >= b >= 0, if such integers exist.
std::optional<std::pair<uint64_t, uint64_t>> is_sum_of_two_integer_sixth_powers(uint64_t k);

/// Sorted k < bound that are sixth-power-free, not sums of two integer sixth
/// powers, and locally solvable.  Scans only the eight residue classes modulo
/// 504 = 7*8*9 compatible with the mod-7/8/9 constraints.
std::vector<uint64_t> enumerate_locally_solvable(uint64_t bound, int threads = 1);

/// The eight admissible residues modulo 504, ascending.
const std::vector<uint64_t>& admissible_classes_mod_504();

// ---------------------------------------------------------------------------
// k-list files: one decimal integer per line, ascending, newline-terminated
// ---------------------------------------------------------------------------

void write_klist(std::ostream& os, const std::vector<uint64_t>& ks);
std::vector<uint64_t> read_klist(std::istream& is);
void write_klist_file(const std::string& path, const std::vector<uint64_t>& ks);
std::vector<uint64_t> read_klist_file(const std::string& path);

}  // namespace sixpow

#endif
