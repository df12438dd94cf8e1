#ifndef SIXPOW_MWSIEVE_HPP
#define SIXPOW_MWSIEVE_HPP

#include <array>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "sixpow/elliptic.hpp"
#include "sixpow/maps.hpp"

namespace sixpow {

/// Sieve configuration for one k: the map phi : C_k -> E_a, a finite-index
/// subgroup A of E_a(Q), the modulus ladder and the per-stage prime caps.
struct SieveConfig {
    uint64_t k = 0;
    int map_index = 0;
    MWSubgroup A;
    std::vector<int> ladder{2, 2, 3, 7};                    // N: 2, 4, 12, 84
    std::vector<uint64_t> stage_pmax{311, 311, 479, 1021};  // parallel to ladder
    uint64_t max_cosets = 50'000'000;
};

constexpr int kMaxSieveRank = 6;

/// One residue class of A/NA: generator exponents mod N plus a torsion index
/// mod gcd(N, |T|).
struct Coset {
    std::array<uint16_t, kMaxSieveRank> n{};
    uint16_t t = 0;
    bool operator==(const Coset&) const = default;
    bool operator<(const Coset& o) const {
        if (n != o.n) return n < o.n;
        return t < o.t;
    }
};

struct SieveEvent {
    uint64_t N, p, before, after;
};

struct SieveState {
    uint64_t N = 1;
    uint64_t torsion_mod = 1;  // gcd(N, |T|)
    std::vector<Coset> admissible;
    std::vector<uint64_t> consumed;  // primes filtered, in order, across stages
    std::vector<uint64_t> skipped;   // usable-but-excluded primes (patch failure)
    std::vector<SieveEvent> log;
};

enum class SieveVerdict { Empty, Exhausted };

struct SaturationFlag {
    uint64_t ell;
    bool certified;
};

struct SieveResult {
    SieveVerdict verdict = SieveVerdict::Exhausted;
    SieveState state;
    uint64_t n_max = 1;
    uint64_t p_max = 0;
    std::vector<SaturationFlag> saturation;  // one per distinct ladder prime
};

/// All cosets of A/NA (the N = 1 state has the single zero coset).
SieveState make_initial_state(const SieveConfig& cfg, uint64_t N);

/// Replace state.admissible with the cosets whose reduction can meet the
/// image of C_k(F_p) modulo N*E(F_p); appends the event to the log.
/// Patch-coverage failures skip the prime (recorded), which only weakens the
/// sieve.
void admissible_at_prime(const SieveConfig& cfg, SieveState& state, uint64_t p);

/// The ladder: lift the admissible set one prime multiplier at a time,
/// filtering at good primes up to the stage cap.  "Empty" is returned only
/// when no admissible coset remains, proving C_k(Q) empty provided A is
/// l-saturated for all l | N (see SieveResult::saturation).
SieveResult run_sieve(const SieveConfig& cfg);

/// Transcript: `k N p before after` per event and a final verdict line
/// `k VERDICT {EMPTY|EXHAUSTED} Nmax pmax`; detail adds `#` comment lines
/// with the per-prime group shapes and image sets.
void write_transcript(std::ostream& os, const SieveConfig& cfg, const SieveResult& res,
                      bool detail = false);

}  // namespace sixpow

#endif
