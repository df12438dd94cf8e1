#ifndef SIXPOW_MAPS_HPP
#define SIXPOW_MAPS_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "sixpow/elliptic.hpp"
#include "sixpow/poly.hpp"

namespace sixpow {

/// Raised when every patch of a map vanishes at a curve point.  Sieve callers
/// treat this conservatively (skip the prime); it indicates no sound image
/// set can be produced for that (k, p, map).
struct patch_coverage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// One of the ten morphisms C_k -> E_a, stored as projective coordinate
/// patches: homogeneous polynomial triples in (x, y, z) with k-dependent
/// coefficients.  All patches agree on the curve wherever they are defined.
struct CurveMapSpec {
    int index;               // 1..10
    std::string subgroup;    // automorphism subgroup the map quotients by
    CurveTag tag;            // codomain E_a with a = curve_param(tag, k)
    std::vector<std::array<Poly, 3>> patches;
};

/// The ten maps, index 1..10.  Patch 0 is the defining formula; the extra
/// patches are the formula multiplied through by x^6 (and y^6 for map 10)
/// and reduced modulo the curve equation.
const std::vector<CurveMapSpec>& builtin_maps();
const CurveMapSpec& builtin_map(int index);

/// Weierstrass identity Y^2 Z = X^3 + a(k) Z^3 modulo (x^6 + y^6 - k z^6),
/// with k symbolic, for every patch.
bool verify_map_symbolic(const CurveMapSpec& spec);

// ---------------------------------------------------------------------------
// evaluation
// ---------------------------------------------------------------------------

/// Projective point of C_k over Q with integer coordinates.
struct CkPointQ {
    BigInt x, y, z;
};

/// Projective point of C_k over F_p, normalized: z = 1, or (z, y) = (0, 1).
struct CkPointFp {
    uint64_t x = 0, y = 0, z = 1;
    bool operator==(const CkPointFp&) const = default;
};

ECPointQ eval_map_q(const CurveMapSpec& spec, uint64_t k, const CkPointQ& P);
ECPointFp eval_map_fp(const CurveMapSpec& spec, uint64_t k, uint64_t p, const CkPointFp& P);

/// Exhaustive projective enumeration of C_k(F_p): affine scan plus the z = 0
/// line.
std::vector<CkPointFp> curve_points_fp(uint64_t k, uint64_t p);

/// phi(C_k(F_p)) as a deduplicated point list, ascending by encoding.
/// Requires p not dividing 6k.
std::vector<ECPointFp> image_set_fp(uint64_t k, uint64_t p, int map_index);

/// Rank-zero implication gate: the torsion-image theorem leaves only
/// k in {1, 2}, so for any other sixth-power-free k a rank-zero codomain
/// forces C_k(Q) to be empty.
bool torsion_image_excludes(uint64_t k);

}  // namespace sixpow

#endif
