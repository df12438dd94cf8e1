#ifndef SIXPOW_ELLIPTIC_HPP
#define SIXPOW_ELLIPTIC_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sixpow/arith.hpp"

namespace sixpow {

/// Mordell curve E_a : y^2 = x^3 + a (discriminant -432 a^2 != 0).
struct MordellCurve {
    BigInt a;
    explicit MordellCurve(BigInt a_) : a(std::move(a_)) {
        if (a == 0) throw std::invalid_argument("MordellCurve: a must be nonzero");
    }
    bool operator==(const MordellCurve&) const = default;
};

// ---------------------------------------------------------------------------
// points over Q: projective integer coordinates, gcd(X,Y,Z) = 1, Z >= 0,
// identity (0 : 1 : 0)
// ---------------------------------------------------------------------------

class ECPointQ {
  public:
    ECPointQ() : X_(0), Y_(1), Z_(0) {}  // identity
    static ECPointQ infinity() { return ECPointQ(); }
    static ECPointQ from_projective(BigInt X, BigInt Y, BigInt Z);
    static ECPointQ from_affine(const BigRat& x, const BigRat& y);

    bool is_infinity() const { return Z_ == 0; }
    const BigInt& X() const { return X_; }
    const BigInt& Y() const { return Y_; }
    const BigInt& Z() const { return Z_; }
    BigRat x() const;  // affine; throws on the identity
    BigRat y() const;

    bool operator==(const ECPointQ&) const = default;

  private:
    BigInt X_, Y_, Z_;
};

std::ostream& operator<<(std::ostream& os, const ECPointQ& P);

bool on_curve(const MordellCurve& E, const ECPointQ& P);
ECPointQ ec_neg(const ECPointQ& P);
ECPointQ ec_add(const MordellCurve& E, const ECPointQ& P, const ECPointQ& Q);
ECPointQ ec_mul(const MordellCurve& E, const BigInt& n, const ECPointQ& P);

// ---------------------------------------------------------------------------
// points over F_p
// ---------------------------------------------------------------------------

/// Reduction of E_a mod a prime of good reduction (p not dividing 6a).
struct CurveFp {
    uint64_t p;
    uint64_t a;  // a mod p, nonzero
};
CurveFp reduce_curve(const MordellCurve& E, uint64_t p);

struct ECPointFp {
    uint64_t x = 0, y = 0;
    bool inf = true;
    bool operator==(const ECPointFp&) const = default;
    /// injective encoding, usable as a hash/set key
    uint64_t key(uint64_t p) const { return inf ? ~0ull : x * p + y; }
};

bool fp_on_curve(const CurveFp& E, const ECPointFp& P);
ECPointFp fp_neg(const CurveFp& E, ECPointFp P);
ECPointFp fp_add(const CurveFp& E, const ECPointFp& P, const ECPointFp& Q);
ECPointFp fp_mul(const CurveFp& E, uint64_t n, const ECPointFp& P);

/// E(F_p) as an abstract abelian group: order n = d1 * d2 with d1 | d2,
/// d1 | p - 1, plus generators realizing the decomposition.
struct AbelianGroupFp {
    CurveFp curve;
    uint64_t order = 1;
    uint64_t d1 = 1, d2 = 1;
    std::optional<ECPointFp> g1;  // order d1; absent when d1 = 1
    std::optional<ECPointFp> g2;  // order d2; absent only for the trivial group
    std::vector<ECPointFp> points;  // identity first, then (x, y) ascending
};

/// Full enumeration; intended for p <= 1e5.
AbelianGroupFp group_structure_fp(const MordellCurve& E, uint64_t p);

/// Projective reduction mod p (good reduction required).  Total: points whose
/// coordinates have p in the denominator reduce to the identity.
ECPointFp reduce_point(const MordellCurve& E, const ECPointQ& P, uint64_t p);

// ---------------------------------------------------------------------------
// torsion
// ---------------------------------------------------------------------------

struct TorsionInfo {
    int order;  // 1, 2, 3 or 6
    std::optional<ECPointQ> gen;
};

/// E_a(Q)_tors by the shape of a: Z/6 for sixth powers, Z/3 for squares and
/// for -432 * sixth powers, Z/2 for cubes, trivial otherwise.
TorsionInfo torsion_structure(const BigInt& a);

// ---------------------------------------------------------------------------
// point search and subgroups
// ---------------------------------------------------------------------------

/// All points with x = u/v^2, |u| <= bound^2, 1 <= v <= bound (plus the
/// identity).  Both y-signs are listed.
std::vector<ECPointQ> naive_point_search(const BigInt& a, uint64_t height_bound);

/// A finite-index subgroup of E_a(Q): free generators plus the (known) torsion.
struct MWSubgroup {
    BigInt a;
    std::vector<ECPointQ> gens;
    TorsionInfo torsion{1, std::nullopt};
    std::vector<uint64_t> saturation_checked;  // primes l with certificates

    int rank() const { return static_cast<int>(gens.size()); }
};

MWSubgroup make_subgroup(const BigInt& a, std::vector<ECPointQ> gens);

/// Certifies that no nonzero coset of A/lA meets l*E(Q), by exhibiting for
/// each coset a good prime q with red_q(P) outside l*E(F_q).  true = index
/// [E(Q):A] is not divisible by l; false = inconclusive.
bool certify_nondivisibility(const MWSubgroup& A, uint64_t ell,
                             const std::vector<uint64_t>& trial_primes);

// ---------------------------------------------------------------------------
// generator files
// ---------------------------------------------------------------------------

enum class CurveTag { Ek, E4k, EmK2, E16k2, Ek3, Em4k4 };

const char* tag_name(CurveTag t);
std::optional<CurveTag> tag_from_name(const std::string& s);

/// The curve parameter a for the tagged curve attached to C_k.
BigInt curve_param(CurveTag t, uint64_t k);

struct GeneratorRecord {
    uint64_t k;
    CurveTag tag;
    MWSubgroup subgroup;
};

/// Text format: `k tag rank X1 Y1 Z1 ...`, `#` starts a comment line.
/// Each generator is checked to lie on the tagged curve and to be
/// non-torsion.
std::vector<GeneratorRecord> read_generator_file(std::istream& is);
std::vector<GeneratorRecord> read_generator_file_path(const std::string& path);

}  // namespace sixpow

#endif
