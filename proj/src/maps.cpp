#include "sixpow/maps.hpp"

#include <algorithm>
#include <mutex>
#include <unordered_set>

namespace sixpow {

namespace {

Poly X() { return Poly::var_x(); }
Poly Y() { return Poly::var_y(); }
Poly Z() { return Poly::var_z(); }
Poly K() { return Poly::var_k(); }
Poly C(int64_t c) { return Poly::constant(BigInt(c)); }

std::array<Poly, 3> scaled_patch(const std::array<Poly, 3>& patch, const Poly& f) {
    return {(patch[0] * f).reduce_mod_curve(), (patch[1] * f).reduce_mod_curve(),
            (patch[2] * f).reduce_mod_curve()};
}

CurveMapSpec make_spec(int index, std::string subgroup, CurveTag tag, std::array<Poly, 3> main) {
    CurveMapSpec spec{index, std::move(subgroup), tag, {}};
    spec.patches.push_back(main);
    spec.patches.push_back(scaled_patch(main, X().pow(6)));
    if (index == 10) spec.patches.push_back(scaled_patch(main, Y().pow(6)));
    return spec;
}

std::vector<CurveMapSpec> build_maps() {
    std::vector<CurveMapSpec> maps;
    // affine formulas on x^6 + y^6 = k, projectivized to a common degree
    maps.push_back(make_spec(1, "<u1^2 u2^3>", CurveTag::Ek,
                             {-(Y().pow(2) * Z()), X().pow(3), Z().pow(3)}));
    maps.push_back(make_spec(2, "<u1^3 u2^2>", CurveTag::Ek,
                             {-(X().pow(2) * Z()), Y().pow(3), Z().pow(3)}));
    maps.push_back(make_spec(3, "<u1 u2^2>", CurveTag::E4k,
                             {X().pow(4) * Y() * Z(), X().pow(6) + C(2) * Y().pow(6),
                              Y().pow(3) * Z().pow(3)}));
    maps.push_back(make_spec(4, "<u1^2 u2>", CurveTag::E4k,
                             {X() * Y().pow(4) * Z(), C(2) * X().pow(6) + Y().pow(6),
                              X().pow(3) * Z().pow(3)}));
    maps.push_back(make_spec(5, "<u1 u2^3>", CurveTag::EmK2,
                             {K() * Y() * Z().pow(2), K() * X().pow(3), Y().pow(3)}));
    maps.push_back(make_spec(6, "<u1^3 u2>", CurveTag::EmK2,
                             {K() * X() * Z().pow(2), K() * Y().pow(3), X().pow(3)}));
    maps.push_back(make_spec(7, "<u1 u2^5, u1^2 u2>", CurveTag::E16k2,
                             {C(-4) * X().pow(2) * Y().pow(2) * Z().pow(2),
                              C(-8) * X().pow(6) + C(4) * K() * Z().pow(6), Z().pow(6)}));
    maps.push_back(make_spec(8, "<u1 u2^4>", CurveTag::Ek3,
                             {K() * X().pow(2) * Y(), K().pow(2) * Z().pow(3), Y().pow(3)}));
    maps.push_back(make_spec(9, "<u1^4 u2>", CurveTag::Ek3,
                             {K() * Y().pow(2) * X(), K().pow(2) * Z().pow(3), X().pow(3)}));
    maps.push_back(make_spec(10, "<u1^5 u2, u2^3 u3>", CurveTag::Em4k4,
                             {K().pow(2) * X() * Y() * Z().pow(4),
                              -(K().pow(2) * X().pow(6)) + K().pow(2) * Y().pow(6),
                              X().pow(3) * Y().pow(3)}));
    return maps;
}

// codomain parameter a(k) as a polynomial in k
Poly param_poly(CurveTag tag) {
    switch (tag) {
        case CurveTag::Ek: return K();
        case CurveTag::E4k: return C(4) * K();
        case CurveTag::EmK2: return C(-1) * K().pow(2);
        case CurveTag::E16k2: return C(16) * K().pow(2);
        case CurveTag::Ek3: return K().pow(3);
        case CurveTag::Em4k4: return C(-4) * K().pow(4);
    }
    throw std::invalid_argument("param_poly: bad tag");
}

}  // namespace

const std::vector<CurveMapSpec>& builtin_maps() {
    static std::vector<CurveMapSpec> maps;
    static std::once_flag once;
    std::call_once(once, [] { maps = build_maps(); });
    return maps;
}

const CurveMapSpec& builtin_map(int index) {
    if (index < 1 || index > 10) throw std::invalid_argument("map index must be 1..10");
    return builtin_maps()[index - 1];
}

bool verify_map_symbolic(const CurveMapSpec& spec) {
    Poly a = param_poly(spec.tag);
    for (const auto& patch : spec.patches) {
        const Poly& A = patch[0];
        const Poly& B = patch[1];
        const Poly& Cc = patch[2];
        Poly residue = B * B * Cc - A.pow(3) - a * Cc.pow(3);
        if (!residue.reduce_mod_curve().is_zero()) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// evaluation
// ---------------------------------------------------------------------------

ECPointQ eval_map_q(const CurveMapSpec& spec, uint64_t k, const CkPointQ& P) {
    BigInt lhs = ipow(P.x, 6) + ipow(P.y, 6) - BigInt(k) * ipow(P.z, 6);
    if (lhs != 0) throw std::invalid_argument("eval_map_q: point not on C_k");
    // no rational point has z = 0 (x^6 = -y^6 over Q), and x = 0 or y = 0
    // forces k to be a sixth power; both are excluded upstream
    if (P.z == 0 || P.x == 0 || P.y == 0)
        throw std::invalid_argument("eval_map_q: coordinate-zero points are handled upstream");
    BigInt bk(k);
    for (const auto& patch : spec.patches) {
        BigInt A = patch[0].eval(P.x, P.y, P.z, bk);
        BigInt B = patch[1].eval(P.x, P.y, P.z, bk);
        BigInt Cc = patch[2].eval(P.x, P.y, P.z, bk);
        if (A == 0 && B == 0 && Cc == 0) continue;
        ECPointQ out = ECPointQ::from_projective(A, B, Cc);
        MordellCurve E(curve_param(spec.tag, k));
        if (!on_curve(E, out)) throw internal_error("eval_map_q: image off curve");
        return out;
    }
    throw patch_coverage_error("eval_map_q: all patches vanish");
}

ECPointFp eval_map_fp(const CurveMapSpec& spec, uint64_t k, uint64_t p, const CkPointFp& P) {
    for (const auto& patch : spec.patches) {
        uint64_t A = patch[0].eval_fp(P.x, P.y, P.z, k, p);
        uint64_t B = patch[1].eval_fp(P.x, P.y, P.z, k, p);
        uint64_t Cc = patch[2].eval_fp(P.x, P.y, P.z, k, p);
        if (A == 0 && B == 0 && Cc == 0) continue;
        if (Cc == 0) {
            if (A != 0) throw internal_error("eval_map_fp: (A : B : 0) with A != 0");
            return ECPointFp{};  // (0 : B : 0) = identity
        }
        uint64_t ci = inv_mod(Cc, p);
        return ECPointFp{mul_mod(A, ci, p), mul_mod(B, ci, p), false};
    }
    throw patch_coverage_error("eval_map_fp: all patches vanish");
}

std::vector<CkPointFp> curve_points_fp(uint64_t k, uint64_t p) {
    if (!is_prime(p)) throw std::invalid_argument("curve_points_fp: p must be prime");
    std::vector<CkPointFp> out;
    uint64_t km = k % p;
    // y^6 lookup: inv6[v] = all y with y^6 = v
    std::vector<std::vector<uint32_t>> inv6(p);
    for (uint64_t y = 0; y < p; ++y) inv6[pow_mod(y, 6, p)].push_back(static_cast<uint32_t>(y));
    for (uint64_t x = 0; x < p; ++x) {
        uint64_t need = (km + p - pow_mod(x, 6, p)) % p;
        for (uint32_t y : inv6[need]) out.push_back(CkPointFp{x, y, 1});
    }
    for (uint32_t t : inv6[p - 1]) out.push_back(CkPointFp{t, 1, 0});  // x^6 = -1, z = 0
    return out;
}

std::vector<ECPointFp> image_set_fp(uint64_t k, uint64_t p, int map_index) {
    if ((6 * BigInt(k)) % p == 0) throw std::invalid_argument("image_set_fp: p must not divide 6k");
    const CurveMapSpec& spec = builtin_map(map_index);
    std::unordered_set<uint64_t> seen;
    std::vector<ECPointFp> out;
    for (const CkPointFp& P : curve_points_fp(k, p)) {
        ECPointFp Q = eval_map_fp(spec, k, p, P);
        if (seen.insert(Q.key(p)).second) out.push_back(Q);
    }
    std::sort(out.begin(), out.end(),
              [p](const ECPointFp& a, const ECPointFp& b) { return a.key(p) < b.key(p); });
    return out;
}

bool torsion_image_excludes(uint64_t k) {
    if (k == 0 || !sixth_power_split(k).is_free)
        throw std::invalid_argument("torsion_image_excludes: k must be sixth-power-free");
    return k != 1 && k != 2;
}

}  // namespace sixpow
