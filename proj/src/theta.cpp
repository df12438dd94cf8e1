#include "sixpow/theta.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <mutex>

namespace sixpow {

int64_t TernaryQF::value(int64_t x, int64_t y, int64_t z) const {
    std::array<int64_t, 3> v{x, y, z};
    int64_t s = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) s += gram2[i][j] * v[i] * v[j];
    return s / 2;
}

int64_t TernaryQF::det_gram2() const {
    const auto& g = gram2;
    return g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1]) -
           g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0]) +
           g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0]);
}

bool TernaryQF::positive_definite() const {
    const auto& g = gram2;
    int64_t m1 = g[0][0];
    int64_t m2 = g[0][0] * g[1][1] - g[0][1] * g[1][0];
    return m1 > 0 && m2 > 0 && det_gram2() > 0;
}

const std::array<TernaryQF, 6>& builtin_forms() {
    static const std::array<TernaryQF, 6> forms{{
        {"x^2 + 4y^2 + 144z^2", {{{2, 0, 0}, {0, 8, 0}, {0, 0, 288}}}, 0, 1, {4, 0, 144}},
        {"4x^2 - 4xy + 5y^2 + 36z^2", {{{8, -4, 0}, {-4, 10, 0}, {0, 0, 72}}}, 2, 36, {4, -4, 5}},
        {"4x^2 + 9y^2 + 16z^2", {{{8, 0, 0}, {0, 18, 0}, {0, 0, 32}}}, 1, 9, {4, 0, 16}},
        {"x^2 + 16y^2 + 36z^2", {{{2, 0, 0}, {0, 32, 0}, {0, 0, 72}}}, 0, 1, {16, 0, 36}},
        {"4x^2 + 13y^2 + 10yz + 13z^2", {{{8, 0, 0}, {0, 26, 10}, {0, 10, 26}}}, 0, 4, {13, 10, 13}},
        {"4x^2 + 4y^2 + 4yz + 37z^2", {{{8, 0, 0}, {0, 8, 4}, {0, 4, 74}}}, 0, 4, {4, 4, 37}},
    }};
    return forms;
}

namespace {

int64_t isqrt_i64(int64_t n) {
    if (n < 0) return -1;
    auto r = static_cast<int64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

/// counts of a u^2 + b u v + c v^2 = n for n <= limit
std::vector<int32_t> binary_theta(const BinaryQF& B, uint64_t limit) {
    if (B.disc() >= 0) throw std::invalid_argument("binary_theta: form not definite");
    std::vector<int32_t> rb(limit + 1, 0);
    int64_t L = static_cast<int64_t>(limit);
    // |u| <= sqrt(4 c L / (4ac - b^2))
    int64_t ubound = isqrt_i64((4 * B.c * L) / (4 * B.a * B.c - B.b * B.b)) + 1;
    for (int64_t u = -ubound; u <= ubound; ++u) {
        // c v^2 + (b u) v + (a u^2 - L) <= 0
        int64_t disc = B.disc() * u * u + 4 * B.c * L;
        if (disc < 0) continue;
        int64_t s = isqrt_i64(disc);
        int64_t lo = -(B.b * u) - s;
        lo = (lo >= 0) ? (lo + 2 * B.c - 1) / (2 * B.c) : -((-lo) / (2 * B.c));
        int64_t hi = -(B.b * u) + s;
        hi = (hi >= 0) ? hi / (2 * B.c) : -((-hi + 2 * B.c - 1) / (2 * B.c));
        if (lo > hi) continue;
        int64_t val = B.a * u * u + B.b * u * lo + B.c * lo * lo;
        int64_t step = 2 * B.c * lo + B.c + B.b * u;  // val(v+1) - val(v)
        for (int64_t v = lo; v <= hi; ++v) {
            if (val >= 0 && val <= L) rb[val] += 1;
            val += step;
            step += 2 * B.c;
        }
    }
    return rb;
}

}  // namespace

ThetaSeries theta_coeffs(const TernaryQF& q, uint64_t limit) {
    if (!q.positive_definite()) throw std::invalid_argument("theta_coeffs: form not positive definite");
    std::vector<int32_t> rb = binary_theta(q.binary, limit);
    ThetaSeries out{limit, std::vector<int64_t>(limit + 1, 0)};
    for (int64_t t = 0;; ++t) {
        int64_t base = q.unary_coef * t * t;
        if (base > static_cast<int64_t>(limit)) break;
        int64_t w = (t == 0) ? 1 : 2;
        int64_t top = static_cast<int64_t>(limit) - base;
        for (int64_t i = 0; i <= top; ++i) out.r[base + i] += w * rb[i];
    }
    return out;
}

ThetaSeries theta_coeffs_naive(const TernaryQF& q, uint64_t limit) {
    if (!q.positive_definite()) throw std::invalid_argument("theta_coeffs_naive: form not positive definite");
    ThetaSeries out{limit, std::vector<int64_t>(limit + 1, 0)};
    const auto& g = q.gram2;
    int64_t det = q.det_gram2();
    int64_t L = static_cast<int64_t>(limit);
    // |v_i| <= sqrt(2 L adj_ii / det)
    auto adj = [&](int i) {
        int a = (i + 1) % 3, b = (i + 2) % 3;
        return g[a][a] * g[b][b] - g[a][b] * g[b][a];
    };
    int64_t bx = isqrt_i64(2 * L * adj(0) / det) + 1;
    int64_t by = isqrt_i64(2 * L * adj(1) / det) + 1;
    int64_t bz = isqrt_i64(2 * L * adj(2) / det) + 1;
    for (int64_t x = -bx; x <= bx; ++x)
        for (int64_t y = -by; y <= by; ++y)
            for (int64_t z = -bz; z <= bz; ++z) {
                int64_t v = q.value(x, y, z);
                if (v <= L) out.r[v] += 1;
            }
    return out;
}

HSeries h_coeffs(uint64_t limit, bool odd_only) {
    static const int64_t weights[6] = {5, -3, -7, 5, 9, -3};
    const int64_t L = static_cast<int64_t>(limit);
    const auto& forms = builtin_forms();

    if (!odd_only) {
        HSeries h{limit, false, std::vector<int64_t>(limit + 1, 0)};
        for (int f = 0; f < 6; ++f) {
            std::vector<int32_t> rb = binary_theta(forms[f].binary, limit);
            int64_t w = weights[f];
            for (int64_t t = 0;; ++t) {
                int64_t base = forms[f].unary_coef * t * t;
                if (base > L) break;
                int64_t tw = (t == 0) ? w : 2 * w;
                for (int64_t i = 0; i + base <= L; ++i) h.C[base + i] += tw * rb[i];
            }
        }
        return h;
    }

    // odd coefficients only, with the parity classes packed contiguously so
    // the accumulation runs stride-1: C[2m+1] lives at codd[m]
    const int64_t nodd = (L + 1) / 2;  // count of odd n <= L
    std::vector<int64_t> codd(static_cast<size_t>(std::max<int64_t>(nodd, 0)), 0);
    for (int f = 0; f < 6; ++f) {
        std::vector<int32_t> rb = binary_theta(forms[f].binary, limit);
        std::vector<int32_t> rb_even((L / 2) + 1), rb_odd(static_cast<size_t>(std::max<int64_t>(nodd, 0)));
        for (int64_t i = 0; i <= L; i += 2) rb_even[i / 2] = rb[i];
        for (int64_t i = 1; i <= L; i += 2) rb_odd[(i - 1) / 2] = rb[i];
        rb.clear();
        rb.shrink_to_fit();
        int64_t w = weights[f];
        for (int64_t t = 0;; ++t) {
            int64_t base = forms[f].unary_coef * t * t;
            if (base > L) break;
            int64_t tw = (t == 0) ? w : 2 * w;
            if ((base & 1) == 0) {
                // n = base + (2j+1): codd[base/2 + j] += tw * rb_odd[j]
                int64_t off = base / 2;
                int64_t cnt = (L - base + 1) / 2;
                int64_t* dst = codd.data() + off;
                const int32_t* src = rb_odd.data();
                for (int64_t j = 0; j < cnt; ++j) dst[j] += tw * src[j];
            } else {
                // n = base + 2j: codd[(base-1)/2 + j] += tw * rb_even[j]
                int64_t off = (base - 1) / 2;
                int64_t cnt = (L - base) / 2 + 1;
                int64_t* dst = codd.data() + off;
                const int32_t* src = rb_even.data();
                for (int64_t j = 0; j < cnt; ++j) dst[j] += tw * src[j];
            }
        }
    }
    HSeries h{limit, true, std::vector<int64_t>(limit + 1, 0)};
    for (int64_t m = 0; m < nodd; ++m) h.C[2 * m + 1] = codd[m];
    return h;
}

// ---------------------------------------------------------------------------
// cache file
// ---------------------------------------------------------------------------

static const char kMagic[8] = {'S', 'I', 'X', 'T', 'H', 'E', 'T', 'A'};

void write_h_cache(const std::string& path, const HSeries& h) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::invalid_argument("cannot open cache for writing: " + path);
    os.write(kMagic, 8);
    uint64_t limit = h.limit;
    uint64_t coverage = h.odd_only ? 1 : 0;
    os.write(reinterpret_cast<const char*>(&limit), 8);
    os.write(reinterpret_cast<const char*>(&coverage), 8);
    os.write(reinterpret_cast<const char*>(h.C.data()), static_cast<std::streamsize>(8 * h.C.size()));
}

std::optional<HSeries> read_h_cache(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) return std::nullopt;
    char magic[8];
    if (!is.read(magic, 8) || std::memcmp(magic, kMagic, 8) != 0) return std::nullopt;
    uint64_t limit = 0, coverage = 0;
    if (!is.read(reinterpret_cast<char*>(&limit), 8)) return std::nullopt;
    if (!is.read(reinterpret_cast<char*>(&coverage), 8)) return std::nullopt;
    HSeries h{limit, coverage == 1, std::vector<int64_t>(limit + 1)};
    if (!is.read(reinterpret_cast<char*>(h.C.data()), static_cast<std::streamsize>(8 * h.C.size())))
        return std::nullopt;
    return h;
}

// ---------------------------------------------------------------------------
// certificates
// ---------------------------------------------------------------------------

ThetaCertificate RankZeroCertifier::certify(uint64_t k) const {
    if (k == 0 || k % 2 == 0) throw std::invalid_argument("certify: k must be odd");
    if (k % 3 == 0) throw std::invalid_argument("certify: k must not be divisible by 3");
    if (!sixth_power_split(k).is_free) throw std::invalid_argument("certify: k must be sixth-power-free");
    uint64_t kp = squarefree_part(k);
    ThetaCertificate cert{k, kp, 0, CertVerdict::Inconclusive};
    if (kp % 8 != 1) return cert;  // wrong functional-equation sign; never certified
    if (kp > h_.limit) throw std::invalid_argument("certify: squarefree part exceeds series limit");
    cert.C = h_.C[kp];
    if (cert.C != 0) cert.verdict = CertVerdict::CertifiedRankZero;
    return cert;
}

}  // namespace sixpow
