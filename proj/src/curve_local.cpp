#include "sixpow/curve_local.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>
#include <unordered_set>

namespace sixpow {

SumsetCache sumset_mod_p(uint64_t p) {
    if (!is_prime(p)) throw std::invalid_argument("sumset_mod_p: p must be prime");
    std::vector<bool> is_pow(p, false);
    for (uint64_t r = 0; r < p; ++r) is_pow[pow_mod(r, 6, p)] = true;
    std::vector<uint64_t> pows;
    for (uint64_t r = 0; r < p; ++r)
        if (is_pow[r]) pows.push_back(r);
    SumsetCache cache{p, std::vector<bool>(p, false)};
    for (uint64_t a : pows)
        for (uint64_t b : pows) cache.bits[(a + b) % p] = true;
    return cache;
}

// ---------------------------------------------------------------------------
// finite criterion
// ---------------------------------------------------------------------------

namespace {

// Sumset caches for the primes where C_k can actually fail mod p.  For
// p = 1 (mod 12), -1 is a sixth power mod p, so (t : 1 : 0) with t^6 = -1 is
// a smooth F_p point of C_k for every k and p imposes no condition.  Only
// p = 7 (mod 12) constrains k; p = 5 (mod 6) has sumset all of F_p.  p = 7
// itself is folded into the residue classes mod 504.
const std::vector<SumsetCache>& sumset_primes() {
    static std::vector<SumsetCache> caches;
    static std::once_flag once;
    std::call_once(once, [] {
        for (uint32_t p : primes_up_to(400)) {
            if (p >= 13 && p % 12 == 7) caches.push_back(sumset_mod_p(p));
        }
    });
    return caches;
}

}  // namespace

std::optional<std::pair<uint64_t, uint64_t>> is_sum_of_two_integer_sixth_powers(uint64_t k) {
    if (k == 0) throw std::invalid_argument("k must be positive");
    for (uint64_t a = 0;; ++a) {
        BigInt a6 = ipow(BigInt(a), 6);
        if (a6 > k) break;
        auto b = exact_root(BigInt(k) - a6, 6);
        if (b && *b <= a) return std::make_pair(a, b->convert_to<uint64_t>());
    }
    return std::nullopt;
}

LocalCertificate classify_local(uint64_t k) {
    LocalCertificate cert;
    cert.k = k;
    if (k == 0) throw std::invalid_argument("classify_local: k must be positive");

    auto split = sixth_power_split(k);
    if (!split.is_free) {
        cert.locally_solvable = false;
        cert.reason = LocalReason::NotSixthPowerFree;
        return cert;
    }
    if (auto ab = is_sum_of_two_integer_sixth_powers(k)) {
        cert.locally_solvable = true;
        cert.reason = LocalReason::IntegerSum;
        cert.sum_a = ab->first;
        cert.sum_b = ab->second;
        return cert;
    }
    for (auto [p, e] : factorize(k)) {
        (void)e;
        if (p % 2 == 1 && p % 4 == 3) {
            cert.locally_solvable = false;
            cert.reason = LocalReason::BadPrime3Mod4;
            cert.detail_p = p;
            return cert;
        }
    }
    auto fails_at = [&cert](uint64_t p) {
        cert.locally_solvable = false;
        cert.reason = LocalReason::FailsModP;
        cert.detail_p = p;
    };
    if (k % 8 != 1 && k % 8 != 2) {
        fails_at(2);
        return cert;
    }
    if (k % 9 != 1 && k % 9 != 2) {
        fails_at(3);
        return cert;
    }
    // p = 7 folds into the class filter: 7 | k is excluded above (7 = 3 mod 4),
    // and the sumset mod 7 is {0, 1, 2}
    if (k % 7 != 1 && k % 7 != 2) {
        fails_at(7);
        return cert;
    }
    for (const auto& cache : sumset_primes()) {
        uint64_t r = k % cache.p;
        if (r == 0) continue;  // p | k handled by the 1 (mod 4) factor condition
        if (!cache.bits[r]) {
            fails_at(cache.p);
            return cert;
        }
    }
    cert.locally_solvable = true;
    cert.reason = LocalReason::Passes;
    return cert;
}

LocalCertificate is_locally_solvable(uint64_t k) {
    if (k == 0 || !sixth_power_split(k).is_free)
        throw std::invalid_argument("is_locally_solvable: k must be positive and sixth-power-free");
    return classify_local(k);
}

// ---------------------------------------------------------------------------
// Hensel-lifting oracle
//
// A projective Q_p point can be scaled so some coordinate is 1 and the rest
// lie in Z_p.  By x<->y symmetry, two affine patches suffice:
//   x = 1:  g(u,v) = 1 + u^6 - k v^6
//   z = 1:  g(u,v) = u^6 + v^6 - k
// The search refines residue boxes (u,v) mod p^j.  A box survives iff
// g = 0 (mod p^j) at its representative; a one-variable Newton certificate
// v_p(g) > 2 v_p(dg) proves a root and stops the search.
// ---------------------------------------------------------------------------

namespace {

struct PatchPoly {
    BigInt cu, cv, c0;  // g = cu u^6 + cv v^6 + c0
    BigInt eval(const BigInt& u, const BigInt& v) const {
        return cu * ipow(u, 6) + cv * ipow(v, 6) + c0;
    }
    BigInt du(const BigInt& u) const { return 6 * cu * ipow(u, 5); }
    BigInt dv(const BigInt& v) const { return 6 * cv * ipow(v, 5); }
};

constexpr int kValInfinity = 1 << 20;

int vp_of(BigInt v, uint64_t p) {
    if (v == 0) return kValInfinity;
    int n = 0;
    while (v % p == 0) {
        v /= p;
        ++n;
    }
    return n;
}

struct SearchBox {
    BigInt u, v;
    int j;
};

// true iff the Newton certificate applies at the integer point (u, v)
bool hensel_certificate(const PatchPoly& g, const BigInt& u, const BigInt& v, uint64_t p) {
    BigInt val = g.eval(u, v);
    if (val == 0) return true;  // exact integer root
    int vg = vp_of(val, p);
    int mu = vp_of(g.du(u), p);
    int mv = vp_of(g.dv(v), p);
    int m = std::min(mu, mv);
    return m < kValInfinity && vg > 2 * m;
}

bool search_patch(const PatchPoly& g, uint64_t p, int cap) {
    // depth-1 scan over F_p^2 via sixth-power tables
    std::vector<uint64_t> pow6(p);
    for (uint64_t r = 0; r < p; ++r) pow6[r] = pow_mod(r, 6, p);
    uint64_t cu = mod_u64(g.cu, p), cv = mod_u64(g.cv, p), c0 = mod_u64(g.c0, p);

    std::vector<SearchBox> stack;
    for (uint64_t u = 0; u < p; ++u) {
        uint64_t au = (mul_mod(cu, pow6[u], p) + c0) % p;
        for (uint64_t v = 0; v < p; ++v) {
            if ((au + mul_mod(cv, pow6[v], p)) % p != 0) continue;
            BigInt bu(u), bv(v);
            if (hensel_certificate(g, bu, bv, p)) return true;
            stack.push_back({bu, bv, 1});
        }
    }

    uint64_t nodes = stack.size();
    while (!stack.empty()) {
        SearchBox box = std::move(stack.back());
        stack.pop_back();
        if (box.j >= cap) throw internal_error("qp_solvable_oracle: depth cap exceeded");
        BigInt pj = ipow(BigInt(p), static_cast<unsigned>(box.j));
        BigInt gval = g.eval(box.u, box.v);
        // children (u + s p^j, v + t p^j) live mod p^{j+1} iff
        // G + s U + t V = 0 (mod p) with G = gval / p^j
        uint64_t G = mod_u64(gval / pj, p);
        uint64_t U = mod_u64(g.du(box.u), p);
        uint64_t V = mod_u64(g.dv(box.v), p);
        auto visit = [&](uint64_t s, uint64_t t) -> bool {
            BigInt cu2 = box.u + s * pj, cv2 = box.v + t * pj;
            BigInt val = g.eval(cu2, cv2);
            if (vp_of(val, p) < box.j + 1) return false;
            if (hensel_certificate(g, cu2, cv2, p)) return true;
            stack.push_back({cu2, cv2, box.j + 1});
            if (++nodes > 20'000'000) throw internal_error("qp_solvable_oracle: node limit exceeded");
            return false;
        };
        if (U == 0 && V == 0) {
            if (G != 0) continue;
            for (uint64_t s = 0; s < p; ++s)
                for (uint64_t t = 0; t < p; ++t)
                    if (visit(s, t)) return true;
        } else if (U != 0) {
            uint64_t inv = inv_mod(U, p);
            for (uint64_t t = 0; t < p; ++t) {
                uint64_t s = mul_mod((p - (G + mul_mod(t, V, p)) % p) % p, inv, p);
                if (visit(s, t)) return true;
            }
        } else {
            uint64_t inv = inv_mod(V, p);
            for (uint64_t s = 0; s < p; ++s) {
                uint64_t t = mul_mod((p - (G + mul_mod(s, U, p)) % p) % p, inv, p);
                if (visit(s, t)) return true;
            }
        }
    }
    return false;
}

}  // namespace

bool qp_solvable_oracle(uint64_t k, uint64_t p) {
    if (k == 0 || !is_prime(p)) throw std::invalid_argument("qp_solvable_oracle: bad arguments");
    int w = vp_of(BigInt(6) * k, p);
    int cap = 3 * w + 9;
    PatchPoly unit_patch{1, -BigInt(k), 1};   // x = 1 (and by symmetry y = 1)
    PatchPoly z_patch{1, 1, -BigInt(k)};
    return search_patch(unit_patch, p, cap) || search_patch(z_patch, p, cap);
}

// ---------------------------------------------------------------------------
// enumeration below a bound
// ---------------------------------------------------------------------------

const std::vector<uint64_t>& admissible_classes_mod_504() {
    static std::vector<uint64_t> classes;
    static std::once_flag once;
    std::call_once(once, [] {
        for (uint64_t r = 0; r < 504; ++r) {
            uint64_t m7 = r % 7, m8 = r % 8, m9 = r % 9;
            if ((m7 == 1 || m7 == 2) && (m8 == 1 || m8 == 2) && (m9 == 1 || m9 == 2))
                classes.push_back(r);
        }
        if (classes.size() != 8) throw internal_error("class count mod 504");
    });
    return classes;
}

namespace {

struct EnumTables {
    std::vector<uint32_t> primes;        // odd primes <= sqrt(bound)
    std::vector<uint8_t> prime_mod4;     // parallel to primes
    std::unordered_set<uint64_t> integer_sums;
};

EnumTables build_tables(uint64_t bound) {
    EnumTables t;
    uint64_t s = 2;
    while (s * s < bound) ++s;
    for (uint32_t p : primes_up_to(static_cast<uint32_t>(s))) {
        if (p == 2) continue;
        t.primes.push_back(p);
        t.prime_mod4.push_back(static_cast<uint8_t>(p % 4));
    }
    for (uint64_t a = 0;; ++a) {
        BigInt a6 = ipow(BigInt(a), 6);
        if (a6 >= bound) break;
        for (uint64_t b = 0; b <= a; ++b) {
            BigInt s6 = a6 + ipow(BigInt(b), 6);
            if (s6 >= bound) break;
            if (s6 > 0) t.integer_sums.insert(s6.convert_to<uint64_t>());
        }
    }
    return t;
}

// all odd prime factors = 1 (mod 4), no sixth-power divisor
bool factor_filter(uint64_t k, const EnumTables& t) {
    uint64_t rem = k;
    int e2 = 0;
    while (rem % 2 == 0) {
        rem /= 2;
        ++e2;
    }
    if (e2 >= 6) return false;  // cannot happen inside the mod-8 classes
    for (size_t i = 0; i < t.primes.size(); ++i) {
        uint64_t p = t.primes[i];
        if (p * p > rem) break;
        if (rem % p == 0) {
            if (t.prime_mod4[i] == 3) return false;
            int e = 0;
            while (rem % p == 0) {
                rem /= p;
                ++e;
            }
            if (e >= 6) return false;
        }
    }
    if (rem > 1 && rem % 4 == 3) return false;
    return true;
}

}  // namespace

std::vector<uint64_t> enumerate_locally_solvable(uint64_t bound, int threads) {
    if (bound == 0) throw std::invalid_argument("enumerate_locally_solvable: bound must be positive");
    const auto& classes = admissible_classes_mod_504();
    const auto& caches = sumset_primes();
    EnumTables tables = build_tables(bound);

    auto scan_range = [&](uint64_t lo_block, uint64_t hi_block, std::vector<uint64_t>& out) {
        for (uint64_t base = lo_block; base < hi_block; base += 504) {
            for (uint64_t r : classes) {
                uint64_t k = base + r;
                if (k >= bound) break;
                bool ok = true;
                for (const auto& cache : caches) {
                    uint64_t m = k % cache.p;
                    if (m != 0 && !cache.bits[m]) {
                        ok = false;
                        break;
                    }
                }
                if (!ok) continue;
                if (tables.integer_sums.count(k)) continue;
                if (!factor_filter(k, tables)) continue;
                out.push_back(k);
            }
        }
    };

    uint64_t nblocks = (bound + 503) / 504;
    if (threads <= 1 || nblocks < 16) {
        std::vector<uint64_t> out;
        scan_range(0, nblocks * 504, out);
        return out;
    }
    uint64_t per = (nblocks + threads - 1) / threads;
    std::vector<std::vector<uint64_t>> parts(threads);
    std::vector<std::thread> workers;
    for (int i = 0; i < threads; ++i) {
        uint64_t lo = std::min(nblocks, static_cast<uint64_t>(i) * per) * 504;
        uint64_t hi = std::min(nblocks, static_cast<uint64_t>(i + 1) * per) * 504;
        workers.emplace_back(scan_range, lo, hi, std::ref(parts[i]));
    }
    for (auto& w : workers) w.join();
    std::vector<uint64_t> out;
    for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    return out;
}

// ---------------------------------------------------------------------------
// k-list text format
// ---------------------------------------------------------------------------

void write_klist(std::ostream& os, const std::vector<uint64_t>& ks) {
    for (uint64_t k : ks) os << k << '\n';
}

std::vector<uint64_t> read_klist(std::istream& is) {
    std::vector<uint64_t> out;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        out.push_back(std::stoull(line));
    }
    if (!std::is_sorted(out.begin(), out.end()))
        throw std::invalid_argument("k-list not sorted ascending");
    return out;
}

void write_klist_file(const std::string& path, const std::vector<uint64_t>& ks) {
    std::ofstream os(path);
    if (!os) throw std::invalid_argument("cannot open for writing: " + path);
    write_klist(os, ks);
}

std::vector<uint64_t> read_klist_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::invalid_argument("cannot open for reading: " + path);
    return read_klist(is);
}

}  // namespace sixpow
