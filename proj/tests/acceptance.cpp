// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure.  Set SIXPOW_ACCEPT_FULL=1 to include the full-scale theta
// certificate pass (minutes of runtime, ~2 GB of memory).

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <set>
#include <vector>

#include "sixpow/curve_local.hpp"
#include "sixpow/mwsieve.hpp"
#include "sixpow/repfind.hpp"
#include "sixpow/theta.hpp"

using namespace sixpow;

namespace {

int failures = 0;

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double secs() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

void report(int idx, bool ok, const std::string& what, double secs) {
    std::printf("[%s] criterion %2d: %s (%.2fs)\n", ok ? "PASS" : "FAIL", idx, what.c_str(), secs);
    if (!ok) ++failures;
}

void skip(int idx, const std::string& what) {
    std::printf("[SKIP] criterion %2d: %s\n", idx, what.c_str());
}

// --------------------------------------------------------------------------

void criterion1() {
    Timer t;
    auto ks = enumerate_locally_solvable(164634913);
    bool ok = ks.size() == 111625 && !ks.empty() && ks.front() == 2017 &&
              std::is_sorted(ks.begin(), ks.end());
    report(1, ok,
           "local sieve below 164634913: " + std::to_string(ks.size()) +
               " values (want 111625), min " + std::to_string(ks.empty() ? 0 : ks.front()),
           t.secs());
}

void criterion2() {
    Timer t;
    const uint64_t bound = 100000;
    auto fast = enumerate_locally_solvable(bound);
    std::vector<uint64_t> slow;
    for (uint64_t k = 1; k < bound; ++k)
        if (classify_local(k).reason == LocalReason::Passes) slow.push_back(k);
    report(2, fast == slow, "mod-504 enumeration equals the shortcut-free per-k filter below 1e5",
           t.secs());
}

void criterion3() {
    Timer t;
    bool ok = true;
    for (const auto& q : builtin_forms()) {
        auto fast = theta_coeffs(q, 20000);
        auto slow = theta_coeffs_naive(q, 20000);
        if (fast.r != slow.r) ok = false;
    }
    report(3, ok, "fast theta equals triple-loop enumeration up to 2e4 for all six forms",
           t.secs());

    if (const char* env = std::getenv("SIXPOW_ACCEPT_FULL"); env && std::strcmp(env, "1") == 0) {
        Timer t2;
        auto ks = enumerate_locally_solvable(164634913);
        std::vector<uint64_t> odd;
        for (uint64_t k : ks)
            if (k % 2 == 1) odd.push_back(k);
        uint64_t limit = 0;
        for (uint64_t k : odd) limit = std::max(limit, squarefree_part(k));
        RankZeroCertifier cert(h_coeffs(limit, /*odd_only=*/true));
        size_t survivors = 0;
        for (uint64_t k : odd)
            if (cert.certify(k).verdict == CertVerdict::Inconclusive) ++survivors;
        bool ok2 = odd.size() == 55284 && survivors == 2753;
        report(3, ok2,
               "full-scale certificates: " + std::to_string(odd.size()) + " odd inputs (want 55284), " +
                   std::to_string(survivors) + " survivors (want 2753)",
               t2.secs());
    } else {
        skip(3, "full-scale certificate pass (set SIXPOW_ACCEPT_FULL=1 to run)");
    }
}

void criterion4() {
    Timer t;
    auto recs = read_generator_file_path(std::string(SIXPOW_DATA_DIR) + "/generators.txt");
    const MWSubgroup* A = nullptr;
    for (const auto& r : recs)
        if (r.k == 138826 && r.tag == CurveTag::E4k) A = &r.subgroup;
    bool ok = A != nullptr;

    if (ok) {
        MordellCurve E(A->a);
        auto G5 = group_structure_fp(E, 5);
        auto G7 = group_structure_fp(E, 7);
        ok = ok && curve_points_fp(138826, 5).size() == 6;
        ok = ok && image_set_fp(138826, 5, 3).size() == 3;
        ok = ok && G5.d1 == 1 && G5.d2 == 6;
        ok = ok && curve_points_fp(138826, 7).size() == 36;
        ok = ok && image_set_fp(138826, 7, 3).size() == 6;
        ok = ok && G7.d1 == 2 && G7.d2 == 6;

        SieveConfig cfg;
        cfg.k = 138826;
        cfg.map_index = 3;
        cfg.A = *A;
        SieveState s5 = make_initial_state(cfg, 6);
        admissible_at_prime(cfg, s5, 5);
        std::set<uint64_t> e5;
        for (const auto& c : s5.admissible) e5.insert(c.n[0]);
        ok = ok && e5 == std::set<uint64_t>{0, 2, 4};

        SieveState s7 = make_initial_state(cfg, 6);
        admissible_at_prime(cfg, s7, 7);
        std::set<uint64_t> e7;
        for (const auto& c : s7.admissible) e7.insert(c.n[0]);
        ok = ok && e7 == std::set<uint64_t>{1, 5};

        auto res = run_sieve(cfg);
        ok = ok && res.verdict == SieveVerdict::Empty;
    }
    report(4, ok,
           "k=138826: #C(F_5)=6, image 3, E(F_5)=Z/6; #C(F_7)=36, image 6, E(F_7)=Z/2xZ/6; "
           "admissible {0,2,4} then {1,5} mod 6; verdict EMPTY",
           t.secs());
}

void criterion5() {
    Timer t;
    auto recs = read_generator_file_path(std::string(SIXPOW_DATA_DIR) + "/generators.txt");
    const MWSubgroup* A = nullptr;
    for (const auto& r : recs)
        if (r.k == 65) A = &r.subgroup;
    bool ok = A != nullptr;
    if (ok) {
        SieveConfig cfg;
        cfg.k = 65;
        cfg.map_index = 1;
        cfg.A = *A;
        // phi(1 : 2 : 1) = (-4, 1) is the subgroup generator: coset n = 1
        ok = ok && eval_map_q(builtin_map(1), 65, CkPointQ{1, 2, 1}) == A->gens[0];
        auto res = run_sieve(cfg);
        ok = ok && res.verdict == SieveVerdict::Exhausted;
        bool alive = false;
        for (const auto& c : res.state.admissible)
            if (c.n[0] % res.state.N == 1 && c.t == 0) alive = true;
        ok = ok && alive;
        for (const auto& e : res.state.log) ok = ok && e.after >= 1;
    }
    report(5, ok, "k=65 control: never EMPTY and the coset of phi((1,2)) survives every stage",
           t.secs());
}

void criterion6() {
    Timer t;
    auto reps = find_representation(5);
    bool ok = false;
    for (const auto& r : reps)
        if (r.k == 164634913 && r.a == 44 && r.b == 117 && r.m == 5) ok = true;
    ok = ok && verify_rep(BigInt(164634913), BigInt(44), BigInt(117), BigInt(5));
    ok = ok && !reps.empty() && reps.front().k == 164634913;
    report(6, ok, "repfind m=5 emits 164634913 = (44/5)^6 + (117/5)^6 and verify-rep confirms",
           t.secs());
}

void criterion7() {
    Timer t;
    auto res = verify_family(-1000, 1000);
    report(7, res.all_ok && res.coefficient_claim && res.five_not_a_sum_mod_13,
           "family over t in [-1000,1000]: integral, = 5 (mod 13), coefficient divisibility",
           t.secs());
}

void criterion8() {
    Timer t;
    bool ok = true;
    for (int64_t a = -200; a <= 200 && ok; ++a) {
        if (a == 0) continue;
        MordellCurve E{BigInt(a)};
        auto info = torsion_structure(BigInt(a));
        // Lutz-Nagell: torsion is integral with y = 0 or y^2 | 432 a^2
        std::set<std::pair<std::string, std::string>> found;
        BigInt bound = 432 * BigInt(a) * a;
        std::vector<BigInt> ys{0};
        for (BigInt y = 1; y * y <= bound; ++y)
            if (bound % (y * y) == 0) ys.push_back(y);
        for (const BigInt& y : ys) {
            auto x = exact_root(y * y - a, 3);
            if (!x) continue;
            for (int sign : {1, -1}) {
                if (y == 0 && sign < 0) continue;
                ECPointQ P = ECPointQ::from_affine(BigRat(*x), BigRat(sign * y));
                ECPointQ acc = P;
                for (int m = 2; m <= 13; ++m) {
                    acc = ec_add(E, acc, P);
                    if (acc.is_infinity()) {
                        found.insert({P.x().str(), P.y().str()});
                        break;
                    }
                }
            }
        }
        ok = found.size() + 1 == static_cast<size_t>(info.order);
        if (info.gen) {
            ECPointQ acc = *info.gen;
            int ord = 1;
            while (!acc.is_infinity()) {
                acc = ec_add(E, acc, *info.gen);
                ++ord;
            }
            ok = ok && ord == info.order;
        }
    }
    report(8, ok, "Fueter torsion classification matches brute-force enumeration for 0 < |a| <= 200",
           t.secs());
}

void criterion9() {
    Timer t;
    bool ok = true;
    for (const auto& m : builtin_maps()) ok = ok && verify_map_symbolic(m);
    report(9, ok, "all ten maps satisfy the Weierstrass identity modulo the curve, k symbolic",
           t.secs());
}

void criterion10() {
    auto recs = read_generator_file_path(std::string(SIXPOW_DATA_DIR) + "/generators.txt");
    const MWSubgroup* A = nullptr;
    for (const auto& r : recs)
        if (r.k == 3506050 && r.tag == CurveTag::Ek) A = &r.subgroup;
    if (!A || A->rank() != 4) {
        skip(10, "k=3506050 ladder needs a rank-4 generator record");
        return;
    }
    Timer t;
    SieveConfig cfg;
    cfg.k = 3506050;
    cfg.map_index = 1;
    cfg.A = *A;
    auto res = run_sieve(cfg);
    bool ok = res.verdict == SieveVerdict::Empty;
    for (const auto& s : res.saturation) ok = ok && s.certified;

    // checkpoints: 16 -> 9 at N=2; 144 all admissible at N=4; 11664 -> 1296
    // at N=12; 3111696 lifted at N=84, 1204 left after p = 229, empty by 1021
    uint64_t last_after_N2 = 0, last_after_N4 = 0, last_after_N12 = 0;
    uint64_t first_before_N2 = 0, first_before_N4 = 0, first_before_N12 = 0, first_before_N84 = 0;
    uint64_t after_229 = 0, final_p = 0;
    for (const auto& e : res.state.log) {
        if (e.N == 2) {
            if (!first_before_N2) first_before_N2 = e.before;
            last_after_N2 = e.after;
        } else if (e.N == 4) {
            if (!first_before_N4) first_before_N4 = e.before;
            last_after_N4 = e.after;
        } else if (e.N == 12) {
            if (!first_before_N12) first_before_N12 = e.before;
            last_after_N12 = e.after;
        } else if (e.N == 84) {
            if (!first_before_N84) first_before_N84 = e.before;
            if (e.p == 229) after_229 = e.after;
            if (e.after == 0) final_p = e.p;
        }
    }
    ok = ok && first_before_N2 == 16 && last_after_N2 == 9;
    ok = ok && first_before_N4 == 144 && last_after_N4 == 144;
    ok = ok && first_before_N12 == 11664 && last_after_N12 == 1296;
    ok = ok && first_before_N84 == 3111696 && after_229 == 1204;
    ok = ok && final_p != 0 && final_p <= 1021;
    report(10, ok,
           "k=3506050 ladder checkpoints 16->9, 144, 11664->1296, 3111696, 1204 after p=229, "
           "empty by p=1021",
           t.secs());
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    if (failures) {
        std::printf("%d criterion(s) FAILED\n", failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
