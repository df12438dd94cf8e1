#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>
#include <sstream>

#include "sixpow/curve_local.hpp"

using namespace sixpow;

namespace {

// independent oracle: sums of two sixth powers mod p by the full double loop
std::set<uint64_t> sumset_naive(uint64_t p) {
    std::set<uint64_t> out;
    for (uint64_t a = 0; a < p; ++a)
        for (uint64_t b = 0; b < p; ++b)
            out.insert((pow_mod(a, 6, p) + pow_mod(b, 6, p)) % p);
    return out;
}

std::set<uint64_t> to_set(const SumsetCache& c) {
    std::set<uint64_t> out;
    for (uint64_t r = 0; r < c.p; ++r)
        if (c.bits[r]) out.insert(r);
    return out;
}

}  // namespace

TEST_CASE("sumset_mod_p: pinned small primes") {
    CHECK(to_set(sumset_mod_p(7)) == std::set<uint64_t>{0, 1, 2});
    CHECK(to_set(sumset_mod_p(5)) == std::set<uint64_t>{0, 1, 2, 3, 4});
    CHECK(to_set(sumset_mod_p(13)) == std::set<uint64_t>{0, 1, 2, 11, 12});
}

TEST_CASE("sumset_mod_p matches double-loop oracle for all p <= 150") {
    for (uint32_t p : primes_up_to(150)) CHECK(to_set(sumset_mod_p(p)) == sumset_naive(p));
}

TEST_CASE("sumsets are all of F_p when p = 5 (mod 6)") {
    for (uint32_t p : primes_up_to(400)) {
        if (p > 3 && p % 6 == 5) {
            auto c = sumset_mod_p(p);
            for (uint64_t r = 0; r < p; ++r) CHECK(c.bits[r]);
        }
    }
}

TEST_CASE("is_sum_of_two_integer_sixth_powers") {
    auto r = is_sum_of_two_integer_sixth_powers(65);
    REQUIRE(r.has_value());
    CHECK(r->first == 2);
    CHECK(r->second == 1);
    r = is_sum_of_two_integer_sixth_powers(2);
    REQUIRE(r.has_value());
    CHECK(r->first == 1);
    CHECK(r->second == 1);
    CHECK_FALSE(is_sum_of_two_integer_sixth_powers(2017).has_value());
    CHECK(is_sum_of_two_integer_sixth_powers(64)->first == 2);
    CHECK(is_sum_of_two_integer_sixth_powers(1)->first == 1);
}

TEST_CASE("is_locally_solvable: pinned verdicts") {
    auto c = is_locally_solvable(2017);
    CHECK(c.locally_solvable);
    CHECK(c.reason == LocalReason::Passes);

    c = is_locally_solvable(16);  // 16 = 2^4 is sixth-power-free; dies at p = 2
    CHECK_FALSE(c.locally_solvable);
    CHECK(c.reason == LocalReason::FailsModP);
    CHECK(c.detail_p == 2);

    c = is_locally_solvable(3);
    CHECK_FALSE(c.locally_solvable);
    CHECK(c.reason == LocalReason::BadPrime3Mod4);
    CHECK(c.detail_p == 3);

    c = is_locally_solvable(65);
    CHECK(c.locally_solvable);
    CHECK(c.reason == LocalReason::IntegerSum);
    CHECK(c.sum_a == 2);
    CHECK(c.sum_b == 1);

    CHECK_THROWS_AS(is_locally_solvable(64), std::invalid_argument);
    CHECK(classify_local(64).reason == LocalReason::NotSixthPowerFree);
}

TEST_CASE("qp_solvable_oracle: pinned verdicts") {
    CHECK(qp_solvable_oracle(2, 3));        // (1 : 1 : 1) is smooth mod 3
    CHECK_FALSE(qp_solvable_oracle(16, 2)); // no Q_2 points on x^6 + y^6 = 16
    CHECK(qp_solvable_oracle(2017, 13));
    CHECK(qp_solvable_oracle(2017, 2));
    CHECK(qp_solvable_oracle(65, 5));       // 5 | 65, 5 = 1 (mod 4)
    CHECK_FALSE(qp_solvable_oracle(21, 3)); // 3 | 21, 3 = 3 (mod 4)
}

TEST_CASE("oracle agrees with the sumset criterion at good primes") {
    // p = 5 (mod 6): sixth powers are squares, every residue is a sum of two.
    // p = 1 (mod 12): -1 is a sixth power, so (t : 1 : 0) always lifts.
    // p = 7 (mod 12): the sumset test is exactly F_p-point existence.
    std::mt19937_64 rng(2718);
    auto primes = primes_up_to(200);
    for (int trial = 0; trial < 120; ++trial) {
        uint64_t k = 1 + rng() % 10000;
        if (!sixth_power_split(k).is_free) continue;
        uint32_t p = primes[3 + rng() % (primes.size() - 3)];  // p >= 7
        if ((6 * k) % p == 0) continue;
        bool oracle = qp_solvable_oracle(k, p);
        if (p % 12 == 7) {
            CHECK(oracle == sumset_mod_p(p).contains(k % p));
        } else {
            CHECK(oracle);
        }
    }
}

TEST_CASE("at p = 1 (mod 12) the curve always has Q_p points") {
    for (uint64_t k : {5ull, 2017ull, 19ull + 37 * 3}) {
        CHECK(qp_solvable_oracle(k, 13));
        CHECK(qp_solvable_oracle(k, 37));
    }
}

TEST_CASE("oracle confirms the mod-8 and mod-9 patterns") {
    for (uint64_t k = 1; k <= 400; ++k) {
        if (!sixth_power_split(k).is_free) continue;
        CHECK(qp_solvable_oracle(k, 2) == (k % 8 == 1 || k % 8 == 2));
        CHECK(qp_solvable_oracle(k, 3) == (k % 9 == 1 || k % 9 == 2));
    }
}

TEST_CASE("admissible classes mod 504") {
    const auto& cls = admissible_classes_mod_504();
    CHECK(cls.size() == 8);
    for (uint64_t r : cls) {
        CHECK((r % 7 == 1 || r % 7 == 2));
        CHECK((r % 8 == 1 || r % 8 == 2));
        CHECK((r % 9 == 1 || r % 9 == 2));
    }
    CHECK(cls.front() == 1);  // 2017 = 4*504 + 1 sits in this class
}

TEST_CASE("enumerate_locally_solvable: small bounds") {
    CHECK(enumerate_locally_solvable(2017).empty());
    auto v = enumerate_locally_solvable(2018);
    REQUIRE(v.size() == 1);
    CHECK(v[0] == 2017);
}

TEST_CASE("enumerate_locally_solvable equals the shortcut-free per-k filter") {
    const uint64_t bound = 100000;
    auto fast = enumerate_locally_solvable(bound);
    std::vector<uint64_t> slow;
    for (uint64_t k = 1; k < bound; ++k) {
        if (classify_local(k).reason == LocalReason::Passes) slow.push_back(k);
    }
    CHECK(fast == slow);
    for (uint64_t k : fast) {
        for (auto [p, e] : factorize(k)) {
            (void)e;
            CHECK(p % 4 != 3);
        }
    }
}

TEST_CASE("enumeration is deterministic across thread counts") {
    auto a = enumerate_locally_solvable(250000, 1);
    auto b = enumerate_locally_solvable(250000, 3);
    CHECK(a == b);
}

TEST_CASE("k-list round trip and format") {
    std::vector<uint64_t> ks{2017, 2162, 5297};
    std::ostringstream os;
    write_klist(os, ks);
    CHECK(os.str() == "2017\n2162\n5297\n");
    std::istringstream is(os.str());
    CHECK(read_klist(is) == ks);

    std::istringstream bad("5\n3\n");
    CHECK_THROWS_AS(read_klist(bad), std::invalid_argument);
}
