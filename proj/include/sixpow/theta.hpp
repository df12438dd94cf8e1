#ifndef SIXPOW_THETA_HPP
#define SIXPOW_THETA_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sixpow/arith.hpp"

namespace sixpow {

/// Positive definite binary form a u^2 + b u v + c v^2.
struct BinaryQF {
    int64_t a, b, c;
    int64_t disc() const { return b * b - 4 * a * c; }
};

/// One of the six ternary forms, stored as 2*Gram plus the unary (+) binary
/// split used by the fast theta path.
struct TernaryQF {
    std::string name;
    std::array<std::array<int64_t, 3>, 3> gram2;
    int unary_var;        // 0, 1 or 2
    int64_t unary_coef;   // e: contributes e * t^2
    BinaryQF binary;      // on the remaining two variables
    int64_t value(int64_t x, int64_t y, int64_t z) const;
    int64_t det_gram2() const;
    bool positive_definite() const;
};

const std::array<TernaryQF, 6>& builtin_forms();

/// Representation counts r(n) = #{ v in Z^3 : Q(v) = n }, n <= limit.
struct ThetaSeries {
    uint64_t limit;
    std::vector<int64_t> r;
};

/// Fast path: binary theta times unary theta (convolution).
ThetaSeries theta_coeffs(const TernaryQF& q, uint64_t limit);

/// Direct lattice enumeration; the independent oracle for the fast path.
ThetaSeries theta_coeffs_naive(const TernaryQF& q, uint64_t limit);

/// 16-scaled coefficients of h = (5 th1 - 3 th2 - 7 th3 + 5 th4 + 9 th5
/// - 3 th6) / 16:  C(n) = 16 c(n), always an integer.
struct HSeries {
    uint64_t limit;
    bool odd_only;  // true: even-index entries are not populated
    std::vector<int64_t> C;
};

/// odd_only skips even coefficients (the certificates only read odd n),
/// halving the work at large limits.
HSeries h_coeffs(uint64_t limit, bool odd_only = false);

// binary cache: "SIXTHETA" magic, then limit, coverage flag and raw
// little-endian int64 coefficients
void write_h_cache(const std::string& path, const HSeries& h);
std::optional<HSeries> read_h_cache(const std::string& path);

// ---------------------------------------------------------------------------
// rank-zero certificates for E_{k^3}, odd k
// ---------------------------------------------------------------------------

enum class CertVerdict { CertifiedRankZero, Inconclusive };

struct ThetaCertificate {
    uint64_t k;
    uint64_t kprime;  // squarefree part k / m^2
    int64_t C;        // C(k'), 0 when k' = 5 (mod 8) short-circuits
    CertVerdict verdict;
};

/// Certified means L(E_{k^3}, 1) != 0, hence rank zero: k' squarefree with
/// k' = 1 (mod 8) and C(k') != 0.  Everything else is inconclusive.
class RankZeroCertifier {
  public:
    explicit RankZeroCertifier(HSeries h) : h_(std::move(h)) {}
    explicit RankZeroCertifier(uint64_t limit) : h_(h_coeffs(limit, /*odd_only=*/true)) {}

    uint64_t limit() const { return h_.limit; }
    const HSeries& series() const { return h_; }

    /// Requires k odd, not divisible by 3, sixth-power-free, with
    /// squarefree part within the series limit.
    ThetaCertificate certify(uint64_t k) const;

  private:
    HSeries h_;
};

}  // namespace sixpow

#endif
