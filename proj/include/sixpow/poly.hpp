#ifndef SIXPOW_POLY_HPP
#define SIXPOW_POLY_HPP

#include <array>
#include <cstdint>
#include <map>
#include <string>

#include "sixpow/arith.hpp"

namespace sixpow {

/// Sparse polynomial over Z in (x, y, z, k), exponent-ordered.  Small by
/// construction (map patches and their Weierstrass residues), so a std::map
/// keeps everything deterministic.
class Poly {
  public:
    using Expo = std::array<uint16_t, 4>;  // exponents of x, y, z, k

    Poly() = default;
    static Poly constant(BigInt c);
    static Poly monomial(BigInt c, uint16_t ex, uint16_t ey, uint16_t ez, uint16_t ek = 0);
    static Poly var_x() { return monomial(1, 1, 0, 0); }
    static Poly var_y() { return monomial(1, 0, 1, 0); }
    static Poly var_z() { return monomial(1, 0, 0, 1); }
    static Poly var_k() { return monomial(1, 0, 0, 0, 1); }

    bool is_zero() const { return terms_.empty(); }
    const std::map<Expo, BigInt>& terms() const { return terms_; }

    Poly operator-() const;
    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly pow(unsigned e) const;

    /// Remainder after eliminating x^6 via x^6 = k z^6 - y^6.  Zero iff the
    /// polynomial lies in the ideal (x^6 + y^6 - k z^6).
    Poly reduce_mod_curve() const;

    BigInt eval(const BigInt& x, const BigInt& y, const BigInt& z, const BigInt& k) const;
    uint64_t eval_fp(uint64_t x, uint64_t y, uint64_t z, uint64_t k, uint64_t p) const;

    std::string str() const;

  private:
    void add_term(const Expo& e, const BigInt& c);
    std::map<Expo, BigInt> terms_;
};

}  // namespace sixpow

#endif
