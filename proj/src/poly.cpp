#include "sixpow/poly.hpp"

#include <sstream>

namespace sixpow {

Poly Poly::constant(BigInt c) { return monomial(std::move(c), 0, 0, 0, 0); }

Poly Poly::monomial(BigInt c, uint16_t ex, uint16_t ey, uint16_t ez, uint16_t ek) {
    Poly p;
    if (c != 0) p.terms_[{ex, ey, ez, ek}] = std::move(c);
    return p;
}

void Poly::add_term(const Expo& e, const BigInt& c) {
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        if (c != 0) terms_[e] = c;
        return;
    }
    it->second += c;
    if (it->second == 0) terms_.erase(it);
}

Poly Poly::operator-() const {
    Poly r;
    for (const auto& [e, c] : terms_) r.terms_[e] = -c;
    return r;
}

Poly Poly::operator+(const Poly& o) const {
    Poly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

Poly Poly::operator-(const Poly& o) const {
    Poly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
    return r;
}

Poly Poly::operator*(const Poly& o) const {
    Poly r;
    for (const auto& [e1, c1] : terms_) {
        for (const auto& [e2, c2] : o.terms_) {
            Expo e{static_cast<uint16_t>(e1[0] + e2[0]), static_cast<uint16_t>(e1[1] + e2[1]),
                   static_cast<uint16_t>(e1[2] + e2[2]), static_cast<uint16_t>(e1[3] + e2[3])};
            r.add_term(e, c1 * c2);
        }
    }
    return r;
}

Poly Poly::pow(unsigned e) const {
    Poly r = constant(1);
    Poly b = *this;
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

Poly Poly::reduce_mod_curve() const {
    Poly r = *this;
    while (true) {
        auto it = std::find_if(r.terms_.begin(), r.terms_.end(),
                               [](const auto& t) { return t.first[0] >= 6; });
        if (it == r.terms_.end()) break;
        Expo e = it->first;
        BigInt c = it->second;
        r.terms_.erase(it);
        // c x^ex ... = c x^(ex-6) (k z^6 - y^6) ...
        Expo e1{static_cast<uint16_t>(e[0] - 6), e[1], static_cast<uint16_t>(e[2] + 6),
                static_cast<uint16_t>(e[3] + 1)};
        Expo e2{static_cast<uint16_t>(e[0] - 6), static_cast<uint16_t>(e[1] + 6), e[2], e[3]};
        r.add_term(e1, c);
        r.add_term(e2, -c);
    }
    return r;
}

BigInt Poly::eval(const BigInt& x, const BigInt& y, const BigInt& z, const BigInt& k) const {
    BigInt out = 0;
    for (const auto& [e, c] : terms_)
        out += c * ipow(x, e[0]) * ipow(y, e[1]) * ipow(z, e[2]) * ipow(k, e[3]);
    return out;
}

uint64_t Poly::eval_fp(uint64_t x, uint64_t y, uint64_t z, uint64_t k, uint64_t p) const {
    auto powp = [p](uint64_t b, unsigned e) {
        uint64_t r = 1 % p;
        b %= p;
        while (e--) r = mul_mod(r, b, p);
        return r;
    };
    uint64_t out = 0;
    for (const auto& [e, c] : terms_) {
        uint64_t t = mod_u64(c, p);
        t = mul_mod(t, powp(x, e[0]), p);
        t = mul_mod(t, powp(y, e[1]), p);
        t = mul_mod(t, powp(z, e[2]), p);
        t = mul_mod(t, powp(k, e[3]), p);
        out = (out + t) % p;
    }
    return out;
}

std::string Poly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    const char* names[4] = {"x", "y", "z", "k"};
    for (const auto& [e, c] : terms_) {
        BigInt v = c;
        if (!first) os << (v > 0 ? " + " : " - ");
        else if (v < 0) os << "-";
        first = false;
        if (v < 0) v = -v;
        bool has_var = e[0] || e[1] || e[2] || e[3];
        if (v != 1 || !has_var) os << v.str();
        bool star = (v != 1);
        for (int i = 0; i < 4; ++i) {
            if (!e[i]) continue;
            if (star) os << "*";
            os << names[i];
            if (e[i] > 1) os << "^" << e[i];
            star = true;
        }
    }
    return os.str();
}

}  // namespace sixpow
