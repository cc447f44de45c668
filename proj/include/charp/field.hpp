/*
   Copyright 2026 The charp Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

// Exact arithmetic in F_{p^m}. Elements carry a shared field descriptor;
// extension fields are F_p[x]/(f) for the lexicographically first monic
// irreducible f of degree m, so serialized values are reproducible.

#ifndef CHARP_FIELD_HPP
#define CHARP_FIELD_HPP

#include <cassert>
#include <cstdint>
#include <memory>
#include <numeric>
#include <ostream>
#include <vector>

#include "charp/errors.hpp"

namespace charp {

using i64 = long long;

namespace detail {

// Dense Z/p polynomials, coefficients low-to-high, no trailing zeros.
using ZpPoly = std::vector<i64>;

inline i64 mod_pos(i64 a, i64 p) {
    i64 r = a % p;
    return r < 0 ? r + p : r;
}

inline void zp_trim(ZpPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline ZpPoly zp_mul(const ZpPoly& a, const ZpPoly& b, i64 p) {
    if (a.empty() || b.empty()) return {};
    ZpPoly c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            c[i + j] = (c[i + j] + a[i] * b[j]) % p;
    zp_trim(c);
    return c;
}

inline ZpPoly zp_mod(ZpPoly a, const ZpPoly& f, i64 p) {
    i64 lead_inv = 0;
    {
        // Fermat inverse of the leading coefficient.
        i64 l = f.back(), r = 1, e = p - 2, base = l;
        while (e) {
            if (e & 1) r = r * base % p;
            base = base * base % p;
            e >>= 1;
        }
        lead_inv = r;
    }
    while (a.size() >= f.size()) {
        i64 q = a.back() * lead_inv % p;
        size_t shift = a.size() - f.size();
        for (size_t i = 0; i < f.size(); ++i)
            a[shift + i] = mod_pos(a[shift + i] - q * f[i], p);
        zp_trim(a);
    }
    return a;
}

inline ZpPoly zp_powmod(ZpPoly base, i64 e, const ZpPoly& f, i64 p) {
    ZpPoly r{1};
    base = zp_mod(std::move(base), f, p);
    while (e) {
        if (e & 1) r = zp_mod(zp_mul(r, base, p), f, p);
        base = zp_mod(zp_mul(base, base, p), f, p);
        e >>= 1;
    }
    return r;
}

inline ZpPoly zp_gcd(ZpPoly a, ZpPoly b, i64 p) {
    while (!b.empty()) {
        a = zp_mod(std::move(a), b, p);
        std::swap(a, b);
    }
    return a;
}

// x^(p^k) mod f, by repeated squaring-power.
inline ZpPoly zp_frob_pow(i64 p, i64 k, const ZpPoly& f) {
    ZpPoly x{0, 1};
    ZpPoly r = zp_mod(x, f, p);
    for (i64 i = 0; i < k; ++i) r = zp_powmod(r, p, f, p);
    return r;
}

inline bool zp_is_irreducible(const ZpPoly& f, i64 p) {
    const i64 m = static_cast<i64>(f.size()) - 1;
    // x^(p^m) == x mod f
    ZpPoly xq = zp_frob_pow(p, m, f);
    ZpPoly x = zp_mod(ZpPoly{0, 1}, f, p);
    if (xq != x) return false;
    // gcd(x^(p^(m/q)) - x, f) == 1 for every prime q | m
    for (i64 q = 2; q <= m; ++q) {
        if (m % q != 0) continue;
        bool prime = true;
        for (i64 d = 2; d * d <= q; ++d)
            if (q % d == 0) prime = false;
        if (!prime) continue;
        ZpPoly xd = zp_frob_pow(p, m / q, f);
        ZpPoly diff = xd;
        diff.resize(std::max(diff.size(), x.size()), 0);
        for (size_t i = 0; i < x.size(); ++i)
            diff[i] = mod_pos(diff[i] - x[i], p);
        zp_trim(diff);
        ZpPoly g = zp_gcd(f, diff, p);
        if (g.size() != 1) return false;
    }
    return true;
}

}  // namespace detail

struct FqDesc {
    i64 p;
    int m;
    // Monic irreducible modulus of degree m, low-to-high, size m+1.
    // For m == 1 this is x and arithmetic is plain mod p.
    detail::ZpPoly modulus;
    i64 order() const {
        i64 q = 1;
        for (int i = 0; i < m; ++i) q *= p;
        return q;
    }
};

using FqPtr = std::shared_ptr<const FqDesc>;

// Lexicographically first monic irreducible of degree m over F_p
// (coefficients enumerated low-to-high as base-p digits).
inline bool is_prime_i64(i64 p) {
    if (p < 2) return false;
    for (i64 d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

inline FqPtr make_field(i64 p, int m = 1) {
    if (!is_prime_i64(p)) throw Error("p must be prime");
    auto desc = std::make_shared<FqDesc>();
    desc->p = p;
    desc->m = m;
    if (m == 1) {
        desc->modulus = {0, 1};
        return desc;
    }
    i64 count = 1;
    for (int i = 0; i < m; ++i) count *= p;
    for (i64 code = 0; code < count; ++code) {
        detail::ZpPoly f(m + 1, 0);
        i64 c = code;
        for (int i = 0; i < m; ++i) {
            f[i] = c % p;
            c /= p;
        }
        f[m] = 1;
        if (detail::zp_is_irreducible(f, p)) {
            desc->modulus = f;
            return desc;
        }
    }
    throw Error("no irreducible modulus found");  // unreachable
}

class FieldElem {
   public:
    FieldElem() = default;
    FieldElem(FqPtr f, i64 value) : fld_(std::move(f)), c_(fld_->m, 0) {
        // value in [0, p^m) encoded base p; negative values reduced mod p (m=1 shortcut).
        i64 v = detail::mod_pos(value, fld_->order());
        for (int i = 0; i < fld_->m; ++i) {
            c_[i] = v % fld_->p;
            v /= fld_->p;
        }
    }
    FieldElem(FqPtr f, detail::ZpPoly coeffs) : fld_(std::move(f)), c_(std::move(coeffs)) {
        c_.resize(fld_->m, 0);
    }

    const FqPtr& field() const { return fld_; }
    bool is_zero() const {
        for (i64 x : c_)
            if (x != 0) return false;
        return true;
    }
    bool is_one() const {
        if (c_.empty() || c_[0] != 1) return false;
        for (size_t i = 1; i < c_.size(); ++i)
            if (c_[i] != 0) return false;
        return true;
    }

    i64 to_int() const {
        i64 v = 0;
        for (int i = fld_->m - 1; i >= 0; --i) v = v * fld_->p + c_[i];
        return v;
    }

    friend FieldElem operator+(const FieldElem& a, const FieldElem& b) {
        FieldElem r = a;
        for (int i = 0; i < a.fld_->m; ++i)
            r.c_[i] = (r.c_[i] + b.c_[i]) % a.fld_->p;
        return r;
    }
    friend FieldElem operator-(const FieldElem& a, const FieldElem& b) {
        FieldElem r = a;
        for (int i = 0; i < a.fld_->m; ++i)
            r.c_[i] = detail::mod_pos(r.c_[i] - b.c_[i], a.fld_->p);
        return r;
    }
    FieldElem operator-() const {
        FieldElem z(fld_, 0);
        return z - *this;
    }
    friend FieldElem operator*(const FieldElem& a, const FieldElem& b) {
        auto prod = detail::zp_mul(a.c_, b.c_, a.fld_->p);
        prod = detail::zp_mod(std::move(prod), a.fld_->modulus, a.fld_->p);
        return FieldElem(a.fld_, std::move(prod));
    }
    FieldElem pow(i64 e) const {
        FieldElem r(fld_, 1), base = *this;
        if (e < 0) {
            base = base.inv();
            e = -e;
        }
        while (e) {
            if (e & 1) r = r * base;
            base = base * base;
            e >>= 1;
        }
        return r;
    }
    FieldElem inv() const {
        if (is_zero()) throw Error("division by zero in F_q");
        return pow(fld_->order() - 2);
    }
    friend FieldElem operator/(const FieldElem& a, const FieldElem& b) { return a * b.inv(); }

    // x -> x^(p^e), the e-fold arithmetic Frobenius.
    FieldElem frobenius(i64 e = 1) const {
        FieldElem r = *this;
        for (i64 i = 0; i < e; ++i) r = r.pow(fld_->p);
        return r;
    }
    // Total p-th root: x -> x^(p^(m-1)), inverse of frobenius.
    FieldElem proot() const { return frobenius(fld_->m - 1); }

    friend bool operator==(const FieldElem& a, const FieldElem& b) { return a.c_ == b.c_; }
    friend bool operator!=(const FieldElem& a, const FieldElem& b) { return !(a == b); }

    friend std::ostream& operator<<(std::ostream& os, const FieldElem& x) {
        return os << x.to_int();
    }

   private:
    FqPtr fld_;
    detail::ZpPoly c_;
};

}  // namespace charp

#endif
