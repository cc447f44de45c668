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

// The rational function field k(t) of the generic fiber, and kernels of
// matrices over it.

#ifndef CHARP_RATFUN_HPP
#define CHARP_RATFUN_HPP

#include <ostream>
#include <utility>
#include <vector>

#include "charp/linalg.hpp"
#include "charp/poly.hpp"

namespace charp {

class RatFn {
   public:
    RatFn() = default;
    explicit RatFn(FqPtr f) : num_(f), den_(Poly::constant(FieldElem(f, 1))) {}
    RatFn(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }
    explicit RatFn(Poly num)
        : num_(std::move(num)), den_(Poly::constant(FieldElem(num_.field(), 1))) {}

    static RatFn constant(const FieldElem& x) { return RatFn(Poly::constant(x)); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    const FqPtr& field() const { return num_.field(); }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.degree() == 0; }

    friend RatFn operator+(const RatFn& a, const RatFn& b) {
        return RatFn(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFn operator-(const RatFn& a, const RatFn& b) {
        return RatFn(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    RatFn operator-() const { return RatFn(-num_, den_); }
    friend RatFn operator*(const RatFn& a, const RatFn& b) {
        return RatFn(a.num_ * b.num_, a.den_ * b.den_);
    }
    RatFn inv() const {
        if (is_zero()) throw Error("division by zero in k(t)");
        return RatFn(den_, num_);
    }
    friend RatFn operator/(const RatFn& a, const RatFn& b) { return a * b.inv(); }

    friend bool operator==(const RatFn& a, const RatFn& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RatFn& a, const RatFn& b) { return !(a == b); }

    friend std::ostream& operator<<(std::ostream& os, const RatFn& a) {
        os << "(" << a.num_ << ")";
        if (a.den_.degree() != 0) os << "/(" << a.den_ << ")";
        return os;
    }

   private:
    void normalize() {
        if (den_.is_zero()) throw Error("rational function with zero denominator");
        if (num_.is_zero()) {
            den_ = Poly::constant(FieldElem(num_.field(), 1));
            return;
        }
        Poly g = gcd(num_, den_);
        num_ = num_ / g;
        den_ = den_ / g;
        FieldElem l = den_.lead();
        num_ = l.inv() * num_;
        den_ = l.inv() * den_;
    }
    Poly num_, den_;
};

using RatMatrix = Matrix<RatFn>;

// Basis of the right kernel over k(t); empty iff the matrix is injective on
// the generic fiber.
inline std::vector<std::vector<RatFn>> rat_kernel(const RatMatrix& m, const FqPtr& f) {
    RatFn zero(f), one = RatFn::constant(FieldElem(f, 1));
    return nullspace(m, zero, one);
}

// Clears denominators and the polynomial content of a k(t) vector; result is
// a coprime polynomial vector spanning the same line.
inline std::vector<Poly> clear_denominators(const std::vector<RatFn>& v) {
    if (v.empty()) return {};
    FqPtr f = v.front().field();
    Poly lcm = Poly::constant(FieldElem(f, 1));
    for (const auto& x : v) {
        if (x.is_zero()) continue;
        Poly g = gcd(lcm, x.den());
        lcm = lcm * (x.den() / g);
    }
    std::vector<Poly> r;
    r.reserve(v.size());
    for (const auto& x : v) r.push_back(x.num() * (lcm / x.den()));
    Poly content(f);
    for (const auto& q : r)
        if (!q.is_zero()) content = content.is_zero() ? q.monic() : gcd(content, q);
    if (!content.is_zero() && content.degree() > 0)
        for (auto& q : r) q = q / content;
    return r;
}

}  // namespace charp

#endif
