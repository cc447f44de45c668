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

// Dense univariate polynomials over F_{p^m} (the affine chart t = V/U).

#ifndef CHARP_POLY_HPP
#define CHARP_POLY_HPP

#include <ostream>
#include <utility>
#include <vector>

#include "charp/field.hpp"

namespace charp {

class Poly {
   public:
    Poly() = default;
    explicit Poly(FqPtr f) : fld_(std::move(f)) {}
    Poly(FqPtr f, std::vector<FieldElem> coeffs) : fld_(std::move(f)), c_(std::move(coeffs)) {
        trim();
    }
    static Poly constant(const FieldElem& x) {
        Poly r(x.field());
        if (!x.is_zero()) r.c_ = {x};
        return r;
    }
    static Poly t(const FqPtr& f) {
        return Poly(f, {FieldElem(f, 0), FieldElem(f, 1)});
    }

    const FqPtr& field() const { return fld_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    const std::vector<FieldElem>& coeffs() const { return c_; }
    FieldElem coeff(int i) const {
        if (i < 0 || i >= static_cast<int>(c_.size())) return FieldElem(fld_, 0);
        return c_[i];
    }
    FieldElem lead() const { return c_.back(); }

    friend Poly operator+(const Poly& a, const Poly& b) {
        Poly r(a.fld_ ? a.fld_ : b.fld_);
        r.c_.resize(std::max(a.c_.size(), b.c_.size()), FieldElem(r.fld_, 0));
        for (size_t i = 0; i < a.c_.size(); ++i) r.c_[i] = r.c_[i] + a.c_[i];
        for (size_t i = 0; i < b.c_.size(); ++i) r.c_[i] = r.c_[i] + b.c_[i];
        r.trim();
        return r;
    }
    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
    Poly operator-() const {
        Poly r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly(a.fld_ ? a.fld_ : b.fld_);
        Poly r(a.fld_);
        r.c_.assign(a.c_.size() + b.c_.size() - 1, FieldElem(a.fld_, 0));
        for (size_t i = 0; i < a.c_.size(); ++i)
            for (size_t j = 0; j < b.c_.size(); ++j)
                r.c_[i + j] = r.c_[i + j] + a.c_[i] * b.c_[j];
        r.trim();
        return r;
    }
    friend Poly operator*(const FieldElem& s, const Poly& a) {
        Poly r = a;
        for (auto& x : r.c_) x = s * x;
        r.trim();
        return r;
    }

    // Returns {quotient, remainder}.
    friend std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
        if (b.is_zero()) throw Error("polynomial division by zero");
        Poly q(a.fld_), r = a;
        FieldElem linv = b.lead().inv();
        while (!r.is_zero() && r.degree() >= b.degree()) {
            int shift = r.degree() - b.degree();
            FieldElem f = r.lead() * linv;
            std::vector<FieldElem> qc(shift + 1, FieldElem(a.fld_, 0));
            qc[shift] = f;
            Poly term(a.fld_, std::move(qc));
            q = q + term;
            r = r - term * b;
        }
        return {q, r};
    }
    friend Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }
    friend Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

    Poly monic() const {
        if (is_zero()) return *this;
        return lead().inv() * *this;
    }

    friend Poly gcd(Poly a, Poly b) {
        while (!b.is_zero()) {
            a = a % b;
            std::swap(a, b);
        }
        return a.monic();
    }

    FieldElem eval(const FieldElem& x) const {
        FieldElem r(x.field(), 0);
        for (int i = degree(); i >= 0; --i) r = r * x + c_[i];
        return r;
    }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    friend std::ostream& operator<<(std::ostream& os, const Poly& a) {
        if (a.is_zero()) return os << "0";
        bool first = true;
        for (int i = a.degree(); i >= 0; --i) {
            if (a.c_[i].is_zero()) continue;
            if (!first) os << " + ";
            first = false;
            if (i == 0 || !a.c_[i].is_one()) os << a.c_[i];
            if (i >= 1) {
                if (!a.c_[i].is_one()) os << "*";
                os << "t";
                if (i > 1) os << "^" << i;
            }
        }
        return os;
    }

   private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    FqPtr fld_;
    std::vector<FieldElem> c_;  // low-to-high
};

}  // namespace charp

#endif
