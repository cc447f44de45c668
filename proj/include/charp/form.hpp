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

// Homogeneous forms in the coordinates U, V of the projective line.
// The zero form is a distinguished value (degree() == -1) so that matrix
// entries forced to vanish by negative degree bounds stay representable.

#ifndef CHARP_FORM_HPP
#define CHARP_FORM_HPP

#include <algorithm>
#include <ostream>
#include <vector>

#include "charp/poly.hpp"

namespace charp {

class Form {
   public:
    Form() = default;
    // Zero form attached to a field.
    explicit Form(FqPtr f) : fld_(std::move(f)), deg_(-1) {}
    // coeffs[i] is the coefficient of U^(d-i) V^i, i = 0..d.
    Form(FqPtr f, int degree, std::vector<FieldElem> coeffs)
        : fld_(std::move(f)), deg_(degree), c_(std::move(coeffs)) {
        if (deg_ < 0) throw Error("form degree must be >= 0");
        if (static_cast<int>(c_.size()) != deg_ + 1)
            throw Error("form needs degree+1 coefficients");
        bool all_zero = true;
        for (const auto& x : c_)
            if (!x.is_zero()) all_zero = false;
        if (all_zero) {
            deg_ = -1;
            c_.clear();
        }
    }
    static Form zero(FqPtr f) { return Form(std::move(f)); }
    static Form constant(const FieldElem& x) {
        if (x.is_zero()) return Form(x.field());
        return Form(x.field(), 0, {x});
    }
    static Form U(const FqPtr& f) { return Form(f, 1, {FieldElem(f, 1), FieldElem(f, 0)}); }
    static Form V(const FqPtr& f) { return Form(f, 1, {FieldElem(f, 0), FieldElem(f, 1)}); }

    // Homogenization of a chart polynomial q(t), t = V/U, to total degree d.
    // Requires deg q <= d; the result is U^(d - deg q) times the minimal
    // homogenization.
    static Form homogenize(const Poly& q, int d) {
        if (q.is_zero()) return Form(q.field());
        if (q.degree() > d) throw Error("cannot homogenize: degree too small");
        std::vector<FieldElem> c(d + 1, FieldElem(q.field(), 0));
        for (int i = 0; i <= q.degree(); ++i) c[i] = q.coeff(i);
        return Form(q.field(), d, std::move(c));
    }

    const FqPtr& field() const { return fld_; }
    bool is_zero() const { return deg_ < 0; }
    int degree() const { return deg_; }
    const std::vector<FieldElem>& coeffs() const { return c_; }
    FieldElem coeff(int i) const {
        if (is_zero() || i < 0 || i > deg_) return FieldElem(fld_, 0);
        return c_[i];
    }

    // The chart polynomial f(1, t).
    Poly dehomogenize() const {
        if (is_zero()) return Poly(fld_);
        return Poly(fld_, c_);
    }
    // Exponent of U dividing the form; 0 for the zero form by convention.
    int u_exponent() const {
        if (is_zero()) return 0;
        return deg_ - dehomogenize().degree();
    }

    friend Form operator+(const Form& a, const Form& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        if (a.deg_ != b.deg_) throw Error("adding forms of different degrees");
        std::vector<FieldElem> c(a.c_);
        for (int i = 0; i <= a.deg_; ++i) c[i] = c[i] + b.c_[i];
        return Form(a.fld_, a.deg_, std::move(c));
    }
    friend Form operator-(const Form& a, const Form& b) { return a + (-b); }
    Form operator-() const {
        if (is_zero()) return *this;
        std::vector<FieldElem> c(c_);
        for (auto& x : c) x = -x;
        return Form(fld_, deg_, std::move(c));
    }
    friend Form operator*(const Form& a, const Form& b) {
        if (a.is_zero() || b.is_zero()) return Form(a.fld_ ? a.fld_ : b.fld_);
        std::vector<FieldElem> c(a.deg_ + b.deg_ + 1, FieldElem(a.fld_, 0));
        for (int i = 0; i <= a.deg_; ++i)
            for (int j = 0; j <= b.deg_; ++j)
                c[i + j] = c[i + j] + a.c_[i] * b.c_[j];
        return Form(a.fld_, a.deg_ + b.deg_, std::move(c));
    }
    friend Form operator*(const FieldElem& s, const Form& a) {
        if (a.is_zero() || s.is_zero()) return Form(a.fld_);
        std::vector<FieldElem> c(a.c_);
        for (auto& x : c) x = s * x;
        return Form(a.fld_, a.deg_, std::move(c));
    }

    // Exact division; throws if b does not divide a.
    friend Form operator/(const Form& a, const Form& b) {
        if (b.is_zero()) throw Error("form division by zero");
        if (a.is_zero()) return a;
        int ua = a.u_exponent(), ub = b.u_exponent();
        if (ua < ub) throw Error("form division is not exact");
        auto [q, r] = divmod(a.dehomogenize(), b.dehomogenize());
        if (!r.is_zero()) throw Error("form division is not exact");
        return homogenize(q, a.deg_ - b.deg_);
    }

    // Monic: leading coefficient (highest power of U) is 1.
    Form monic() const {
        if (is_zero()) return *this;
        for (const auto& x : c_)
            if (!x.is_zero()) return x.inv() * *this;
        return *this;
    }

    // Coefficients raised to the p^e-th power, monomials stretched by p^e;
    // equals f^(p^e) as a form.
    Form frobenius_twist(i64 e) const {
        if (e == 0 || is_zero()) return *this;
        i64 q = 1;
        for (i64 i = 0; i < e; ++i) q *= fld_->p;
        int nd = static_cast<int>(q) * deg_;
        std::vector<FieldElem> c(nd + 1, FieldElem(fld_, 0));
        for (int i = 0; i <= deg_; ++i) c[static_cast<size_t>(q) * i] = c_[i].frobenius(e);
        return Form(fld_, nd, std::move(c));
    }

    friend bool operator==(const Form& a, const Form& b) {
        return a.deg_ == b.deg_ && a.c_ == b.c_;
    }
    friend bool operator!=(const Form& a, const Form& b) { return !(a == b); }

    friend std::ostream& operator<<(std::ostream& os, const Form& f) {
        if (f.is_zero()) return os << "0";
        bool first = true;
        for (int i = 0; i <= f.deg_; ++i) {
            if (f.c_[i].is_zero()) continue;
            if (!first) os << " + ";
            first = false;
            int du = f.deg_ - i, dv = i;
            bool unit = f.c_[i].is_one();
            if (!unit || (du == 0 && dv == 0)) os << f.c_[i];
            auto var = [&](const char* name, int d) {
                if (d == 0) return;
                os << name;
                if (d > 1) os << "^" << d;
            };
            var("U", du);
            var("V", dv);
        }
        return os;
    }

   private:
    FqPtr fld_;
    int deg_ = -1;
    std::vector<FieldElem> c_;
};

// Monic gcd of a nonempty list of forms; throws AllZero if every input is zero.
inline Form form_gcd(const std::vector<Form>& fs) {
    if (fs.empty()) throw AllZero();
    FqPtr fld;
    int umin = -1;
    Poly g;
    bool any = false;
    for (const auto& f : fs) {
        if (f.field()) fld = f.field();
        if (f.is_zero()) continue;
        int u = f.u_exponent();
        umin = any ? std::min(umin, u) : u;
        g = any ? gcd(g, f.dehomogenize()) : f.dehomogenize().monic();
        any = true;
    }
    if (!any) throw AllZero();
    return Form::homogenize(g, g.degree() + umin).monic();
}

inline Form form_gcd(const Form& a, const Form& b) { return form_gcd(std::vector<Form>{a, b}); }

inline Form frobenius_twist(const Form& f, i64 e) { return f.frobenius_twist(e); }

}  // namespace charp

#endif
