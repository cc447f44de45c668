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

// Split vector bundles on the projective line (every bundle splits there,
// so the splitting type is the canonical representation and the HN
// filtration is a sort), plus abstract (rank, degree, genus) slope data for
// base curves where only inequality-level information is available.

#ifndef CHARP_BUNDLES_HPP
#define CHARP_BUNDLES_HPP

#include <algorithm>
#include <numeric>
#include <optional>
#include <ostream>
#include <vector>

#include <boost/rational.hpp>

#include "charp/errors.hpp"

namespace charp {

using Rat = boost::rational<long long>;

struct HNBlock {
    Rat slope;
    int rank;
    friend bool operator==(const HNBlock&, const HNBlock&) = default;
};
using HNProfile = std::vector<HNBlock>;

class SplitBundle {
   public:
    SplitBundle() = default;
    explicit SplitBundle(std::vector<int> twists) : twists_(std::move(twists)) {}

    const std::vector<int>& twists() const { return twists_; }
    int rank() const { return static_cast<int>(twists_.size()); }
    long long degree() const { return std::accumulate(twists_.begin(), twists_.end(), 0LL); }

    // Canonical form: twists sorted descending.
    SplitBundle canonical() const {
        std::vector<int> t = twists_;
        std::sort(t.begin(), t.end(), std::greater<int>());
        return SplitBundle(std::move(t));
    }

    friend bool operator==(const SplitBundle& a, const SplitBundle& b) {
        return a.canonical().twists_ == b.canonical().twists_;
    }

    friend std::ostream& operator<<(std::ostream& os, const SplitBundle& b) {
        os << "[";
        auto t = b.canonical().twists_;
        for (size_t i = 0; i < t.size(); ++i) os << (i ? "," : "") << t[i];
        return os << "]";
    }

   private:
    std::vector<int> twists_;
};

struct AbstractBundle {
    int rank = 0;
    long long degree = 0;
    int genus = 0;
    long long prime = 0;
    // Optional HN profile; absent means the bundle is treated as semistable.
    std::optional<HNProfile> profile;
};

inline Rat slope(const SplitBundle& b) {
    if (b.rank() == 0) throw ZeroRank();
    return Rat(b.degree(), b.rank());
}

inline Rat slope(const AbstractBundle& b) {
    if (b.rank == 0) throw ZeroRank();
    return Rat(b.degree, b.rank);
}

// Equal-twist groups of the splitting type, in strictly decreasing slope order.
inline HNProfile hn_filtration(const SplitBundle& b) {
    if (b.rank() == 0) throw ZeroRank();
    HNProfile profile;
    const std::vector<int> sorted = b.canonical().twists();
    for (int t : sorted) {
        if (!profile.empty() && profile.back().slope == Rat(t))
            ++profile.back().rank;
        else
            profile.push_back({Rat(t), 1});
    }
    return profile;
}

inline Rat mu_max(const SplitBundle& b) { return hn_filtration(b).front().slope; }
inline Rat mu_min(const SplitBundle& b) { return hn_filtration(b).back().slope; }

inline Rat mu_max(const AbstractBundle& b) {
    if (b.rank == 0) throw ZeroRank();
    return b.profile ? b.profile->front().slope : slope(b);
}
inline Rat mu_min(const AbstractBundle& b) {
    if (b.rank == 0) throw ZeroRank();
    return b.profile ? b.profile->back().slope : slope(b);
}

inline SplitBundle dual_bundle(const SplitBundle& b) {
    std::vector<int> t = b.twists();
    for (int& x : t) x = -x;
    std::sort(t.begin(), t.end(), std::greater<int>());
    return SplitBundle(std::move(t));
}

inline SplitBundle twist_by(const SplitBundle& b, int d) {
    std::vector<int> t = b.twists();
    for (int& x : t) x += d;
    return SplitBundle(std::move(t));
}

inline SplitBundle frobenius_pullback(const SplitBundle& b, long long p, int e) {
    long long q = 1;
    for (int i = 0; i < e; ++i) q *= p;
    std::vector<int> t = b.twists();
    for (int& x : t) x = static_cast<int>(q * x);
    return SplitBundle(std::move(t));
}

// Pullback along a degree-d finite etale cover; the base genus follows the
// Hurwitz relation 2g' - 2 = d(2g - 2).
inline AbstractBundle formal_cover_pullback(const AbstractBundle& b, int d) {
    if (d < 1) throw InvalidCover("cover degree must be >= 1");
    long long twog = static_cast<long long>(d) * (2LL * b.genus - 2) + 2;
    if (twog % 2 != 0 || twog < 0)
        throw InvalidCover("no etale cover: Hurwitz genus is not a nonnegative integer");
    AbstractBundle r = b;
    r.degree = b.degree * d;
    r.genus = static_cast<int>(twog / 2);
    if (b.profile) {
        HNProfile prof = *b.profile;
        for (auto& blk : prof) blk.slope *= d;
        r.profile = prof;
    }
    return r;
}

// dim Hom(E, F) on the projective line by counting monomials: a map
// O(a) -> O(b) is a form of degree b - a, contributing max(0, b-a+1).
inline long long hom_dimension(const SplitBundle& e, const SplitBundle& f) {
    long long total = 0;
    for (int a : e.twists())
        for (int b : f.twists()) total += std::max(0, b - a + 1);
    return total;
}

template <class E, class F>
inline bool hom_vanishes(const E& e, const F& f) {
    return mu_min(e) > mu_max(f);
}

struct RatInterval {
    Rat lo, hi;
};

// Langer's bound: mu_min - mu_bar_min <= (rank-1)/p * max(0, 2g(C)-2),
// so mu_bar_min lies in [mu_min - width, mu_min]. Width 0 for genus <= 1.
inline RatInterval mu_bar_min_bounds(const AbstractBundle& b) {
    if (b.rank == 0) throw ZeroRank();
    Rat mmin = mu_min(b);
    long long w = std::max(0LL, 2LL * b.genus - 2);
    Rat width = Rat(static_cast<long long>(b.rank - 1) * w, b.prime);
    return {mmin - width, mmin};
}

inline RatInterval mu_bar_max_bounds(const AbstractBundle& b) {
    if (b.rank == 0) throw ZeroRank();
    Rat mmax = mu_max(b);
    long long w = std::max(0LL, 2LL * b.genus - 2);
    Rat width = Rat(static_cast<long long>(b.rank - 1) * w, b.prime);
    return {mmax, mmax + width};
}

enum class Positivity { Ample, Nef, NotNef, UnknownWithinBound };

inline const char* to_string(Positivity p) {
    switch (p) {
        case Positivity::Ample: return "Ample";
        case Positivity::Nef: return "Nef";
        case Positivity::NotNef: return "NotNef";
        default: return "UnknownWithinBound";
    }
}

// Barton's criterion. On the projective line mu_bar equals mu for split
// bundles, so the verdict reads off the minimal twist.
inline Positivity positivity_verdict(const SplitBundle& b) {
    if (b.rank() == 0) throw ZeroRank();
    int mn = *std::min_element(b.twists().begin(), b.twists().end());
    if (mn > 0) return Positivity::Ample;
    if (mn == 0) return Positivity::Nef;
    return Positivity::NotNef;
}

inline Positivity positivity_verdict(const AbstractBundle& b) {
    RatInterval iv = mu_bar_min_bounds(b);
    if (iv.lo > 0) return Positivity::Ample;
    if (iv.lo >= 0) return Positivity::Nef;
    if (iv.hi < 0) return Positivity::NotNef;
    return Positivity::UnknownWithinBound;
}

}  // namespace charp

#endif
