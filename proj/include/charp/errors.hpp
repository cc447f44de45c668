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

#ifndef CHARP_ERRORS_HPP
#define CHARP_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace charp {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct AllZero : Error {
    AllZero() : Error("gcd of all-zero forms is undefined") {}
};

struct ZeroRank : Error {
    ZeroRank() : Error("slope of a rank-0 bundle is undefined") {}
};

struct InvalidCover : Error {
    explicit InvalidCover(const std::string& msg) : Error(msg) {}
};

struct DegreeMismatch : Error {
    int row, col;
    DegreeMismatch(int i, int j, const std::string& msg)
        : Error(msg), row(i), col(j) {}
};

struct NotSymmetric : Error {
    NotSymmetric() : Error("Kodaira-Spencer matrix is not symmetric") {}
};

struct NotLocalLocal : Error {
    NotLocalLocal() : Error("Dieudonne module is not of local-local type") {}
};

struct FVNotZero : Error {
    FVNotZero() : Error("FV or VF is nonzero; not a p-torsion Dieudonne module") {}
    explicit FVNotZero(const std::string& msg) : Error(msg) {}
};

struct NotEquivariant : Error {
    NotEquivariant() : Error("morphism does not commute with the p-mappings") {}
    explicit NotEquivariant(const std::string& msg) : Error(msg) {}
};

struct NotConstant : Error {
    std::vector<int> splitting_type;
    explicit NotConstant(std::vector<int> twists)
        : Error("restricted Lie bundle is not trivial, cannot descend"),
          splitting_type(std::move(twists)) {}
};

struct NotSlopeZero : Error {
    NotSlopeZero() : Error("subsheaf does not have slope 0") {}
};

struct NotSaturated : Error {
    NotSaturated() : Error("subsheaf is not saturated") {}
};

struct OracleDegreeMismatch : Error {
    int step;
    OracleDegreeMismatch(int s, const std::string& msg) : Error(msg), step(s) {}
};

struct HomVanishingViolated : Error {
    HomVanishingViolated()
        : Error("composite into negative quotient is nonzero; validator bug") {}
};

struct InconsistentDescriptor : Error {
    explicit InconsistentDescriptor(const std::string& msg) : Error(msg) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

}  // namespace charp

#endif
