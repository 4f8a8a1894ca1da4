#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace starprod {

/// The fixed, ordered parameter alphabet of the engine. hbar comes first;
/// everything after it is a declared real constant. The ordering fixes the
/// canonical form of every polynomial and printed expression.
inline constexpr std::size_t kNumParams = 12;

inline constexpr std::array<std::string_view, kNumParams> kParamNames = {
    "hbar", "gamma", "m",   "omega", "eta",   "sigma",
    "phi",  "xi",    "phip", "xip",  "phipp", "xipp",
};

inline constexpr std::size_t kHbarIndex = 0;
inline constexpr std::size_t kGammaIndex = 1;
inline constexpr std::size_t kMassIndex = 2;
inline constexpr std::size_t kOmegaIndex = 3;
inline constexpr std::size_t kEtaIndex = 4;
inline constexpr std::size_t kSigmaIndex = 5;
inline constexpr std::size_t kPhiIndex = 6;
inline constexpr std::size_t kXiIndex = 7;
inline constexpr std::size_t kPhipIndex = 8;
inline constexpr std::size_t kXipIndex = 9;
inline constexpr std::size_t kPhippIndex = 10;
inline constexpr std::size_t kXippIndex = 11;

inline std::optional<std::size_t> param_index(std::string_view name) {
    for (std::size_t k = 0; k < kNumParams; ++k)
        if (kParamNames[k] == name) return k;
    return std::nullopt;
}

/// Exponent vector of a parameter monomial, ordered graded-lexicographically.
struct Mono {
    std::array<std::uint16_t, kNumParams> e{};

    int total() const {
        int t = 0;
        for (auto x : e) t += x;
        return t;
    }

    bool is_unit() const {
        for (auto x : e)
            if (x != 0) return false;
        return true;
    }

    static Mono one() { return Mono{}; }

    static Mono var(std::size_t k, int power = 1) {
        Mono m;
        m.e[k] = static_cast<std::uint16_t>(power);
        return m;
    }

    friend Mono operator*(const Mono& a, const Mono& b) {
        Mono r;
        for (std::size_t k = 0; k < kNumParams; ++k)
            r.e[k] = static_cast<std::uint16_t>(a.e[k] + b.e[k]);
        return r;
    }

    /// Componentwise divisibility.
    bool divides(const Mono& other) const {
        for (std::size_t k = 0; k < kNumParams; ++k)
            if (e[k] > other.e[k]) return false;
        return true;
    }

    /// Exact quotient; caller must have checked divisibility.
    friend Mono operator/(const Mono& a, const Mono& b) {
        Mono r;
        for (std::size_t k = 0; k < kNumParams; ++k)
            r.e[k] = static_cast<std::uint16_t>(a.e[k] - b.e[k]);
        return r;
    }

    friend bool operator==(const Mono& a, const Mono& b) { return a.e == b.e; }
    friend bool operator!=(const Mono& a, const Mono& b) { return a.e != b.e; }

    // graded-lex: compare total degree, then exponents with earlier
    // parameters more significant
    friend bool operator<(const Mono& a, const Mono& b) {
        int ta = a.total(), tb = b.total();
        if (ta != tb) return ta < tb;
        for (std::size_t k = 0; k < kNumParams; ++k)
            if (a.e[k] != b.e[k]) return a.e[k] < b.e[k];
        return false;
    }
};

inline std::string to_string(const Mono& m) {
    std::string out;
    for (std::size_t k = 0; k < kNumParams; ++k) {
        if (m.e[k] == 0) continue;
        if (!out.empty()) out += "*";
        out += std::string(kParamNames[k]);
        if (m.e[k] > 1) out += "^" + std::to_string(m.e[k]);
    }
    return out.empty() ? "1" : out;
}

} // namespace starprod
