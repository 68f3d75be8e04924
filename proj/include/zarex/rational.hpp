#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace zarex {

/// Exact rational number in canonical reduced form (denominator > 0).
///
/// Storage is 64-bit; every operation is carried out in 128-bit
/// intermediates and throws std::overflow_error when the reduced result
/// does not fit. Desk-scale instances stay far below that limit.
class Rat {
public:
    constexpr Rat() = default;
    Rat(std::int64_t value) : num_(value) {}  // NOLINT(google-explicit-constructor)
    Rat(std::int64_t num, std::int64_t den);

    /// Parses "p" or "p/q". Only the canonical spelling is accepted:
    /// no sign on q, gcd(p, q) = 1, q > 1 when written, no "+", no "-0".
    static Rat parse(std::string_view text);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_integer() const { return den_ == 1; }
    int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

    std::int64_t floor() const;
    std::int64_t ceil() const;
    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    std::string str() const;

    Rat operator-() const;
    Rat& operator+=(const Rat& o);
    Rat& operator-=(const Rat& o);
    Rat& operator*=(const Rat& o);
    Rat& operator/=(const Rat& o);

    friend Rat operator+(Rat a, const Rat& b) { return a += b; }
    friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
    friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
    friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

    friend bool operator==(const Rat& a, const Rat& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend std::strong_ordering operator<=>(const Rat& a, const Rat& b);

private:
    static Rat from_wide(__int128 num, __int128 den);

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rat& r);

Rat abs(const Rat& r);
Rat pow(Rat base, int exponent);
inline Rat min(const Rat& a, const Rat& b) { return b < a ? b : a; }
inline Rat max(const Rat& a, const Rat& b) { return a < b ? b : a; }

/// Smallest k / denom with (k / denom)^t >= x, for x >= 0 and t >= 1.
Rat upper_root(const Rat& x, int t, std::int64_t denom);
/// Largest k / denom with (k / denom)^t <= x, for x >= 0 and t >= 1.
Rat lower_root(const Rat& x, int t, std::int64_t denom);

/// A rational plus an integer multiple of a positive infinitesimal.
///
/// Used for infima of open constraints: "strictly greater than b" is the
/// value {b, +1}. Ordering is lexicographic (base, then eps coefficient).
struct EpsRat {
    Rat base;
    std::int64_t eps = 0;

    static EpsRat just_above(const Rat& r) { return {r, 1}; }

    friend EpsRat operator+(const EpsRat& a, const EpsRat& b) { return {a.base + b.base, a.eps + b.eps}; }
    friend EpsRat operator+(const EpsRat& a, const Rat& b) { return {a.base + b, a.eps}; }
    friend bool operator==(const EpsRat& a, const EpsRat& b) = default;
    friend std::strong_ordering operator<=>(const EpsRat& a, const EpsRat& b)
    {
        if (auto c = a.base <=> b.base; c != 0) return c;
        return a.eps <=> b.eps;
    }
};

inline EpsRat max(const EpsRat& a, const EpsRat& b) { return a < b ? b : a; }

std::ostream& operator<<(std::ostream& os, const EpsRat& r);

}  // namespace zarex
