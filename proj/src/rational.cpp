#include "zarex/rational.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <charconv>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "zarex/errors.hpp"

namespace zarex {
namespace {

using wide = __int128;
using boost::multiprecision::cpp_int;

wide gcd_wide(wide a, wide b)
{
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        wide t = a % b;
        a = b;
        b = t;
    }
    return a;
}

bool fits(wide v)
{
    return v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max();
}

std::int64_t parse_int(std::string_view text, std::string_view whole)
{
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
        throw SchemaError("malformed rational \"" + std::string(whole) + "\"");
    return value;
}

}  // namespace

Rat::Rat(std::int64_t num, std::int64_t den)
{
    if (den == 0) throw std::domain_error("rational with zero denominator");
    *this = from_wide(num, den);
}

Rat Rat::from_wide(wide num, wide den)
{
    if (den == 0) throw std::domain_error("rational division by zero");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    wide g = gcd_wide(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    if (num == 0) den = 1;
    if (!fits(num) || !fits(den)) throw std::overflow_error("rational overflow");
    Rat r;
    r.num_ = static_cast<std::int64_t>(num);
    r.den_ = static_cast<std::int64_t>(den);
    return r;
}

Rat Rat::parse(std::string_view text)
{
    auto slash = text.find('/');
    std::string_view num_text = text.substr(0, slash);
    if (num_text.empty() || num_text.front() == '+')
        throw SchemaError("malformed rational \"" + std::string(text) + "\"");
    if (num_text.size() > 1 && (num_text.front() == '0' || (num_text.front() == '-' && num_text[1] == '0')))
        throw SchemaError("non-canonical rational \"" + std::string(text) + "\" (leading zero or -0)");
    std::int64_t num = parse_int(num_text, text);
    if (slash == std::string_view::npos) return Rat(num);

    std::string_view den_text = text.substr(slash + 1);
    if (den_text.empty() || den_text.front() == '-' || den_text.front() == '+' || den_text.front() == '0')
        throw SchemaError("non-canonical rational \"" + std::string(text) + "\" (denominator must be positive, no sign)");
    std::int64_t den = parse_int(den_text, text);
    if (den == 1)
        throw SchemaError("non-canonical rational \"" + std::string(text) + "\" (write integers without /1)");
    if (gcd_wide(num, den) != 1)
        throw SchemaError("non-canonical rational \"" + std::string(text) + "\" (not in lowest terms)");
    return Rat(num, den);
}

std::int64_t Rat::floor() const
{
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return q;
}

std::int64_t Rat::ceil() const
{
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ > 0) ++q;
    return q;
}

std::string Rat::str() const
{
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rat Rat::operator-() const { return from_wide(-static_cast<wide>(num_), den_); }

Rat& Rat::operator+=(const Rat& o)
{
    *this = from_wide(static_cast<wide>(num_) * o.den_ + static_cast<wide>(o.num_) * den_,
                      static_cast<wide>(den_) * o.den_);
    return *this;
}

Rat& Rat::operator-=(const Rat& o)
{
    *this = from_wide(static_cast<wide>(num_) * o.den_ - static_cast<wide>(o.num_) * den_,
                      static_cast<wide>(den_) * o.den_);
    return *this;
}

Rat& Rat::operator*=(const Rat& o)
{
    *this = from_wide(static_cast<wide>(num_) * o.num_, static_cast<wide>(den_) * o.den_);
    return *this;
}

Rat& Rat::operator/=(const Rat& o)
{
    if (o.num_ == 0) throw std::domain_error("rational division by zero");
    *this = from_wide(static_cast<wide>(num_) * o.den_, static_cast<wide>(den_) * o.num_);
    return *this;
}

std::strong_ordering operator<=>(const Rat& a, const Rat& b)
{
    wide lhs = static_cast<wide>(a.num_) * b.den_;
    wide rhs = static_cast<wide>(b.num_) * a.den_;
    return lhs <=> rhs;
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

std::ostream& operator<<(std::ostream& os, const EpsRat& r)
{
    os << r.base;
    if (r.eps > 0) os << "+" << r.eps << "e";
    if (r.eps < 0) os << r.eps << "e";
    return os;
}

Rat abs(const Rat& r) { return r.sign() < 0 ? -r : r; }

Rat pow(Rat base, int exponent)
{
    if (exponent < 0) return Rat(1) / pow(base, -exponent);
    Rat result(1);
    while (exponent > 0) {
        if (exponent & 1) result *= base;
        exponent >>= 1;
        if (exponent > 0) base *= base;
    }
    return result;
}

namespace {

// Largest k >= 0 with k^t * x.den <= x.num * denom^t (floor of the scaled root).
cpp_int floor_scaled_root(const Rat& x, int t, std::int64_t denom)
{
    if (x.sign() < 0) throw std::domain_error("root of a negative rational");
    if (t < 1 || denom < 1) throw std::domain_error("root order and denominator must be positive");
    cpp_int target = cpp_int(x.num()) * boost::multiprecision::pow(cpp_int(denom), t);
    cpp_int den(x.den());
    cpp_int lo = 0;
    cpp_int hi = 1;
    while (boost::multiprecision::pow(hi, t) * den <= target) hi *= 2;
    while (hi - lo > 1) {
        cpp_int mid = (lo + hi) / 2;
        if (boost::multiprecision::pow(mid, t) * den <= target)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

}  // namespace

Rat upper_root(const Rat& x, int t, std::int64_t denom)
{
    cpp_int k = floor_scaled_root(x, t, denom);
    cpp_int target = cpp_int(x.num()) * boost::multiprecision::pow(cpp_int(denom), t);
    if (boost::multiprecision::pow(k, t) * cpp_int(x.den()) != target) k += 1;
    return Rat(k.convert_to<std::int64_t>(), denom);
}

Rat lower_root(const Rat& x, int t, std::int64_t denom)
{
    return Rat(floor_scaled_root(x, t, denom).convert_to<std::int64_t>(), denom);
}

}  // namespace zarex
