#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace cubepack {

/// Exact dyadic rational mantissa * 2^-exponent.
///
/// Values are kept canonical: either the exponent is zero or the mantissa is
/// odd. Two equal values therefore always have identical representations,
/// which keeps serialized certificates stable.
class Dyadic {
public:
    Dyadic() = default;
    Dyadic(long value) : mantissa_(value) {}  // NOLINT(google-explicit-constructor)
    Dyadic(mpz_class mantissa, std::uint32_t exponent);

    /// 2^k for any integer k >= -2^31.
    static Dyadic pow2(std::int64_t k);

    /// Parses "m", "m/2^p", "m/q" (q a power of two) or a finite decimal
    /// such as "0.375" whose value is dyadic. Throws std::invalid_argument.
    static Dyadic parse(std::string_view text);

    const mpz_class& mantissa() const { return mantissa_; }
    std::uint32_t exponent() const { return exponent_; }
    int sign() const { return sgn(mantissa_); }
    bool is_zero() const { return sign() == 0; }

    Dyadic operator-() const;
    Dyadic& operator+=(const Dyadic& rhs);
    Dyadic& operator-=(const Dyadic& rhs);
    Dyadic& operator*=(const Dyadic& rhs);

    friend Dyadic operator+(Dyadic lhs, const Dyadic& rhs) { return lhs += rhs; }
    friend Dyadic operator-(Dyadic lhs, const Dyadic& rhs) { return lhs -= rhs; }
    friend Dyadic operator*(Dyadic lhs, const Dyadic& rhs) { return lhs *= rhs; }

    friend bool operator==(const Dyadic& a, const Dyadic& b) {
        return a.exponent_ == b.exponent_ && a.mantissa_ == b.mantissa_;
    }
    friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);

    /// this * 2^k, exact.
    Dyadic mul_pow2(std::int64_t k) const;

    /// this * factor for an integer factor.
    Dyadic mul_int(const mpz_class& factor) const;

    /// The integer value * 2^precision. Throws std::domain_error when the
    /// value is not on the 2^-precision grid.
    mpz_class scaled(std::uint32_t precision) const;

    /// floor(this / divisor) for a positive divisor.
    mpz_class floor_div(const Dyadic& divisor) const;

    double to_double() const;
    long double to_long_double() const;

    /// "m" for integers, otherwise "m/2^p".
    std::string to_string() const;

private:
    void normalize();

    mpz_class mantissa_{0};
    std::uint32_t exponent_ = 0;
};

Dyadic abs(const Dyadic& x);
const Dyadic& min(const Dyadic& a, const Dyadic& b);
const Dyadic& max(const Dyadic& a, const Dyadic& b);

/// Rational exponent t = num/den in lowest terms.
struct RationalExponent {
    std::uint32_t num = 1;
    std::uint32_t den = 1;

    /// Reduces by the gcd; throws std::invalid_argument for zero parts.
    static RationalExponent make(std::uint64_t num, std::uint64_t den);
    long double value() const { return static_cast<long double>(num) / den; }

    friend bool operator==(const RationalExponent&, const RationalExponent&) = default;
};

/// Largest multiple of 2^-precision that is <= n^-t. The returned mantissa m
/// (at exponent `precision`) satisfies m^b n^a <= 2^(p b) < (m+1)^b n^a.
Dyadic cube_sidelength(std::uint64_t n, const RationalExponent& t, std::uint32_t precision);

}  // namespace cubepack
