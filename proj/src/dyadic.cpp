#include "cubepack/dyadic.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace cubepack {

namespace {

mpz_class& scratch() {
    thread_local mpz_class s;
    return s;
}

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (c < '0' || c > '9') return false;
    return true;
}

mpz_class parse_integer(std::string_view s) {
    std::string_view digits = s;
    if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
    if (!all_digits(digits)) throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
    return mpz_class(std::string(s.front() == '+' ? s.substr(1) : s), 10);
}

// Exponent k with value == 2^k, or -1 if not a power of two.
long power_of_two(const mpz_class& q) {
    if (q <= 0) return -1;
    auto low = mpz_scan1(q.get_mpz_t(), 0);
    return mpz_sizeinbase(q.get_mpz_t(), 2) == low + 1 ? static_cast<long>(low) : -1;
}

}  // namespace

Dyadic::Dyadic(mpz_class mantissa, std::uint32_t exponent)
    : mantissa_(std::move(mantissa)), exponent_(exponent) {
    normalize();
}

void Dyadic::normalize() {
    if (mantissa_ == 0) {
        exponent_ = 0;
        return;
    }
    if (exponent_ == 0) return;
    auto tz = mpz_scan1(mantissa_.get_mpz_t(), 0);
    if (tz == 0) return;
    auto shift = std::min<std::uint64_t>(tz, exponent_);
    mpz_fdiv_q_2exp(mantissa_.get_mpz_t(), mantissa_.get_mpz_t(), shift);
    exponent_ -= static_cast<std::uint32_t>(shift);
}

Dyadic Dyadic::pow2(std::int64_t k) {
    Dyadic r;
    if (k >= 0) {
        mpz_ui_pow_ui(r.mantissa_.get_mpz_t(), 2, static_cast<unsigned long>(k));
    } else {
        r.mantissa_ = 1;
        r.exponent_ = static_cast<std::uint32_t>(-k);
    }
    return r;
}

Dyadic Dyadic::parse(std::string_view text) {
    if (text.empty()) throw std::invalid_argument("empty dyadic literal");
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        mpz_class num = parse_integer(text.substr(0, slash));
        auto den_text = text.substr(slash + 1);
        if (den_text.starts_with("2^")) {
            auto exp_text = den_text.substr(2);
            if (!all_digits(exp_text) || exp_text.size() > 9)
                throw std::invalid_argument("bad exponent in '" + std::string(text) + "'");
            return Dyadic(num, static_cast<std::uint32_t>(std::stoul(std::string(exp_text))));
        }
        long k = power_of_two(parse_integer(den_text));
        if (k < 0) throw std::invalid_argument("denominator is not a power of two: '" + std::string(text) + "'");
        return Dyadic(num, static_cast<std::uint32_t>(k));
    }
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        // a.b = (a*10^k + b) / 10^k = (..)/(5^k 2^k); dyadic iff 5^k divides.
        std::string_view int_part = text.substr(0, dot);
        std::string_view frac = text.substr(dot + 1);
        bool negative = !int_part.empty() && int_part.front() == '-';
        if (!int_part.empty() && (int_part.front() == '-' || int_part.front() == '+')) int_part.remove_prefix(1);
        if ((!int_part.empty() && !all_digits(int_part)) || !all_digits(frac))
            throw std::invalid_argument("bad decimal '" + std::string(text) + "'");
        mpz_class num(std::string(int_part.empty() ? "0" : int_part) + std::string(frac), 10);
        mpz_class five;
        mpz_ui_pow_ui(five.get_mpz_t(), 5, frac.size());
        if (!mpz_divisible_p(num.get_mpz_t(), five.get_mpz_t()))
            throw std::invalid_argument("decimal is not dyadic: '" + std::string(text) + "'");
        mpz_divexact(num.get_mpz_t(), num.get_mpz_t(), five.get_mpz_t());
        if (negative) num = -num;
        return Dyadic(num, static_cast<std::uint32_t>(frac.size()));
    }
    return Dyadic(parse_integer(text), 0);
}

Dyadic Dyadic::operator-() const {
    Dyadic r = *this;
    r.mantissa_ = -r.mantissa_;
    return r;
}

Dyadic& Dyadic::operator+=(const Dyadic& rhs) {
    if (exponent_ == rhs.exponent_) {
        mantissa_ += rhs.mantissa_;
        normalize();
    } else if (exponent_ > rhs.exponent_) {
        mpz_mul_2exp(scratch().get_mpz_t(), rhs.mantissa_.get_mpz_t(), exponent_ - rhs.exponent_);
        mantissa_ += scratch();
        // odd + even stays odd
    } else {
        mpz_mul_2exp(mantissa_.get_mpz_t(), mantissa_.get_mpz_t(), rhs.exponent_ - exponent_);
        mantissa_ += rhs.mantissa_;
        exponent_ = rhs.exponent_;
    }
    if (mantissa_ == 0) exponent_ = 0;
    return *this;
}

Dyadic& Dyadic::operator-=(const Dyadic& rhs) {
    if (exponent_ == rhs.exponent_) {
        mantissa_ -= rhs.mantissa_;
        normalize();
    } else if (exponent_ > rhs.exponent_) {
        mpz_mul_2exp(scratch().get_mpz_t(), rhs.mantissa_.get_mpz_t(), exponent_ - rhs.exponent_);
        mantissa_ -= scratch();
    } else {
        mpz_mul_2exp(mantissa_.get_mpz_t(), mantissa_.get_mpz_t(), rhs.exponent_ - exponent_);
        mantissa_ -= rhs.mantissa_;
        exponent_ = rhs.exponent_;
    }
    if (mantissa_ == 0) exponent_ = 0;
    return *this;
}

Dyadic& Dyadic::operator*=(const Dyadic& rhs) {
    mantissa_ *= rhs.mantissa_;
    exponent_ += rhs.exponent_;
    // odd * odd is odd; only integer operands can introduce trailing zeros
    normalize();
    return *this;
}

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
    int c;
    if (a.exponent_ == b.exponent_) {
        c = cmp(a.mantissa_, b.mantissa_);
    } else {
        int sa = sgn(a.mantissa_), sb = sgn(b.mantissa_);
        if (sa != sb) return sa <=> sb;
        if (a.exponent_ < b.exponent_) {
            mpz_mul_2exp(scratch().get_mpz_t(), a.mantissa_.get_mpz_t(), b.exponent_ - a.exponent_);
            c = cmp(scratch(), b.mantissa_);
        } else {
            mpz_mul_2exp(scratch().get_mpz_t(), b.mantissa_.get_mpz_t(), a.exponent_ - b.exponent_);
            c = cmp(a.mantissa_, scratch());
        }
    }
    return c <=> 0;
}

Dyadic Dyadic::mul_pow2(std::int64_t k) const {
    if (is_zero()) return {};
    Dyadic r = *this;
    if (k >= 0) {
        auto drop = std::min<std::int64_t>(k, r.exponent_);
        r.exponent_ -= static_cast<std::uint32_t>(drop);
        if (k > drop) mpz_mul_2exp(r.mantissa_.get_mpz_t(), r.mantissa_.get_mpz_t(), k - drop);
    } else {
        r.exponent_ += static_cast<std::uint32_t>(-k);
        r.normalize();
    }
    return r;
}

Dyadic Dyadic::mul_int(const mpz_class& factor) const {
    return Dyadic(mantissa_ * factor, exponent_);
}

mpz_class Dyadic::scaled(std::uint32_t precision) const {
    if (exponent_ > precision)
        throw std::domain_error("value " + to_string() + " is not on the 2^-" + std::to_string(precision) + " grid");
    mpz_class r;
    mpz_mul_2exp(r.get_mpz_t(), mantissa_.get_mpz_t(), precision - exponent_);
    return r;
}

mpz_class Dyadic::floor_div(const Dyadic& divisor) const {
    if (divisor.sign() <= 0) throw std::domain_error("floor_div by a non-positive value");
    auto p = std::max(exponent_, divisor.exponent_);
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), scaled(p).get_mpz_t(), divisor.scaled(p).get_mpz_t());
    return q;
}

double Dyadic::to_double() const {
    return static_cast<double>(to_long_double());
}

long double Dyadic::to_long_double() const {
    if (is_zero()) return 0.0L;
    mpz_class mag = ::abs(mantissa_);
    auto bits = static_cast<long>(mpz_sizeinbase(mag.get_mpz_t(), 2));
    long shift = bits > 64 ? bits - 64 : 0;
    if (shift > 0) mpz_fdiv_q_2exp(mag.get_mpz_t(), mag.get_mpz_t(), shift);
    // mag < 2^64 now
    unsigned long long top = 0;
    mpz_export(&top, nullptr, -1, sizeof(top), 0, 0, mag.get_mpz_t());
    long double r = std::ldexp(static_cast<long double>(top), static_cast<int>(shift - static_cast<long>(exponent_)));
    return sign() < 0 ? -r : r;
}

std::string Dyadic::to_string() const {
    if (exponent_ == 0) return mantissa_.get_str();
    return mantissa_.get_str() + "/2^" + std::to_string(exponent_);
}

Dyadic abs(const Dyadic& x) { return x.sign() < 0 ? -x : x; }
const Dyadic& min(const Dyadic& a, const Dyadic& b) { return b < a ? b : a; }
const Dyadic& max(const Dyadic& a, const Dyadic& b) { return a < b ? b : a; }

RationalExponent RationalExponent::make(std::uint64_t num, std::uint64_t den) {
    if (num == 0 || den == 0) throw std::invalid_argument("exponent parts must be positive");
    auto g = std::gcd(num, den);
    num /= g;
    den /= g;
    if (num > std::numeric_limits<std::uint32_t>::max() || den > std::numeric_limits<std::uint32_t>::max())
        throw std::invalid_argument("exponent parts too large");
    return {static_cast<std::uint32_t>(num), static_cast<std::uint32_t>(den)};
}

Dyadic cube_sidelength(std::uint64_t n, const RationalExponent& t, std::uint32_t precision) {
    if (n == 0) throw std::invalid_argument("cube index must be positive");
    if (precision == 0) throw std::invalid_argument("precision must be positive");
    if (n == 1) return Dyadic(1);

    mpz_class n_pow;
    mpz_ui_pow_ui(n_pow.get_mpz_t(), n, t.num);
    mpz_class bound;  // 2^(p b)
    mpz_ui_pow_ui(bound.get_mpz_t(), 2, static_cast<unsigned long>(precision) * t.den);

    mpz_class tmp;
    auto fits = [&](const mpz_class& m) {  // m^b n^a <= 2^(p b)
        mpz_pow_ui(tmp.get_mpz_t(), m.get_mpz_t(), t.den);
        tmp *= n_pow;
        return tmp <= bound;
    };

    // Bracket around a floating estimate, then bisect on the certificate.
    long double estimate = std::ldexp(std::pow(static_cast<long double>(n), -t.value()), static_cast<int>(precision));
    mpz_class guess;
    if (precision < 60) {
        guess = static_cast<unsigned long>(std::floor(estimate));
    } else {
        mpz_class hi_part(static_cast<double>(std::ldexp(estimate, -(static_cast<int>(precision) - 52))));
        guess = hi_part;
        mpz_mul_2exp(guess.get_mpz_t(), guess.get_mpz_t(), precision - 52);
    }
    mpz_class step = 1;
    if (precision > 40) mpz_mul_2exp(step.get_mpz_t(), step.get_mpz_t(), precision - 40);

    mpz_class lo = guess - step, hi = guess + step;  // invariant: fits(lo), !fits(hi)
    if (lo < 0) lo = 0;
    while (!fits(lo)) {
        hi = lo;
        step *= 2;
        lo -= step;
        if (lo < 0) lo = 0;
    }
    while (fits(hi)) {
        lo = hi;
        step *= 2;
        hi += step;
    }
    while (hi - lo > 1) {
        mpz_class mid = (lo + hi) / 2;
        if (fits(mid))
            lo = mid;
        else
            hi = mid;
    }
    return Dyadic(lo, precision);
}

}  // namespace cubepack
