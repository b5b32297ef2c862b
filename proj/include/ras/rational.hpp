#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace ras
{
    // Exact, canonical (reduced, positive denominator) rational.
    using Rational = boost::multiprecision::cpp_rational;
    using BigInt = boost::multiprecision::cpp_int;

    inline Rational ratio(std::int64_t num, std::int64_t den = 1)
    {
        return Rational(BigInt(num), BigInt(den));
    }

    // 2^e for any integer exponent.
    Rational pow2(std::int64_t e);

    // Always "p/q", including integers ("1/1").
    std::string to_string(const Rational& r);

    Rational parse_rational(const std::string& text);

    double to_double(const Rational& r);
}
