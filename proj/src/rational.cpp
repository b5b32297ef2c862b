#include "ras/rational.hpp"

#include "ras/error.hpp"

namespace ras
{
    Rational pow2(std::int64_t e)
    {
        BigInt one = 1;
        if (e >= 0)
        {
            return Rational(one << static_cast<unsigned>(e));
        }
        return Rational(one, one << static_cast<unsigned>(-e));
    }

    std::string to_string(const Rational& r)
    {
        return boost::multiprecision::numerator(r).str() + "/" + boost::multiprecision::denominator(r).str();
    }

    Rational parse_rational(const std::string& text)
    {
        const auto slash = text.find('/');
        try
        {
            if (slash == std::string::npos)
            {
                return Rational(BigInt(text));
            }
            return Rational(BigInt(text.substr(0, slash)), BigInt(text.substr(slash + 1)));
        }
        catch (const std::exception&)
        {
            throw SchemaError("not a rational: " + text);
        }
    }

    double to_double(const Rational& r)
    {
        return r.convert_to<double>();
    }
}
