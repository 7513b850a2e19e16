#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace orthomom {

using BigInt = boost::multiprecision::cpp_int;

// Always reduced, denominator > 0 (maintained by the backend).
using Rational = boost::multiprecision::cpp_rational;

/// Thrown when a request exceeds a configured size cap. The message names the cap.
class size_limit_error : public std::runtime_error {
public:
    explicit size_limit_error(const std::string& what) : std::runtime_error(what) {}
};

/// Hard cap on dense tensor storage (number of entries).
inline constexpr std::int64_t kDenseEntryCap = 10'000'000;

/// Default cap on the pairing-enumeration parameter k ((2k-1)!! pairings;
/// k = 8 gives 2,027,025). Overridable via the ORTHOMOM_MAX_K environment
/// variable; read once per process.
inline int enumeration_cap() {
    static const int cap = [] {
        if (const char* env = std::getenv("ORTHOMOM_MAX_K")) {
            const long v = std::strtol(env, nullptr, 10);
            if (v >= 1 && v <= 64) return static_cast<int>(v);
        }
        return 8;
    }();
    return cap;
}

/// (2k-1)!! = 1*3*5*...*(2k-1); the number of pairings on 2k points.
inline BigInt odd_double_factorial(int k) {
    if (k < 0) throw std::invalid_argument("odd_double_factorial: k must be >= 0");
    BigInt r = 1;
    for (int t = 3; t <= 2 * k - 1; t += 2) r *= t;
    return r;
}

inline BigInt int_pow(BigInt base, int exp) {
    if (exp < 0) throw std::invalid_argument("int_pow: negative exponent");
    BigInt r = 1;
    while (exp > 0) {
        if (exp & 1) r *= base;
        base *= base;
        exp >>= 1;
    }
    return r;
}

/// Rational from any numerator/denominator pair: sign moved to the
/// numerator, reduction handled by the backend.
inline Rational make_rational(BigInt num, BigInt den) {
    if (den == 0) throw std::invalid_argument("make_rational: zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    return Rational(std::move(num), std::move(den));
}

/// "p/q" with the "/q" omitted for integers, e.g. "1/5", "3", "0".
inline std::string rational_to_string(const Rational& r) {
    const BigInt num = boost::multiprecision::numerator(r);
    const BigInt den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

} // namespace orthomom
