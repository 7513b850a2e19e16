#pragma once

#include "orthomom/common.hpp"

#include <map>
#include <string>

namespace orthomom {

/// Integer-coefficient polynomial in the formal dimension symbol n.
/// Zero coefficients are never stored; the zero polynomial has no terms.
class NPolynomial {
public:
    NPolynomial() = default;

    static NPolynomial monomial(int degree, BigInt coeff = 1) {
        if (degree < 0) throw std::invalid_argument("NPolynomial: negative degree");
        NPolynomial p;
        if (coeff != 0) p.coeffs_[degree] = std::move(coeff);
        return p;
    }

    static NPolynomial constant(BigInt c) { return monomial(0, std::move(c)); }

    const std::map<int, BigInt>& coefficients() const { return coeffs_; }

    BigInt coefficient(int degree) const {
        auto it = coeffs_.find(degree);
        return it == coeffs_.end() ? BigInt(0) : it->second;
    }

    int degree() const { return coeffs_.empty() ? 0 : coeffs_.rbegin()->first; }
    bool is_zero() const { return coeffs_.empty(); }

    NPolynomial& operator+=(const NPolynomial& o) {
        for (const auto& [d, c] : o.coeffs_) add_term(d, c);
        return *this;
    }

    NPolynomial& operator-=(const NPolynomial& o) {
        for (const auto& [d, c] : o.coeffs_) add_term(d, -c);
        return *this;
    }

    friend NPolynomial operator+(NPolynomial a, const NPolynomial& b) { return a += b; }
    friend NPolynomial operator-(NPolynomial a, const NPolynomial& b) { return a -= b; }

    friend NPolynomial operator*(const NPolynomial& a, const NPolynomial& b) {
        NPolynomial r;
        for (const auto& [da, ca] : a.coeffs_)
            for (const auto& [db, cb] : b.coeffs_) r.add_term(da + db, ca * cb);
        return r;
    }

    BigInt evaluate(const BigInt& n) const {
        BigInt r = 0;
        for (const auto& [d, c] : coeffs_) r += c * int_pow(n, d);
        return r;
    }

    bool operator==(const NPolynomial& o) const { return coeffs_ == o.coeffs_; }
    bool operator!=(const NPolynomial& o) const { return !(*this == o); }

    /// e.g. "n^2 + 2*n", "1", "0".
    std::string to_string() const {
        if (coeffs_.empty()) return "0";
        std::string s;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
            const auto& [d, c] = *it;
            if (!s.empty()) s += (c > 0) ? " + " : " - ";
            else if (c < 0) s += "-";
            const BigInt a = abs(c);
            if (d == 0) {
                s += a.str();
            } else {
                if (a != 1) s += a.str() + "*";
                s += (d == 1) ? "n" : "n^" + std::to_string(d);
            }
        }
        return s;
    }

private:
    void add_term(int degree, BigInt coeff) {
        auto it = coeffs_.find(degree);
        if (it == coeffs_.end()) {
            if (coeff != 0) coeffs_.emplace(degree, std::move(coeff));
        } else {
            it->second += coeff;
            if (it->second == 0) coeffs_.erase(it);
        }
    }

    std::map<int, BigInt> coeffs_;
};

} // namespace orthomom
