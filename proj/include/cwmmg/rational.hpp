#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

namespace cwmmg {

// Exact arithmetic: all index values are rationals over arbitrary-precision
// integers, never floating point.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline std::string to_fraction_string(const Rational& r) {
    std::ostringstream os;
    os << numerator(r) << '/' << denominator(r);
    return os.str();
}

// Tables of n!, reusable across index computations.
class FactorialTable {
public:
    explicit FactorialTable(std::size_t n) : fact_(n + 1) {
        fact_[0] = 1;
        for (std::size_t i = 1; i <= n; ++i) fact_[i] = fact_[i - 1] * static_cast<unsigned>(i);
    }
    const BigInt& operator[](std::size_t i) const { return fact_[i]; }

private:
    std::vector<BigInt> fact_;
};

// Pascal triangle up to row n; choose(a, b) = 0 outside the valid range.
class BinomialTable {
public:
    explicit BinomialTable(std::size_t n) : rows_(n + 1) {
        for (std::size_t i = 0; i <= n; ++i) {
            rows_[i].resize(i + 1);
            rows_[i][0] = rows_[i][i] = 1;
            for (std::size_t j = 1; j < i; ++j)
                rows_[i][j] = rows_[i - 1][j - 1] + rows_[i - 1][j];
        }
    }
    const BigInt& choose(std::size_t a, std::size_t b) const {
        static const BigInt zero = 0;
        if (b > a || a >= rows_.size()) return zero;
        return rows_[a][b];
    }

private:
    std::vector<std::vector<BigInt>> rows_;
};

inline BigInt pow2(std::size_t e) {
    BigInt r = 1;
    return r << e;
}

}  // namespace cwmmg
