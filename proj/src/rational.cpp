#include "graphdist/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace graphdist {

std::string to_string(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

Rational exact(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("cannot convert a non-finite value to a rational");
    int e = 0;
    const double mant = std::frexp(x, &e);
    // mant * 2^53 is an integer for every double.
    const auto scaled = static_cast<long long>(std::ldexp(mant, 53));
    Rational r(scaled);
    e -= 53;
    const BigInt pow2 = BigInt(1) << std::abs(e);
    return e >= 0 ? r * Rational(pow2) : r / Rational(pow2);
}

Matrix RationalMatrix::to_matrix() const {
    Matrix m(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m(i, j) = to_double((*this)(i, j));
    return m;
}

RationalMatrix RationalMatrix::from_integral(const Matrix& m) {
    if (!m.is_integral()) throw std::invalid_argument("matrix has non-integer entries");
    RationalMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rational(static_cast<long long>(m(i, j)));
    return r;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix product dimension mismatch");
    RationalMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t l = 0; l < a.cols(); ++l) {
            if (a(i, l) == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, l) * b(l, j);
        }
    return c;
}

}  // namespace graphdist
