#include "graphdist/norms.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "graphdist/error.hpp"

namespace graphdist {

double entrywise_norm(const Matrix& a, double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("entrywise norm needs p >= 1");
    if (std::isinf(p)) {
        double m = 0.0;
        for (double x : a.values()) m = std::max(m, std::abs(x));
        return m;
    }
    if (p == 1.0 && a.is_integral()) {
        std::int64_t s = 0;
        for (double x : a.values()) s += static_cast<std::int64_t>(std::abs(x));
        return static_cast<double>(s);
    }
    std::vector<double> terms;
    terms.reserve(a.values().size());
    for (double x : a.values()) terms.push_back(p == 1.0 ? std::abs(x) : std::pow(std::abs(x), p));
    const double s = compensated_sum(terms);
    if (p == 1.0) return s;
    if (p == 2.0) return std::sqrt(s);
    return std::pow(s, 1.0 / p);
}

double operator_norm(const Matrix& a, OperatorP p) {
    switch (p) {
        case OperatorP::Two:
            return spectral_norm(a);
        case OperatorP::One:
            return operator_norm(a.transposed(), OperatorP::Infinity);
        case OperatorP::Infinity: {
            double best = 0.0;
            std::vector<double> terms(a.cols());
            for (std::size_t i = 0; i < a.rows(); ++i) {
                for (std::size_t j = 0; j < a.cols(); ++j) terms[j] = std::abs(a(i, j));
                best = std::max(best, compensated_sum(terms));
            }
            return best;
        }
    }
    return 0.0;
}

double spectral_norm(const Matrix& a, const SpectralOptions& opts) {
    if (a.rows() != a.cols()) throw std::invalid_argument("spectral norm needs a square matrix");
    if (!a.is_symmetric()) throw std::invalid_argument("spectral norm is implemented for symmetric matrices");
    const std::size_t n = a.rows();
    if (n == 0) return 0.0;
    std::vector<double> w(n);
    std::vector<double> u(n);
    auto apply = [&a, n](const std::vector<double>& x, std::vector<double>& y) {
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < n; ++j) s += a(i, j) * x[j];
            y[i] = s;
        }
    };
    auto iterate = [&](std::vector<double> v) {
        double estimate = 0.0;
        for (int it = 0; it < opts.max_iterations; ++it) {
            apply(v, w);
            apply(w, u);  // u = A^2 v
            double rayleigh = 0.0;
            double norm_u = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                rayleigh += v[i] * u[i];
                norm_u += u[i] * u[i];
            }
            norm_u = std::sqrt(norm_u);
            const double next = std::sqrt(std::max(rayleigh, 0.0));
            if (norm_u == 0.0) return 0.0;
            for (std::size_t i = 0; i < n; ++i) v[i] = u[i] / norm_u;
            if (it > 0 && std::abs(next - estimate) <= opts.tol * std::max(1.0, next)) return next;
            estimate = next;
        }
        throw ConvergenceError("power iteration did not converge within " + std::to_string(opts.max_iterations) +
                                   " iterations",
                               estimate);
    };
    // The all-ones start is orthogonal to the top eigenvector of many signed
    // matrices, e.g. [[1,-1],[-1,1]], so a second irregular start backs it up.
    std::vector<double> ones(n, 1.0 / std::sqrt(static_cast<double>(n)));
    std::vector<double> irregular(n);
    double len = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        irregular[i] = 0.5 + std::fmod(0.6180339887498949 * static_cast<double>(i + 1), 1.0);
        len += irregular[i] * irregular[i];
    }
    for (double& x : irregular) x /= std::sqrt(len);
    return std::max(iterate(ones), iterate(irregular));
}

namespace {

// Enumerates column subsets of `a` (cols <= 24) in Gray-code order while
// maintaining the row partial sums.
template <typename Acc>
CutNormResult cut_norm_columns(const Matrix& a) {
    const std::size_t rows = a.rows();
    const std::size_t cols = a.cols();
    std::vector<Acc> entry(rows * cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) entry[i * cols + j] = static_cast<Acc>(a(i, j));

    std::vector<Acc> partial(rows, Acc{0});
    Acc best = Acc{0};
    std::uint32_t best_mask = 0;
    int best_sign = 1;
    std::uint32_t mask = 0;
    const std::uint64_t total = std::uint64_t{1} << cols;
    for (std::uint64_t step = 0; step < total; ++step) {
        if (step > 0) {
            const int bit = std::countr_zero(step);
            const std::uint32_t flip = std::uint32_t{1} << bit;
            const bool adding = (mask & flip) == 0;
            mask ^= flip;
            for (std::size_t i = 0; i < rows; ++i) {
                const Acc x = entry[i * cols + bit];
                partial[i] += adding ? x : -x;
            }
        }
        Acc pos = Acc{0};
        Acc neg = Acc{0};
        for (Acc r : partial) {
            if (r > Acc{0})
                pos += r;
            else
                neg -= r;
        }
        auto consider = [&](Acc value, int sign) {
            if (value > best || (value == best && value > Acc{0} && (mask < best_mask ||
                                                                      (mask == best_mask && sign > best_sign)))) {
                best = value;
                best_mask = mask;
                best_sign = sign;
            }
        };
        consider(pos, 1);
        consider(neg, -1);
    }

    CutNormResult out;
    out.sign = best_sign;
    for (std::size_t j = 0; j < cols; ++j)
        if (best_mask >> j & 1U) out.cols.push_back(static_cast<int>(j));
    std::vector<double> terms;
    for (std::size_t i = 0; i < rows; ++i) {
        std::vector<double> row_terms;
        for (int j : out.cols) row_terms.push_back(a(i, j));
        const double r = compensated_sum(row_terms);
        if ((best_sign > 0 && r > 0.0) || (best_sign < 0 && r < 0.0)) {
            out.rows.push_back(static_cast<int>(i));
            terms.insert(terms.end(), row_terms.begin(), row_terms.end());
        }
    }
    out.value = std::abs(compensated_sum(terms));
    return out;
}

}  // namespace

CutNormResult cut_norm_exact(const Matrix& a) {
    if (a.empty()) return {};
    const bool transpose = a.cols() > a.rows();
    const Matrix& m = transpose ? a.transposed() : a;
    if (m.cols() > kCutNormMaxSide)
        throw BudgetExceeded("cut norm enumeration limited to " + std::to_string(kCutNormMaxSide) +
                             " lines on the smaller side, got " + std::to_string(m.cols()));
    CutNormResult r = m.is_integral() ? cut_norm_columns<std::int64_t>(m) : cut_norm_columns<double>(m);
    if (transpose) std::swap(r.rows, r.cols);
    return r;
}

Matrix tensor_blow_up(const Matrix& a, int l) {
    if (l < 1) throw std::invalid_argument("blow-up factor must be at least 1");
    const auto k = static_cast<std::size_t>(l);
    Matrix out(a.rows() * k, a.cols() * k);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t s = 0; s < k; ++s)
            for (std::size_t j = 0; j < a.cols(); ++j)
                for (std::size_t t = 0; t < k; ++t) out(i * k + s, j * k + t) = a(i, j);
    return out;
}

double norm(const Matrix& a, const NormKind& kind) {
    return std::visit(
        [&a](const auto& k) -> double {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, Entrywise>)
                return entrywise_norm(a, k.p);
            else if constexpr (std::is_same_v<K, Operator>)
                return operator_norm(a, k.p);
            else
                return cut_norm_exact(a).value;
        },
        kind);
}

}  // namespace graphdist
