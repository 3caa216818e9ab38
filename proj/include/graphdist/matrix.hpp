#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace graphdist {

// Dense row-major real matrix. Adjacency, distance and coupling matrices all
// live here; integer-valued data is stored exactly (entries stay far below 2^53).
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
    Matrix(std::initializer_list<std::initializer_list<double>> rows);

    static Matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return data_.empty(); }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
    std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    std::span<const double> values() const { return data_; }

    Matrix transposed() const;
    bool is_symmetric() const;
    // True when every entry is an integer (enables exact integer accumulation).
    bool is_integral() const;

    Matrix& operator+=(const Matrix& other);
    Matrix& operator-=(const Matrix& other);
    Matrix& operator*=(double s);

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, double s) { return a *= s; }
    friend Matrix operator*(double s, Matrix a) { return a *= s; }
    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend bool operator==(const Matrix& a, const Matrix& b) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

// Applies row and column relabellings: result(row_perm[i], col_perm[j]) = a(i, j).
Matrix permute(const Matrix& a, std::span<const int> row_perm, std::span<const int> col_perm);

// Neumaier-compensated sum; exact for integer data of moderate size.
double compensated_sum(std::span<const double> xs);

}  // namespace graphdist
