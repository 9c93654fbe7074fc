#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace aladaen::numerics {

using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Dense row-major matrix of doubles. Rows are records, columns are features.
class Tensor2D {
public:
    Tensor2D() = default;
    Tensor2D(std::size_t rows, std::size_t cols, double fill = 0.0);
    /// Throws ShapeError unless values.size() == rows * cols.
    Tensor2D(std::size_t rows, std::size_t cols, std::span<const double> values);
    explicit Tensor2D(Matrix m) : data_(std::move(m)) {}

    /// Builds a tensor from nested row literals; all rows must have equal length.
    static Tensor2D from_rows(std::initializer_list<std::initializer_list<double>> rows);
    static Tensor2D row_vector(std::span<const double> values);

    [[nodiscard]] std::size_t rows() const { return static_cast<std::size_t>(data_.rows()); }
    [[nodiscard]] std::size_t cols() const { return static_cast<std::size_t>(data_.cols()); }
    [[nodiscard]] std::size_t size() const { return static_cast<std::size_t>(data_.size()); }
    [[nodiscard]] bool empty() const { return data_.size() == 0; }

    double& operator()(std::size_t r, std::size_t c) { return data_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)); }
    double operator()(std::size_t r, std::size_t c) const { return data_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)); }

    [[nodiscard]] std::span<double> values() { return {data_.data(), size()}; }
    [[nodiscard]] std::span<const double> values() const { return {data_.data(), size()}; }
    [[nodiscard]] std::span<double> row(std::size_t r) { return {data_.data() + r * cols(), cols()}; }
    [[nodiscard]] std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols(), cols()}; }

    [[nodiscard]] Matrix& mat() { return data_; }
    [[nodiscard]] const Matrix& mat() const { return data_; }

    [[nodiscard]] bool all_finite() const;
    [[nodiscard]] bool same_shape(const Tensor2D& other) const {
        return rows() == other.rows() && cols() == other.cols();
    }
    void set_zero() { data_.setZero(); }

    /// Copies the given rows, in order, into a new tensor.
    [[nodiscard]] Tensor2D gather_rows(std::span<const std::size_t> indices) const;
    /// Stacks tensors of equal width on top of each other.
    static Tensor2D vstack(std::initializer_list<const Tensor2D*> parts);
    [[nodiscard]] Tensor2D slice_rows(std::size_t begin, std::size_t count) const;

    friend bool operator==(const Tensor2D& a, const Tensor2D& b) {
        return a.same_shape(b) && a.data_ == b.data_;
    }

private:
    Matrix data_;
};

/// Throws ShapeError with `what` as context when the shapes differ.
void require_same_shape(const Tensor2D& a, const Tensor2D& b, const char* what);

}  // namespace aladaen::numerics
