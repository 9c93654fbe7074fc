#include "aladaen/numerics/tensor.hpp"

#include <algorithm>
#include <string>

#include "aladaen/errors.hpp"

namespace aladaen::numerics {

Tensor2D::Tensor2D(std::size_t rows, std::size_t cols, double fill)
    : data_(Matrix::Constant(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols), fill)) {}

Tensor2D::Tensor2D(std::size_t rows, std::size_t cols, std::span<const double> values)
    : data_(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols)) {
    if (values.size() != rows * cols) {
        throw ShapeError("tensor of " + std::to_string(rows) + "x" + std::to_string(cols) +
                         " given " + std::to_string(values.size()) + " values");
    }
    std::copy(values.begin(), values.end(), data_.data());
}

Tensor2D Tensor2D::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    const std::size_t n = rows.size();
    const std::size_t d = n == 0 ? 0 : rows.begin()->size();
    Tensor2D t(n, d);
    std::size_t r = 0;
    for (const auto& row : rows) {
        if (row.size() != d) throw ShapeError("ragged row literal");
        std::copy(row.begin(), row.end(), t.row(r).begin());
        ++r;
    }
    return t;
}

Tensor2D Tensor2D::row_vector(std::span<const double> values) {
    return Tensor2D(1, values.size(), values);
}

bool Tensor2D::all_finite() const { return data_.allFinite(); }

Tensor2D Tensor2D::gather_rows(std::span<const std::size_t> indices) const {
    Tensor2D out(indices.size(), cols());
    for (std::size_t i = 0; i < indices.size(); ++i) {
        if (indices[i] >= rows()) throw ShapeError("row index out of range");
        const auto src = row(indices[i]);
        std::copy(src.begin(), src.end(), out.row(i).begin());
    }
    return out;
}

Tensor2D Tensor2D::vstack(std::initializer_list<const Tensor2D*> parts) {
    std::size_t total = 0;
    std::size_t width = parts.size() == 0 ? 0 : (*parts.begin())->cols();
    for (const auto* p : parts) {
        if (p->cols() != width) throw ShapeError("vstack of tensors with different widths");
        total += p->rows();
    }
    Tensor2D out(total, width);
    std::size_t offset = 0;
    for (const auto* p : parts) {
        out.mat().middleRows(static_cast<Eigen::Index>(offset), static_cast<Eigen::Index>(p->rows())) = p->mat();
        offset += p->rows();
    }
    return out;
}

Tensor2D Tensor2D::slice_rows(std::size_t begin, std::size_t count) const {
    if (begin + count > rows()) throw ShapeError("row slice out of range");
    return Tensor2D(Matrix(data_.middleRows(static_cast<Eigen::Index>(begin), static_cast<Eigen::Index>(count))));
}

void require_same_shape(const Tensor2D& a, const Tensor2D& b, const char* what) {
    if (!a.same_shape(b)) {
        throw ShapeError(std::string(what) + ": " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()));
    }
}

}  // namespace aladaen::numerics
