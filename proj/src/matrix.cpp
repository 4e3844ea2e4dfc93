#include "mutinf/matrix.hpp"

#include "mutinf/errors.hpp"

namespace mutinf {

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_)
        throw InputError("matrix data size does not match its shape");
}

Matrix Matrix::transposed() const {
    Matrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
}

double Matrix::sum() const {
    long double acc = 0.0L;
    for (double v : data_) acc += v;
    return static_cast<double>(acc);
}

}  // namespace mutinf
