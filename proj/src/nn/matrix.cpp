#include "mldtw/nn/matrix.hpp"

#include <algorithm>

#include "mldtw/error.hpp"

namespace mldtw::nn {

Matrix Matrix::select_rows(std::span<const std::size_t> indices) const {
    Matrix out(indices.size(), cols);
    for (std::size_t r = 0; r < indices.size(); ++r) {
        const auto src = row(indices[r]);
        std::copy(src.begin(), src.end(), out.row(r).begin());
    }
    return out;
}

Matrix from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) return {};
    Matrix out(rows.size(), rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != out.cols) throw InvalidArgument("ragged feature rows");
        std::copy(rows[r].begin(), rows[r].end(), out.row(r).begin());
    }
    return out;
}

}  // namespace mldtw::nn
