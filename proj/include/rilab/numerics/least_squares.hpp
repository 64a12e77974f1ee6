#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "rilab/error.hpp"

namespace rilab::fit {

struct LinearFit {
    std::vector<double> coefficients;
    double residual_rms = 0.0;
};

/// Ordinary least squares  y ~ X beta  (X is rows x columns, column-major by regressor).
inline LinearFit ordinary_least_squares(const std::vector<std::vector<double>>& regressors,
                                        const std::vector<double>& response) {
    const std::size_t rows = response.size();
    const std::size_t cols = regressors.size();
    require(rows >= cols && cols > 0, ErrorKind::InvalidArgument, "least squares needs at least as many rows as columns");
    Eigen::MatrixXd design(rows, cols);
    Eigen::VectorXd y(rows);
    for (std::size_t r = 0; r < rows; ++r) {
        y(r) = response[r];
        for (std::size_t c = 0; c < cols; ++c) {
            require(regressors[c].size() == rows, ErrorKind::InvalidArgument, "regressor length mismatch");
            design(r, c) = regressors[c][r];
        }
    }
    const Eigen::VectorXd beta = design.colPivHouseholderQr().solve(y);
    const Eigen::VectorXd resid = y - design * beta;
    LinearFit out;
    out.coefficients.assign(beta.data(), beta.data() + beta.size());
    out.residual_rms = std::sqrt(resid.squaredNorm() / static_cast<double>(rows));
    return out;
}

} // namespace rilab::fit
