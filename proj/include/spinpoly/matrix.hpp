#pragma once

#include <Eigen/Dense>
#include <complex>

namespace spinpoly {

using ComplexMatrix = Eigen::MatrixXcd;

inline double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

// max-entry deviation of U from unitarity.
inline double unitarity_defect(const ComplexMatrix& u) {
    ComplexMatrix g = u.adjoint() * u;
    g -= ComplexMatrix::Identity(u.rows(), u.cols());
    return g.cwiseAbs().maxCoeff();
}

}  // namespace spinpoly
