#pragma once

// Thin wrappers around Eigen for the handful of dense problems the toolkit
// needs: Hermitian eigenvalues of small coefficient matrices, the pencil
// bound behind the plurisubharmonicity line search, and polynomial least
// squares for the epsilon expansion.

#include <Eigen/Dense>
#include <limits>
#include <vector>

#include "hermet/errors.hpp"
#include "hermet/fields.hpp"

namespace hermet {

using Matrix = Eigen::MatrixXcd;

inline double hermitian_min_eigenvalue(const Matrix& a) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (a + a.adjoint()),
                                             Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

/// Largest t >= 0 with a + s*b positive semidefinite for all |s| <= t, where
/// a is Hermitian positive definite and b Hermitian. Infinity when b = 0.
inline double psd_pencil_radius(const Matrix& a, const Matrix& b) {
    Eigen::LLT<Matrix> llt(0.5 * (a + a.adjoint()));
    if (llt.info() != Eigen::Success)
        throw InvalidInput("pencil radius: base matrix is not positive definite");
    const Matrix l = llt.matrixL();
    const Matrix m = l.template triangularView<Eigen::Lower>().solve(
        Matrix(l.template triangularView<Eigen::Lower>().solve(0.5 * (b + b.adjoint())))
            .adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues().minCoeff();
    const double hi = es.eigenvalues().maxCoeff();
    const double bound = std::max(std::abs(lo), std::abs(hi));
    if (bound == 0.0) return std::numeric_limits<double>::infinity();
    return 1.0 / bound;
}

/// Least-squares fit of a degree-`deg` real polynomial through (x_i, y_i),
/// solved in a rescaled variable for conditioning. Returns coefficients
/// c_0..c_deg and the relative residual of the fit.
struct PolyFit {
    std::vector<double> coeffs;
    double rel_residual = 0.0;
};

inline PolyFit fit_polynomial(const std::vector<double>& x, const std::vector<double>& y, int deg) {
    if (x.size() != y.size() || static_cast<int>(x.size()) < deg + 1)
        throw InvalidInput("polynomial fit needs at least deg+1 samples");
    double xscale = 0.0;
    for (double v : x) xscale = std::max(xscale, std::abs(v));
    if (xscale == 0.0) xscale = 1.0;
    Eigen::MatrixXd v(x.size(), deg + 1);
    Eigen::VectorXd rhs(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        double t = 1.0;
        for (int j = 0; j <= deg; ++j) {
            v(i, j) = t;
            t *= x[i] / xscale;
        }
        rhs(i) = y[i];
    }
    const Eigen::VectorXd sol = v.colPivHouseholderQr().solve(rhs);
    PolyFit out;
    out.coeffs.resize(deg + 1);
    double scale = 1.0;
    for (int j = 0; j <= deg; ++j) {
        out.coeffs[j] = sol(j) / scale;
        scale *= xscale;
    }
    const double ynorm = rhs.norm();
    out.rel_residual = ynorm == 0.0 ? (v * sol - rhs).norm() : (v * sol - rhs).norm() / ynorm;
    return out;
}

inline double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double v = 1.0;
    for (int i = 0; i < k; ++i) v = v * double(n - i) / double(i + 1);
    return v;
}

} // namespace hermet
