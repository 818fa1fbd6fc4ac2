#include "hypershape/linalg.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "hypershape/errors.hpp"

namespace hypershape {

namespace {

double off_diagonal_norm(const Eigen::MatrixXd& a) {
    double s = 0.0;
    for (int p = 0; p < a.rows(); ++p)
        for (int q = p + 1; q < a.cols(); ++q) s += 2.0 * a(p, q) * a(p, q);
    return std::sqrt(s);
}

} // namespace

SymmetricEigen jacobi_eigen(const Eigen::MatrixXd& a, double tol, int max_sweeps) {
    if (a.rows() != a.cols()) throw std::invalid_argument("jacobi_eigen: matrix must be square");
    const int n = static_cast<int>(a.rows());
    Eigen::MatrixXd m = 0.5 * (a + a.transpose());
    Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);
    const double threshold = tol * std::max(1.0, m.norm());

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        if (off_diagonal_norm(m) <= threshold) break;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = m(p, q);
                if (apq == 0.0) continue;
                const double theta = (m(q, q) - m(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const double tau = s / (1.0 + c);
                const double app = m(p, p);
                const double aqq = m(q, q);
                m(p, p) = app - t * apq;
                m(q, q) = aqq + t * apq;
                m(p, q) = 0.0;
                m(q, p) = 0.0;
                for (int r = 0; r < n; ++r) {
                    if (r != p && r != q) {
                        const double arp = m(r, p);
                        const double arq = m(r, q);
                        m(r, p) = m(p, r) = arp - s * (arq + tau * arp);
                        m(r, q) = m(q, r) = arq + s * (arp - tau * arq);
                    }
                    const double vrp = v(r, p);
                    const double vrq = v(r, q);
                    v(r, p) = vrp - s * (vrq + tau * vrp);
                    v(r, q) = vrq + s * (vrp - tau * vrq);
                }
            }
        }
    }

    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int i, int j) { return m(i, i) < m(j, j); });

    SymmetricEigen out;
    out.values.resize(n);
    out.vectors.resize(n, n);
    for (int i = 0; i < n; ++i) {
        out.values(i) = m(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(i)]);
        out.vectors.col(i) = v.col(order[static_cast<std::size_t>(i)]);
    }
    return out;
}

Eigen::MatrixXd sym_inv_sqrt(const Eigen::MatrixXd& a, double rel_floor) {
    const SymmetricEigen eig = jacobi_eigen(a);
    const int n = static_cast<int>(a.rows());
    const double lambda_max = eig.values(n - 1);
    if (!(lambda_max > 0.0)) throw singular_error("sym_inv_sqrt: matrix not positive definite");
    Eigen::VectorXd inv_sqrt(n);
    for (int i = 0; i < n; ++i) {
        if (!(eig.values(i) > rel_floor * lambda_max))
            throw singular_error("sym_inv_sqrt: eigenvalue below positive-definite floor");
        inv_sqrt(i) = 1.0 / std::sqrt(eig.values(i));
    }
    return eig.vectors * inv_sqrt.asDiagonal() * eig.vectors.transpose();
}

} // namespace hypershape
