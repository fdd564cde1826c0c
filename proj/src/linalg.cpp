#include "qspread/linalg.hpp"

#include <lapacke.h>

namespace qspread {

namespace {

void check_square(Eigen::Index rows, Eigen::Index cols) {
    if(rows != cols) throw std::invalid_argument("eigensolver needs a square matrix");
}

void check_info(lapack_int info, const char *routine) {
    if(info != 0) throw NumericError(std::string(routine) + " failed with info = " + std::to_string(info));
}

lapack_complex_double *as_lapack(Eigen::MatrixXcd &a) { return reinterpret_cast<lapack_complex_double *>(a.data()); }

} // namespace

Eigen::VectorXd symmetric_eigensystem(Eigen::MatrixXd &a) {
    check_square(a.rows(), a.cols());
    const auto n = static_cast<lapack_int>(a.rows());
    Eigen::VectorXd w(a.rows());
    if(n == 0) return w;
    check_info(LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', n, a.data(), n, w.data()), "dsyevd");
    return w;
}

Eigen::VectorXd hermitian_eigensystem(Eigen::MatrixXcd &a) {
    check_square(a.rows(), a.cols());
    const auto n = static_cast<lapack_int>(a.rows());
    Eigen::VectorXd w(a.rows());
    if(n == 0) return w;
    check_info(LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'L', n, as_lapack(a), n, w.data()), "zheevd");
    return w;
}

Eigen::VectorXd hermitian_eigenvalues(Eigen::MatrixXcd &a) {
    check_square(a.rows(), a.cols());
    const auto n = static_cast<lapack_int>(a.rows());
    Eigen::VectorXd w(a.rows());
    if(n == 0) return w;
    if(n == 1) {
        w(0) = a(0, 0).real();
        return w;
    }
    check_info(LAPACKE_zheevd(LAPACK_COL_MAJOR, 'N', 'L', n, as_lapack(a), n, w.data()), "zheevd");
    return w;
}

} // namespace qspread
