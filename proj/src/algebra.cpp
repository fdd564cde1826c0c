#include "qspread/algebra.hpp"

#include "qspread/operators.hpp"

#include <algorithm>
#include <stdexcept>

namespace qspread {

PauliString cluster_stabilizer(int site) {
    if(site < 1) throw std::invalid_argument("cluster stabilizer needs a left neighbour");
    return PauliString::x(site - 1) * PauliString::z(site) * PauliString::x(site + 1);
}

PauliString dual_tau_z(int site) { return PauliString::x(site) * PauliString::x(site + 1); }

PauliString dual_tau_x(int site) {
    PauliString p;
    for(int j = 0; j <= site; ++j) p *= PauliString::z(j);
    return p;
}

PauliString cluster_string_operator(int first, int last) {
    if(first < 0 || last < first + 3) throw std::invalid_argument("string operator needs last >= first + 3");
    PauliString p = PauliString::x(first) * PauliString::y(first + 1);
    for(int k = first + 2; k <= last - 2; ++k) p *= PauliString::z(k);
    return p * PauliString::y(last - 1) * PauliString::x(last);
}

double AlgebraReport::max_residual() const {
    double m = 0.0;
    for(const auto &r : residuals) m = std::max(m, r.residual);
    return m;
}

AlgebraReport verify_cluster_algebra(int num_sites, int site) {
    if(site < 1 || site > num_sites - 2) throw std::invalid_argument("cluster algebra needs 1 <= i <= L-2");
    const PauliString xi = PauliString::x(site);
    const PauliString xyx = PauliString::x(site - 1) * PauliString::y(site) * PauliString::x(site + 1);
    const Complex half{0.5, 0.0}, ihalf{0.0, 0.5};

    const Eigen::MatrixXcd k = pauli_matrix(cluster_stabilizer(site), num_sites);
    const std::vector<ComplexPauliTerm> plus_terms{{half, xi}, {ihalf, xyx}};
    const std::vector<ComplexPauliTerm> minus_terms{{half, xi}, {-ihalf, xyx}};
    const Eigen::MatrixXcd kp = pauli_matrix(plus_terms, num_sites);
    const Eigen::MatrixXcd km = pauli_matrix(minus_terms, num_sites);
    const Eigen::MatrixXcd chi1 = kp + km;
    const Eigen::MatrixXcd chi2 = (kp - km) / Complex{0.0, 1.0};
    const auto one = Eigen::MatrixXcd::Identity(k.rows(), k.cols());
    const auto zero = Eigen::MatrixXcd::Zero(k.rows(), k.cols());

    AlgebraReport report{num_sites, site, {}};
    auto add = [&](std::string name, const Eigen::MatrixXcd &lhs, const Eigen::MatrixXcd &rhs) {
        report.residuals.push_back({std::move(name), max_abs_diff(lhs, rhs)});
    };
    add("(K+)^dagger = K-", kp.adjoint(), km);
    add("(K+)^2 = 0", kp * kp, zero);
    add("(K-)^2 = 0", km * km, zero);
    add("K+K- + K-K+ = 1", kp * km + km * kp, one);
    add("K+K- = (1 + K)/2", kp * km, (one + k) / 2.0);
    add("[K, K+] = 2K+", k * kp - kp * k, 2.0 * kp);
    add("[K, K-] = -2K-", k * km - km * k, -2.0 * km);
    add("{chi1, chi2} = 0", chi1 * chi2 + chi2 * chi1, zero);
    add("chi1^2 = 1", chi1 * chi1, one);
    add("chi2^2 = 1", chi2 * chi2, one);
    return report;
}

} // namespace qspread
