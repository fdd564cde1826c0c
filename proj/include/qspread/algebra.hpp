#pragma once

#include "qspread/pauli.hpp"

#include <string>
#include <vector>

namespace qspread {

/// Cluster stabilizer K_i = X_{i-1} Z_i X_{i+1}.
PauliString cluster_stabilizer(int site);

/// Dual-chain operators: tau^z_i = X_i X_{i+1}, tau^x_i = prod_{j<=i} Z_j.
PauliString dual_tau_z(int site);
PauliString dual_tau_x(int site);

/// X_i Y_{i+1} (prod_{k=i+2}^{j-2} Z_k) Y_{j-1} X_j, requires j >= i + 3.
PauliString cluster_string_operator(int first, int last);

struct IdentityResidual {
    std::string identity;
    double residual;
};

struct AlgebraReport {
    int num_sites;
    int site;
    std::vector<IdentityResidual> residuals;

    double max_residual() const;
};

/// Builds K_i, K^+-_i = (X_i +- i X_{i-1} Y_i X_{i+1}) / 2 and the Majorana
/// pair chi^1 = K^+ + K^-, chi^2 = (K^+ - K^-) / i as dense matrices and
/// reports the max-norm residual of each hard-core boson / Majorana identity.
/// Requires 1 <= site <= num_sites - 2.
AlgebraReport verify_cluster_algebra(int num_sites, int site);

} // namespace qspread
