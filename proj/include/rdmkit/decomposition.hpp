#pragma once

#include <string>
#include <vector>

#include "rdmkit/rdm.hpp"

namespace rdmkit {

/// Symmetric domain restriction D^{1/2} S(Omega) D^{1/2}. The result is
/// positive semidefinite with eigenvalues at most 2 and trace equal to
/// the domain population Tr(D S(Omega)).
DomainRestrictedRdm symmetric_restrict(const OneRdm& d, const SymMatrix& s,
                                       std::string domain_label = "");

/// The same restriction expressed in the natural-orbital basis, where it
/// reduces to elementwise scaling: G_ij = sqrt(n_i) S_ij sqrt(n_j). The
/// overlap matrix must already be rotated into that basis.
SymMatrix natural_basis_restrict(const Eigen::VectorXd& occupations, const SymMatrix& s_nat);

/// One symmetric restriction per domain. The restrictions sum exactly to
/// the input 1-RDM and their traces to the electron count.
std::vector<DomainRestrictedRdm> partition(const OneRdm& d, const DomainOverlapSet& domains);

}  // namespace rdmkit
