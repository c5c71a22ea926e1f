#pragma once

#include <string>

#include "rdmkit/rdm.hpp"

namespace rdmkit {

inline constexpr double kDuodempotentTol = 1e-6;

/// The part of the 2-RDM not expressible through 1-RDM products:
/// Lambda(i,k,j,l) = D2(i,k,j,l) - 1/2 D_ij D_kl + 1/4 D_il D_kj.
/// Vanishes exactly for closed-shell single determinants.
struct CumulantTensor {
  Tensor4 tensor;

  double frobenius_norm() const;
};

/// Domain-averaged hole built from the full 2-RDM:
///
///   G(Omega)_ij = N_Omega D_ij - 2 sum_{kl} D2(i,k,j,l) S(Omega)_lk
///
/// with N_Omega = Tr(D S(Omega)). Hermitian and trace-correct by the
/// 2-RDM conventions, but carries no positivity guarantee: negative
/// eigenvalues are a legal outcome to be classified, never clamped.
DomainRestrictedRdm dafh_matrix(const OneRdm& d, const TwoRdm& d2, const SymMatrix& s,
                                std::string domain_label = "");

/// Closed-shell single-determinant fast path: (1/2) D S D, defined only
/// for duodempotent D (D^2 = 2D), where it coincides with both
/// dafh_matrix and symmetric_restrict.
DomainRestrictedRdm single_det_dafh(const OneRdm& d, const SymMatrix& s,
                                    std::string domain_label = "");

/// The closed-shell single-determinant 2-RDM of a duodempotent D:
/// D2(i,k,j,l) = 1/2 D_ij D_kl - 1/4 D_il D_kj.
TwoRdm single_det_two_rdm(const OneRdm& d);

CumulantTensor cumulant(const OneRdm& d, const TwoRdm& d2);

/// ||D^2 - 2D||_F, the deviation from the closed-shell idempotency
/// condition gating the single-determinant fast paths.
double duodempotency_deviation(const OneRdm& d);

}  // namespace rdmkit
