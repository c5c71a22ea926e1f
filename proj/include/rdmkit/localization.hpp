#pragma once

#include <functional>
#include <vector>

#include "rdmkit/rdm.hpp"

namespace rdmkit {

inline constexpr double kConvTol = 1e-10;
inline constexpr int kMaxSweeps = 100;

/// Result of an isopycnic (density-preserving, occupation-weighted)
/// localization. The orbitals and occupations reproduce the input
/// matrix exactly: sum_i n'_i u'_i u'_i^T is invariant under the
/// transformation, as is sum_i n'_i.
struct LocalizedOrbitals {
  Eigen::MatrixXd orbitals;      // m x k, unit-norm columns
  Eigen::VectorXd occupations;   // length k, all >= 0
  double functional_value = 0.0;
  int sweeps_used = 0;
  bool converged = true;
  /// Functional before the first sweep, then after each completed sweep.
  std::vector<double> functional_history;
};

/// Called after each completed sweep (and once at sweep 0 with the
/// starting state). `scaled_orbitals` holds sqrt(n'_i) u'_i as columns,
/// so scaled_orbitals * scaled_orbitals^T is the represented matrix.
using SweepObserver =
    std::function<void(int sweep, const Eigen::MatrixXd& scaled_orbitals, double functional)>;

/// Localize the eigenvectors of a PSD matrix by cyclic 2x2 rotations in
/// the occupation-scaled orbital space, maximizing
///
///   L = sum_i sum_Omega [ n'_i <u'_i|S(Omega)|u'_i> ]^2 .
///
/// Occupations below kZeroOccupation are dropped as exact zeros; an
/// eigenvalue below -kClampTol raises NegativeOccupation (the transform
/// is undefined for negative occupations). With no positive occupation
/// at all the result is an empty orbital set with L = 0.
LocalizedOrbitals isopycnic_localize(const Spectrum& spec, const DomainOverlapSet& domains,
                                     double conv_tol = kConvTol, int max_sweeps = kMaxSweeps,
                                     const SweepObserver& observer = {});

/// Eigendecompose a domain matrix and localize. Refuses matrices whose
/// representability verdict is not REPRESENTABLE, so holes with negative
/// spectra are rejected rather than silently clamped.
LocalizedOrbitals localize_domain(const DomainRestrictedRdm& dr, const DomainOverlapSet& domains,
                                  double conv_tol = kConvTol, int max_sweeps = kMaxSweeps,
                                  const SweepObserver& observer = {});

}  // namespace rdmkit
