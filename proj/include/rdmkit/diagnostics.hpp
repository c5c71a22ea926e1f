#pragma once

#include <string>
#include <vector>

#include "rdmkit/rdm.hpp"

namespace rdmkit {

inline constexpr double kCommutingTol = 1e-8;

/// Pairwise Frobenius commutator norms of a family of domain matrices.
/// A nonzero table means the family shares no common eigenbasis, so
/// descriptors built from the eigenvectors of two different domains mix
/// incompatible bases.
struct CommutatorReport {
  std::vector<std::string> labels;
  Eigen::MatrixXd norms;  // symmetric, zero diagonal
  double max_norm = 0.0;
  bool commuting = true;  // max_norm <= kCommutingTol
};

CommutatorReport common_eigenbasis_report(const std::vector<DomainRestrictedRdm>& drs);

/// What discarding the negative part of a spectrum does to the domain
/// population: the leak is the (nonpositive) sum of negative eigenvalues.
struct NeglectImpact {
  double trace_before = 0.0;
  double trace_after_dropping_negatives = 0.0;
  double population_leak = 0.0;
};

NeglectImpact neglect_impact(const DomainRestrictedRdm& dr);

}  // namespace rdmkit
