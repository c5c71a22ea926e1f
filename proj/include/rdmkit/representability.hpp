#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rdmkit/rdm.hpp"

namespace rdmkit {

inline constexpr double kCheckTol = 1e-8;

enum class FindingCode {
  NEGATIVE_EIGENVALUE,
  PAULI_VIOLATION,
  TRACE_MISMATCH,
  NON_HERMITIAN,
};

const char* to_string(FindingCode code);
FindingCode finding_code_from_string(const std::string& s);

struct Finding {
  FindingCode code;
  double magnitude;
};

enum class Verdict { REPRESENTABLE, NOT_REPRESENTABLE };

const char* to_string(Verdict v);

/// Verdict on whether a candidate domain matrix satisfies the
/// closed-shell representability conditions: hermitian, eigenvalues in
/// [0, 2], and (when known) the expected trace. Findings carry
/// magnitudes so violations can be ranked; the matrix is never repaired.
struct RepresentabilityReport {
  double hermiticity_deviation = 0.0;
  Eigen::VectorXd eigenvalues;
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
  double trace = 0.0;
  std::optional<double> expected_trace;
  std::vector<Finding> findings;
  Verdict verdict = Verdict::REPRESENTABLE;
};

RepresentabilityReport check(const Eigen::MatrixXd& m,
                             std::optional<double> expected_trace = std::nullopt,
                             double check_tol = kCheckTol);

/// Both constructions for one domain, each checked, with the Frobenius
/// norm of their difference. The symmetric side is representable by
/// construction; the DAFH verdict is data.
struct ConstructionComparison {
  std::string domain_label;
  DomainRestrictedRdm symmetric;
  DomainRestrictedRdm dafh;
  RepresentabilityReport symmetric_report;
  RepresentabilityReport dafh_report;
  double difference_frobenius;
};

std::vector<ConstructionComparison> compare_constructions(const OneRdm& d, const TwoRdm& d2,
                                                          const DomainOverlapSet& domains,
                                                          double check_tol = kCheckTol);

}  // namespace rdmkit
