#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rdmkit/diagnostics.hpp"
#include "rdmkit/hubbard.hpp"
#include "rdmkit/localization.hpp"
#include "rdmkit/representability.hpp"
#include "rdmkit/serialize.hpp"

namespace rdmkit {

/// Tolerances in force when a bundle was produced; recorded in every
/// output file for provenance.
struct Tolerances {
  double sym_tol = kSymTol;
  double clamp_tol = kClampTol;
  double check_tol = kCheckTol;
  double conv_tol = kConvTol;
  int max_sweeps = kMaxSweeps;
};

/// A system under analysis: its 1-RDM, optionally its 2-RDM, and where
/// it came from (a model solve or an input file).
struct ModelSystem {
  std::string source;
  std::optional<HubbardSpec> model;
  std::optional<double> ground_energy;
  bool degenerate_ground_state = false;
  OneRdm one_rdm;
  std::optional<TwoRdm> two_rdm;
};

struct DomainResult {
  std::string label;
  std::optional<DomainRestrictedRdm> symmetric;
  std::optional<RepresentabilityReport> symmetric_report;
  std::optional<DomainRestrictedRdm> dafh;
  std::optional<RepresentabilityReport> dafh_report;
  std::optional<double> difference_frobenius;
  std::optional<NeglectImpact> dafh_neglect;
  std::optional<LocalizedOrbitals> localized;
};

/// Everything one analysis run produced. Loading a bundle re-validates
/// every embedded matrix, so a bundle that parses is also consistent.
struct AnalysisBundle {
  std::string tool_version;
  Tolerances tolerances;
  ModelSystem system;
  DomainOverlapSet domains;
  std::vector<DomainResult> results;
  std::optional<CommutatorReport> commutators;
};

void save_matrix_file(const std::string& path, const Eigen::MatrixXd& m);
Eigen::MatrixXd load_matrix_file(const std::string& path);

void save_system_file(const std::string& path, const ModelSystem& system);
ModelSystem load_system_file(const std::string& path);

void save_domains_file(const std::string& path, const DomainOverlapSet& domains);
DomainOverlapSet load_domains_file(const std::string& path);

void save_orbitals_file(const std::string& path, const LocalizedOrbitals& orbitals);
LocalizedOrbitals load_orbitals_file(const std::string& path);

void save_bundle_file(const std::string& path, const AnalysisBundle& bundle);
AnalysisBundle load_bundle_file(const std::string& path);

Document bundle_to_document(const AnalysisBundle& bundle);
AnalysisBundle bundle_from_document(const Document& doc);

}  // namespace rdmkit
