#pragma once

#include <string>
#include <vector>

#include "rdmkit/sym_matrix.hpp"
#include "rdmkit/tensor4.hpp"

namespace rdmkit {

inline constexpr double kTraceTol = 1e-8;
inline constexpr double kBoundTol = 1e-8;
inline constexpr double kTensorSymTol = 1e-10;

/// Spin-free first-order reduced density matrix over an orthonormal
/// basis: trace N, natural occupations in [0, 2]. The spectrum and the
/// positive square root are computed once at validation; every domain
/// restriction of this matrix reuses them.
class OneRdm {
 public:
  const SymMatrix& matrix() const { return matrix_; }
  int n_electrons() const { return n_electrons_; }
  const Spectrum& spectrum() const { return spectrum_; }
  const SymMatrix& sqrt() const { return sqrt_; }
  int dim() const { return matrix_.dim(); }

 private:
  friend OneRdm validate_one_rdm(const Eigen::MatrixXd& matrix, int n_electrons);
  OneRdm(SymMatrix matrix, int n_electrons, Spectrum spectrum, SymMatrix sqrt)
      : matrix_(std::move(matrix)),
        n_electrons_(n_electrons),
        spectrum_(std::move(spectrum)),
        sqrt_(std::move(sqrt)) {}

  SymMatrix matrix_;
  int n_electrons_;
  Spectrum spectrum_;
  SymMatrix sqrt_;
};

/// Spin-free second-order reduced density matrix D2(i,k,j,l), normalized
/// to trace N(N-1)/2 with contraction sum_k D2(i,k,j,k) = (N-1)/2 D_ij.
class TwoRdm {
 public:
  const Tensor4& tensor() const { return tensor_; }
  int n_electrons() const { return n_electrons_; }
  int dim() const { return tensor_.dim(); }

 private:
  friend TwoRdm validate_two_rdm(const Tensor4& tensor, const OneRdm& one_rdm);
  TwoRdm(Tensor4 tensor, int n_electrons)
      : tensor_(std::move(tensor)), n_electrons_(n_electrons) {}

  Tensor4 tensor_;
  int n_electrons_;
};

/// Labeled family of domain overlap matrices S(Omega): each symmetric
/// with eigenvalues in [0, 1], together resolving the identity.
class DomainOverlapSet {
 public:
  int size() const { return static_cast<int>(matrices_.size()); }
  int dim() const { return matrices_.front().dim(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<SymMatrix>& matrices() const { return matrices_; }
  const std::string& label(int i) const { return labels_[i]; }
  const SymMatrix& matrix(int i) const { return matrices_[i]; }

 private:
  friend DomainOverlapSet validate_domain_set(const std::vector<Eigen::MatrixXd>& matrices,
                                              std::vector<std::string> labels);
  DomainOverlapSet(std::vector<SymMatrix> matrices, std::vector<std::string> labels)
      : matrices_(std::move(matrices)), labels_(std::move(labels)) {}

  std::vector<SymMatrix> matrices_;
  std::vector<std::string> labels_;
};

enum class Provenance { SymmetricRestriction, DAFH, SingleDetDAFH };

const char* to_string(Provenance p);
Provenance provenance_from_string(const std::string& s);

/// A per-domain matrix together with how it was built. The trace always
/// equals the domain population Tr(1D S(Omega)); positivity depends on
/// the provenance and is what the representability checker classifies.
struct DomainRestrictedRdm {
  std::string domain_label;
  SymMatrix matrix;
  Provenance provenance;
  Spectrum spectrum;

  double trace() const { return matrix.trace(); }

  static DomainRestrictedRdm make(std::string label, SymMatrix matrix, Provenance provenance);
};

OneRdm validate_one_rdm(const Eigen::MatrixXd& matrix, int n_electrons);
TwoRdm validate_two_rdm(const Tensor4& tensor, const OneRdm& one_rdm);
DomainOverlapSet validate_domain_set(const std::vector<Eigen::MatrixXd>& matrices,
                                     std::vector<std::string> labels);

}  // namespace rdmkit
