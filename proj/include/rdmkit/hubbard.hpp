#pragma once

#include <string>
#include <vector>

#include "rdmkit/rdm.hpp"

namespace rdmkit {

enum class Boundary { Open, Periodic };

const char* to_string(Boundary b);
Boundary boundary_from_string(const std::string& s);

/// Small 1D Hubbard chain solved exactly in the S_z = 0 sector. The
/// dimension guard keeps the dense diagonalization at desk scale.
struct HubbardSpec {
  int n_sites = 2;
  int n_electrons = 2;
  double hopping = 1.0;      // t > 0
  double interaction = 0.0;  // U >= 0
  Boundary boundary = Boundary::Open;
};

inline constexpr int kMaxHilbertDim = 4900;

struct FciSolution {
  double ground_energy = 0.0;
  bool degenerate_ground_state = false;
  OneRdm one_rdm;
  TwoRdm two_rdm;
};

/// Exact ground state by dense diagonalization over occupation-number
/// determinants (modes ordered site-ascending, spin-up before spin-down
/// within a site). Both RDMs are assembled from the ground-state vector
/// and pass their validators before being returned.
FciSolution hubbard_fci(const HubbardSpec& spec);

/// Diagonal 0/1 projectors onto disjoint site blocks covering 1..L.
/// Empty blocks are allowed and yield zero overlap matrices.
DomainOverlapSet site_domains(int n_sites, const std::vector<std::vector<int>>& blocks);

struct SingleDetSystem {
  OneRdm one_rdm;
  TwoRdm two_rdm;
};

/// Closed-shell single determinant from N/2 orthonormal orbital columns:
/// D = 2 C C^T (duodempotent by construction) with its exact 2-RDM.
SingleDetSystem single_det_system(const Eigen::MatrixXd& orbital_coeffs);

}  // namespace rdmkit
