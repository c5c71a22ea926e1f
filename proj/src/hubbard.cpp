#include "rdmkit/hubbard.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <sstream>
#include <unordered_map>

#include "rdmkit/dafh.hpp"

namespace rdmkit {

const char* to_string(Boundary b) { return b == Boundary::Open ? "open" : "periodic"; }

Boundary boundary_from_string(const std::string& s) {
  if (s == "open") return Boundary::Open;
  if (s == "periodic") return Boundary::Periodic;
  throw Error(ErrorCode::ParseError, "unknown boundary '" + s + "'");
}

namespace {

// Mode ordering: site-ascending, spin-up before spin-down within a site.
int mode_of(int site, int spin) { return 2 * site + spin; }

int ann_sign(std::uint32_t det, int mode) {
  const std::uint32_t below = det & ((1u << mode) - 1u);
  return (std::popcount(below) & 1) ? -1 : 1;
}

struct DetBasis {
  std::vector<std::uint32_t> dets;
  std::unordered_map<std::uint32_t, int> index;
};

DetBasis build_basis(int n_sites, int n_up) {
  DetBasis basis;
  std::vector<std::uint32_t> masks;
  for (std::uint32_t mask = 0; mask < (1u << n_sites); ++mask) {
    if (std::popcount(mask) == n_up) masks.push_back(mask);
  }
  for (std::uint32_t up : masks) {
    for (std::uint32_t dn : masks) {
      std::uint32_t det = 0;
      for (int s = 0; s < n_sites; ++s) {
        if ((up >> s) & 1u) det |= 1u << mode_of(s, 0);
        if ((dn >> s) & 1u) det |= 1u << mode_of(s, 1);
      }
      basis.index.emplace(det, static_cast<int>(basis.dets.size()));
      basis.dets.push_back(det);
    }
  }
  return basis;
}

void validate_spec(const HubbardSpec& spec) {
  if (spec.n_sites < 2 || spec.n_sites > 8) {
    std::ostringstream os;
    os << "n_sites = " << spec.n_sites << " outside the supported range [2, 8]";
    throw Error(ErrorCode::TooLarge, os.str());
  }
  if (spec.n_electrons < 2 || spec.n_electrons % 2 != 0 ||
      spec.n_electrons > 2 * spec.n_sites) {
    throw Error(ErrorCode::InvalidArgument,
                "n_electrons must be even, at least 2, and at most 2 * n_sites");
  }
  if (!(spec.hopping > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "hopping t must be positive");
  }
  if (spec.interaction < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "interaction U must be nonnegative");
  }
}

std::vector<std::pair<int, int>> bond_list(int n_sites, Boundary boundary) {
  std::vector<std::pair<int, int>> bonds;
  for (int s = 0; s + 1 < n_sites; ++s) bonds.emplace_back(s, s + 1);
  if (boundary == Boundary::Periodic && n_sites > 2) bonds.emplace_back(n_sites - 1, 0);
  return bonds;
}

}  // namespace

FciSolution hubbard_fci(const HubbardSpec& spec) {
  validate_spec(spec);
  const int n_sites = spec.n_sites;
  const int n_up = spec.n_electrons / 2;

  const DetBasis basis = build_basis(n_sites, n_up);
  const int dim = static_cast<int>(basis.dets.size());
  if (dim > kMaxHilbertDim) {
    std::ostringstream os;
    os << "Hilbert space dimension " << dim << " exceeds the guard " << kMaxHilbertDim;
    throw Error(ErrorCode::TooLarge, os.str());
  }

  const auto bonds = bond_list(n_sites, spec.boundary);
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  for (int col = 0; col < dim; ++col) {
    const std::uint32_t det = basis.dets[col];
    int double_occ = 0;
    for (int s = 0; s < n_sites; ++s) {
      if (((det >> mode_of(s, 0)) & 1u) && ((det >> mode_of(s, 1)) & 1u)) ++double_occ;
    }
    h(col, col) += spec.interaction * double_occ;

    for (const auto& [a, b] : bonds) {
      for (int spin = 0; spin < 2; ++spin) {
        for (const auto& [from, to] :
             {std::pair{mode_of(a, spin), mode_of(b, spin)},
              std::pair{mode_of(b, spin), mode_of(a, spin)}}) {
          if (!((det >> from) & 1u) || ((det >> to) & 1u)) continue;
          const int s1 = ann_sign(det, from);
          const std::uint32_t mid = det & ~(1u << from);
          const int s2 = ann_sign(mid, to);
          const std::uint32_t moved = mid | (1u << to);
          h(basis.index.at(moved), col) += -spec.hopping * s1 * s2;
        }
      }
    }
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::InvalidArgument, "Hamiltonian diagonalization failed");
  }
  Eigen::VectorXd ground = solver.eigenvectors().col(0);
  {
    int arg = 0;
    double best = std::abs(ground(0));
    for (int i = 1; i < dim; ++i) {
      if (std::abs(ground(i)) > best) {
        best = std::abs(ground(i));
        arg = i;
      }
    }
    if (ground(arg) < 0.0) ground = -ground;
  }
  const double energy = solver.eigenvalues()(0);
  const bool degenerate = dim > 1 && solver.eigenvalues()(1) - energy < 1e-10;

  // 1-RDM: D_ij = sum_sigma <a+_{i sigma} a_{j sigma}>
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n_sites, n_sites);
  for (int col = 0; col < dim; ++col) {
    const double c = ground(col);
    if (c == 0.0) continue;
    const std::uint32_t det = basis.dets[col];
    for (int spin = 0; spin < 2; ++spin) {
      for (int j = 0; j < n_sites; ++j) {
        const int mj = mode_of(j, spin);
        if (!((det >> mj) & 1u)) continue;
        const int s1 = ann_sign(det, mj);
        const std::uint32_t mid = det & ~(1u << mj);
        for (int i = 0; i < n_sites; ++i) {
          const int mi = mode_of(i, spin);
          if ((mid >> mi) & 1u) continue;
          const int s2 = ann_sign(mid, mi);
          const std::uint32_t out = mid | (1u << mi);
          d(i, j) += s1 * s2 * ground(basis.index.at(out)) * c;
        }
      }
    }
  }

  // 2-RDM: D2(i,k,j,l) = 1/2 sum_{sigma tau}
  //   <a+_{i sigma} a+_{k tau} a_{l tau} a_{j sigma}>
  Tensor4 t(n_sites);
  for (int col = 0; col < dim; ++col) {
    const double c = ground(col);
    if (c == 0.0) continue;
    const std::uint32_t det = basis.dets[col];
    for (int sigma = 0; sigma < 2; ++sigma) {
      for (int tau = 0; tau < 2; ++tau) {
        for (int j = 0; j < n_sites; ++j) {
          const int mj = mode_of(j, sigma);
          if (!((det >> mj) & 1u)) continue;
          const int s1 = ann_sign(det, mj);
          const std::uint32_t d1 = det & ~(1u << mj);
          for (int l = 0; l < n_sites; ++l) {
            const int ml = mode_of(l, tau);
            if (!((d1 >> ml) & 1u)) continue;
            const int s2 = ann_sign(d1, ml);
            const std::uint32_t d2 = d1 & ~(1u << ml);
            for (int k = 0; k < n_sites; ++k) {
              const int mk = mode_of(k, tau);
              if ((d2 >> mk) & 1u) continue;
              const int s3 = ann_sign(d2, mk);
              const std::uint32_t d3 = d2 | (1u << mk);
              for (int i = 0; i < n_sites; ++i) {
                const int mi = mode_of(i, sigma);
                if ((d3 >> mi) & 1u) continue;
                const int s4 = ann_sign(d3, mi);
                const std::uint32_t d4 = d3 | (1u << mi);
                t(i, k, j, l) += 0.5 * s1 * s2 * s3 * s4 * ground(basis.index.at(d4)) * c;
              }
            }
          }
        }
      }
    }
  }

  OneRdm one = validate_one_rdm(d, spec.n_electrons);
  TwoRdm two = validate_two_rdm(t, one);
  return FciSolution{energy, degenerate, std::move(one), std::move(two)};
}

DomainOverlapSet site_domains(int n_sites, const std::vector<std::vector<int>>& blocks) {
  if (n_sites < 1) {
    throw Error(ErrorCode::InvalidArgument, "site_domains requires at least one site");
  }
  if (blocks.empty()) {
    throw Error(ErrorCode::InvalidPartition, "no blocks given");
  }
  std::vector<bool> covered(n_sites, false);
  for (const auto& block : blocks) {
    for (int site : block) {
      if (site < 1 || site > n_sites) {
        std::ostringstream os;
        os << "site " << site << " outside 1.." << n_sites;
        throw Error(ErrorCode::InvalidPartition, os.str());
      }
      if (covered[site - 1]) {
        std::ostringstream os;
        os << "site " << site << " appears in more than one block";
        throw Error(ErrorCode::InvalidPartition, os.str());
      }
      covered[site - 1] = true;
    }
  }
  for (int s = 0; s < n_sites; ++s) {
    if (!covered[s]) {
      std::ostringstream os;
      os << "site " << s + 1 << " is not covered by any block";
      throw Error(ErrorCode::InvalidPartition, os.str());
    }
  }

  std::vector<Eigen::MatrixXd> matrices;
  std::vector<std::string> labels;
  for (const auto& block : blocks) {
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n_sites, n_sites);
    for (int site : block) s(site - 1, site - 1) = 1.0;
    matrices.push_back(std::move(s));

    // Label: comma-separated sites with contiguous runs collapsed.
    std::vector<int> sorted(block);
    std::sort(sorted.begin(), sorted.end());
    std::ostringstream os;
    for (std::size_t b = 0; b < sorted.size();) {
      std::size_t e = b;
      while (e + 1 < sorted.size() && sorted[e + 1] == sorted[e] + 1) ++e;
      if (b > 0) os << ",";
      if (e > b) {
        os << sorted[b] << "-" << sorted[e];
      } else {
        os << sorted[b];
      }
      b = e + 1;
    }
    labels.push_back(sorted.empty() ? "empty" : os.str());
  }
  return validate_domain_set(matrices, std::move(labels));
}

SingleDetSystem single_det_system(const Eigen::MatrixXd& orbital_coeffs) {
  if (orbital_coeffs.cols() < 1 || orbital_coeffs.rows() < orbital_coeffs.cols()) {
    throw Error(ErrorCode::InvalidArgument,
                "orbital coefficient matrix must be m x (N/2) with N/2 in [1, m]");
  }
  const Eigen::MatrixXd overlap =
      orbital_coeffs.transpose() * orbital_coeffs -
      Eigen::MatrixXd::Identity(orbital_coeffs.cols(), orbital_coeffs.cols());
  const double dev = overlap.cwiseAbs().maxCoeff();
  if (!(dev <= 1e-10)) {
    std::ostringstream os;
    os << "orbital columns are not orthonormal: max |C^T C - I| = " << dev;
    throw Error(ErrorCode::NonOrthonormal, os.str(), dev);
  }

  Eigen::MatrixXd d = 2.0 * orbital_coeffs * orbital_coeffs.transpose();
  d = 0.5 * (d + d.transpose()).eval();
  OneRdm one = validate_one_rdm(d, 2 * static_cast<int>(orbital_coeffs.cols()));
  TwoRdm two = single_det_two_rdm(one);
  return SingleDetSystem{std::move(one), std::move(two)};
}

}  // namespace rdmkit
