#include <doctest.h>

#include <cmath>

#include "rdmkit/decomposition.hpp"
#include "rdmkit/hubbard.hpp"
#include "rdmkit/localization.hpp"
#include "support/helpers.hpp"

using namespace rdmkit;
namespace helpers = rdmkit::testing;

namespace {

Eigen::MatrixXd represented_matrix(const LocalizedOrbitals& loc) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(loc.orbitals.rows(), loc.orbitals.rows());
  for (Eigen::Index c = 0; c < loc.orbitals.cols(); ++c) {
    m += loc.occupations(c) * loc.orbitals.col(c) * loc.orbitals.col(c).transpose();
  }
  return m;
}

}  // namespace

TEST_CASE("single full domain: natural orbitals are already stationary") {
  const FciSolution sol = hubbard_fci({2, 2, 1.0, 4.0, Boundary::Open});
  const DomainOverlapSet full = site_domains(2, {{1, 2}});
  const LocalizedOrbitals loc = isopycnic_localize(sol.one_rdm.spectrum(), full);
  CHECK(loc.converged);
  CHECK(loc.sweeps_used == 1);
  CHECK((loc.orbitals - sol.one_rdm.spectrum().eigenvectors).cwiseAbs().maxCoeff() <= 1e-10);
  CHECK((loc.occupations - sol.one_rdm.spectrum().eigenvalues).cwiseAbs().maxCoeff() <= 1e-10);
  const double expected = sol.one_rdm.spectrum().eigenvalues.squaredNorm();
  CHECK(std::abs(loc.functional_value - expected) <= 1e-10);
}

TEST_CASE("negative occupations are refused") {
  Spectrum spec;
  spec.eigenvalues = Eigen::Vector2d(-0.03, 1.0);
  spec.eigenvectors = Eigen::MatrixXd::Identity(2, 2);
  const DomainOverlapSet domains = site_domains(2, {{1}, {2}});
  CHECK_THROWS_AS(isopycnic_localize(spec, domains), Error);
  try {
    isopycnic_localize(spec, domains);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NegativeOccupation);
    CHECK(std::abs(e.magnitude() - (-0.03)) <= 1e-12);
  }
}

TEST_CASE("degenerate pair localizes onto the sites") {
  Spectrum spec;
  spec.eigenvalues = Eigen::Vector2d(1.0, 1.0);
  spec.eigenvectors.resize(2, 2);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  spec.eigenvectors << inv_sqrt2, inv_sqrt2, -inv_sqrt2, inv_sqrt2;
  const DomainOverlapSet domains = site_domains(2, {{1}, {2}});

  const LocalizedOrbitals loc = isopycnic_localize(spec, domains);
  CHECK(loc.converged);
  CHECK((loc.occupations - Eigen::Vector2d(1.0, 1.0)).cwiseAbs().maxCoeff() <= 1e-10);
  // site-centered up to order and sign
  Eigen::MatrixXd abs = loc.orbitals.cwiseAbs();
  const bool direct = (abs - Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() <= 1e-8;
  Eigen::MatrixXd swapped(2, 2);
  swapped << 0.0, 1.0, 1.0, 0.0;
  const bool exchanged = (abs - swapped).cwiseAbs().maxCoeff() <= 1e-8;
  CHECK((direct || exchanged));
  CHECK(std::abs(loc.functional_value - 2.0) <= 1e-9);

  const double grid = helpers::angle_grid_max_functional(spec, domains);
  CHECK(std::abs(loc.functional_value - grid) <= 1e-6);
}

TEST_CASE("all-zero spectra produce an empty orbital set") {
  Spectrum spec;
  spec.eigenvalues = Eigen::Vector2d(0.0, 0.0);
  spec.eigenvectors = Eigen::MatrixXd::Identity(2, 2);
  const LocalizedOrbitals loc = isopycnic_localize(spec, site_domains(2, {{1}, {2}}));
  CHECK(loc.orbitals.cols() == 0);
  CHECK(loc.occupations.size() == 0);
  CHECK(loc.functional_value == 0.0);
  CHECK(loc.converged);
}

TEST_CASE("localize_domain accepts restrictions and refuses negative spectra") {
  const FciSolution sol = hubbard_fci({2, 2, 1.0, 4.0, Boundary::Open});
  const DomainOverlapSet domains = site_domains(2, {{1}, {2}});
  const auto restriction = symmetric_restrict(sol.one_rdm, domains.matrix(0), "1");
  CHECK_NOTHROW(localize_domain(restriction, domains));

  const auto synthetic = DomainRestrictedRdm::make(
      "synthetic", SymMatrix{Eigen::Vector2d(1.0, -0.03).asDiagonal()}, Provenance::DAFH);
  CHECK_THROWS_AS(localize_domain(synthetic, domains), Error);
  try {
    localize_domain(synthetic, domains);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotRepresentable);
  }
}

TEST_CASE("localize_domain of a zero domain matrix is empty") {
  const FciSolution sol = hubbard_fci({2, 2, 1.0, 4.0, Boundary::Open});
  const DomainOverlapSet domains = site_domains(2, {{1}, {2}});
  const auto zero = symmetric_restrict(sol.one_rdm, SymMatrix::zero(2), "none");
  const LocalizedOrbitals loc = localize_domain(zero, domains);
  CHECK(loc.orbitals.cols() == 0);
  CHECK(loc.functional_value == 0.0);
}

TEST_CASE("density invariance and conservation hold after every sweep") {
  std::mt19937 rng(83);
  const FciSolution sol = hubbard_fci({4, 4, 1.0, 2.0, Boundary::Open});
  const DomainOverlapSet site = site_domains(4, {{1}, {2}, {3}, {4}});
  const DomainOverlapSet fuzzy = helpers::random_domain_set(4, 2, rng);

  for (const DomainOverlapSet* domains : {&site, &fuzzy}) {
    const Eigen::MatrixXd& target = sol.one_rdm.matrix().mat();
    const double occupation_sum = sol.one_rdm.spectrum().eigenvalues.sum();
    int observed_sweeps = 0;
    const LocalizedOrbitals loc = isopycnic_localize(
        sol.one_rdm.spectrum(), *domains, kConvTol, kMaxSweeps,
        [&](int sweep, const Eigen::MatrixXd& w, double) {
          observed_sweeps = sweep;
          CHECK((w * w.transpose() - target).cwiseAbs().maxCoeff() <= 1e-8);
          CHECK(std::abs(w.squaredNorm() - occupation_sum) <= 1e-10);
        });
    CHECK(observed_sweeps == loc.sweeps_used);
    CHECK(loc.converged);

    // invariants at the end
    CHECK((represented_matrix(loc) - target).cwiseAbs().maxCoeff() <= 1e-8);
    CHECK(std::abs(loc.occupations.sum() - occupation_sum) <= 1e-10);
    for (Eigen::Index c = 0; c < loc.orbitals.cols(); ++c) {
      CHECK(std::abs(loc.orbitals.col(c).norm() - 1.0) <= 1e-10);
      CHECK(loc.occupations(c) >= 0.0);
    }

    // the functional never decreases across sweeps
    for (std::size_t s = 1; s < loc.functional_history.size(); ++s) {
      CHECK(loc.functional_history[s] >= loc.functional_history[s - 1] - 1e-12);
    }
    CHECK(loc.functional_value >= loc.functional_history.front() - 1e-12);
  }
}

TEST_CASE("two-by-two localizations match the angle-grid brute force") {
  const FciSolution sol = hubbard_fci({2, 2, 1.0, 4.0, Boundary::Open});
  const DomainOverlapSet domains = site_domains(2, {{1}, {2}});

  // the full 1-RDM (two active orbitals)
  LocalizedOrbitals loc = isopycnic_localize(sol.one_rdm.spectrum(), domains);
  CHECK(loc.converged);
  double grid = helpers::angle_grid_max_functional(sol.one_rdm.spectrum(), domains);
  CHECK(std::abs(loc.functional_value - grid) <= 1e-6);

  // a rank-one restriction (single active orbital)
  const auto restriction = symmetric_restrict(sol.one_rdm, domains.matrix(0), "1");
  loc = localize_domain(restriction, domains);
  grid = helpers::angle_grid_max_functional(restriction.spectrum, domains);
  CHECK(std::abs(loc.functional_value - grid) <= 1e-6);
}

TEST_CASE("unconverged runs are a status, not an error") {
  std::mt19937 rng(89);
  const FciSolution sol = hubbard_fci({4, 4, 1.0, 2.0, Boundary::Open});
  const DomainOverlapSet domains = site_domains(4, {{1}, {2}, {3}, {4}});
  const LocalizedOrbitals loc =
      isopycnic_localize(sol.one_rdm.spectrum(), domains, 0.0, 3);
  CHECK_FALSE(loc.converged);
  CHECK(loc.sweeps_used == 3);
}
