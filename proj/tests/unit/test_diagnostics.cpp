#include <doctest.h>

#include <cmath>

#include "rdmkit/decomposition.hpp"
#include "rdmkit/diagnostics.hpp"
#include "rdmkit/hubbard.hpp"
#include "reference/frozen_references.hpp"

using namespace rdmkit;
namespace ref = rdmkit::reference;

TEST_CASE("a zero-padded partition trivially commutes") {
  const FciSolution sol = hubbard_fci({2, 2, 1.0, 4.0, Boundary::Open});
  const DomainOverlapSet padded = site_domains(2, {{1, 2}, {}});
  const auto parts = partition(sol.one_rdm, padded);
  const CommutatorReport report = common_eigenbasis_report(parts);
  CHECK(report.max_norm <= 1e-12);
  CHECK(report.commuting);
}

TEST_CASE("diagonal restrictions of a diagonal 1-RDM commute") {
  const OneRdm d = validate_one_rdm(Eigen::Vector2d(2.0, 0.0).asDiagonal(), 2);
  const auto parts = partition(d, site_domains(2, {{1}, {2}}));
  const CommutatorReport report = common_eigenbasis_report(parts);
  CHECK(report.max_norm <= 1e-12);
  CHECK(report.commuting);
}

TEST_CASE("correlated dimer restrictions share no eigenbasis") {
  const FciSolution sol = hubbard_fci({2, 2, 1.0, 4.0, Boundary::Open});
  const auto parts = partition(sol.one_rdm, site_domains(2, {{1}, {2}}));
  const CommutatorReport report = common_eigenbasis_report(parts);
  CHECK_FALSE(report.commuting);
  CHECK(report.max_norm > 1e-6);
  CHECK(std::abs(report.max_norm - ref::kDimerU4CommutatorFrob) <= 1e-9);
  CHECK(report.norms(0, 1) == report.norms(1, 0));
  CHECK(report.norms(0, 0) == 0.0);
}

TEST_CASE("the commutator table is permutation invariant") {
  const FciSolution sol = hubbard_fci({4, 4, 1.0, 2.0, Boundary::Open});
  auto parts = partition(sol.one_rdm, site_domains(4, {{1}, {2, 3}, {4}}));
  const CommutatorReport forward = common_eigenbasis_report(parts);
  std::reverse(parts.begin(), parts.end());
  const CommutatorReport backward = common_eigenbasis_report(parts);
  CHECK(std::abs(forward.max_norm - backward.max_norm) <= 1e-14);
  const int n = static_cast<int>(parts.size());
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      CHECK(forward.norms(a, b) ==
            doctest::Approx(backward.norms(n - 1 - a, n - 1 - b)).epsilon(1e-14));
    }
  }
}

TEST_CASE("common_eigenbasis_report argument errors") {
  const FciSolution sol = hubbard_fci({2, 2, 1.0, 4.0, Boundary::Open});
  const auto parts = partition(sol.one_rdm, site_domains(2, {{1, 2}}));
  CHECK_THROWS_AS(common_eigenbasis_report(parts), Error);

  auto mixed = parts;
  const FciSolution other = hubbard_fci({4, 4, 1.0, 2.0, Boundary::Open});
  mixed.push_back(symmetric_restrict(other.one_rdm, SymMatrix::identity(4), "big"));
  CHECK_THROWS_AS(common_eigenbasis_report(mixed), Error);
}

TEST_CASE("neglect_impact vanishes on representable matrices") {
  const FciSolution sol = hubbard_fci({2, 2, 1.0, 4.0, Boundary::Open});
  const auto r = symmetric_restrict(sol.one_rdm, SymMatrix{Eigen::Vector2d(1.0, 0.0).asDiagonal()}, "A");
  const NeglectImpact impact = neglect_impact(r);
  CHECK(impact.population_leak <= 0.0);
  CHECK(impact.population_leak >= -1e-10);
}

TEST_CASE("neglect_impact quantifies the dropped population") {
  const auto synthetic = DomainRestrictedRdm::make(
      "synthetic", SymMatrix{Eigen::Vector2d(1.0, -0.03).asDiagonal()}, Provenance::DAFH);
  const NeglectImpact impact = neglect_impact(synthetic);
  CHECK(std::abs(impact.trace_before - 0.97) <= 1e-12);
  CHECK(std::abs(impact.trace_after_dropping_negatives - 1.0) <= 1e-12);
  CHECK(std::abs(impact.population_leak - (-0.03)) <= 1e-12);
}
