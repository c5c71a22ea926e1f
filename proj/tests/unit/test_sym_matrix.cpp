#include <doctest.h>

#include <cmath>

#include "rdmkit/sym_matrix.hpp"
#include "support/helpers.hpp"

using namespace rdmkit;
namespace helpers = rdmkit::testing;

namespace {

double reconstruction_error(const SymMatrix& a, const Spectrum& spec) {
  const Eigen::MatrixXd rebuilt = spec.eigenvectors * spec.eigenvalues.asDiagonal() *
                                  spec.eigenvectors.transpose();
  return (rebuilt - a.mat()).cwiseAbs().maxCoeff();
}

double orthonormality_error(const Spectrum& spec) {
  const Eigen::Index m = spec.eigenvectors.cols();
  return (spec.eigenvectors.transpose() * spec.eigenvectors -
          Eigen::MatrixXd::Identity(m, m))
      .cwiseAbs()
      .maxCoeff();
}

}  // namespace

TEST_CASE("SymMatrix admission enforces symmetry") {
  Eigen::MatrixXd skew(2, 2);
  skew << 0.0, 1.0, 0.0, 0.0;
  CHECK_THROWS_AS(SymMatrix{skew}, Error);
  try {
    SymMatrix bad{skew};
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonSymmetric);
    CHECK(e.magnitude() == doctest::Approx(1.0));
  }

  // asymmetry below the tolerance is admitted
  Eigen::MatrixXd nearly(2, 2);
  nearly << 1.0, 1e-12, 0.0, 1.0;
  CHECK_NOTHROW(SymMatrix{nearly});
}

TEST_CASE("sym_eigen on the identity") {
  const Spectrum spec = sym_eigen(SymMatrix::identity(2));
  CHECK(std::abs(spec.eigenvalues(0) - 1.0) <= 1e-14);
  CHECK(std::abs(spec.eigenvalues(1) - 1.0) <= 1e-14);
  CHECK(orthonormality_error(spec) <= 1e-10);
}

TEST_CASE("sym_eigen on the flat dimer matrix") {
  Eigen::MatrixXd m(2, 2);
  m << 1.0, 1.0, 1.0, 1.0;
  const Spectrum spec = sym_eigen(SymMatrix{m});
  CHECK(std::abs(spec.eigenvalues(0) - 0.0) <= 1e-14);
  CHECK(std::abs(spec.eigenvalues(1) - 2.0) <= 1e-14);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  // sign convention: tie on magnitudes resolves to the lowest index
  CHECK(std::abs(spec.eigenvectors(0, 0) - inv_sqrt2) <= 1e-14);
  CHECK(std::abs(spec.eigenvectors(1, 0) + inv_sqrt2) <= 1e-14);
  CHECK(std::abs(spec.eigenvectors(0, 1) - inv_sqrt2) <= 1e-14);
  CHECK(std::abs(spec.eigenvectors(1, 1) - inv_sqrt2) <= 1e-14);
}

TEST_CASE("sym_eigen orders eigenvalues ascending") {
  const Spectrum spec = sym_eigen(SymMatrix{Eigen::Vector2d(3.0, -1.0).asDiagonal()});
  CHECK(spec.eigenvalues(0) == doctest::Approx(-1.0));
  CHECK(spec.eigenvalues(1) == doctest::Approx(3.0));
}

TEST_CASE("sym_eigen is deterministic") {
  std::mt19937 rng(7);
  const Eigen::MatrixXd m = helpers::random_symmetric(6, rng);
  const Spectrum a = sym_eigen(SymMatrix{m});
  const Spectrum b = sym_eigen(SymMatrix{m});
  CHECK((a.eigenvalues - b.eigenvalues).cwiseAbs().maxCoeff() == 0.0);
  CHECK((a.eigenvectors - b.eigenvectors).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("sym_eigen reconstruction over random symmetric matrices") {
  std::mt19937 rng(11);
  for (int dim : {1, 2, 3, 5, 8, 16, 32, 64}) {
    const SymMatrix a{helpers::random_symmetric(dim, rng)};
    const Spectrum spec = sym_eigen(a);
    CHECK(orthonormality_error(spec) <= 1e-10);
    CHECK(reconstruction_error(a, spec) <= 1e-9);
    for (int i = 0; i + 1 < dim; ++i) {
      CHECK(spec.eigenvalues(i) <= spec.eigenvalues(i + 1));
    }
  }
}

TEST_CASE("degenerate eigenvalues: subspaces match even if vectors differ") {
  std::mt19937 rng(13);
  const Eigen::MatrixXd q = helpers::random_orthogonal(4, rng);
  Eigen::VectorXd eigs(4);
  eigs << 1.0, 1.0, 2.0, 3.0;
  const SymMatrix a{
      Eigen::MatrixXd(0.5 * (q * eigs.asDiagonal() * q.transpose() +
                             (q * eigs.asDiagonal() * q.transpose()).transpose()))};
  const Spectrum spec = sym_eigen(a);
  const Eigen::MatrixXd p_computed =
      spec.eigenvectors.leftCols(2) * spec.eigenvectors.leftCols(2).transpose();
  const Eigen::MatrixXd p_true = q.leftCols(2) * q.leftCols(2).transpose();
  CHECK((p_computed - p_true).cwiseAbs().maxCoeff() <= 1e-9);
}

TEST_CASE("psd_sqrt basics") {
  const SymMatrix root = psd_sqrt(SymMatrix::identity(3));
  CHECK((root.mat() - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() <= 1e-14);

  Eigen::MatrixXd flat(2, 2);
  flat << 1.0, 1.0, 1.0, 1.0;
  const SymMatrix r = psd_sqrt(SymMatrix{flat});
  CHECK((r.mat() - flat / std::sqrt(2.0)).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("psd_sqrt rejects a genuinely negative eigenvalue") {
  const SymMatrix a{Eigen::Vector2d(1.0, -0.03).asDiagonal()};
  CHECK_THROWS_AS(psd_sqrt(a), Error);
  try {
    psd_sqrt(a);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotPSD);
    CHECK(std::abs(e.magnitude() - (-0.03)) <= 1e-12);
  }
}

TEST_CASE("psd_sqrt clamps eigenvalues inside the noise band") {
  const SymMatrix a{Eigen::Vector2d(1.0, -5e-9).asDiagonal()};
  const SymMatrix r = psd_sqrt(a);
  CHECK(r(1, 1) == 0.0);
  CHECK(r(0, 0) == doctest::Approx(1.0));
}

TEST_CASE("psd_sqrt squares back to the input for random PSD matrices") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> occ(0.0, 2.0);
  for (int dim : {2, 4, 8, 16, 64}) {
    const Eigen::MatrixXd q = helpers::random_orthogonal(dim, rng);
    Eigen::VectorXd eigs(dim);
    for (int i = 0; i < dim; ++i) eigs(i) = occ(rng);
    Eigen::MatrixXd a = q * eigs.asDiagonal() * q.transpose();
    a = 0.5 * (a + a.transpose()).eval();
    const SymMatrix sym_a{a};
    const SymMatrix r = psd_sqrt(sym_a);
    CHECK((r.mat() * r.mat() - a).cwiseAbs().maxCoeff() <= 1e-8);
    CHECK(sym_eigen(r).eigenvalues.minCoeff() >= -1e-12);
  }
}

TEST_CASE("commutator_norm on commuting and non-commuting pairs") {
  CHECK(commutator_norm(SymMatrix{Eigen::Vector2d(1.0, 2.0).asDiagonal()},
                        SymMatrix{Eigen::Vector2d(3.0, 4.0).asDiagonal()}) == 0.0);

  std::mt19937 rng(19);
  const SymMatrix a{helpers::random_symmetric(4, rng)};
  CHECK(commutator_norm(SymMatrix::identity(4), a) <= 1e-12);

  // [[0,1],[1,0]] against diag(1,0): AB - BA = [[0,-1],[1,0]], norm sqrt(2)
  Eigen::MatrixXd x(2, 2);
  x << 0.0, 1.0, 1.0, 0.0;
  const double norm =
      commutator_norm(SymMatrix{x}, SymMatrix{Eigen::Vector2d(1.0, 0.0).asDiagonal()});
  CHECK(std::abs(norm - std::sqrt(2.0)) <= 1e-12);
}

TEST_CASE("commutator_norm properties") {
  std::mt19937 rng(23);
  const SymMatrix a{helpers::random_symmetric(5, rng)};
  const SymMatrix b{helpers::random_symmetric(5, rng)};
  CHECK(commutator_norm(a, b) == doctest::Approx(commutator_norm(b, a)).epsilon(1e-14));

  // simultaneously diagonalizable pairs commute
  const Eigen::MatrixXd q = helpers::random_orthogonal(5, rng);
  Eigen::VectorXd d1 = Eigen::VectorXd::LinSpaced(5, 0.0, 2.0);
  Eigen::VectorXd d2 = Eigen::VectorXd::LinSpaced(5, -1.0, 1.0);
  Eigen::MatrixXd m1 = q * d1.asDiagonal() * q.transpose();
  Eigen::MatrixXd m2 = q * d2.asDiagonal() * q.transpose();
  const double norm = commutator_norm(SymMatrix{Eigen::MatrixXd(0.5 * (m1 + m1.transpose()))},
                                      SymMatrix{Eigen::MatrixXd(0.5 * (m2 + m2.transpose()))});
  CHECK(norm <= 1e-10);

  CHECK_THROWS_AS(commutator_norm(SymMatrix::identity(2), SymMatrix::identity(3)), Error);
}
