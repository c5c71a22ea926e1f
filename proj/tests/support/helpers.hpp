#pragma once

#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "rdmkit/rdm.hpp"

namespace rdmkit::testing {

inline Eigen::MatrixXd random_gaussian(int rows, int cols, std::mt19937& rng) {
  std::normal_distribution<double> dist;
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = dist(rng);
  return m;
}

inline Eigen::MatrixXd random_symmetric(int dim, std::mt19937& rng) {
  Eigen::MatrixXd g = random_gaussian(dim, dim, rng);
  return 0.5 * (g + g.transpose());
}

inline Eigen::MatrixXd random_orthogonal(int dim, std::mt19937& rng) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(random_gaussian(dim, dim, rng));
  return qr.householderQ() * Eigen::MatrixXd::Identity(dim, dim);
}

inline Eigen::MatrixXd random_orthonormal_columns(int rows, int cols, std::mt19937& rng) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(random_gaussian(rows, cols, rng));
  return qr.householderQ() * Eigen::MatrixXd::Identity(rows, cols);
}

// Fuzzy domain set: a shared random eigenbasis with per-direction weights
// splitting 1 across the domains, so each matrix has spectrum in (0, 1)
// and the family resolves the identity exactly.
inline DomainOverlapSet random_domain_set(int dim, int n_domains, std::mt19937& rng) {
  const Eigen::MatrixXd q = random_orthogonal(dim, rng);
  std::uniform_real_distribution<double> dist(0.05, 1.0);
  Eigen::MatrixXd weights(n_domains, dim);
  for (int e = 0; e < dim; ++e) {
    double sum = 0.0;
    for (int d = 0; d < n_domains; ++d) {
      weights(d, e) = dist(rng);
      sum += weights(d, e);
    }
    weights.col(e) /= sum;
  }
  std::vector<Eigen::MatrixXd> matrices;
  std::vector<std::string> labels;
  for (int d = 0; d < n_domains; ++d) {
    Eigen::MatrixXd s = q * weights.row(d).asDiagonal() * q.transpose();
    matrices.push_back(0.5 * (s + s.transpose()));
    labels.push_back("fuzzy" + std::to_string(d));
  }
  return validate_domain_set(matrices, std::move(labels));
}

// Hubbard dimer closed forms (singlet ground state, open boundary).
inline double dimer_energy(double u, double t) {
  return 0.5 * (u - std::sqrt(u * u + 16.0 * t * t));
}
inline double dimer_off_diagonal(double u, double t) {
  return 4.0 * t / std::sqrt(u * u + 16.0 * t * t);
}

// Brute-force maximum of the isopycnic functional for spectra with at
// most two positive occupations: a dense scan over the one rotation
// angle (identity for fewer than two active orbitals).
inline double angle_grid_max_functional(const Spectrum& spec, const DomainOverlapSet& domains,
                                        int points = 721) {
  std::vector<int> active;
  for (int i = 0; i < spec.eigenvalues.size(); ++i) {
    if (spec.eigenvalues(i) > kZeroOccupation) active.push_back(i);
  }
  const auto functional = [&](const Eigen::MatrixXd& w) {
    double value = 0.0;
    for (int d = 0; d < domains.size(); ++d) {
      for (Eigen::Index c = 0; c < w.cols(); ++c) {
        const double pop = w.col(c).dot(domains.matrix(d).mat() * w.col(c));
        value += pop * pop;
      }
    }
    return value;
  };

  Eigen::MatrixXd w(spec.eigenvectors.rows(), active.size());
  for (std::size_t c = 0; c < active.size(); ++c) {
    w.col(c) = std::sqrt(spec.eigenvalues(active[c])) * spec.eigenvectors.col(active[c]);
  }
  if (active.size() < 2) return functional(w);

  double best = -1.0;
  for (int g = 0; g < points; ++g) {
    const double theta =
        -std::numbers::pi / 4.0 + g * (std::numbers::pi / 2.0) / (points - 1);
    Eigen::MatrixXd rotated(w.rows(), 2);
    rotated.col(0) = std::cos(theta) * w.col(0) + std::sin(theta) * w.col(1);
    rotated.col(1) = -std::sin(theta) * w.col(0) + std::cos(theta) * w.col(1);
    best = std::max(best, functional(rotated));
  }
  return best;
}

}  // namespace rdmkit::testing
