#include "rdmkit/localization.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "rdmkit/representability.hpp"

namespace rdmkit {

namespace {

// Quadratic forms of one column pair in one domain.
struct PairForms {
  double aa;  // w_i^T S w_i
  double bb;  // w_j^T S w_j
  double ab;  // w_i^T S w_j
};

// Pair contribution to L after rotating (w_i, w_j) by theta.
double pair_objective(const std::vector<PairForms>& forms, double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  double value = 0.0;
  for (const auto& f : forms) {
    const double p = c * c * f.aa + 2.0 * c * s * f.ab + s * s * f.bb;
    const double q = s * s * f.aa - 2.0 * c * s * f.ab + c * c * f.bb;
    value += p * p + q * q;
  }
  return value;
}

// Deterministic bracketing scan, then golden-section refinement. The
// objective restricted to one rotation is a single cos(4 theta) harmonic
// plus a constant, so it is not unimodal over the full quarter period;
// the scan isolates the maximum before the section search narrows it.
double best_pair_angle(const std::vector<PairForms>& forms) {
  constexpr int kScanPoints = 33;
  const double quarter = std::numbers::pi / 4.0;
  const double step = 2.0 * quarter / (kScanPoints - 1);

  int best = 0;
  double best_value = pair_objective(forms, -quarter);
  for (int k = 1; k < kScanPoints; ++k) {
    const double value = pair_objective(forms, -quarter + k * step);
    if (value > best_value) {
      best_value = value;
      best = k;
    }
  }

  double lo = -quarter + (best - 1) * step;
  double hi = -quarter + (best + 1) * step;
  if (lo < -quarter) lo = -quarter;
  if (hi > quarter) hi = quarter;

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = pair_objective(forms, x1);
  double f2 = pair_objective(forms, x2);
  while (hi - lo > 1e-12) {
    if (f1 >= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = pair_objective(forms, x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = pair_objective(forms, x2);
    }
  }
  return 0.5 * (lo + hi);
}

double functional(const Eigen::MatrixXd& w, const std::vector<Eigen::MatrixXd>& sw) {
  double value = 0.0;
  for (const auto& x : sw) {
    for (Eigen::Index i = 0; i < w.cols(); ++i) {
      const double pop = w.col(i).dot(x.col(i));
      value += pop * pop;
    }
  }
  return value;
}

}  // namespace

LocalizedOrbitals isopycnic_localize(const Spectrum& spec, const DomainOverlapSet& domains,
                                     double conv_tol, int max_sweeps,
                                     const SweepObserver& observer) {
  const int m = static_cast<int>(spec.eigenvectors.rows());
  if (domains.dim() != m) {
    throw Error(ErrorCode::DimensionMismatch,
                "domain set dimension does not match the spectrum");
  }
  if (spec.eigenvalues.size() != spec.eigenvectors.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "spectrum eigenvalue/eigenvector count differs");
  }

  const double min_eig = spec.eigenvalues.size() ? spec.eigenvalues.minCoeff() : 0.0;
  if (min_eig < -kClampTol) {
    std::ostringstream os;
    os << "occupation " << min_eig << " is negative; the isopycnic transformation "
       << "is undefined for negative occupations";
    throw Error(ErrorCode::NegativeOccupation, os.str(), min_eig);
  }

  // Scaled orbitals w_i = sqrt(n_i) v_i; occupations below the zero
  // threshold are dropped as exact zeros.
  std::vector<int> active;
  for (int i = 0; i < spec.eigenvalues.size(); ++i) {
    if (spec.eigenvalues(i) > kZeroOccupation) active.push_back(i);
  }
  const int k = static_cast<int>(active.size());

  LocalizedOrbitals result;
  if (k == 0) {
    result.orbitals = Eigen::MatrixXd::Zero(m, 0);
    result.occupations = Eigen::VectorXd::Zero(0);
    result.functional_history = {0.0};
    if (observer) observer(0, result.orbitals, 0.0);
    return result;
  }

  Eigen::MatrixXd w(m, k);
  for (int c = 0; c < k; ++c) {
    w.col(c) = std::sqrt(spec.eigenvalues(active[c])) * spec.eigenvectors.col(active[c]);
  }

  // Cache S(Omega) w per domain; rotations update the cached columns.
  std::vector<Eigen::MatrixXd> sw;
  sw.reserve(domains.size());
  for (int d = 0; d < domains.size(); ++d) sw.push_back(domains.matrix(d).mat() * w);

  double value = functional(w, sw);
  result.functional_history = {value};
  if (observer) observer(0, w, value);

  int sweeps = 0;
  bool converged = false;
  while (sweeps < max_sweeps) {
    ++sweeps;
    for (int i = 0; i < k - 1; ++i) {
      for (int j = i + 1; j < k; ++j) {
        std::vector<PairForms> forms(domains.size());
        for (std::size_t d = 0; d < forms.size(); ++d) {
          forms[d].aa = w.col(i).dot(sw[d].col(i));
          forms[d].bb = w.col(j).dot(sw[d].col(j));
          forms[d].ab = w.col(i).dot(sw[d].col(j));
        }
        const double theta = best_pair_angle(forms);
        if (pair_objective(forms, theta) <= pair_objective(forms, 0.0)) continue;
        const double c = std::cos(theta);
        const double s = std::sin(theta);
        const Eigen::VectorXd wi = w.col(i);
        w.col(i) = c * wi + s * w.col(j);
        w.col(j) = -s * wi + c * w.col(j);
        for (auto& x : sw) {
          const Eigen::VectorXd xi = x.col(i);
          x.col(i) = c * xi + s * x.col(j);
          x.col(j) = -s * xi + c * x.col(j);
        }
      }
    }
    const double new_value = functional(w, sw);
    const double gain = new_value - value;
    value = new_value;
    result.functional_history.push_back(value);
    if (observer) observer(sweeps, w, value);
    if (gain < conv_tol) {
      converged = true;
      break;
    }
  }

  result.orbitals.resize(m, k);
  result.occupations.resize(k);
  for (int c = 0; c < k; ++c) {
    const double occ = w.col(c).squaredNorm();
    if (occ < kZeroOccupation) {
      result.occupations(c) = 0.0;
      const double norm = w.col(c).norm();
      if (norm > 0.0) {
        result.orbitals.col(c) = w.col(c) / norm;
      } else {
        result.orbitals.col(c).setZero();
        result.orbitals(0, c) = 1.0;
      }
    } else {
      result.occupations(c) = occ;
      result.orbitals.col(c) = w.col(c) / std::sqrt(occ);
    }
  }
  result.functional_value = value;
  result.sweeps_used = sweeps;
  result.converged = converged;
  return result;
}

LocalizedOrbitals localize_domain(const DomainRestrictedRdm& dr, const DomainOverlapSet& domains,
                                  double conv_tol, int max_sweeps,
                                  const SweepObserver& observer) {
  RepresentabilityReport report = check(dr.matrix.mat());
  if (report.verdict != Verdict::REPRESENTABLE) {
    std::ostringstream os;
    os << "domain matrix '" << dr.domain_label << "' is not representable:";
    for (const auto& f : report.findings) os << " " << to_string(f.code);
    throw Error(ErrorCode::NotRepresentable, os.str(),
                report.findings.empty() ? 0.0 : report.findings.front().magnitude);
  }
  return isopycnic_localize(dr.spectrum, domains, conv_tol, max_sweeps, observer);
}

}  // namespace rdmkit
