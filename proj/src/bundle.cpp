#include "rdmkit/bundle.hpp"

#include <cmath>

#include "rdmkit/version.hpp"

namespace rdmkit {

namespace {

void put_matrix(Document& doc, const std::string& key, const Eigen::MatrixXd& m) {
  std::vector<double> data;
  data.reserve(m.size());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) data.push_back(m(i, j));
  doc.put_array(key, {m.rows(), m.cols()}, std::move(data));
}

Eigen::MatrixXd get_matrix(const Document& doc, const std::string& key) {
  const ArrayValue& a = doc.get_array(key);
  if (a.shape.size() != 2) {
    throw Error(ErrorCode::ParseError, "array '" + key + "' is not two-dimensional");
  }
  Eigen::MatrixXd m(a.shape[0], a.shape[1]);
  std::size_t n = 0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = a.data[n++];
  return m;
}

void put_vector(Document& doc, const std::string& key, const Eigen::VectorXd& v) {
  doc.put_array(key, {v.size()}, std::vector<double>(v.data(), v.data() + v.size()));
}

Eigen::VectorXd get_vector(const Document& doc, const std::string& key) {
  const ArrayValue& a = doc.get_array(key);
  if (a.shape.size() != 1) {
    throw Error(ErrorCode::ParseError, "array '" + key + "' is not one-dimensional");
  }
  return Eigen::Map<const Eigen::VectorXd>(a.data.data(), a.shape[0]);
}

void put_tensor4(Document& doc, const std::string& key, const Tensor4& t) {
  const long m = t.dim();
  doc.put_array(key, {m, m, m, m}, t.data());
}

Tensor4 get_tensor4(const Document& doc, const std::string& key) {
  const ArrayValue& a = doc.get_array(key);
  if (a.shape.size() != 4 || a.shape[0] != a.shape[1] || a.shape[0] != a.shape[2] ||
      a.shape[0] != a.shape[3]) {
    throw Error(ErrorCode::ParseError, "array '" + key + "' is not a hypercubic 4-tensor");
  }
  Tensor4 t(static_cast<int>(a.shape[0]));
  t.data() = a.data;
  return t;
}

void put_header(Document& doc, const std::string& kind) {
  doc.put_string("kind", kind);
  doc.put_string("tool_version", kToolVersion);
}

void expect_kind(const Document& doc, const std::string& kind) {
  const std::string& actual = doc.get_string("kind");
  if (actual != kind) {
    throw Error(ErrorCode::ParseError,
                "expected a '" + kind + "' file, found kind '" + actual + "'");
  }
}

void encode_system(Document& doc, const ModelSystem& system) {
  doc.put_string("source", system.source);
  if (system.model) {
    doc.put_int("model.sites", system.model->n_sites);
    doc.put_int("model.electrons", system.model->n_electrons);
    doc.put_real("model.t", system.model->hopping);
    doc.put_real("model.u", system.model->interaction);
    doc.put_string("model.boundary", to_string(system.model->boundary));
  }
  if (system.ground_energy) doc.put_real("model.ground_energy", *system.ground_energy);
  doc.put_bool("model.degenerate", system.degenerate_ground_state);
  doc.put_int("one_rdm.electrons", system.one_rdm.n_electrons());
  put_matrix(doc, "one_rdm.matrix", system.one_rdm.matrix().mat());
  if (system.two_rdm) {
    // index order (i,k,j,l), row-major
    put_tensor4(doc, "two_rdm.tensor", system.two_rdm->tensor());
  }
}

ModelSystem decode_system(const Document& doc) {
  const int electrons = static_cast<int>(doc.get_int("one_rdm.electrons"));
  OneRdm one = validate_one_rdm(get_matrix(doc, "one_rdm.matrix"), electrons);
  std::optional<TwoRdm> two;
  if (doc.has("two_rdm.tensor")) {
    two = validate_two_rdm(get_tensor4(doc, "two_rdm.tensor"), one);
  }
  std::optional<HubbardSpec> model;
  if (doc.has("model.sites")) {
    model = HubbardSpec{static_cast<int>(doc.get_int("model.sites")),
                        static_cast<int>(doc.get_int("model.electrons")),
                        doc.get_real("model.t"), doc.get_real("model.u"),
                        boundary_from_string(doc.get_string("model.boundary"))};
  }
  std::optional<double> energy;
  if (doc.has("model.ground_energy")) energy = doc.get_real("model.ground_energy");
  return ModelSystem{doc.get_string("source"),       model,          energy,
                     doc.get_bool("model.degenerate"), std::move(one), std::move(two)};
}

void encode_domains(Document& doc, const DomainOverlapSet& domains) {
  doc.put_int("domains.count", domains.size());
  for (int i = 0; i < domains.size(); ++i) {
    const std::string prefix = "domains." + std::to_string(i);
    doc.put_string(prefix + ".label", domains.label(i));
    put_matrix(doc, prefix + ".matrix", domains.matrix(i).mat());
  }
}

DomainOverlapSet decode_domains(const Document& doc) {
  const int count = static_cast<int>(doc.get_int("domains.count"));
  std::vector<Eigen::MatrixXd> matrices;
  std::vector<std::string> labels;
  for (int i = 0; i < count; ++i) {
    const std::string prefix = "domains." + std::to_string(i);
    labels.push_back(doc.get_string(prefix + ".label"));
    matrices.push_back(get_matrix(doc, prefix + ".matrix"));
  }
  return validate_domain_set(matrices, std::move(labels));
}

void encode_report(Document& doc, const std::string& prefix,
                   const RepresentabilityReport& report) {
  doc.put_real(prefix + ".hermiticity_deviation", report.hermiticity_deviation);
  put_vector(doc, prefix + ".eigenvalues", report.eigenvalues);
  doc.put_real(prefix + ".min_eigenvalue", report.min_eigenvalue);
  doc.put_real(prefix + ".max_eigenvalue", report.max_eigenvalue);
  doc.put_real(prefix + ".trace", report.trace);
  if (report.expected_trace) doc.put_real(prefix + ".expected_trace", *report.expected_trace);
  doc.put_int(prefix + ".findings.count", static_cast<long>(report.findings.size()));
  for (std::size_t f = 0; f < report.findings.size(); ++f) {
    const std::string fp = prefix + ".findings." + std::to_string(f);
    doc.put_string(fp + ".code", to_string(report.findings[f].code));
    doc.put_real(fp + ".magnitude", report.findings[f].magnitude);
  }
  doc.put_string(prefix + ".verdict", to_string(report.verdict));
}

RepresentabilityReport decode_report(const Document& doc, const std::string& prefix) {
  RepresentabilityReport report;
  report.hermiticity_deviation = doc.get_real(prefix + ".hermiticity_deviation");
  report.eigenvalues = get_vector(doc, prefix + ".eigenvalues");
  report.min_eigenvalue = doc.get_real(prefix + ".min_eigenvalue");
  report.max_eigenvalue = doc.get_real(prefix + ".max_eigenvalue");
  report.trace = doc.get_real(prefix + ".trace");
  if (doc.has(prefix + ".expected_trace")) {
    report.expected_trace = doc.get_real(prefix + ".expected_trace");
  }
  const int count = static_cast<int>(doc.get_int(prefix + ".findings.count"));
  for (int f = 0; f < count; ++f) {
    const std::string fp = prefix + ".findings." + std::to_string(f);
    report.findings.push_back({finding_code_from_string(doc.get_string(fp + ".code")),
                               doc.get_real(fp + ".magnitude")});
  }
  const std::string verdict = doc.get_string(prefix + ".verdict");
  if (verdict == "REPRESENTABLE") {
    report.verdict = Verdict::REPRESENTABLE;
  } else if (verdict == "NOT_REPRESENTABLE") {
    report.verdict = Verdict::NOT_REPRESENTABLE;
  } else {
    throw Error(ErrorCode::ParseError, "unknown verdict '" + verdict + "'");
  }
  return report;
}

void encode_restricted(Document& doc, const std::string& prefix,
                       const DomainRestrictedRdm& dr) {
  doc.put_string(prefix + ".provenance", to_string(dr.provenance));
  put_matrix(doc, prefix + ".matrix", dr.matrix.mat());
}

DomainRestrictedRdm decode_restricted(const Document& doc, const std::string& prefix,
                                      const std::string& label, const OneRdm& one_rdm,
                                      const SymMatrix& overlap) {
  const Provenance provenance = provenance_from_string(doc.get_string(prefix + ".provenance"));
  DomainRestrictedRdm dr =
      DomainRestrictedRdm::make(label, SymMatrix(get_matrix(doc, prefix + ".matrix")),
                                provenance);
  // trace must equal the domain population Tr(1D S)
  const double population = (one_rdm.matrix().mat() * overlap.mat()).trace();
  const double dev = std::abs(dr.trace() - population);
  if (!(dev <= kTraceTol)) {
    throw ValidationError({{ViolationCode::TraceMismatch, dev,
                            "restored domain matrix '" + label +
                                "' does not carry the domain population"}},
                          "bundle result");
  }
  return dr;
}

void encode_orbitals(Document& doc, const std::string& prefix,
                     const LocalizedOrbitals& orbitals) {
  doc.put_int(prefix + ".count", orbitals.occupations.size());
  doc.put_int(prefix + ".dim", orbitals.orbitals.rows());
  put_matrix(doc, prefix + ".columns", orbitals.orbitals);
  put_vector(doc, prefix + ".occupations", orbitals.occupations);
  doc.put_real(prefix + ".functional", orbitals.functional_value);
  doc.put_int(prefix + ".sweeps", orbitals.sweeps_used);
  doc.put_bool(prefix + ".converged", orbitals.converged);
  doc.put_array(prefix + ".history",
                {static_cast<long>(orbitals.functional_history.size())},
                orbitals.functional_history);
}

LocalizedOrbitals decode_orbitals(const Document& doc, const std::string& prefix) {
  LocalizedOrbitals orbitals;
  orbitals.orbitals = get_matrix(doc, prefix + ".columns");
  orbitals.occupations = get_vector(doc, prefix + ".occupations");
  orbitals.functional_value = doc.get_real(prefix + ".functional");
  orbitals.sweeps_used = static_cast<int>(doc.get_int(prefix + ".sweeps"));
  orbitals.converged = doc.get_bool(prefix + ".converged");
  const ArrayValue& h = doc.get_array(prefix + ".history");
  orbitals.functional_history = h.data;
  if (orbitals.orbitals.cols() != orbitals.occupations.size()) {
    throw Error(ErrorCode::ParseError, "orbital/occupation count mismatch in '" + prefix + "'");
  }
  for (Eigen::Index c = 0; c < orbitals.orbitals.cols(); ++c) {
    const double norm_dev = std::abs(orbitals.orbitals.col(c).norm() - 1.0);
    if (!(norm_dev <= 1e-8) || orbitals.occupations(c) < 0.0) {
      throw ValidationError({{ViolationCode::BoundViolation, norm_dev,
                              "localized orbitals are not unit-normalized with "
                              "nonnegative occupations"}},
                            "localized orbitals");
    }
  }
  return orbitals;
}

void encode_tolerances(Document& doc, const Tolerances& tol) {
  doc.put_real("tol.sym_tol", tol.sym_tol);
  doc.put_real("tol.clamp_tol", tol.clamp_tol);
  doc.put_real("tol.check_tol", tol.check_tol);
  doc.put_real("tol.conv_tol", tol.conv_tol);
  doc.put_int("tol.max_sweeps", tol.max_sweeps);
}

Tolerances decode_tolerances(const Document& doc) {
  Tolerances tol;
  tol.sym_tol = doc.get_real("tol.sym_tol");
  tol.clamp_tol = doc.get_real("tol.clamp_tol");
  tol.check_tol = doc.get_real("tol.check_tol");
  tol.conv_tol = doc.get_real("tol.conv_tol");
  tol.max_sweeps = static_cast<int>(doc.get_int("tol.max_sweeps"));
  return tol;
}

}  // namespace

void save_matrix_file(const std::string& path, const Eigen::MatrixXd& m) {
  Document doc;
  put_header(doc, "matrix");
  put_matrix(doc, "matrix", m);
  write_document_file(path, doc);
}

Eigen::MatrixXd load_matrix_file(const std::string& path) {
  Document doc = read_document_file(path);
  expect_kind(doc, "matrix");
  return get_matrix(doc, "matrix");
}

void save_system_file(const std::string& path, const ModelSystem& system) {
  Document doc;
  put_header(doc, "system");
  encode_system(doc, system);
  write_document_file(path, doc);
}

ModelSystem load_system_file(const std::string& path) {
  Document doc = read_document_file(path);
  expect_kind(doc, "system");
  return decode_system(doc);
}

void save_domains_file(const std::string& path, const DomainOverlapSet& domains) {
  Document doc;
  put_header(doc, "domains");
  encode_domains(doc, domains);
  write_document_file(path, doc);
}

DomainOverlapSet load_domains_file(const std::string& path) {
  Document doc = read_document_file(path);
  expect_kind(doc, "domains");
  return decode_domains(doc);
}

void save_orbitals_file(const std::string& path, const LocalizedOrbitals& orbitals) {
  Document doc;
  put_header(doc, "orbitals");
  encode_orbitals(doc, "orbitals", orbitals);
  write_document_file(path, doc);
}

LocalizedOrbitals load_orbitals_file(const std::string& path) {
  Document doc = read_document_file(path);
  expect_kind(doc, "orbitals");
  return decode_orbitals(doc, "orbitals");
}

Document bundle_to_document(const AnalysisBundle& bundle) {
  Document doc;
  doc.put_string("kind", "bundle");
  doc.put_string("tool_version",
                 bundle.tool_version.empty() ? kToolVersion : bundle.tool_version);
  encode_tolerances(doc, bundle.tolerances);
  encode_system(doc, bundle.system);
  encode_domains(doc, bundle.domains);

  doc.put_int("results.count", static_cast<long>(bundle.results.size()));
  for (std::size_t i = 0; i < bundle.results.size(); ++i) {
    const DomainResult& r = bundle.results[i];
    const std::string prefix = "results." + std::to_string(i);
    doc.put_string(prefix + ".label", r.label);
    if (r.symmetric) encode_restricted(doc, prefix + ".symmetric", *r.symmetric);
    if (r.symmetric_report) encode_report(doc, prefix + ".symmetric.report", *r.symmetric_report);
    if (r.dafh) encode_restricted(doc, prefix + ".dafh", *r.dafh);
    if (r.dafh_report) encode_report(doc, prefix + ".dafh.report", *r.dafh_report);
    if (r.difference_frobenius) {
      doc.put_real(prefix + ".difference_frobenius", *r.difference_frobenius);
    }
    if (r.dafh_neglect) {
      doc.put_real(prefix + ".neglect.trace_before", r.dafh_neglect->trace_before);
      doc.put_real(prefix + ".neglect.trace_after",
                   r.dafh_neglect->trace_after_dropping_negatives);
      doc.put_real(prefix + ".neglect.population_leak", r.dafh_neglect->population_leak);
    }
    if (r.localized) encode_orbitals(doc, prefix + ".localized", *r.localized);
  }

  if (bundle.commutators) {
    const CommutatorReport& c = *bundle.commutators;
    doc.put_int("commutators.count", static_cast<long>(c.labels.size()));
    for (std::size_t i = 0; i < c.labels.size(); ++i) {
      doc.put_string("commutators." + std::to_string(i) + ".label", c.labels[i]);
    }
    put_matrix(doc, "commutators.norms", c.norms);
    doc.put_real("commutators.max_norm", c.max_norm);
    doc.put_bool("commutators.commuting", c.commuting);
  }
  return doc;
}

AnalysisBundle bundle_from_document(const Document& doc) {
  expect_kind(doc, "bundle");
  Tolerances tol = decode_tolerances(doc);
  ModelSystem system = decode_system(doc);
  DomainOverlapSet domains = decode_domains(doc);

  AnalysisBundle bundle{doc.get_string("tool_version"), tol, std::move(system),
                        std::move(domains), {}, std::nullopt};

  const int count = static_cast<int>(doc.get_int("results.count"));
  for (int i = 0; i < count; ++i) {
    const std::string prefix = "results." + std::to_string(i);
    DomainResult r;
    r.label = doc.get_string(prefix + ".label");

    int domain_index = -1;
    for (int d = 0; d < bundle.domains.size(); ++d) {
      if (bundle.domains.label(d) == r.label) domain_index = d;
    }
    if (domain_index < 0) {
      throw Error(ErrorCode::ParseError, "result label '" + r.label + "' has no domain");
    }
    const SymMatrix& overlap = bundle.domains.matrix(domain_index);

    if (doc.has(prefix + ".symmetric.matrix")) {
      r.symmetric = decode_restricted(doc, prefix + ".symmetric", r.label,
                                      bundle.system.one_rdm, overlap);
    }
    if (doc.has(prefix + ".symmetric.report.verdict")) {
      r.symmetric_report = decode_report(doc, prefix + ".symmetric.report");
    }
    if (doc.has(prefix + ".dafh.matrix")) {
      r.dafh = decode_restricted(doc, prefix + ".dafh", r.label, bundle.system.one_rdm,
                                 overlap);
    }
    if (doc.has(prefix + ".dafh.report.verdict")) {
      r.dafh_report = decode_report(doc, prefix + ".dafh.report");
    }
    if (doc.has(prefix + ".difference_frobenius")) {
      r.difference_frobenius = doc.get_real(prefix + ".difference_frobenius");
    }
    if (doc.has(prefix + ".neglect.trace_before")) {
      r.dafh_neglect = NeglectImpact{doc.get_real(prefix + ".neglect.trace_before"),
                                     doc.get_real(prefix + ".neglect.trace_after"),
                                     doc.get_real(prefix + ".neglect.population_leak")};
    }
    if (doc.has(prefix + ".localized.columns")) {
      r.localized = decode_orbitals(doc, prefix + ".localized");
    }
    bundle.results.push_back(std::move(r));
  }

  if (doc.has("commutators.count")) {
    CommutatorReport c;
    const int n = static_cast<int>(doc.get_int("commutators.count"));
    for (int i = 0; i < n; ++i) {
      c.labels.push_back(doc.get_string("commutators." + std::to_string(i) + ".label"));
    }
    c.norms = get_matrix(doc, "commutators.norms");
    c.max_norm = doc.get_real("commutators.max_norm");
    c.commuting = doc.get_bool("commutators.commuting");
    bundle.commutators = std::move(c);
  }
  return bundle;
}

void save_bundle_file(const std::string& path, const AnalysisBundle& bundle) {
  write_document_file(path, bundle_to_document(bundle));
}

AnalysisBundle load_bundle_file(const std::string& path) {
  return bundle_from_document(read_document_file(path));
}

}  // namespace rdmkit
