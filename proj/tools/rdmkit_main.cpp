#include <CLI11.hpp>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "rdmkit/bundle.hpp"
#include "rdmkit/dafh.hpp"
#include "rdmkit/decomposition.hpp"
#include "rdmkit/diagnostics.hpp"
#include "rdmkit/hubbard.hpp"
#include "rdmkit/localization.hpp"
#include "rdmkit/representability.hpp"
#include "rdmkit/version.hpp"

namespace {

using namespace rdmkit;

// Exit codes: 0 success, 1 malformed input, 2 validation failure,
// 3 not representable (check), 4 localization refused.
int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::ValidationFailure:
    case ErrorCode::NonOrthonormal:
    case ErrorCode::NotDuodempotent:
    case ErrorCode::NotPSD:
    case ErrorCode::NonSymmetric:
      return 2;
    case ErrorCode::NegativeOccupation:
    case ErrorCode::NotRepresentable:
      return 4;
    default:
      return 1;
  }
}

int parse_site_number(const std::string& text) {
  std::size_t used = 0;
  int value = 0;
  try {
    value = std::stoi(text, &used);
  } catch (const std::exception&) {
    throw Error(ErrorCode::InvalidArgument, "invalid site number '" + text + "'");
  }
  if (used != text.size()) {
    throw Error(ErrorCode::InvalidArgument, "invalid site number '" + text + "'");
  }
  return value;
}

// "1,2;3-4" -> {{1,2},{3,4}}; blocks separated by ';', sites by ',',
// contiguous ranges written "a-b".
std::vector<std::vector<int>> parse_site_blocks(const std::string& spec) {
  std::vector<std::vector<int>> blocks;
  std::size_t start = 0;
  while (start <= spec.size()) {
    const std::size_t semi = spec.find(';', start);
    const std::string segment =
        spec.substr(start, semi == std::string::npos ? std::string::npos : semi - start);
    if (segment.empty()) {
      throw Error(ErrorCode::InvalidArgument, "--site-blocks has an empty block");
    }
    std::vector<int> block;
    std::size_t item_start = 0;
    while (item_start <= segment.size()) {
      const std::size_t comma = segment.find(',', item_start);
      const std::string item = segment.substr(
          item_start, comma == std::string::npos ? std::string::npos : comma - item_start);
      if (item.empty()) {
        throw Error(ErrorCode::InvalidArgument, "--site-blocks has an empty site entry");
      }
      const std::size_t dash = item.find('-');
      if (dash == std::string::npos) {
        block.push_back(parse_site_number(item));
      } else {
        const int lo = parse_site_number(item.substr(0, dash));
        const int hi = parse_site_number(item.substr(dash + 1));
        if (hi < lo) {
          throw Error(ErrorCode::InvalidArgument, "descending site range '" + item + "'");
        }
        for (int s = lo; s <= hi; ++s) block.push_back(s);
      }
      if (comma == std::string::npos) break;
      item_start = comma + 1;
    }
    blocks.push_back(std::move(block));
    if (semi == std::string::npos) break;
    start = semi + 1;
  }
  return blocks;
}

DomainOverlapSet resolve_domains(const std::string& domains_file, const std::string& site_blocks,
                                 int dim) {
  if (!domains_file.empty()) {
    DomainOverlapSet domains = load_domains_file(domains_file);
    if (domains.dim() != dim) {
      throw Error(ErrorCode::DimensionMismatch,
                  "domain set dimension does not match the system");
    }
    return domains;
  }
  return site_domains(dim, parse_site_blocks(site_blocks));
}

void print_report(std::ostream& os, const RepresentabilityReport& report,
                  const std::string& indent) {
  os << indent << "trace " << format_real(report.trace);
  if (report.expected_trace) os << " (expected " << format_real(*report.expected_trace) << ")";
  os << ", eigenvalues in [" << format_real(report.min_eigenvalue) << ", "
     << format_real(report.max_eigenvalue) << "]\n";
  os << indent << "verdict " << to_string(report.verdict);
  if (!report.findings.empty()) {
    os << ":";
    for (const auto& f : report.findings) {
      os << " " << to_string(f.code) << "(" << format_real(f.magnitude) << ")";
    }
  }
  os << "\n";
}

std::string describe_system(const ModelSystem& system) {
  std::ostringstream os;
  if (system.model) {
    os << "hubbard chain: L=" << system.model->n_sites << " N=" << system.model->n_electrons
       << " t=" << format_real(system.model->hopping)
       << " U=" << format_real(system.model->interaction) << " ("
       << to_string(system.model->boundary) << ")";
    if (system.ground_energy) os << ", E0 = " << format_real(*system.ground_energy);
    if (system.degenerate_ground_state) os << " [degenerate ground state]";
  } else {
    os << "system from " << system.source;
  }
  return os.str();
}

struct ModelOptions {
  int sites = 2;
  int electrons = 2;
  double t = 1.0;
  double u = 0.0;
  bool periodic = false;
  std::string out;
};

int run_model(const ModelOptions& opt) {
  HubbardSpec spec{opt.sites, opt.electrons, opt.t, opt.u,
                   opt.periodic ? Boundary::Periodic : Boundary::Open};
  FciSolution solution = hubbard_fci(spec);
  ModelSystem system{"model",
                     spec,
                     solution.ground_energy,
                     solution.degenerate_ground_state,
                     std::move(solution.one_rdm),
                     std::move(solution.two_rdm)};
  save_system_file(opt.out, system);

  std::cout << describe_system(system) << "\n";
  const Eigen::VectorXd& occ = system.one_rdm.spectrum().eigenvalues;
  std::cout << "natural occupations:";
  for (int i = 0; i < occ.size(); ++i) std::cout << " " << format_real(occ(i));
  std::cout << "\nwrote " << opt.out << "\n";
  return 0;
}

struct AnalyzeOptions {
  std::string system_file;
  std::string domains_file;
  std::string site_blocks;
  std::string out;
  double check_tol = kCheckTol;
};

int run_decompose(const AnalyzeOptions& opt) {
  ModelSystem system = load_system_file(opt.system_file);
  DomainOverlapSet domains =
      resolve_domains(opt.domains_file, opt.site_blocks, system.one_rdm.dim());

  std::vector<DomainRestrictedRdm> parts = partition(system.one_rdm, domains);
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(system.one_rdm.dim(), system.one_rdm.dim());

  std::cout << describe_system(system) << "\n";
  std::vector<DomainResult> results;
  for (int i = 0; i < domains.size(); ++i) {
    const double population =
        (system.one_rdm.matrix().mat() * domains.matrix(i).mat()).trace();
    RepresentabilityReport report =
        check(parts[i].matrix.mat(), population, opt.check_tol);
    sum += parts[i].matrix.mat();

    std::cout << "domain " << domains.label(i)
              << ": population " << format_real(population) << "\n";
    print_report(std::cout, report, "  ");

    DomainResult r;
    r.label = domains.label(i);
    r.symmetric = std::move(parts[i]);
    r.symmetric_report = std::move(report);
    results.push_back(std::move(r));
  }

  const double sum_dev = (sum - system.one_rdm.matrix().mat()).cwiseAbs().maxCoeff();
  const bool sum_ok = sum_dev <= 1e-10;
  std::cout << "sum check " << (sum_ok ? "PASS" : "FAIL")
            << " (max deviation " << format_real(sum_dev) << ")\n";

  Tolerances tolerances;
  tolerances.check_tol = opt.check_tol;
  AnalysisBundle bundle{kToolVersion,        tolerances, std::move(system),
                        std::move(domains),  std::move(results), std::nullopt};
  save_bundle_file(opt.out, bundle);
  std::cout << "wrote " << opt.out << "\n";
  return sum_ok ? 0 : 2;
}

int run_dafh(const AnalyzeOptions& opt) {
  ModelSystem system = load_system_file(opt.system_file);
  if (!system.two_rdm) {
    throw Error(ErrorCode::ValidationFailure,
                "the system file carries no 2-RDM, which the hole construction requires");
  }
  DomainOverlapSet domains =
      resolve_domains(opt.domains_file, opt.site_blocks, system.one_rdm.dim());

  std::cout << describe_system(system) << "\n";
  std::vector<DomainResult> results;
  for (int i = 0; i < domains.size(); ++i) {
    const double population =
        (system.one_rdm.matrix().mat() * domains.matrix(i).mat()).trace();
    DomainRestrictedRdm hole =
        dafh_matrix(system.one_rdm, *system.two_rdm, domains.matrix(i), domains.label(i));
    RepresentabilityReport report = check(hole.matrix.mat(), population, opt.check_tol);
    NeglectImpact neglect = neglect_impact(hole);

    std::cout << "domain " << domains.label(i)
              << ": population " << format_real(population) << "\n";
    print_report(std::cout, report, "  ");
    if (report.verdict == Verdict::NOT_REPRESENTABLE) {
      std::cout << "  population leak if negatives were dropped: "
                << format_real(neglect.population_leak) << "\n";
    }

    DomainResult r;
    r.label = domains.label(i);
    r.dafh = std::move(hole);
    r.dafh_report = std::move(report);
    r.dafh_neglect = neglect;
    results.push_back(std::move(r));
  }

  Tolerances tolerances;
  tolerances.check_tol = opt.check_tol;
  AnalysisBundle bundle{kToolVersion,       tolerances, std::move(system),
                        std::move(domains), std::move(results), std::nullopt};
  save_bundle_file(opt.out, bundle);
  std::cout << "wrote " << opt.out << "\n";
  return 0;
}

struct CheckOptions {
  std::string matrix_file;
  std::optional<double> expected_trace;
  double tol = kCheckTol;
};

int run_check(const CheckOptions& opt) {
  const Eigen::MatrixXd m = load_matrix_file(opt.matrix_file);
  RepresentabilityReport report = check(m, opt.expected_trace, opt.tol);
  std::cout << "matrix " << m.rows() << "x" << m.cols() << " from " << opt.matrix_file << "\n";
  std::cout << "hermiticity deviation " << format_real(report.hermiticity_deviation) << "\n";
  std::cout << "eigenvalues:";
  for (int i = 0; i < report.eigenvalues.size(); ++i) {
    std::cout << " " << format_real(report.eigenvalues(i));
  }
  std::cout << "\n";
  print_report(std::cout, report, "");
  return report.verdict == Verdict::REPRESENTABLE ? 0 : 3;
}

struct LocalizeOptions {
  std::string input_file;
  std::string domains_file;
  std::string site_blocks;
  std::string out;
  double conv_tol = kConvTol;
  int max_sweeps = kMaxSweeps;
};

int run_localize(const LocalizeOptions& opt) {
  const Document doc = read_document_file(opt.input_file);
  const std::string kind = doc.get_string("kind");
  Eigen::MatrixXd m;
  if (kind == "matrix") {
    m = load_matrix_file(opt.input_file);
  } else if (kind == "system") {
    m = load_system_file(opt.input_file).one_rdm.matrix().mat();
  } else {
    throw Error(ErrorCode::ParseError,
                "localize expects a 'matrix' or 'system' file, found kind '" + kind + "'");
  }
  DomainOverlapSet domains =
      resolve_domains(opt.domains_file, opt.site_blocks, static_cast<int>(m.rows()));

  RepresentabilityReport report = check(m);
  if (report.verdict != Verdict::REPRESENTABLE) {
    std::ostringstream os;
    os << "input is not localizable:";
    for (const auto& f : report.findings) {
      os << " " << to_string(f.code) << "(" << format_real(f.magnitude) << ")";
    }
    const bool negative = report.min_eigenvalue < -kCheckTol;
    throw Error(negative ? ErrorCode::NegativeOccupation : ErrorCode::NotRepresentable,
                os.str(), negative ? report.min_eigenvalue : 0.0);
  }

  LocalizedOrbitals loc =
      isopycnic_localize(symmetrized_eigen(m), domains, opt.conv_tol, opt.max_sweeps);

  std::cout << (loc.converged ? "converged" : "not converged") << " after " << loc.sweeps_used
            << " sweep(s), functional " << format_real(loc.functional_value) << "\n";
  std::cout << "occupations:";
  for (int i = 0; i < loc.occupations.size(); ++i) {
    std::cout << " " << format_real(loc.occupations(i));
  }
  std::cout << "\n";
  if (!opt.out.empty()) {
    save_orbitals_file(opt.out, loc);
    std::cout << "wrote " << opt.out << "\n";
  }
  return 0;
}

int run_compare(const AnalyzeOptions& opt) {
  ModelSystem system = load_system_file(opt.system_file);
  if (!system.two_rdm) {
    throw Error(ErrorCode::ValidationFailure,
                "the system file carries no 2-RDM, which the hole construction requires");
  }
  DomainOverlapSet domains =
      resolve_domains(opt.domains_file, opt.site_blocks, system.one_rdm.dim());

  std::vector<ConstructionComparison> comparisons =
      compare_constructions(system.one_rdm, *system.two_rdm, domains, opt.check_tol);

  std::cout << describe_system(system) << "\n";
  std::vector<DomainResult> results;
  std::vector<DomainRestrictedRdm> symmetric_parts;
  for (auto& c : comparisons) {
    std::cout << "domain " << c.domain_label << ":\n";
    std::cout << " symmetric restriction\n";
    print_report(std::cout, c.symmetric_report, "  ");
    std::cout << " domain-averaged hole\n";
    print_report(std::cout, c.dafh_report, "  ");
    std::cout << " |G_sym - G_dafh|_F = " << format_real(c.difference_frobenius) << "\n";

    NeglectImpact neglect = neglect_impact(c.dafh);
    if (c.dafh_report.verdict == Verdict::NOT_REPRESENTABLE) {
      std::cout << " population leak if negatives were dropped: "
                << format_real(neglect.population_leak) << "\n";
    }

    symmetric_parts.push_back(c.symmetric);

    DomainResult r;
    r.label = c.domain_label;
    r.symmetric = std::move(c.symmetric);
    r.symmetric_report = std::move(c.symmetric_report);
    r.dafh = std::move(c.dafh);
    r.dafh_report = std::move(c.dafh_report);
    r.difference_frobenius = c.difference_frobenius;
    r.dafh_neglect = neglect;
    results.push_back(std::move(r));
  }

  std::optional<CommutatorReport> commutators;
  if (symmetric_parts.size() >= 2) {
    commutators = common_eigenbasis_report(symmetric_parts);
    std::cout << "commutator norms of the symmetric restrictions (max "
              << format_real(commutators->max_norm) << ", "
              << (commutators->commuting ? "commuting" : "no common eigenbasis") << "):\n";
    for (std::size_t a = 0; a < commutators->labels.size(); ++a) {
      std::cout << "  ";
      for (std::size_t b = 0; b < commutators->labels.size(); ++b) {
        std::cout << std::setw(14) << format_real(commutators->norms(a, b)) << " ";
      }
      std::cout << " | " << commutators->labels[a] << "\n";
    }
  }

  Tolerances tolerances;
  tolerances.check_tol = opt.check_tol;
  AnalysisBundle bundle{kToolVersion,       tolerances, std::move(system),
                        std::move(domains), std::move(results), std::move(commutators)};
  if (!opt.out.empty()) {
    save_bundle_file(opt.out, bundle);
    std::cout << "wrote " << opt.out << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"domain-restricted reduced density matrix toolkit"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  ModelOptions model_opt;
  CLI::App* model = app.add_subcommand("model", "solve a small Hubbard chain exactly");
  model->add_option("--sites", model_opt.sites, "number of sites (2..8)")->required();
  model->add_option("--electrons", model_opt.electrons, "number of electrons (even)")->required();
  model->add_option("--t", model_opt.t, "hopping amplitude t > 0")->required();
  model->add_option("--u", model_opt.u, "on-site interaction U >= 0")->required();
  model->add_flag("--periodic", model_opt.periodic, "periodic boundary (default open)");
  model->add_option("--out", model_opt.out, "output system file")->required();

  AnalyzeOptions decompose_opt;
  CLI::App* decompose =
      app.add_subcommand("decompose", "symmetric domain restriction of the 1-RDM");
  decompose->add_option("--system", decompose_opt.system_file, "system file")->required();
  auto* dec_domains = decompose->add_option("--domains", decompose_opt.domains_file,
                                            "domain overlap file");
  decompose->add_option("--site-blocks", decompose_opt.site_blocks,
                        "site partition, e.g. 1,2;3-4")
      ->excludes(dec_domains);
  decompose->add_option("--tol", decompose_opt.check_tol, "representability tolerance");
  decompose->add_option("--out", decompose_opt.out, "output bundle file")->required();

  AnalyzeOptions dafh_opt;
  CLI::App* dafh = app.add_subcommand("dafh", "domain-averaged hole from the 2-RDM");
  dafh->add_option("--system", dafh_opt.system_file, "system file (with 2-RDM)")->required();
  auto* dafh_domains = dafh->add_option("--domains", dafh_opt.domains_file,
                                        "domain overlap file");
  dafh->add_option("--site-blocks", dafh_opt.site_blocks, "site partition, e.g. 1,2;3-4")
      ->excludes(dafh_domains);
  dafh->add_option("--tol", dafh_opt.check_tol, "representability tolerance");
  dafh->add_option("--out", dafh_opt.out, "output bundle file")->required();

  CheckOptions check_opt;
  double expected_trace_value = 0.0;
  CLI::App* check_cmd = app.add_subcommand("check", "representability report for a matrix");
  check_cmd->add_option("--matrix", check_opt.matrix_file, "matrix file")->required();
  auto* trace_opt =
      check_cmd->add_option("--expected-trace", expected_trace_value, "expected trace");
  check_cmd->add_option("--tol", check_opt.tol, "check tolerance");

  LocalizeOptions localize_opt;
  CLI::App* localize = app.add_subcommand("localize", "isopycnic localization of a PSD matrix");
  localize->add_option("--input", localize_opt.input_file, "matrix or system file")->required();
  auto* loc_domains = localize->add_option("--domains", localize_opt.domains_file,
                                           "domain overlap file");
  localize->add_option("--site-blocks", localize_opt.site_blocks,
                       "site partition, e.g. 1,2;3-4")
      ->excludes(loc_domains);
  localize->add_option("--conv-tol", localize_opt.conv_tol, "convergence tolerance");
  localize->add_option("--max-sweeps", localize_opt.max_sweeps, "sweep limit");
  localize->add_option("--out", localize_opt.out, "output orbitals file");

  AnalyzeOptions compare_opt;
  CLI::App* compare =
      app.add_subcommand("compare", "symmetric restriction vs hole, with diagnostics");
  compare->add_option("--system", compare_opt.system_file, "system file (with 2-RDM)")
      ->required();
  auto* cmp_domains = compare->add_option("--domains", compare_opt.domains_file,
                                          "domain overlap file");
  compare->add_option("--site-blocks", compare_opt.site_blocks,
                      "site partition, e.g. 1,2;3-4")
      ->excludes(cmp_domains);
  compare->add_option("--tol", compare_opt.check_tol, "representability tolerance");
  compare->add_option("--out", compare_opt.out, "output bundle file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*model) return run_model(model_opt);
    if (*decompose) {
      if (decompose_opt.domains_file.empty() && decompose_opt.site_blocks.empty()) {
        throw Error(ErrorCode::InvalidArgument, "need --domains or --site-blocks");
      }
      return run_decompose(decompose_opt);
    }
    if (*dafh) {
      if (dafh_opt.domains_file.empty() && dafh_opt.site_blocks.empty()) {
        throw Error(ErrorCode::InvalidArgument, "need --domains or --site-blocks");
      }
      return run_dafh(dafh_opt);
    }
    if (*check_cmd) {
      if (trace_opt->count() > 0) check_opt.expected_trace = expected_trace_value;
      return run_check(check_opt);
    }
    if (*localize) {
      if (localize_opt.domains_file.empty() && localize_opt.site_blocks.empty()) {
        throw Error(ErrorCode::InvalidArgument, "need --domains or --site-blocks");
      }
      return run_localize(localize_opt);
    }
    if (*compare) {
      if (compare_opt.domains_file.empty() && compare_opt.site_blocks.empty()) {
        throw Error(ErrorCode::InvalidArgument, "need --domains or --site-blocks");
      }
      return run_compare(compare_opt);
    }
  } catch (const Error& e) {
    std::cerr << "error [" << to_string(e.code()) << "]: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
