#include "cohdist/cli.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "cohdist/channels.hpp"
#include "cohdist/serialization.hpp"

namespace cohdist::cli {

namespace {

using io::json;

// Entries printed before a long vector is elided in text output.
constexpr std::size_t kTextVectorLimit = 16;

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(6) << x;
  return os.str();
}

std::string vector_text(std::span<const double> v) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < v.size() && i < kTextVectorLimit; ++i) os << (i ? ", " : "") << fmt(v[i]);
  if (v.size() > kTextVectorLimit) os << ", ... (" << v.size() << " entries)";
  os << ']';
  return os.str();
}

std::string indices_text(const std::vector<std::size_t>& v) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  os << '}';
  return os.str();
}

void emit(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

DensityMatrix load_state(const RunConfig& config, const std::filesystem::path& path) {
  return io::state_from_json(io::read_json(path), config.tol);
}

}  // namespace

void RunConfig::validate() const {
  if (!(tol > 0.0 && tol < 1e-3)) throw Error(ErrorKind::InvalidShape, "--tol must lie in (0, 1e-3)");
  if (dim_cap < 2) throw Error(ErrorKind::InvalidShape, "--dim-cap must be at least 2");
}

int cmd_analyze(const RunConfig& config, const std::filesystem::path& state, std::ostream& out) {
  const DensityMatrix rho = load_state(config, state);
  const CandidateSet set = candidates(rho, config.tol);
  const ComparisonSummary summary = summarize(comparison_matrix(rho, config.tol), config.tol);
  const bool bound = !has_rank_one_submatrix(rho, config.tol);
  const auto& dec = set.decomposition;

  if (config.format == OutputFormat::Json) {
    emit(out, json{{"dim", rho.dim()},
                   {"decomposition", io::decomposition_json(dec)},
                   {"comparison", {{"min_off_diagonal", summary.min_off_diagonal},
                                   {"saturated_pairs", summary.saturated_pairs}}},
                   {"candidates", io::candidates_json(set)},
                   {"distillable_to_pure", set.all_coherent()},
                   {"bound_state", bound}});
    return kExitOk;
  }

  out << "dimension: " << rho.dim() << '\n';
  out << "permutation image: " << indices_text(dec.permutation.image()) << '\n';
  out << "blocks: " << dec.blocks.size() << " (null dimension " << dec.null_dim() << ")\n";
  for (std::size_t b = 0; b < dec.blocks.size(); ++b) {
    const auto& block = dec.blocks[b];
    out << "  block " << b << ": indices " << indices_text(block.indices) << ", weight " << fmt(block.weight)
        << ", dim " << block.dim() << '\n';
  }
  out << "comparison matrix: min off-diagonal " << fmt(summary.min_off_diagonal) << ", saturated pairs "
      << summary.saturated_pairs << '\n';
  out << "classes: " << set.entries.size() << '\n';
  for (const auto& c : set.entries) {
    out << "  " << indices_text(c.projector.indices()) << ", weight " << fmt(c.weight) << ", "
        << (c.coherent() ? "coherent" : "incoherent") << ", dephased " << vector_text(c.dephased.entries()) << '\n';
  }
  out << "distillable_to_pure: " << std::boolalpha << set.all_coherent() << '\n';
  out << "bound_state: " << std::boolalpha << bound << '\n';
  return kExitOk;
}

int cmd_distill(const RunConfig& config, const std::vector<std::filesystem::path>& states, std::ostream& out) {
  std::vector<DensityMatrix> rhos;
  rhos.reserve(states.size());
  for (const auto& p : states) rhos.push_back(load_state(config, p));
  const DistillationReport report = n_max(rhos, DistillationConfig{config.tol, config.dim_cap});

  if (config.format == OutputFormat::Json) {
    emit(out, io::report_json(report));
    return kExitOk;
  }
  const auto& d = report.diagnostics;
  out << "states: " << rhos.size() << ", product dimension " << report.dim << '\n';
  out << "candidates: " << report.candidates.entries.size() << '\n';
  if (report.join_target) {
    out << "join target: " << vector_text(report.join_target->entries()) << '\n';
    out << "max entry: " << fmt(report.max_entry) << '\n';
  } else {
    out << "join target: none (some projected state is incoherent)\n";
  }
  out << "N_max: " << report.n_max << '\n';
  out << "distillable_to_pure: " << std::boolalpha << report.distillable_to_pure << '\n';
  out << "bound_state: " << std::boolalpha << report.bound_state << '\n';
  out << "rank bound: rank " << d.rank << " vs floor(" << d.support << "/" << d.target_support << ") = " << d.bound
      << (d.satisfied ? " (satisfied)" : " (violated)") << '\n';
  return kExitOk;
}

int cmd_transform(const RunConfig& config, const std::filesystem::path& state, const std::filesystem::path& target,
                  std::ostream& out) {
  const DensityMatrix rho = load_state(config, state);
  const json target_doc = io::read_json(target);
  if (!io::is_pure_layout(target_doc))
    throw Error(ErrorKind::Parse, target.string() + ": the target must be a pure state (\"amplitudes\")");
  const PureState phi = io::pure_from_json(target_doc);

  const TransformVerdict verdict = can_transform_to(rho, phi, config.tol);
  const bool screen = rank_bound_check(rho, phi, config.tol);

  std::optional<std::size_t> kraus_count;
  if (verdict.feasible && config.export_channel) {
    const SIOChannel channel = assemble_distillation_channel(rho, phi, config.tol);
    const DensityMatrix result = apply(channel, rho, config.tol);
    const double err = (result.matrix() - phi.density().matrix()).cwiseAbs().maxCoeff();
    if (err > 1e-9) {
      std::ostringstream os;
      os << "assembled channel misses the target by " << err;
      throw std::runtime_error(os.str());
    }
    io::write_json(*config.export_channel, io::to_json(channel));
    kraus_count = channel.size();
  }

  std::vector<std::vector<std::size_t>> witness;
  for (const auto& p : verdict.witness) witness.push_back(p.indices());

  if (config.format == OutputFormat::Json) {
    json j{{"feasible", verdict.feasible},
           {"incoherent_target", verdict.incoherent_target},
           {"witness", witness},
           {"rank_bound", screen},
           {"channel", kraus_count ? json{{"path", config.export_channel->string()}, {"kraus", *kraus_count}}
                                   : json(nullptr)}};
    emit(out, j);
  } else {
    out << "feasible: " << std::boolalpha << verdict.feasible << '\n';
    if (verdict.incoherent_target) out << "target is incoherent\n";
    out << "witness projectors: " << witness.size() << '\n';
    for (const auto& w : witness) out << "  " << indices_text(w) << '\n';
    out << "rank bound screen: " << (screen ? "passed" : "failed") << '\n';
    if (kraus_count)
      out << "channel: " << *kraus_count << " Kraus operators written to " << config.export_channel->string() << '\n';
  }
  return verdict.feasible ? kExitOk : kExitInfeasible;
}

int cmd_lattice(const RunConfig& config, std::string_view sub, const std::vector<std::filesystem::path>& dists,
                std::ostream& out) {
  std::vector<ProbVector> set;
  for (const auto& p : dists) set.push_back(io::distribution_from_json(io::read_json(p), config.tol));
  const bool as_json = config.format == OutputFormat::Json;

  if (sub == "majorize") {
    if (set.size() != 2) throw Error(ErrorKind::InvalidShape, "majorize takes exactly two distributions: q p");
    const bool verdict = majorizes(set[0], set[1], config.tol);
    if (as_json)
      emit(out, json{{"majorizes", verdict}});
    else
      out << "majorizes: " << std::boolalpha << verdict << '\n';
    return kExitOk;
  }
  if (sub != "meet" && sub != "join") throw Error(ErrorKind::InvalidShape, "unknown lattice operation");
  if (set.empty()) throw Error(ErrorKind::InvalidShape, "lattice operations need at least one distribution");
  const ProbVector result = sub == "meet" ? meet(set, config.tol) : join(set, config.tol);
  if (as_json)
    emit(out, io::to_json(result));
  else
    out << sub << ": " << vector_text(result.entries()) << '\n';
  return kExitOk;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Deterministic coherence distillation under strictly incoherent operations", "cohdist"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig config;
  std::string format = "text";
  std::string export_path;
  app.add_option("--tol", config.tol, "Numerical tolerance for every structural test")
      ->envname("COHDIST_TOL");
  app.add_option("--dim-cap", config.dim_cap, "Largest tensor-product dimension to build");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--export-channel", export_path, "Write the synthesized channel (transform) to PATH");

  std::string analyze_file;
  auto* analyze = app.add_subcommand("analyze", "Block structure, comparison matrix and candidate classes");
  analyze->add_option("state", analyze_file, "State file")->required();

  std::vector<std::string> distill_files;
  auto* distill = app.add_subcommand("distill", "Maximum number of maximally coherent qubits from a product");
  distill->add_option("states", distill_files, "State files")->required();

  std::string transform_state;
  std::string transform_target;
  auto* transform = app.add_subcommand("transform", "Decide rho -> phi and optionally export the channel");
  transform->add_option("state", transform_state, "State file")->required();
  transform->add_option("target", transform_target, "Pure target state file")->required();

  std::string lattice_op;
  std::vector<std::string> lattice_files;
  auto* lattice = app.add_subcommand("lattice", "Majorization order, meet and join of distributions");
  lattice->add_option("op", lattice_op, "majorize | meet | join")
      ->required()
      ->check(CLI::IsMember({"majorize", "meet", "join"}));
  lattice->add_option("distributions", lattice_files, "Distribution files")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  config.format = format == "json" ? OutputFormat::Json : OutputFormat::Text;
  if (!export_path.empty()) config.export_channel = export_path;

  auto paths = [](const std::vector<std::string>& v) {
    return std::vector<std::filesystem::path>(v.begin(), v.end());
  };
  try {
    config.validate();
    if (*analyze) return cmd_analyze(config, analyze_file, out);
    if (*distill) return cmd_distill(config, paths(distill_files), out);
    if (*transform) return cmd_transform(config, transform_state, transform_target, out);
    return cmd_lattice(config, lattice_op, paths(lattice_files), out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.kind() == ErrorKind::DimensionOverflow ? kExitDimensionOverflow : kExitInvalidInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  }
}

}  // namespace cohdist::cli
