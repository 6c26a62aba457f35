#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "hyperflow/hypergraph.hpp"
#include "hyperflow/io.hpp"
#include "hyperflow/refinement.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParseError = 2;
constexpr int kExitInfeasibleK = 3;
constexpr int kExitImbalancedInput = 4;
constexpr int kExitInternalError = 5;

std::string format_double(double x) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(6) << x;
  return out.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Flow-based hypergraph partition refinement"};
  std::string hypergraph_path;
  std::string input_partition_path;
  std::string output_partition_path;
  std::string stats_path;
  std::string mode_name = "hfc";
  int k = 0;
  double eps = 0.03;
  uint64_t seed = 1;
  bool no_iso_dp = false, no_distance = false, no_mbc = false;
  int mbc_repetitions = 7;

  app.add_option("--hypergraph", hypergraph_path, "hMetis hypergraph file")->required();
  app.add_option("-k", k, "number of blocks")->required();
  app.add_option("-e", eps, "imbalance tolerance")->capture_default_str();
  app.add_option("--seed", seed, "random seed")->capture_default_str();
  app.add_option("--mode", mode_name, "flow problem size constraint")
      ->capture_default_str()
      ->check(CLI::IsMember({"hfc", "hfc-star"}));
  app.add_option("--input-partition", input_partition_path, "initial partition file");
  app.add_option("--output-partition", output_partition_path, "refined partition file");
  app.add_option("--stats", stats_path, "machine-readable run statistics");
  app.add_flag("--no-iso-dp", no_iso_dp, "disable the isolated-vertex subset-sum DP");
  app.add_flag("--no-distance", no_distance, "disable distance-based piercing");
  app.add_flag("--no-mbc", no_mbc, "disable the most-balanced-cut sweep");
  app.add_option("--mbc-repetitions", mbc_repetitions, "most-balanced-cut sweep repetitions")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParseError;
  }

  using namespace hyperflow;
  Hypergraph hg;
  try {
    hg = parse_hmetis_file(hypergraph_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << hypergraph_path << ": " << e.what() << "\n";
    return kExitParseError;
  }
  if (k < 2 || static_cast<NodeID>(k) > hg.num_vertices()) {
    std::cerr << "error: k=" << k << " is infeasible for " << hg.num_vertices() << " vertices\n";
    return kExitInfeasibleK;
  }

  Partition p;
  try {
    if (!input_partition_path.empty()) {
      p = parse_partition_file(input_partition_path, hg, static_cast<NodeID>(k));
    } else {
      p = greedy_initial_partition(hg, static_cast<NodeID>(k), eps, seed);
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << input_partition_path << ": " << e.what() << "\n";
    return kExitParseError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInfeasibleK;
  }

  const Weight initial_connectivity = connectivity_metric(hg, p);
  const double initial_imbalance = imbalance(hg, p);
  if (initial_imbalance > eps + 0.1) {
    std::cerr << "error: input partition imbalance " << format_double(initial_imbalance)
              << " exceeds the repair tolerance " << format_double(eps + 0.1) << "\n";
    return kExitImbalancedInput;
  }

  RefineConfig config;
  config.eps = eps;
  config.seed = seed;
  config.mode = mode_name == "hfc" ? ExtractionMode::Hfc : ExtractionMode::HfcStar;
  config.use_isolated_dp = !no_iso_dp;
  config.use_distance = !no_distance;
  config.use_mbc = !no_mbc;
  config.mbc_repetitions = mbc_repetitions;

  RefineStats stats;
  const auto start = std::chrono::steady_clock::now();
  Partition refined;
  try {
    refined = refine_kway(hg, p, config, &stats);
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternalError;
  }
  const auto elapsed =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);

  // Independent validation before anything is reported.
  const Weight final_connectivity = connectivity_metric(hg, refined);
  const double final_imbalance = imbalance(hg, refined);
  try {
    refined.verify(hg);
    if (final_connectivity > initial_connectivity) {
      throw std::logic_error("refinement increased connectivity");
    }
    if (final_imbalance > std::max(eps, initial_imbalance) + 1e-9) {
      throw std::logic_error("refinement broke the balance constraint");
    }
    if (initial_connectivity - final_connectivity != stats.total_gain) {
      throw std::logic_error("gain bookkeeping does not match recomputation");
    }
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternalError;
  }

  if (!output_partition_path.empty()) {
    write_partition_file(output_partition_path, refined);
  }

  if (!stats_path.empty()) {
    // Deterministic fields only; timings go to stdout so reruns with the
    // same seed produce byte-identical stats files.
    std::ofstream out(stats_path);
    out << "hypergraph=" << hypergraph_path << "\n"
        << "num_vertices=" << hg.num_vertices() << "\n"
        << "num_hyperedges=" << hg.num_hyperedges() << "\n"
        << "k=" << k << "\n"
        << "eps=" << format_double(eps) << "\n"
        << "seed=" << seed << "\n"
        << "mode=" << mode_name << "\n"
        << "iso_dp=" << (no_iso_dp ? 0 : 1) << "\n"
        << "distance_piercing=" << (no_distance ? 0 : 1) << "\n"
        << "mbc=" << (no_mbc ? 0 : 1) << "\n"
        << "mbc_repetitions=" << mbc_repetitions << "\n"
        << "initial_connectivity=" << initial_connectivity << "\n"
        << "final_connectivity=" << final_connectivity << "\n"
        << "initial_imbalance=" << format_double(initial_imbalance) << "\n"
        << "final_imbalance=" << format_double(final_imbalance) << "\n"
        << "flow_problems=" << stats.flow_problems << "\n"
        << "flow_problem_vertices=" << stats.flow_problem_vertices << "\n"
        << "improvements=" << stats.improvements << "\n"
        << "total_gain=" << stats.total_gain << "\n"
        << "pierce_steps=" << stats.pierce_steps << "\n"
        << "flow_computations=" << stats.flow_computations << "\n"
        << "isolated_vertices=" << stats.isolated_vertices << "\n"
        << "mbc_improvements=" << stats.mbc_improvements << "\n";
    if (!out) {
      std::cerr << "error: cannot write " << stats_path << "\n";
      return kExitParseError;
    }
  }

  std::cout << "connectivity: " << initial_connectivity << " -> " << final_connectivity
            << " (gain " << stats.total_gain << ")\n"
            << "imbalance: " << format_double(initial_imbalance) << " -> "
            << format_double(final_imbalance) << "\n"
            << "flow problems: " << stats.flow_problems << ", improvements: " << stats.improvements
            << ", pierce steps: " << stats.pierce_steps << "\n"
            << "refinement time: " << elapsed.count() << " ms\n";
  return kExitOk;
}
