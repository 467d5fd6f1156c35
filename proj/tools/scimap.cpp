// scimap: build base maps of science, project document sets onto them and
// measure Rao-Stirling diversity.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "scimap/pipeline.hpp"
#include "scimap/synthetic.hpp"

namespace {

using nlohmann::json;
using namespace scimap;

constexpr const char* kMismatchHint =
    "hint: no label matched the registry. The default registry holds the 224 active Web of Science "
    "categories (WoS v5); exports using the older 222 ISI Subject Categories (WoS v4) need a matching "
    "--registry.";

std::string format_value(double v, bool full) { return full ? text::roundtrip(v) : text::fixed(v, 3); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Global maps of science: base maps, overlays and Rao-Stirling diversity"};
  app.require_subcommand(1);
  bool as_json = false;

  // build-basemap
  BuildBasemapRequest build;
  std::string build_matrix, build_out;
  std::optional<std::string> build_registry, build_config, build_partition;
  auto* build_cmd = app.add_subcommand("build-basemap", "Build a base map directory from a citation matrix");
  build_cmd->add_option("--matrix", build_matrix, "Category citation matrix (CSV/TSV, citing rows)")->required();
  build_cmd->add_option("--registry", build_registry, "Registry file (default: built-in 224 categories)");
  build_cmd->add_option("--config", build_config, "Config file (key=value)");
  build_cmd->add_option("--partition19", build_partition, "Use this 19-group partition instead of the factors");
  build_cmd->add_option("--out", build_out, "Output directory")->required();
  build_cmd->add_option("--seed", build.seed, "Random seed for layout and clustering");
  build_cmd->add_option("--threshold", build.threshold, "Edge display threshold on cosine similarity");
  build_cmd->add_option("--k", build.k, "Number of factors");
  build_cmd->add_option("--resolution4", build.resolution4, "Clustering resolution for the 4-group partition");
  build_cmd->add_option("--resolution6", build.resolution6, "Clustering resolution for the 6-group partition");
  build_cmd->add_flag("--json", as_json, "Print metrics as JSON");

  // overlay
  OverlayRequest overlay;
  std::string ov_analyze, ov_basemap, ov_out;
  std::optional<std::uint64_t> ov_seed;
  auto* overlay_cmd = app.add_subcommand("overlay", "Project an analyze.txt export onto a base map");
  overlay_cmd->add_option("--analyze", ov_analyze, "WoS 'Analyze Results' export")->required();
  overlay_cmd->add_option("--basemap", ov_basemap, "Base map directory")->required();
  overlay_cmd->add_option("--out", ov_out, "Output directory")->required();
  overlay_cmd->add_flag("--include-zero-rows", overlay.include_zero_rows, "List zero-count categories in vos*.csv");
  overlay_cmd->add_option("--labels", overlay.label_count, "Number of labelled nodes in overlay.svg");
  overlay_cmd->add_option("--seed", ov_seed, "Accepted for uniformity; overlays are deterministic");
  overlay_cmd->add_flag("--json", as_json, "Print metrics as JSON");

  // diversity
  std::string div_analyze, div_basemap;
  double alpha = 1.0, beta = 1.0;
  bool full_precision = false;
  std::optional<std::uint64_t> div_seed;
  auto* diversity_cmd = app.add_subcommand("diversity", "Print Rao-Stirling diversity of an analyze.txt export");
  diversity_cmd->add_option("--analyze", div_analyze, "WoS 'Analyze Results' export")->required();
  diversity_cmd->add_option("--basemap", div_basemap, "Base map directory")->required();
  diversity_cmd->add_option("--alpha", alpha, "Exponent on proportion products")->check(CLI::NonNegativeNumber);
  diversity_cmd->add_option("--beta", beta, "Exponent on distances")->check(CLI::NonNegativeNumber);
  diversity_cmd->add_flag("--full-precision", full_precision, "Print all significant digits");
  diversity_cmd->add_option("--seed", div_seed, "Accepted for uniformity; diversity is deterministic");
  diversity_cmd->add_flag("--json", as_json, "Print metrics as JSON");

  // convert
  std::string conv_in, conv_out;
  std::optional<std::string> conv_registry;
  auto* convert_cmd = app.add_subcommand("convert", "Re-emit .vec/.clu/.net/.paj/vos*.csv or a matrix in canonical form");
  convert_cmd->add_option("input", conv_in, "Input file")->required();
  convert_cmd->add_option("output", conv_out, "Output file")->required();
  convert_cmd->add_option("--registry", conv_registry, "Registry for matrix files");

  // synth
  std::string synth_out;
  std::uint64_t synth_seed = 2010;
  auto* synth_cmd = app.add_subcommand("synth", "Write a synthetic 224-category matrix and sample export");
  synth_cmd->add_option("--out", synth_out, "Output directory")->required();
  synth_cmd->add_option("--seed", synth_seed, "Generator seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*build_cmd) {
      build.matrix = build_matrix;
      build.out_dir = build_out;
      if (build_registry) build.registry = *build_registry;
      if (build_config) build.config = *build_config;
      if (build_partition) build.partition19 = *build_partition;
      const auto r = run_build_basemap(build);
      if (as_json) {
        json j = {{"categories", r.categories},
                  {"factors", r.factors},
                  {"requested_factors", r.requested_factors},
                  {"rank_deficient", r.rank_deficient},
                  {"variance_ratios", r.variance_ratios},
                  {"variance_explained", r.variance_explained},
                  {"groups19", r.groups19},
                  {"groups6", r.groups6},
                  {"groups4", r.groups4},
                  {"edges", r.edges},
                  {"layout_objective", r.layout_objective},
                  {"zero_rows", r.zero_rows.size()}};
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << "categories: " << r.categories << "\n";
        if (!r.zero_rows.empty()) std::cout << "warning: " << r.zero_rows.size() << " categories cite nothing\n";
        std::cout << "factors: " << r.factors;
        if (r.rank_deficient) std::cout << " (rank deficient, " << r.requested_factors << " requested)";
        std::cout << "\n";
        for (std::size_t f = 0; f < r.variance_ratios.size(); ++f)
          std::cout << "  factor " << f + 1 << ": " << text::fixed(r.variance_ratios[f], 4) << "\n";
        std::cout << "variance explained: " << text::fixed(r.variance_explained, 4) << "\n";
        std::cout << "groups: " << r.groups19 << " / " << r.groups6 << " / " << r.groups4 << "\n";
        std::cout << "edges: " << r.edges << "\n";
        if (r.layout_degenerate) std::cout << "warning: all similarities are zero; circle layout used\n";
        if (r.layout_regularized) std::cout << "warning: similarity graph is disconnected\n";
        std::cout << "wrote " << r.files.size() << " files to " << build_out << "\n";
      }
    } else if (*overlay_cmd) {
      overlay.analyze = ov_analyze;
      overlay.basemap_dir = ov_basemap;
      overlay.out_dir = ov_out;
      const auto r = run_overlay(overlay);
      if (as_json) {
        json j = {{"rows", r.rows},
                  {"matched_rows", r.matched_rows},
                  {"unmatched_rows", r.unmatched_rows},
                  {"matched_records", r.matched_records},
                  {"unmatched_records", r.unmatched_records},
                  {"categories", r.categories},
                  {"rao_stirling", r.rao_stirling}};
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << "matched rows: " << r.matched_rows << " (" << r.matched_records << " records)\n";
        std::cout << "unmatched rows: " << r.unmatched_rows << " (" << r.unmatched_records << " records)\n";
        std::cout << "categories: " << r.categories << "\n";
        std::cout << "Rao-Stirling = " << text::fixed(r.rao_stirling, 3) << "\n";
      }
    } else if (*diversity_cmd) {
      const auto r = run_diversity(div_analyze, div_basemap, alpha, beta);
      if (as_json) {
        json j = {{"rao_stirling", r.value}, {"alpha", r.alpha}, {"beta", r.beta}, {"categories", r.categories},
                  {"unmatched_rows", r.unmatched_rows}};
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << format_value(r.value, full_precision) << "\n";
      }
    } else if (*convert_cmd) {
      const auto registry = load_registry(conv_registry ? std::optional<fs::path>(*conv_registry) : std::nullopt);
      write_file(conv_out, convert_content(read_file(conv_in), conv_in, conv_out, *registry));
    } else if (*synth_cmd) {
      const auto registry = default_registry();
      const auto fields = synthetic::planted_fields(*registry);
      std::map<std::string, std::string> files;
      files["matrix.csv"] = write_citation_matrix(synthetic::citation_matrix(*registry, synth_seed), *registry);
      files["registry.txt"] = write_registry(*registry);
      files["partition19.csv"] = write_partition_csv(fields, *registry);
      files["analyze.txt"] = synthetic::analyze_export({{"COMPUTER SCIENCE, ARTIFICIAL INTELLIGENCE", 412},
                                                        {"ENGINEERING, ELECTRICAL & ELECTRONIC", 388},
                                                        {"MATHEMATICS, APPLIED", 151},
                                                        {"STATISTICS & PROBABILITY", 97},
                                                        {"ROBOTICS", 64},
                                                        {"NEUROSCIENCES", 52},
                                                        {"ECONOMICS", 18}});
      write_batch(synth_out, files);
      std::cout << "wrote " << files.size() << " files to " << synth_out << "\n";
    }
  } catch (const Error& e) {
    std::cerr << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
    if (e.code() == Errc::AllUnmatched) std::cerr << kMismatchHint << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
