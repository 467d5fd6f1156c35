#pragma once

// End-to-end commands behind the scimap CLI. Each command computes all of
// its outputs in memory first and writes them as a batch; if any write
// fails the files written so far are removed.

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "scimap/basemap.hpp"
#include "scimap/basemap_io.hpp"
#include "scimap/categories.hpp"
#include "scimap/diversity.hpp"
#include "scimap/emit.hpp"
#include "scimap/ingest.hpp"
#include "scimap/overlay.hpp"
#include "scimap/readers.hpp"

namespace scimap {

/// Writes `files` into `dir`, creating it if needed. On failure removes
/// every file written here (and `dir` if it was created) and rethrows.
inline std::vector<fs::path> write_batch(const fs::path& dir, const std::map<std::string, std::string>& files) {
  std::error_code ec;
  const bool existed = fs::exists(dir, ec);
  std::vector<fs::path> written;
  try {
    if (!existed && !fs::create_directories(dir, ec))
      throw Error(Errc::Io, "cannot create directory '" + dir.string() + "'");
    if (!fs::is_directory(dir)) throw Error(Errc::Io, "'" + dir.string() + "' is not a directory");
    for (const auto& [name, content] : files) {
      write_file(dir / name, content);
      written.push_back(dir / name);
    }
  } catch (...) {
    for (const auto& p : written) fs::remove(p, ec);
    if (!existed) fs::remove(dir, ec);
    throw;
  }
  return written;
}

inline RegistryPtr load_registry(const std::optional<fs::path>& path) {
  if (!path) return default_registry();
  std::istringstream in(read_file(*path));
  return std::make_shared<const CategoryRegistry>(read_registry(in));
}

struct BuildBasemapRequest {
  fs::path matrix;
  std::optional<fs::path> registry;
  std::optional<fs::path> config;
  std::optional<fs::path> partition19;
  fs::path out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<double> threshold;
  std::optional<int> k;
  std::optional<double> resolution4;
  std::optional<double> resolution6;
};

struct BuildBasemapReport {
  std::size_t categories = 0;
  std::vector<CategoryId> zero_rows;
  int requested_factors = 0;
  int factors = 0;
  bool rank_deficient = false;
  std::vector<double> variance_ratios;
  double variance_explained = 0.0;
  int groups19 = 0;
  int groups6 = 0;
  int groups4 = 0;
  std::size_t edges = 0;
  double layout_objective = 0.0;
  bool layout_degenerate = false;
  bool layout_regularized = false;
  BaseMapConfig config;
  std::vector<fs::path> files;
};

inline BuildBasemapReport run_build_basemap(const BuildBasemapRequest& req) {
  auto registry = load_registry(req.registry);
  BaseMapConfig config;
  if (req.config) {
    std::istringstream in(read_file(*req.config));
    config = BaseMapConfig::parse(in);
  }
  if (req.seed) config.seed = *req.seed;
  if (req.threshold) config.threshold = *req.threshold;
  if (req.k) config.k_factors = *req.k;
  if (req.resolution4) config.resolution4 = *req.resolution4;
  if (req.resolution6) config.resolution6 = *req.resolution6;
  config.validate();

  CitationMatrix matrix;
  {
    std::istringstream in(read_file(req.matrix));
    matrix = parse_citation_matrix(in, *registry);
  }
  auto built = build_base_map(matrix, registry, config);
  if (req.partition19) {
    std::istringstream in(read_file(*req.partition19));
    built.map.partition19 = read_partition_csv(in, *registry);
  }

  auto files = base_map_files(built.map);
  files["basemap.paj"] = write_paj_project(built.map);

  BuildBasemapReport report;
  report.categories = matrix.size();
  report.zero_rows = matrix.zero_rows();
  report.requested_factors = built.factors.requested_k;
  report.factors = built.factors.k;
  report.rank_deficient = built.factors.rank_deficient;
  report.variance_ratios = built.factors.explained_variance_ratio;
  report.variance_explained = built.factors.total_explained();
  report.groups19 = built.map.partition19.k();
  report.groups6 = built.map.partition6.k();
  report.groups4 = built.map.partition4.k();
  report.edges = built.map.edges.size();
  report.layout_objective = built.layout.objective;
  report.layout_degenerate = built.layout.degenerate;
  report.layout_regularized = built.layout.regularized;
  report.config = config;
  report.files = write_batch(req.out_dir, files);
  return report;
}

struct OverlayRequest {
  fs::path analyze;
  fs::path basemap_dir;
  fs::path out_dir;
  bool include_zero_rows = false;
  double alpha = 1.0;
  double beta = 1.0;
  SizeScale sizes;
  std::size_t label_count = 10;
};

struct OverlayReport {
  std::size_t rows = 0;
  std::size_t matched_rows = 0;
  std::size_t unmatched_rows = 0;
  long long matched_records = 0;
  long long unmatched_records = 0;
  std::size_t categories = 0;
  double rao_stirling = 0.0;
  std::vector<fs::path> files;
};

struct LoadedOverlay {
  BaseMap base;
  std::vector<AnalyzeRow> rows;
  OverlayVector overlay;
};

inline LoadedOverlay load_overlay(const fs::path& analyze, const fs::path& basemap_dir) {
  LoadedOverlay out;
  out.base = load_base_map(basemap_dir);
  std::istringstream in(read_file(analyze));
  out.rows = parse_analyze_export(in);
  out.overlay = build_overlay(out.rows, out.base.registry);
  return out;
}

inline OverlayReport run_overlay(const OverlayRequest& req) {
  auto loaded = load_overlay(req.analyze, req.basemap_dir);
  const auto& base = loaded.base;
  const auto& ov = loaded.overlay;

  std::map<std::string, std::string> files;
  files["wc.vec"] = write_pajek_vec(ov);
  for (int choice : {4, 6, 19})
    files["vos" + std::to_string(choice) + ".csv"] = write_vosviewer_map(base, ov, choice, req.include_zero_rows);
  SvgOptions svg;
  svg.label_count = req.label_count;
  files["overlay.svg"] = render_svg(project(base, ov, req.sizes), svg);

  OverlayReport report;
  report.rows = loaded.rows.size();
  report.unmatched_rows = ov.unmatched().size();
  report.matched_rows = report.rows - report.unmatched_rows;
  report.matched_records = ov.total();
  for (const auto& u : ov.unmatched()) report.unmatched_records += u.count;
  report.categories = ov.nonzero();
  report.rao_stirling = rao_stirling(DiversityInput::from(base, ov), req.alpha, req.beta);
  report.files = write_batch(req.out_dir, files);
  return report;
}

struct DiversityReport {
  double value = 0.0;
  double alpha = 1.0;
  double beta = 1.0;
  std::size_t categories = 0;
  std::size_t unmatched_rows = 0;
};

inline DiversityReport run_diversity(const fs::path& analyze, const fs::path& basemap_dir, double alpha = 1.0,
                                     double beta = 1.0) {
  auto loaded = load_overlay(analyze, basemap_dir);
  DiversityReport report;
  report.alpha = alpha;
  report.beta = beta;
  report.categories = loaded.overlay.nonzero();
  report.unmatched_rows = loaded.overlay.unmatched().size();
  report.value = rao_stirling(DiversityInput::from(loaded.base, loaded.overlay), alpha, beta);
  return report;
}

/// Re-emits a file in canonical form: .vec, .clu, .net, .paj, VOSviewer map
/// CSVs, and citation matrices (.csv/.tsv, delimiter chosen by the output
/// extension).
inline std::string convert_content(const std::string& content, const fs::path& input, const fs::path& output,
                                   const CategoryRegistry& registry) {
  const auto ext = input.extension().string();
  if (ext == ".vec") return write_pajek_vec(read_pajek_vec(content));
  if (ext == ".clu") return write_pajek_clu(read_pajek_clu(content));
  if (ext == ".net") return write_pajek_net(read_pajek_net(content));
  if (ext == ".paj") return write_paj_project(read_paj_project(content));
  if (ext == ".csv" || ext == ".tsv") {
    if (content.rfind(std::string(kVosHeader), 0) == 0) return write_vosviewer_map(read_vosviewer_map(content));
    const char delim = output.extension() == ".tsv" ? '\t' : ',';
    return write_citation_matrix(parse_citation_matrix(content, registry), registry, delim);
  }
  throw Error(Errc::InvalidArgument, "cannot convert files with extension '" + ext + "'");
}

}  // namespace scimap
