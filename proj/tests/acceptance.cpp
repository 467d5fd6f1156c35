// Acceptance suite: one PASS/FAIL line per criterion, with its time limit.
// Usage: acceptance <path-to-scimap-cli> <work-dir>

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <sys/wait.h>

#include "fixtures.hpp"
#include "json.hpp"
#include "oracles.hpp"
#include "scimap/basemap.hpp"
#include "scimap/categories.hpp"
#include "scimap/diversity.hpp"
#include "scimap/emit.hpp"
#include "scimap/ingest.hpp"
#include "scimap/pipeline.hpp"
#include "scimap/readers.hpp"
#include "scimap/synthetic.hpp"

using namespace scimap;

namespace {

// A check returns nothing on success, or a description of the first failure.
using Outcome = std::optional<std::string>;

std::string describe(const std::string& what, double got, double want) {
  std::ostringstream out;
  out.precision(17);
  out << what << ": got " << got << ", want " << want;
  return out.str();
}

int failures = 0;

void criterion(const std::string& name, double limit_seconds, const std::function<Outcome()>& check) {
  const auto start = std::chrono::steady_clock::now();
  Outcome failure;
  try {
    failure = check();
  } catch (const std::exception& e) {
    failure = std::string("exception: ") + e.what();
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!failure && seconds >= limit_seconds) failure = "too slow";
  char timing[64];
  std::snprintf(timing, sizeof timing, "%.2f s, limit %.0f s", seconds, limit_seconds);
  std::cout << (failure ? "FAIL " : "PASS ") << name << " (" << timing << ")";
  if (failure) {
    std::cout << ": " << *failure;
    ++failures;
  }
  std::cout << std::endl;
}

Matrix random_distances(std::mt19937_64& rng, Eigen::Index n) {
  Matrix d = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) d(i, j) = d(j, i) = rng() % 10 == 0 ? 0.0 : oracle::uniform(rng);
  return d;
}

std::vector<double> random_proportions(std::mt19937_64& rng, std::size_t n) {
  std::vector<double> p(n, 0.0);
  for (auto& v : p)
    if (rng() % 3) v = oracle::uniform(rng);
  p[rng() % n] += 1.0;
  const double sum = std::accumulate(p.begin(), p.end(), 0.0);
  for (auto& v : p) v /= sum;
  return p;
}

// --- criteria --------------------------------------------------------------

Outcome computing_split_counts() {
  const auto& reg = *default_registry();
  std::size_t cs = 0, mm = 0;
  for (const auto& [label, group] : computing_split()) {
    if (!reg.lookup(label)) return "unknown category " + std::string(label);
    if (group == kComputerScience) ++cs;
    else if (group == kMathematicalMethods) ++mm;
    else return "unexpected group " + std::string(group);
  }
  if (cs != 12) return describe("Computer Science categories", static_cast<double>(cs), 12);
  if (mm != 6) return describe("Mathematical methods categories", static_cast<double>(mm), 6);
  return {};
}

Outcome registry_size() {
  if (default_registry()->size() != 224) return describe("registry size", static_cast<double>(default_registry()->size()), 224);
  return {};
}

Outcome rao_stirling_oracle() {
  std::mt19937_64 rng(1001);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto n = static_cast<Eigen::Index>(2 + rng() % 223);
    const auto p = random_proportions(rng, static_cast<std::size_t>(n));
    const Matrix d = random_distances(rng, n);
    const double fast = rao_stirling(DiversityInput(p, d));
    const double slow = oracle::rao_stirling(p, d);
    if (std::abs(fast - slow) > 1e-12) return describe("instance " + std::to_string(trial), fast, slow);
  }
  return {};
}

Outcome diversity_bounds() {
  std::mt19937_64 rng(1002);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto n = static_cast<Eigen::Index>(1 + rng() % 224);
    const auto p = random_proportions(rng, static_cast<std::size_t>(n));
    const Matrix d = random_distances(rng, n);
    const double value = rao_stirling(DiversityInput(p, d));
    const double bound = gini_simpson(p);
    if (value < 0.0 || value > bound + 1e-12) return describe("instance " + std::to_string(trial) + " outside [0, 1 - sum p^2]", value, bound);
  }
  for (int trial = 0; trial < 200; ++trial) {
    const auto n = static_cast<Eigen::Index>(1 + rng() % 224);
    std::vector<double> p(static_cast<std::size_t>(n), 0.0);
    p[rng() % p.size()] = 1.0;
    const double value = rao_stirling(DiversityInput(p, random_distances(rng, n)));
    if (value != 0.0) return describe("single-category instance " + std::to_string(trial), value, 0.0);
  }
  return {};
}

Outcome cosine_properties() {
  std::mt19937_64 rng(1003);
  for (int trial = 0; trial < 100; ++trial) {
    const auto n = static_cast<Eigen::Index>(2 + rng() % 223);
    Matrix m(n, n);
    for (Eigen::Index i = 0; i < m.size(); ++i) m(i / n, i % n) = rng() % 3 ? 0.0 : std::round(oracle::uniform(rng, 0, 500));
    // A few all-zero rows.
    for (int z = 0; z < 2; ++z) m.row(static_cast<Eigen::Index>(rng() % static_cast<std::uint64_t>(n))).setZero();
    Matrix scaled = m;
    for (Eigen::Index i = 0; i < n; ++i) scaled.row(i) *= oracle::uniform(rng, 0.001, 1000);
    const auto s = cosine_similarity(CitationMatrix(m)).cells();
    const auto t = cosine_similarity(CitationMatrix(scaled)).cells();
    const std::string where = "matrix " + std::to_string(trial);
    if ((s - s.transpose()).cwiseAbs().maxCoeff() > 1e-12) return where + ": not symmetric";
    for (Eigen::Index i = 0; i < n; ++i)
      if (m.row(i).any() && s(i, i) != 1.0) return describe(where + " diagonal", s(i, i), 1.0);
    const double drift = (s - t).cwiseAbs().maxCoeff();
    if (drift > 1e-12) return describe(where + " change under row scaling", drift, 0.0);
  }
  return {};
}

Outcome planted_recovery() {
  std::mt19937_64 rng(1004);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<int> sizes;
    int total = 0;
    const int blocks = 2 + static_cast<int>(rng() % 5);
    for (int b = 0; b < blocks; ++b) {
      sizes.push_back(2 + static_cast<int>(rng() % 9));
      total += sizes.back();
    }
    if (total > 50) return "fixture too large";
    const auto fixture = oracle::block_fixture(sizes, rng);
    const auto s = cosine_similarity(CitationMatrix(fixture.citations));
    const std::string where = "instance " + std::to_string(trial);
    auto model = factor_analysis(s.cells(), blocks);
    if (!same_grouping(model.assignment.assignment(), fixture.planted)) return where + ": factor analysis missed the blocks";
    auto clusters = vos_clustering(s, 0.05, static_cast<std::uint64_t>(trial));
    if (!same_grouping(clusters.assignment(), fixture.planted)) return where + ": clustering missed the blocks";
  }
  return {};
}

Outcome clustering_optimality() {
  std::mt19937_64 rng(1005);
  for (int trial = 0; trial < 50; ++trial) {
    const auto n = static_cast<Eigen::Index>(2 + rng() % 7);
    Matrix s = Matrix::Identity(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = i + 1; j < n; ++j) s(i, j) = s(j, i) = oracle::uniform(rng);
    for (double resolution : {0.2, 0.5, 0.8}) {
      const double best = oracle::best_partition_objective(s, resolution);
      const auto p = vos_clustering(SimilarityMatrix(s), resolution, static_cast<std::uint64_t>(trial));
      const double got = oracle::partition_objective(s, p.assignment(), resolution);
      if (got != best)
        return describe("instance " + std::to_string(trial) + " at resolution " + text::fixed(resolution, 1), got, best);
    }
  }
  return {};
}

double distance(const Point2& a, const Point2& b) { return std::hypot(a.x - b.x, a.y - b.y); }

Outcome layout_contract() {
  std::mt19937_64 rng(1006);
  for (int trial = 0; trial < 10; ++trial) {
    const auto n = static_cast<Eigen::Index>(3 + rng() % 40);
    Matrix m(n, n);
    for (Eigen::Index i = 0; i < m.size(); ++i) m(i / n, i % n) = rng() % 3 ? 0.0 : oracle::uniform(rng, 0, 10);
    m.diagonal().array() += 1.0;
    const auto s = cosine_similarity(CitationMatrix(m));
    const auto r = vos_layout(s, {static_cast<std::uint64_t>(trial)});
    const std::string where = "instance " + std::to_string(trial);
    const double mean = mean_pairwise_distance(r.coords);
    if (std::abs(mean - 1.0) > 1e-6) return describe(where + " mean distance", mean, 1.0);
    for (std::size_t i = 1; i < r.history.size(); ++i)
      if (r.history[i] > r.history[i - 1]) return describe(where + " objective rose at iteration " + std::to_string(i), r.history[i], r.history[i - 1]);
  }

  Matrix two(2, 2);
  two << 1, 0.3, 0.3, 1;
  const auto pair = vos_layout(SimilarityMatrix(two));
  const double side = distance(pair.coords[0], pair.coords[1]);
  if (std::abs(side - 1.0) > 1e-9) return describe("two-point distance", side, 1.0);

  Matrix three = Matrix::Constant(3, 3, 0.6);
  three.diagonal().setOnes();
  const auto triangle = vos_layout(SimilarityMatrix(three));
  for (auto [a, b] : {std::pair{0, 1}, std::pair{1, 2}, std::pair{0, 2}}) {
    const double d = distance(triangle.coords[static_cast<std::size_t>(a)], triangle.coords[static_cast<std::size_t>(b)]);
    if (std::abs(d - 1.0) > 1e-6) return describe("triangle side", d, 1.0);
  }
  return {};
}

Outcome format_round_trips() {
  std::mt19937_64 rng(1007);
  for (int trial = 0; trial < 200; ++trial) {
    const auto base = fixture::random_base_map(rng, 1 + rng() % 60);
    const auto ov = fixture::random_overlay(rng, base.registry);
    const std::string where = "case " + std::to_string(trial) + ": ";
    const auto vec = write_pajek_vec(ov);
    if (write_pajek_vec(read_pajek_vec(vec)) != vec) return where + ".vec";
    const auto clu = write_pajek_clu(base.partition(trial % 2 ? 19 : 6));
    if (write_pajek_clu(read_pajek_clu(clu)) != clu) return where + ".clu";
    const auto net = write_pajek_net(base);
    if (write_pajek_net(read_pajek_net(net)) != net) return where + ".net";
    const auto paj = write_paj_project(base, trial % 3 ? &ov : nullptr);
    if (write_paj_project(read_paj_project(paj)) != paj) return where + ".paj";
    for (int choice : {4, 6, 19}) {
      const auto vos = write_vosviewer_map(base, ov, choice, trial % 2 == 0);
      if (write_vosviewer_map(read_vosviewer_map(vos)) != vos) return where + "vos" + std::to_string(choice) + ".csv";
    }
  }
  return {};
}

// --- end to end ------------------------------------------------------------

struct CliRun {
  int status = -1;
  std::string output;
};

std::string cli_path;

CliRun run_cli(const std::string& args) {
  const std::string cmd = "'" + cli_path + "' " + args + " 2>&1";
  CliRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  while (auto n = std::fread(buf.data(), 1, buf.size(), pipe)) r.output.append(buf.data(), n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string q(const fs::path& p) { return "'" + p.string() + "'"; }

Outcome end_to_end(const fs::path& work) {
  const auto analyze = work / "synth" / "analyze.txt";
  const auto basemap = work / "basemap";
  const std::string args = "overlay --seed 7 --analyze " + q(analyze) + " --basemap " + q(basemap);
  std::array<CliRun, 2> runs;
  for (int i = 0; i < 2; ++i) {
    runs[static_cast<std::size_t>(i)] = run_cli(args + " --out " + q(work / ("run" + std::to_string(i))));
    if (runs[static_cast<std::size_t>(i)].status != 0) return "overlay failed: " + runs[static_cast<std::size_t>(i)].output;
  }
  if (runs[0].output != runs[1].output) return "console output differs between runs";
  std::size_t files = 0;
  for (const auto& entry : fs::directory_iterator(work / "run0")) {
    const auto name = entry.path().filename();
    if (!fs::exists(work / "run1" / name)) return "second run lacks " + name.string();
    if (read_file(entry.path()) != read_file(work / "run1" / name)) return name.string() + " differs between runs";
    ++files;
  }
  if (files == 0) return "overlay wrote no files";

  // Oracle: explicit double loop over the base map's distances.
  const auto base = load_base_map(basemap);
  const auto ov = build_overlay(parse_analyze_export(read_file(analyze)), base.registry);
  const double expected = oracle::rao_stirling(ov.proportions(), base.similarity.distances());

  const auto json_run = run_cli(args + " --json --out " + q(work / "run_json"));
  if (json_run.status != 0) return "overlay --json failed: " + json_run.output;
  const double printed = nlohmann::json::parse(json_run.output)["rao_stirling"];
  if (std::abs(printed - expected) > 1e-12) return describe("full-precision Rao-Stirling", printed, expected);
  const std::string line = "Rao-Stirling = " + text::fixed(expected, 3) + "\n";
  if (runs[0].output.find(line) == std::string::npos) return "console lacks '" + line.substr(0, line.size() - 1) + "'";
  return {};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: acceptance <scimap-cli> <work-dir>\n";
    return 2;
  }
  cli_path = argv[1];
  const fs::path work = argv[2];
  fs::remove_all(work);
  fs::create_directories(work);

  criterion("Computing split: 12 Computer Science, 6 Mathematical methods", 1, computing_split_counts);
  criterion("Registry size: 224 categories", 1, registry_size);
  criterion("Rao-Stirling matches double-loop oracle within 1e-12 (1000 instances, n 2..224)", 10, rao_stirling_oracle);
  criterion("Diversity bounds: 0 <= value <= 1 - sum p^2, exactly 0 for one category", 5, diversity_bounds);
  criterion("Cosine: symmetric within 1e-12, unit diagonal, row-scale invariant (100 matrices up to 224)", 10,
            cosine_properties);
  criterion("Planted blocks recovered by factor analysis and clustering (20 instances, n <= 50)", 30, planted_recovery);
  criterion("Clustering equals exhaustive optimum (50 instances, n <= 8, 3 resolutions)", 60, clustering_optimality);
  criterion("Layout: mean distance 1 within 1e-6, monotone objective, n=2 within 1e-9, n=3 equilateral within 1e-6",
            10, layout_contract);
  criterion("Format round-trips byte-stable for vec/clu/net/paj/vos (200 fuzzed cases)", 10, format_round_trips);

  // The synthetic base map is setup, not part of the timed criterion.
  const auto synth = run_cli("synth --out " + q(work / "synth"));
  const auto build = run_cli("build-basemap --matrix " + q(work / "synth" / "matrix.csv") + " --out " + q(work / "basemap"));
  if (synth.status != 0 || build.status != 0) {
    std::cout << "FAIL End-to-end overlay determinism and printed diversity: setup failed\n"
              << synth.output << build.output;
    ++failures;
  } else {
    criterion("End-to-end overlay: byte-identical reruns, printed Rao-Stirling equals oracle", 5,
              [&] { return end_to_end(work); });
  }

  std::cout << (failures ? std::to_string(failures) + " criteria failed" : "all criteria passed") << std::endl;
  return failures ? 1 : 0;
}
