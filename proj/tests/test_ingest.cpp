#include <map>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "scimap/categories.hpp"
#include "scimap/ingest.hpp"

namespace scimap {
namespace {

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return Errc::InvalidArgument;
}

TEST(AnalyzeExport, SingleRowWithPercentage) {
  const std::string row = "BIOCHEMISTRY & MOLECULAR BIOLOGY\t1021\t17.6 %";
  // Manual split on tabs.
  const auto tab1 = row.find('\t');
  const auto tab2 = row.find('\t', tab1 + 1);
  const std::string label = row.substr(0, tab1);
  const long long count = std::stoll(row.substr(tab1 + 1, tab2 - tab1 - 1));

  auto rows = parse_analyze_export(row + "\n");
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].raw_label, label);
  EXPECT_EQ(rows[0].count, count);
}

TEST(AnalyzeExport, HeaderOnlyIsEmpty) {
  EXPECT_EQ(code_of([] { parse_analyze_export("Field\tRecord Count\t% of 5793\n"); }), Errc::EmptyExport);
  EXPECT_EQ(code_of([] { parse_analyze_export(""); }), Errc::EmptyExport);
}

TEST(AnalyzeExport, PreservesFileOrder) {
  auto rows = parse_analyze_export("Field\tRecord Count\nOPTICS\t3\nACOUSTICS\t1\n");
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].raw_label, "OPTICS");
  EXPECT_EQ(rows[0].count, 3);
  EXPECT_EQ(rows[1].raw_label, "ACOUSTICS");
  EXPECT_EQ(rows[1].count, 1);
}

TEST(AnalyzeExport, ToleratesBomCrlfTitleAndFooter) {
  const std::string text =
      "\xEF\xBB\xBFWeb of Science Categories\r\n"
      "Field: Web of Science Categories\tRecord Count\t% of 5793\tBar Chart\r\n"
      "\r\n"
      "ONCOLOGY\t12\t0.207 %\t \r\n"
      "OPTICS\t0\t0 %\r\n"
      "\r\n"
      "(3 Web of Science Categories value(s) outside display options.)\r\n";
  auto rows = parse_analyze_export(text);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].raw_label, "ONCOLOGY");
  EXPECT_EQ(rows[1].count, 0);
}

TEST(AnalyzeExport, MalformedRowReportsLine) {
  try {
    parse_analyze_export("Field\tRecord Count\nOPTICS\t3\nACOUSTICS\tmany\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::MalformedRow);
    EXPECT_EQ(e.line(), 3u);
  }
  EXPECT_EQ(code_of([] { parse_analyze_export("OPTICS\t-2\n"); }), Errc::MalformedRow);
}

TEST(AnalyzeExport, RowCountMatchesDataLines) {
  std::mt19937_64 rng(11);
  const auto& labels = default_category_labels();
  for (int trial = 0; trial < 20; ++trial) {
    std::string text = "Field\tRecord Count\t% of N\n";
    const std::size_t rows = 1 + rng() % 40;
    for (std::size_t r = 0; r < rows; ++r) {
      text += labels[rng() % labels.size()] + "\t" + std::to_string(rng() % 1000) + "\t1 %\n";
      if (rng() % 5 == 0) text += "\n";
    }
    EXPECT_EQ(parse_analyze_export(text).size(), rows);
  }
}

TEST(BuildOverlay, SingleCategory) {
  auto reg = default_registry();
  auto ov = build_overlay({{"Robotics", 5}}, reg);
  const auto id = *reg->lookup("Robotics");
  EXPECT_EQ(ov.counts()[id.index()], 5);
  EXPECT_EQ(ov.proportions()[id.index()], 1.0);
  EXPECT_EQ(ov.nonzero(), 1u);
}

TEST(BuildOverlay, AllUnmatched) {
  CategoryRegistry small({"A", "B"});
  auto reg = std::make_shared<const CategoryRegistry>(small);
  EXPECT_EQ(code_of([&] { build_overlay({{"X", 1}}, reg); }), Errc::AllUnmatched);
  // Matched rows with zero records are also a mismatch.
  EXPECT_EQ(code_of([&] { build_overlay({{"A", 0}, {"X", 4}}, reg); }), Errc::AllUnmatched);
}

TEST(BuildOverlay, DuplicatesMergeBySum) {
  auto reg = default_registry();
  std::vector<AnalyzeRow> rows = {{"Mathematics", 3}, {"MATHEMATICS", 1}};
  std::map<std::string, long long> oracle;
  for (const auto& r : rows) oracle[normalize_label(r.raw_label)] += r.count;
  auto ov = build_overlay(rows, reg);
  EXPECT_EQ(ov.counts()[reg->lookup("Mathematics")->index()], oracle["mathematics"]);
  EXPECT_EQ(oracle["mathematics"], 4);
}

TEST(BuildOverlay, ConservesMassAndExcludesUnmatched) {
  std::mt19937_64 rng(3);
  auto reg = default_registry();
  const auto& labels = default_category_labels();
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<AnalyzeRow> rows;
    long long input = 0;
    rows.push_back({labels[rng() % labels.size()], 1 + static_cast<long long>(rng() % 50)});
    input += rows.back().count;
    for (int r = 0; r < 20; ++r) {
      const bool unknown = rng() % 4 == 0;
      rows.push_back({unknown ? "Unknown Field " + std::to_string(r) : labels[rng() % labels.size()],
                      static_cast<long long>(rng() % 100)});
      input += rows.back().count;
    }
    auto ov = build_overlay(rows, reg);
    long long unmatched = 0;
    for (const auto& u : ov.unmatched()) unmatched += u.count;
    EXPECT_EQ(ov.total() + unmatched, input);
    double sum = 0;
    for (double p : ov.proportions()) sum += p;
    EXPECT_LE(std::abs(sum - 1.0), 1e-12);
  }
}

class MatrixParse : public ::testing::Test {
 protected:
  CategoryRegistry reg{{"A", "B"}};
};

TEST_F(MatrixParse, DirectRead) {
  auto m = parse_citation_matrix(",A,B\nA,10,2\nB,3,5\n", reg);
  ASSERT_EQ(m.size(), 2u);
  EXPECT_EQ(m(0, 0), 10);
  EXPECT_EQ(m(0, 1), 2);
  EXPECT_EQ(m(1, 0), 3);
  EXPECT_EQ(m(1, 1), 5);
}

TEST_F(MatrixParse, ReordersToRegistryAndDetectsTabs) {
  auto m = parse_citation_matrix("\tB\tA\nA\t2\t10\nB\t5\t3\n", reg);
  EXPECT_EQ(m(0, 0), 10);
  EXPECT_EQ(m(0, 1), 2);
  EXPECT_EQ(m(1, 0), 3);
  EXPECT_EQ(m(1, 1), 5);
}

TEST_F(MatrixParse, Errors) {
  EXPECT_EQ(code_of([&] { parse_citation_matrix(",A,B,C\nA,1,2,3\nB,1,2,3\nC,1,2,3\n", reg); }), Errc::UnknownLabel);
  EXPECT_EQ(code_of([&] { parse_citation_matrix(",A,B\nA,10,2\nB,-1,5\n", reg); }), Errc::NegativeCell);
  EXPECT_EQ(code_of([&] { parse_citation_matrix(",A,B\nA,10,2\n", reg); }), Errc::NotSquare);
  EXPECT_EQ(code_of([&] { parse_citation_matrix(",A,B\nA,10,2\nB,3\n", reg); }), Errc::NotSquare);
  EXPECT_EQ(code_of([&] { parse_citation_matrix(",A,B\nA,1,x\nB,3,4\n", reg); }), Errc::ParseError);
  EXPECT_EQ(code_of([&] { parse_citation_matrix(",A\nA,1\n", reg); }), Errc::DimensionMismatch);
}

TEST(MatrixRoundTrip, FullPrecision) {
  std::mt19937_64 rng(9);
  CategoryRegistry reg({"Mathematics, Applied", "Optics", "Pharmacology & Pharmacy", "Say \"hi\""});
  for (int trial = 0; trial < 20; ++trial) {
    Matrix cells(4, 4);
    for (Eigen::Index i = 0; i < 16; ++i)
      cells(i / 4, i % 4) = trial % 2 ? static_cast<double>(rng() % 1000) : static_cast<double>(rng()) * 1e-17;
    CitationMatrix m(cells);
    for (char delim : {',', '\t'}) {
      const auto text = write_citation_matrix(m, reg, delim);
      auto back = parse_citation_matrix(text, reg);
      EXPECT_EQ(back.cells(), m.cells());
      EXPECT_EQ(write_citation_matrix(back, reg, delim), text);
    }
  }
}

TEST(RegistryFile, ReadsOnePerLine) {
  std::istringstream in("Optics\r\nAcoustics\n\n");
  auto reg = read_registry(in);
  EXPECT_EQ(reg.size(), 2u);
  EXPECT_EQ(reg.lookup("acoustics")->value, 2);
  std::istringstream again(write_registry(reg));
  EXPECT_EQ(read_registry(again), reg);
}

TEST(PartitionFile, ReadsNamesAndRejectsGaps) {
  CategoryRegistry reg({"A", "B, C", "D"});
  std::istringstream in("label,group,group_name\nA,2,Second\n\"B, C\",1,First\nD,2,Second\n");
  auto p = read_partition_csv(in, reg);
  EXPECT_EQ(p.assignment(), (std::vector<int>{2, 1, 2}));
  EXPECT_EQ(p.group_names(), (std::vector<std::string>{"First", "Second"}));
  EXPECT_EQ(write_partition_csv(p, reg), "label,group,group_name\nA,2,Second\n\"B, C\",1,First\nD,2,Second\n");

  std::istringstream missing("label,group\nA,1\nD,1\n");
  EXPECT_THROW(read_partition_csv(missing, reg), Error);
  std::istringstream unknown("label,group\nA,1\nB, C,1\n");
  EXPECT_THROW(read_partition_csv(unknown, reg), Error);
  std::istringstream gap("label,group\nA,1\n\"B, C\",3\nD,1\n");
  EXPECT_THROW(read_partition_csv(gap, reg), Error);
}

}  // namespace
}  // namespace scimap
