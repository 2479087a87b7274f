#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "topochange/errors.hpp"
#include "topochange/io.hpp"

using namespace topochange;
namespace fs = std::filesystem;

namespace {

class TempDir : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() / ("topochange_io_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                             "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    std::string write(const std::string& name, const std::string& text) {
        const auto path = (dir_ / name).string();
        std::ofstream(path) << text;
        return path;
    }
    fs::path dir_;
};

using CsvTest = TempDir;

}  // namespace

TEST_F(CsvTest, TwoWindows) {
    const auto a = write("day1.csv", "1,2\n3,4\n5,6\n");
    const auto b = write("day2.csv", "0,0\n1,1\n2,2\n");
    const auto ds = parse_windows({a, b});
    EXPECT_EQ(ds.labels, (std::vector<std::string>{"day1", "day2"}));
    EXPECT_EQ(ds.dim, 2u);
    EXPECT_EQ(ds.windows[0].size(), 3u);
    EXPECT_EQ(ds.windows[0].point(2)[1], 6.0);
}

TEST_F(CsvTest, HeaderNeedsSkipFlag) {
    const auto path = write("h.csv", "x,y\n1,2\n");
    try {
        read_cloud_csv(path);
        FAIL() << "expected a parse error";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 1u);
        EXPECT_EQ(e.file(), path);
    }
    EXPECT_EQ(read_cloud_csv(path, true).size(), 1u);
}

TEST_F(CsvTest, RaggedNonNumericAndEmpty) {
    try {
        read_cloud_csv(write("r.csv", "1,2\n3\n"));
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 2u);
    }
    try {
        read_cloud_csv(write("n.csv", "1,2\n3,4\n5,abc\n"));
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3u);
    }
    EXPECT_THROW(read_cloud_csv(write("e.csv", "")), ParseError);
    EXPECT_THROW(read_cloud_csv(write("nan.csv", "1,nan\n")), ParseError);
}

TEST_F(CsvTest, DimensionMismatchAndDuplicateLabels) {
    const auto a = write("a.csv", "1,2\n");
    const auto b = write("b.csv", "1,2,3\n");
    EXPECT_THROW(parse_windows({a, b}), InputError);
    EXPECT_THROW(parse_windows({a, a}), InputError);
}

TEST_F(CsvTest, BitExactRoundTrip) {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> z(0, 1e3);
    std::vector<double> c(60);
    for (auto& v : c) v = z(rng) * 1e-7 + z(rng);
    c[0] = 0.1;
    c[1] = -2.5e-300;
    const PointCloud cloud(3, c);
    const auto path = (dir_ / "rt.csv").string();
    write_cloud_csv(cloud, path);
    EXPECT_EQ(read_cloud_csv(path), cloud);
}

TEST(DiagramJson, RoundTripWithInfinity) {
    PersistenceDiagram d;
    d.degree = 1;
    d.cutoff = 1.0;
    d.bars = {{0.1, 0.30000000000000004}, {0.2, kInfinity}};
    const auto text = diagram_to_json(d);
    EXPECT_NE(text.find("null"), std::string::npos);
    const auto back = diagram_from_json(text);
    EXPECT_EQ(back.degree, 1);
    EXPECT_EQ(back.cutoff, 1.0);
    EXPECT_EQ(back.bars, d.bars);
    EXPECT_THROW(diagram_from_json("{\"degree\":0,\"cutoff\":1,\"bars\":[[1]]}"), InputError);
}

TEST(LandscapeCsv, Layout) {
    const std::vector<PiecewiseLinear> layers{PiecewiseLinear({0, 0.5, 1}, {0, 0.5, 0}),
                                              PiecewiseLinear({0, 0.5, 1}, {0, 0.25, 0})};
    const auto csv = landscape_csv(layers);
    EXPECT_EQ(csv, "t,lambda_1,lambda_2,sum\n0,0,0,0\n0.5,0.5,0.25,0.75\n1,0,0,0\n");
}
