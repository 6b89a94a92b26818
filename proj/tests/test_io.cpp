#include <gtest/gtest.h>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "teflow/checksum.hpp"
#include "teflow/config.hpp"
#include "teflow/error.hpp"
#include "teflow/matrix_io.hpp"

namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  auto p = fs::temp_directory_path() /
           ("teflow_io_" + name + std::to_string(std::chrono::steady_clock::now().time_since_epoch().count()));
  fs::create_directories(p);
  return p;
}

TEST(Config, DefaultsFollowReferenceProtocol) {
  const teflow::RunConfig c;
  EXPECT_EQ(c.window_length, 500u);
  EXPECT_EQ(c.window_shift, 25u);
  EXPECT_EQ(c.k, 2u);
  EXPECT_EQ(c.deltas.size(), 10u);
  EXPECT_EQ(c.validation.a, 100.0);
  EXPECT_EQ(c.validation.r_star, 0.03);
  EXPECT_EQ(c.validation.bracket, 10u);
  EXPECT_EQ(c.surrogate_domain, teflow::SurrogateDomain::LogPrice);
  EXPECT_NO_THROW(c.validate());
}

TEST(Config, ParseSettingsAndComments) {
  const auto c = teflow::parse_config(
      "# run\n"
      "input = data/prices.csv\n"
      "window.length = 250   # shorter\n"
      "window.shift=10\n"
      "delta = 1-3, 7\n"
      "validation.a = 50.5\n"
      "surrogate.domain = price\n"
      "surrogate.n_realizations = 4\n"
      "domain = prices\n"
      "seed = 18446744073709551615\n"
      "manifest.timing = yes\n");
  EXPECT_EQ(c.input, "data/prices.csv");
  EXPECT_EQ(c.window_length, 250u);
  EXPECT_EQ(c.window_shift, 10u);
  EXPECT_EQ(c.deltas, (std::vector<std::size_t>{1, 2, 3, 7}));
  EXPECT_EQ(c.validation.a, 50.5);
  EXPECT_EQ(c.surrogate_domain, teflow::SurrogateDomain::Price);
  EXPECT_EQ(c.n_realizations, 4u);
  EXPECT_EQ(c.domain, teflow::AnalysisDomain::Prices);
  EXPECT_EQ(c.seed, std::numeric_limits<std::uint64_t>::max());
  EXPECT_TRUE(c.record_timing);
}

TEST(Config, Errors) {
  EXPECT_THROW(teflow::parse_config("colour = red\n"), teflow::ConfigError);
  EXPECT_THROW(teflow::parse_config("k = two\n"), teflow::ConfigError);
  EXPECT_THROW(teflow::parse_config("just words\n"), teflow::ConfigError);
  EXPECT_THROW(teflow::parse_delta_list("3-1"), teflow::ConfigError);
  EXPECT_THROW(teflow::parse_delta_list("1,,2"), teflow::ConfigError);
  EXPECT_THROW(teflow::load_config("/nonexistent/run.cfg"), teflow::ConfigError);
  teflow::RunConfig c;
  c.window_shift = 600;
  EXPECT_THROW(c.validate(), teflow::ConfigError);
  c = {};
  c.k = 9;
  EXPECT_THROW(c.validate(), teflow::ConfigError);
  c = {};
  c.deltas = {0, 1};
  EXPECT_THROW(c.validate(), teflow::ConfigError);
}

TEST(Config, SnapshotRoundTripsAndOmitsRunLocation) {
  teflow::RunConfig c;
  c.input = "x.csv";
  c.output = "out";
  c.threads = 7;
  c.deltas = {2, 5};
  c.coverage = 0.1 + 0.2;
  const auto text = teflow::config_snapshot(c);
  EXPECT_EQ(text.find("out ="), std::string::npos);
  EXPECT_EQ(text.find("threads"), std::string::npos);
  const auto back = teflow::parse_config(text);
  EXPECT_EQ(back.coverage, c.coverage);
  EXPECT_EQ(back.deltas, c.deltas);
  EXPECT_EQ(teflow::config_snapshot(back), text);
}

TEST(MatrixIo, FormatDoubleRoundTrips) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 1000; ++i) {
    const double v = u(rng) * std::pow(10.0, i % 20 - 10);
    EXPECT_EQ(std::stod(teflow::format_double(v)), v);
  }
  EXPECT_EQ(teflow::format_double(0.5), "0.5");
  EXPECT_EQ(teflow::format_optional(std::nullopt), "null");
}

TEST(MatrixIo, TeMatrixRoundTrip) {
  const auto dir = scratch("m");
  teflow::TEMatrix m(3, 4, 2, 2);
  m.set(0, 1, 0.1 + 0.2);
  m.set(2, 0, 1e-300);
  m.set(1, 2, 0.0);
  const std::vector<std::string> tickers = {"AAA", "BBB", "CCC"};
  teflow::write_te_matrix(dir / "te.csv", m, tickers);

  std::ifstream in(dir / "te.csv");
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, ",AAA,BBB,CCC");

  std::vector<std::string> names;
  const auto back = teflow::read_te_matrix(dir / "te.csv", 4, 2, 2, &names);
  EXPECT_EQ(names, tickers);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      ASSERT_EQ(back.valid(i, j), m.valid(i, j));
      if (m.valid(i, j)) EXPECT_EQ(back.value(i, j), m.value(i, j));
    }
  fs::remove_all(dir);
}

TEST(MatrixIo, MalformedFilesThrow) {
  const auto dir = scratch("bad");
  EXPECT_THROW(teflow::read_matrix_csv(dir / "none.csv"), teflow::InputError);
  teflow::write_text_file(dir / "a.csv", ",A,B\nA,,x\nB,1,\n");
  EXPECT_THROW(teflow::read_matrix_csv(dir / "a.csv"), teflow::InputError);
  teflow::write_text_file(dir / "b.csv", ",A,B\nA,,1\n");
  EXPECT_THROW(teflow::read_matrix_csv(dir / "b.csv"), teflow::InputError);
  fs::remove_all(dir);
}

TEST(Checksum, KnownDigestsAndTrees) {
  EXPECT_EQ(teflow::sha256_hex(""),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(teflow::sha256_hex("abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  const auto dir = scratch("sum");
  teflow::write_text_file(dir / "f.txt", "abc");
  EXPECT_EQ(teflow::sha256_file(dir / "f.txt"), teflow::sha256_hex("abc"));
  EXPECT_EQ(teflow::sha256_path(dir / "f.txt"), teflow::sha256_hex("abc"));
  teflow::write_text_file(dir / "sub/g.txt", "x");
  const auto before = teflow::sha256_path(dir);
  teflow::write_text_file(dir / "sub/g.txt", "y");
  EXPECT_NE(teflow::sha256_path(dir), before);
  EXPECT_THROW(teflow::sha256_file(dir / "missing"), teflow::InputError);
  fs::remove_all(dir);
}

}  // namespace
