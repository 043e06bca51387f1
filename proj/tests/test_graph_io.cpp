#include <Eigen/Dense>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "nacsc/errors.hpp"
#include "nacsc/graph.hpp"
#include "nacsc/io.hpp"

using nacsc::Graph;

namespace {

// RAII scratch directory for file round trips.
struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("nacsc_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  out << content;
}

}  // namespace

TEST_SUITE_BEGIN("graph");

TEST_CASE("degrees of an empty graph are zero") {
  Graph g(3, {});
  CHECK(nacsc::degrees(g) == std::vector<int>{0, 0, 0});
}

TEST_CASE("degrees of a triangle are all two") {
  Graph g(3, {{0, 1}, {1, 2}, {0, 2}});
  CHECK(nacsc::degrees(g) == std::vector<int>{2, 2, 2});
}

TEST_CASE("degrees of a path are 1,2,1") {
  Graph g(3, {{0, 1}, {1, 2}});
  CHECK(nacsc::degrees(g) == std::vector<int>{1, 2, 1});
}

TEST_CASE("average degree: triangle, path, empty, and zero-node error") {
  CHECK(nacsc::average_degree(Graph(3, {{0, 1}, {1, 2}, {0, 2}})) == doctest::Approx(2.0));
  CHECK(nacsc::average_degree(Graph(3, {{0, 1}, {1, 2}})) == doctest::Approx(4.0 / 3.0));
  CHECK(nacsc::average_degree(Graph(5, {})) == doctest::Approx(0.0));
  CHECK_THROWS_AS(nacsc::average_degree(Graph(0, {})), nacsc::DomainError);
}

TEST_CASE("duplicate edges collapse and self-loops are dropped with a count") {
  Graph g(3, {{0, 1}, {1, 0}, {2, 2}});
  CHECK(g.edge_count() == 1);
  CHECK(g.self_loops_dropped() == 1);
  CHECK(g.has_edge(0, 1));
  CHECK(g.has_edge(1, 0));
  CHECK(!g.has_edge(2, 2));
}

TEST_CASE("neighbor lists are sorted and edges() is lexicographic with i<j") {
  Graph g(5, {{4, 0}, {2, 0}, {0, 1}, {3, 2}});
  CHECK(g.neighbors(0) == std::vector<int>{1, 2, 4});
  std::vector<std::pair<int, int>> want{{0, 1}, {0, 2}, {0, 4}, {2, 3}};
  CHECK(g.edges() == want);
}

TEST_CASE("degree sum equals twice the edge count on a random-ish graph") {
  Graph g(6, {{0, 1}, {0, 2}, {1, 2}, {3, 4}, {4, 5}, {0, 5}});
  int sum = 0;
  for (int d : nacsc::degrees(g)) sum += d;
  CHECK(sum == 2 * static_cast<int>(g.edge_count()));
}

TEST_CASE("adjacency is symmetric with a zero diagonal") {
  Graph g(4, {{0, 3}, {1, 2}, {2, 3}});
  for (int i = 0; i < 4; ++i) {
    CHECK(!g.has_edge(i, i));
    for (int j = 0; j < 4; ++j) CHECK(g.has_edge(i, j) == g.has_edge(j, i));
  }
}

TEST_SUITE_END();

TEST_SUITE_BEGIN("io");

TEST_CASE("edge list: basic path file") {
  TempDir dir;
  write_file(dir.file("e.txt"), "0 1\n1 2\n");
  Graph g = nacsc::load_edge_list(dir.file("e.txt"));
  CHECK(g.node_count() == 3);
  CHECK(g.edge_count() == 2);
  CHECK(g.has_edge(0, 1));
  CHECK(g.has_edge(1, 2));
}

TEST_CASE("edge list: duplicate and self-loop handling") {
  TempDir dir;
  write_file(dir.file("e.txt"), "0 1\n1 0\n2 2\n");
  Graph g = nacsc::load_edge_list(dir.file("e.txt"));
  CHECK(g.node_count() == 3);
  CHECK(g.edge_count() == 1);
  CHECK(g.self_loops_dropped() == 1);
}

TEST_CASE("edge list: comments, commas, and n_hint creating isolated nodes") {
  TempDir dir;
  write_file(dir.file("e.txt"), "0,1\n#c\n1 2\n");
  Graph g = nacsc::load_edge_list(dir.file("e.txt"), 5);
  CHECK(g.node_count() == 5);
  CHECK(g.edge_count() == 2);
  CHECK(g.degree(3) == 0);
  CHECK(g.degree(4) == 0);
}

TEST_CASE("edge list: unparsable line reports the line number") {
  TempDir dir;
  write_file(dir.file("e.txt"), "0 1\nnope nope\n");
  try {
    nacsc::load_edge_list(dir.file("e.txt"));
    FAIL("expected ParseError");
  } catch (const nacsc::ParseError& e) {
    CHECK(std::string(e.what()).find(":2") != std::string::npos);
  }
}

TEST_CASE("edge list: negative index is a domain error") {
  TempDir dir;
  write_file(dir.file("e.txt"), "0 -1\n");
  CHECK_THROWS_AS(nacsc::load_edge_list(dir.file("e.txt")), nacsc::DomainError);
}

TEST_CASE("edge list: wrong field count is a parse error") {
  TempDir dir;
  write_file(dir.file("e.txt"), "0 1 2\n");
  CHECK_THROWS_AS(nacsc::load_edge_list(dir.file("e.txt")), nacsc::ParseError);
}

TEST_CASE("edge list: save/load round trip preserves the deduplicated edge set") {
  TempDir dir;
  Graph g(5, {{0, 1}, {0, 1}, {3, 2}, {4, 4}});
  nacsc::save_edge_list(g, dir.file("e.txt"));
  Graph back = nacsc::load_edge_list(dir.file("e.txt"), g.node_count());
  CHECK(back.node_count() == g.node_count());
  CHECK(back.edges() == g.edges());

  // Re-serialization is idempotent byte-for-byte.
  nacsc::save_edge_list(back, dir.file("e2.txt"));
  std::ifstream a(dir.file("e.txt")), b(dir.file("e2.txt"));
  std::string sa((std::istreambuf_iterator<char>(a)), std::istreambuf_iterator<char>());
  std::string sb((std::istreambuf_iterator<char>(b)), std::istreambuf_iterator<char>());
  CHECK(sa == sb);
}

TEST_CASE("covariates: plain numeric CSV") {
  TempDir dir;
  write_file(dir.file("x.csv"), "1,0\n0,1\n");
  Eigen::MatrixXd m = nacsc::load_covariates(dir.file("x.csv"));
  REQUIRE(m.rows() == 2);
  REQUIRE(m.cols() == 2);
  CHECK(m(0, 0) == 1.0);
  CHECK(m(0, 1) == 0.0);
  CHECK(m(1, 0) == 0.0);
  CHECK(m(1, 1) == 1.0);
}

TEST_CASE("covariates: non-numeric first row is a skipped header") {
  TempDir dir;
  write_file(dir.file("x.csv"), "a,b\n1,2\n");
  Eigen::MatrixXd m = nacsc::load_covariates(dir.file("x.csv"));
  REQUIRE(m.rows() == 1);
  REQUIRE(m.cols() == 2);
  CHECK(m(0, 0) == 1.0);
  CHECK(m(0, 1) == 2.0);
}

TEST_CASE("covariates: ragged rows are a dimension error") {
  TempDir dir;
  write_file(dir.file("x.csv"), "1,2\n3\n");
  CHECK_THROWS_AS(nacsc::load_covariates(dir.file("x.csv")), nacsc::DimensionError);
}

TEST_CASE("covariates: non-numeric body cell reports row and column") {
  TempDir dir;
  write_file(dir.file("x.csv"), "1,2\n3,oops\n");
  try {
    nacsc::load_covariates(dir.file("x.csv"));
    FAIL("expected ParseError");
  } catch (const nacsc::ParseError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("2") != std::string::npos);  // row
    CHECK(msg.find("oops") != std::string::npos);
  }
}

TEST_CASE("covariates: empty file is a parse error") {
  TempDir dir;
  write_file(dir.file("x.csv"), "");
  CHECK_THROWS_AS(nacsc::load_covariates(dir.file("x.csv")), nacsc::ParseError);
}

TEST_CASE("covariates: matrix save/load round trip is exact") {
  TempDir dir;
  Eigen::MatrixXd m(2, 3);
  m << 1.5, -2.25, 3.0e-17, 0.1, 7.0, -0.0;
  nacsc::save_matrix_csv(m, dir.file("m.csv"));
  Eigen::MatrixXd back = nacsc::load_covariates(dir.file("m.csv"));
  REQUIRE(back.rows() == 2);
  REQUIRE(back.cols() == 3);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j) CHECK(back(i, j) == m(i, j));
}

TEST_CASE("labels: round trips and error cases") {
  TempDir dir;
  nacsc::save_labels({0, 1, 2}, dir.file("l.txt"));
  std::ifstream in(dir.file("l.txt"));
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(content == "0\n1\n2\n");
  CHECK(nacsc::load_labels(dir.file("l.txt")) == std::vector<int>{0, 1, 2});

  nacsc::save_labels({1, 1, 0}, dir.file("l2.txt"));
  CHECK(nacsc::load_labels(dir.file("l2.txt")) == std::vector<int>{1, 1, 0});

  write_file(dir.file("bad.txt"), "1\nx\n");
  CHECK_THROWS_AS(nacsc::load_labels(dir.file("bad.txt")), nacsc::ParseError);
  write_file(dir.file("empty.txt"), "");
  CHECK_THROWS_AS(nacsc::load_labels(dir.file("empty.txt")), nacsc::ParseError);
}

TEST_CASE("index list shares the label syntax") {
  TempDir dir;
  write_file(dir.file("s.txt"), "4\n1\n");
  CHECK(nacsc::load_index_list(dir.file("s.txt")) == std::vector<int>{4, 1});
}

TEST_CASE("missing file raises a parse error naming the path") {
  try {
    nacsc::load_edge_list("/nonexistent/nacsc-no-such-file");
    FAIL("expected ParseError");
  } catch (const nacsc::ParseError& e) {
    CHECK(std::string(e.what()).find("nacsc-no-such-file") != std::string::npos);
  }
}

TEST_CASE("format_double round trips doubles exactly") {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 7.0, 0.0, 1e308}) {
    CHECK(std::stod(nacsc::format_double(v)) == v);
  }
}

TEST_SUITE_END();
