#include "nacsc/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

#include "nacsc/errors.hpp"

namespace nacsc {

namespace {

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open file for writing: " + path);
  return out;
}

bool is_blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

bool parse_double(std::string_view token, double& out) {
  const char* first = token.data();
  const char* last = token.data() + token.size();
  while (first < last && std::isspace(static_cast<unsigned char>(*first))) ++first;
  while (last > first && std::isspace(static_cast<unsigned char>(last[-1]))) --last;
  if (first == last) return false;
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

bool parse_long(std::string_view token, long& out) {
  const char* first = token.data();
  const char* last = token.data() + token.size();
  while (first < last && std::isspace(static_cast<unsigned char>(*first))) ++first;
  while (last > first && std::isspace(static_cast<unsigned char>(last[-1]))) --last;
  if (first == last) return false;
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

std::vector<std::string> split_csv_row(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

Graph load_edge_list(const std::string& path, std::optional<int> n_hint) {
  auto in = open_input(path);
  std::vector<std::pair<int, int>> edges;
  int max_index = -1;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line) || line[line.find_first_not_of(" \t")] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    long a, b;
    std::string ta, tb, extra;
    if (!(fields >> ta >> tb) || (fields >> extra) || !parse_long(ta, a) || !parse_long(tb, b))
      throw ParseError(path + ":" + std::to_string(line_no) + ": expected two integers, got '" + line + "'");
    if (a < 0 || b < 0)
      throw DomainError(path + ":" + std::to_string(line_no) + ": negative node index");
    edges.emplace_back(static_cast<int>(a), static_cast<int>(b));
    max_index = std::max({max_index, static_cast<int>(a), static_cast<int>(b)});
  }
  int n = max_index + 1;
  if (n_hint && *n_hint > n) n = *n_hint;
  return Graph(n, edges);
}

void save_edge_list(const Graph& g, const std::string& path) {
  auto out = open_output(path);
  for (const auto& [a, b] : g.edges()) out << a << ' ' << b << '\n';
}

Eigen::MatrixXd load_covariates(const std::string& path) {
  auto in = open_input(path);
  std::vector<std::vector<double>> rows;
  std::string line;
  long line_no = 0;
  bool first_data_row = true;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line)) continue;
    auto fields = split_csv_row(line);
    std::vector<double> row(fields.size());
    bool ok = true;
    std::size_t bad_col = 0;
    for (std::size_t c = 0; c < fields.size(); ++c) {
      if (!parse_double(fields[c], row[c])) {
        ok = false;
        bad_col = c;
        break;
      }
    }
    if (!ok) {
      if (first_data_row) {
        first_data_row = false;  // header row
        continue;
      }
      throw ParseError(path + ":" + std::to_string(line_no) + ": non-numeric field '" +
                       fields[bad_col] + "' at column " + std::to_string(bad_col + 1));
    }
    for (double v : row)
      if (!std::isfinite(v))
        throw ParseError(path + ":" + std::to_string(line_no) + ": non-finite covariate value");
    if (rows.empty()) {
      width = row.size();
    } else if (row.size() != width) {
      throw DimensionError(path + ":" + std::to_string(line_no) + ": row has " +
                           std::to_string(row.size()) + " fields, expected " + std::to_string(width));
    }
    first_data_row = false;
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError(path + ": no data rows");
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(width));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < width; ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  return m;
}

void save_matrix_csv(const Eigen::MatrixXd& m, const std::string& path) {
  auto out = open_output(path);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      out << format_double(m(i, j));
    }
    out << '\n';
  }
}

namespace {

std::vector<int> load_int_lines(const std::string& path, const char* what) {
  auto in = open_input(path);
  std::vector<int> values;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line)) continue;
    long v;
    if (!parse_long(line, v))
      throw ParseError(path + ":" + std::to_string(line_no) + ": expected an integer " + what);
    values.push_back(static_cast<int>(v));
  }
  if (values.empty()) throw ParseError(path + ": empty " + std::string(what) + " file");
  return values;
}

}  // namespace

std::vector<int> load_labels(const std::string& path) { return load_int_lines(path, "label"); }

void save_labels(const std::vector<int>& labels, const std::string& path) {
  auto out = open_output(path);
  for (int v : labels) out << v << '\n';
}

std::vector<int> load_index_list(const std::string& path) { return load_int_lines(path, "index"); }

}  // namespace nacsc
