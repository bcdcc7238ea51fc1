#include "alignlab/io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

#include "alignlab/error.hpp"

namespace alignlab {

namespace {

[[noreturn]] void io_fail(const std::string& msg) { throw Error(ErrorKind::Io, msg); }

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, sep)) out.push_back(cell);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

double parse_number(const std::string& s, const std::string& origin, std::size_t row) {
  const char* begin = s.c_str();
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0' || errno == ERANGE)
    throw Error(ErrorKind::InvalidInput, origin + ": bad number '" + s + "' on row " + std::to_string(row));
  return v;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_text(const Mat& m) {
  std::string out;
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    if (j) out += ',';
    out += 'c' + std::to_string(j);
  }
  out += '\n';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out += ',';
      out += format_double(m(i, j));
    }
    out += '\n';
  }
  return out;
}

Mat parse_csv(const std::string& text, const std::string& origin) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorKind::InvalidInput, origin + ": empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const std::size_t cols = split(line, ',').size();
  if (cols == 0) throw Error(ErrorKind::InvalidInput, origin + ": empty header");

  std::vector<double> values;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != cols)
      throw Error(ErrorKind::DimensionMismatch, origin + ": row " + std::to_string(rows + 1) + " has " +
                                                    std::to_string(cells.size()) + " cells, expected " +
                                                    std::to_string(cols));
    for (const auto& c : cells) values.push_back(parse_number(c, origin, rows + 1));
    ++rows;
  }
  Mat m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(Eigen::Index(i), Eigen::Index(j)) = values[i * cols + j];
  return m;
}

void write_atomic(const fs::path& path, const std::string& content) {
  std::error_code ec;
  if (path.has_parent_path()) {
    fs::create_directories(path.parent_path(), ec);
    if (ec) io_fail("cannot create " + path.parent_path().string() + ": " + ec.message());
  }
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) io_fail("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) io_fail("write failed for " + tmp.string());
  }
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    io_fail("cannot rename into " + path.string());
  }
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) io_fail("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_csv(const fs::path& path, const Mat& m) { write_atomic(path, csv_text(m)); }

Mat read_csv(const fs::path& path) { return parse_csv(read_text(path), path.string()); }

void write_json(const fs::path& path, const Json& j) { write_atomic(path, j.dump(2) + "\n"); }

Json read_json(const fs::path& path) {
  const std::string text = read_text(path);
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::InvalidInput, path.string() + ": " + e.what());
  }
}

void write_dataset(const fs::path& dir, const Dataset& d, const Json& meta) {
  d.validate();
  write_csv(dir / "x1.csv", d.x1);
  write_csv(dir / "x2.csv", d.x2);
  write_csv(dir / "y1.csv", d.y1);
  write_csv(dir / "y2.csv", d.y2);
  Json m = meta;
  m["standardized"] = d.standardized;
  write_json(dir / "meta.json", m);
}

Dataset read_dataset(const fs::path& dir) {
  if (!fs::is_directory(dir)) io_fail("not a dataset directory: " + dir.string());
  Dataset d;
  d.x1 = read_csv(dir / "x1.csv");
  d.x2 = read_csv(dir / "x2.csv");
  d.y1 = read_csv(dir / "y1.csv");
  d.y2 = read_csv(dir / "y2.csv");
  d.validate();
  // The flag is re-measured rather than trusted from meta.json.
  d.standardized = columns_centered(d.x1) && columns_centered(d.x2) && targets_standardized(d.y1) &&
                   targets_standardized(d.y2);
  return d;
}

Json to_json(const SynthConfig& c) {
  return Json{{"n", c.n},
              {"d1", c.d1},
              {"d2", c.d2},
              {"c1", c.c1},
              {"c2", c.c2},
              {"k_shared", c.k_shared},
              {"k_spec1", c.k_spec1},
              {"k_spec2", c.k_spec2},
              {"noise_x1", c.noise_x1},
              {"noise_x2", c.noise_x2},
              {"noise_y1", c.noise_y1},
              {"noise_y2", c.noise_y2},
              {"cross_leak", c.cross_leak},
              {"nonlinear", c.nonlinear},
              {"seed", c.seed}};
}

SynthConfig synth_config_from_json(const Json& j) {
  SynthConfig c;
  if (!j.is_object()) throw Error(ErrorKind::InvalidConfig, "synth config must be a JSON object");
  try {
    c.n = j.value("n", c.n);
    c.d1 = j.value("d1", c.d1);
    c.d2 = j.value("d2", c.d2);
    c.c1 = j.value("c1", c.c1);
    c.c2 = j.value("c2", c.c2);
    c.k_shared = j.value("k_shared", c.k_shared);
    c.k_spec1 = j.value("k_spec1", c.k_spec1);
    c.k_spec2 = j.value("k_spec2", c.k_spec2);
    c.noise_x1 = j.value("noise_x1", c.noise_x1);
    c.noise_x2 = j.value("noise_x2", c.noise_x2);
    c.noise_y1 = j.value("noise_y1", c.noise_y1);
    c.noise_y2 = j.value("noise_y2", c.noise_y2);
    c.cross_leak = j.value("cross_leak", c.cross_leak);
    c.nonlinear = j.value("nonlinear", c.nonlinear);
    c.seed = j.value("seed", c.seed);
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::InvalidConfig, std::string("synth config: ") + e.what());
  }
  c.validate();
  return c;
}

}  // namespace alignlab
