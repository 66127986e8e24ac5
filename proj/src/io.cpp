#include "kerrqed/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace kerrqed {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  return f;
}

void write_comments(std::ofstream& f, const std::vector<std::string>& comments) {
  for (const auto& c : comments) f << "# " << c << "\n";
}

nlohmann::json matrix_to_json(const Eigen::MatrixXd& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::json axis_to_json(const AxisSpec& a) {
  return {{"min", a.min}, {"max", a.max}, {"points", a.points}};
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

uint64_t fnv1a64(const std::string& bytes) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hash_hex(uint64_t h) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void write_timeseries_csv(const TimeSeries& ts, const std::string& path,
                          const std::vector<std::string>& comments) {
  auto f = open_out(path);
  write_comments(f, comments);
  f << ts.time_label;
  for (const auto& [name, _] : ts.columns) f << "," << name;
  f << "\n";
  for (size_t i = 0; i < ts.t.size(); ++i) {
    f << format_double(ts.t[i]);
    for (const auto& [_, col] : ts.columns) f << "," << format_double(col[i]);
    f << "\n";
  }
}

void write_timeseries_json(const TimeSeries& ts, const std::string& path,
                           const nlohmann::json& meta) {
  nlohmann::json cols = nlohmann::json::object();
  for (const auto& [name, col] : ts.columns) cols[name] = col;
  nlohmann::json j = {{"schema", "kerrqed.timeseries.v1"},
                      {"time_label", ts.time_label},
                      {"t", ts.t},
                      {"columns", cols},
                      {"meta", meta}};
  open_out(path) << j.dump(2) << "\n";
}

void write_carpet_csv(const CarpetGrid& c, const std::string& path,
                      const std::vector<std::string>& comments) {
  auto f = open_out(path);
  write_comments(f, comments);
  f << "t";
  for (int i = 0; i < c.x.points; ++i) f << "," << format_double(c.x.at(i));
  f << "\n";
  for (int r = 0; r < c.rows(); ++r) {
    f << format_double(c.t[r]);
    for (int i = 0; i < c.x.points; ++i) f << "," << format_double(c.values(r, i));
    f << "\n";
  }
}

void write_carpet_json(const CarpetGrid& c, const std::string& path, const nlohmann::json& meta) {
  nlohmann::json j = {{"schema", "kerrqed.grid.v1"},
                      {"kind", "carpet"},
                      {"x", axis_to_json(c.x)},
                      {"t", c.t},
                      {"min_row_integral", c.min_row_integral},
                      {"values", matrix_to_json(c.values)},
                      {"meta", meta}};
  open_out(path) << j.dump(2) << "\n";
}

void write_wigner_csv(const WignerGrid& w, const std::string& path,
                      const std::vector<std::string>& comments) {
  auto f = open_out(path);
  write_comments(f, comments);
  f << "p";
  for (int i = 0; i < w.x.points; ++i) f << "," << format_double(w.x.at(i));
  f << "\n";
  for (int r = 0; r < w.p.points; ++r) {
    f << format_double(w.p.at(r));
    for (int i = 0; i < w.x.points; ++i) f << "," << format_double(w.values(r, i));
    f << "\n";
  }
}

void write_wigner_json(const WignerGrid& w, const std::string& path, const nlohmann::json& meta) {
  nlohmann::json j = {{"schema", "kerrqed.grid.v1"},
                      {"kind", "wigner"},
                      {"x", axis_to_json(w.x)},
                      {"p", axis_to_json(w.p)},
                      {"values", matrix_to_json(w.values)},
                      {"meta", meta}};
  open_out(path) << j.dump(2) << "\n";
}

void write_matrix_csv(const std::string& path, const std::vector<std::string>& comments,
                      const std::string& row_label, const std::vector<double>& row_values,
                      const std::vector<double>& col_values, const Eigen::MatrixXd& m) {
  auto f = open_out(path);
  write_comments(f, comments);
  f << row_label;
  for (double c : col_values) f << "," << format_double(c);
  f << "\n";
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    f << format_double(row_values[static_cast<size_t>(r)]);
    for (Eigen::Index c = 0; c < m.cols(); ++c) f << "," << format_double(m(r, c));
    f << "\n";
  }
}

void write_text_file(const std::string& path, const std::string& contents) {
  open_out(path) << contents;
}

}  // namespace kerrqed
