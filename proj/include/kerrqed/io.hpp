#ifndef KERRQED_IO_HPP
#define KERRQED_IO_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "kerrqed/phasespace.hpp"

namespace kerrqed {

/// Shortest round-trip decimal form; identical input bits give identical text.
std::string format_double(double v);

uint64_t fnv1a64(const std::string& bytes);
std::string hash_hex(uint64_t h);

/// Named columns over a shared time axis.
struct TimeSeries {
  std::string time_label = "t";
  std::vector<double> t;
  std::vector<std::pair<std::string, std::vector<double>>> columns;
};

/// CSV layout: '#'-prefixed comment lines, then a header row, then data rows.
void write_timeseries_csv(const TimeSeries& ts, const std::string& path,
                          const std::vector<std::string>& comments);
void write_timeseries_json(const TimeSeries& ts, const std::string& path,
                           const nlohmann::json& meta);

/// Carpet CSV: x values in the header row, time in the first column.
void write_carpet_csv(const CarpetGrid& c, const std::string& path,
                      const std::vector<std::string>& comments);
void write_carpet_json(const CarpetGrid& c, const std::string& path, const nlohmann::json& meta);

/// Wigner CSV: x values in the header row, p in the first column.
void write_wigner_csv(const WignerGrid& w, const std::string& path,
                      const std::vector<std::string>& comments);
void write_wigner_json(const WignerGrid& w, const std::string& path, const nlohmann::json& meta);

/// Generic labeled matrix (e.g. a variance scan over a parameter and time).
void write_matrix_csv(const std::string& path, const std::vector<std::string>& comments,
                      const std::string& row_label, const std::vector<double>& row_values,
                      const std::vector<double>& col_values, const Eigen::MatrixXd& m);

void write_text_file(const std::string& path, const std::string& contents);

}  // namespace kerrqed

#endif
