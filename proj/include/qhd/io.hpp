#pragma once

// Text serialization for experiment outputs. Every number is written with
// 17 significant digits so doubles round-trip exactly.

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qhd/experiments.hpp"

namespace qhd {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string format_double(double value);

/// Radians, either a plain number or a multiple of pi:
/// "0.3", "pi", "-pi/2", "3pi/4", "3*pi/4", "2*pi".
double parse_angle(std::string_view text);

/// Comma-separated integers, e.g. "64,128,256".
std::vector<int> parse_int_list(std::string_view text);

/// Columns t, D_mean, D_sem, S_mean.
std::string distance_curve_csv(const DistanceCurve& curve);

/// Columns n, steps, t_E, peak_index, peak_height, at_edge.
std::string ehrenfest_csv(const EhrenfestScan& scan);

/// Columns t, D, fidelity, S.
std::string pair_series_csv(const PairSeries& series);

/// Columns t, x, y, z, phi.
std::string classical_csv(const std::vector<ClassicalSpin<double>>& orbit);

/// Writes `contents` to `path`, throwing IoError on failure.
void write_text_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace qhd
