#include "qhd/io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>

#include <fmt/format.h>

namespace qhd {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_number(std::string_view s, std::string_view whole) {
  double value = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || end != s.data() + s.size() || s.empty()) {
    throw std::invalid_argument("cannot parse angle '" + std::string(whole) + "'");
  }
  return value;
}

}  // namespace

std::string format_double(double value) { return fmt::format("{:.17g}", value); }

double parse_angle(std::string_view text) {
  const std::string_view whole = text;
  text = trim(text);
  const auto pi_at = text.find("pi");
  if (pi_at == std::string_view::npos) return parse_number(text, whole);

  std::string_view coeff = text.substr(0, pi_at);
  std::string_view rest = text.substr(pi_at + 2);
  double sign = 1;
  if (!coeff.empty() && (coeff.front() == '-' || coeff.front() == '+')) {
    if (coeff.front() == '-') sign = -1;
    coeff.remove_prefix(1);
  }
  if (!coeff.empty() && coeff.back() == '*') {
    coeff.remove_suffix(1);
    if (coeff.empty()) throw std::invalid_argument("cannot parse angle '" + std::string(whole) + "'");
  }
  const double factor = coeff.empty() ? 1.0 : parse_number(coeff, whole);
  double divisor = 1;
  if (!rest.empty()) {
    if (rest.front() != '/') throw std::invalid_argument("cannot parse angle '" + std::string(whole) + "'");
    divisor = parse_number(rest.substr(1), whole);
    if (divisor == 0) throw std::invalid_argument("angle '" + std::string(whole) + "' divides by zero");
  }
  return sign * factor * pi_v<double> / divisor;
}

std::vector<int> parse_int_list(std::string_view text) {
  std::vector<int> out;
  while (true) {
    const auto comma = text.find(',');
    const std::string_view item = trim(text.substr(0, comma));
    int value = 0;
    const auto [end, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (item.empty() || ec != std::errc() || end != item.data() + item.size()) {
      throw std::invalid_argument("cannot parse integer list item '" + std::string(item) + "'");
    }
    out.push_back(value);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

std::string distance_curve_csv(const DistanceCurve& curve) {
  std::string out = "t,D_mean,D_sem,S_mean\n";
  for (int t = 0; t <= curve.steps(); ++t) {
    out += fmt::format("{},{},{},{}\n", t, format_double(curve.d_mean[t]), format_double(curve.d_sem[t]),
                       format_double(curve.s_mean[t]));
  }
  return out;
}

std::string ehrenfest_csv(const EhrenfestScan& scan) {
  std::string out = "n,steps,t_E,peak_index,peak_height,at_edge\n";
  for (const auto& p : scan.points) {
    out += fmt::format("{},{},{},{},{},{}\n", p.n, p.steps, format_double(p.peak.time), p.peak.index,
                       format_double(p.peak.height), p.peak.at_edge ? 1 : 0);
  }
  return out;
}

std::string pair_series_csv(const PairSeries& series) {
  std::string out = "t,D,fidelity,S\n";
  for (std::size_t t = 0; t < series.distance.size(); ++t) {
    out += fmt::format("{},{},{},{}\n", t, format_double(series.distance[t]), format_double(series.fidelity[t]),
                       format_double(series.entropy[t]));
  }
  return out;
}

std::string classical_csv(const std::vector<ClassicalSpin<double>>& orbit) {
  std::string out = "t,x,y,z,phi\n";
  for (std::size_t t = 0; t < orbit.size(); ++t) {
    const auto& r = orbit[t];
    out += fmt::format("{},{},{},{},{}\n", t, format_double(r.x()), format_double(r.y()), format_double(r.z()),
                       format_double(azimuth(r)));
  }
  return out;
}

void write_text_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open '" + path.string() + "' for writing");
  file.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  file.close();
  if (!file) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace qhd
