#include "stdisc/io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

namespace stdisc {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) return "0";  // folds -0
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

namespace {

void append_row(std::string& out, std::initializer_list<double> cols) {
  bool first = true;
  for (double c : cols) {
    if (!first) out += ',';
    out += format_double(c);
    first = false;
  }
  out += '\n';
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_double(std::string_view s, std::string_view field) {
  s = trim(s);
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw Error(ErrorKind::InvalidArgument, std::string(field) + ": cannot parse number '" + std::string(s) + "'");
  return v;
}

}  // namespace

std::vector<double> parse_number_list(std::string_view text, std::string_view field) {
  std::vector<double> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = text.find(',', start);
    out.push_back(parse_double(text.substr(start, comma == std::string_view::npos ? text.npos : comma - start), field));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string samples_csv(const ComplexSamples& s) {
  std::string out = "theta,re,im\n";
  for (std::size_t k = 0; k < s.size(); ++k) append_row(out, {s.grid().theta(k), s[k].real(), s[k].imag()});
  return out;
}

std::string samples_csv(const RealSamples& s) {
  std::string out = "theta,re,im\n";
  for (std::size_t k = 0; k < s.size(); ++k) append_row(out, {s.grid().theta(k), s[k], 0.0});
  return out;
}

ComplexSamples read_samples_csv(std::string_view text) {
  std::vector<double> theta;
  std::vector<cplx> values;
  bool header_seen = false;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    std::string_view line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (line.empty()) continue;
    if (!header_seen) {
      header_seen = true;
      if (line.find_first_not_of("theta,reim ") == std::string_view::npos) continue;
    }
    const std::string field = "samples line " + std::to_string(line_no);
    const auto cols = parse_number_list(line, field);
    if (cols.size() != 3) throw Error(ErrorKind::InvalidArgument, field + ": expected 3 columns theta,re,im");
    theta.push_back(cols[0]);
    values.emplace_back(cols[1], cols[2]);
  }
  const CircleGrid grid(values.size());
  for (std::size_t k = 0; k < theta.size(); ++k)
    if (std::abs(theta[k] - grid.theta(k)) > 1e-9)
      throw Error(ErrorKind::InvalidArgument, "samples row " + std::to_string(k) + ": theta is not on the uniform grid");
  return ComplexSamples(grid, std::move(values));
}

nlohmann::json samples_json(const ComplexSamples& s) {
  auto arr = nlohmann::json::array();
  for (auto v : s.values()) arr.push_back({v.real(), v.imag()});
  return arr;
}

nlohmann::json samples_json(const RealSamples& s) {
  auto arr = nlohmann::json::array();
  for (auto v : s.values()) arr.push_back({v, 0.0});
  return arr;
}

nlohmann::json spectrum_json(const FourierSpectrum& spec) {
  auto arr = nlohmann::json::array();
  for (int k = spec.min_mode(); k <= spec.max_mode(); ++k)
    arr.push_back({{"k", k}, {"re", spec[k].real()}, {"im", spec[k].imag()}});
  return arr;
}

namespace {

// -0.0 would otherwise serialize with its sign.
double unsigned_zero(double x) { return x == 0.0 ? 0.0 : x; }

}  // namespace

nlohmann::json point_json(Point2 p) {
  return {unsigned_zero(p.z1.real()), unsigned_zero(p.z1.imag()), unsigned_zero(p.z2.real()),
          unsigned_zero(p.z2.imag())};
}

Point2 point_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 4)
    throw Error(ErrorKind::InvalidArgument, "point must be an array [re1, im1, re2, im2]");
  return {{j[0].get<double>(), j[1].get<double>()}, {j[2].get<double>(), j[3].get<double>()}};
}

nlohmann::json disc_json(const StationaryDisc& d) {
  return {{"p", point_json(d.p.point())}, {"z", point_json(d.z)}, {"R", d.R},
          {"C", {unsigned_zero(d.C.real()), unsigned_zero(d.C.imag())}}};
}

StationaryDisc disc_from_json(const nlohmann::json& j) {
  try {
    const auto& c = j.at("C");
    return {ExteriorPoint(point_from_json(j.at("p"))), point_from_json(j.at("z")), j.at("R").get<double>(),
            {c.at(0).get<double>(), c.at(1).get<double>()}};
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidArgument, std::string("malformed disc document: ") + e.what());
  }
}

std::string curve_csv(const CircleGrid& grid, std::span<const Point2> points, std::span<const cplx> zeta) {
  if (points.size() != grid.size() || zeta.size() != grid.size())
    throw Error(ErrorKind::InvalidArgument, "curve columns do not match grid size");
  std::string out = "theta,z1_re,z1_im,z2_re,z2_im,zeta_re,zeta_im\n";
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const auto& q = points[k];
    append_row(out, {grid.theta(k), q.z1.real(), q.z1.imag(), q.z2.real(), q.z2.imag(), zeta[k].real(), zeta[k].imag()});
  }
  return out;
}

}  // namespace stdisc
