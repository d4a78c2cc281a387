#include "catsp_app/output.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>

namespace catsp::app {

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

std::string quote(const std::string& cell) {
  if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void write_row(std::ostringstream& os, const std::vector<std::string>& row) {
  for (std::size_t k = 0; k < row.size(); ++k) {
    if (k) os << ',';
    os << quote(row[k]);
  }
  os << '\n';
}

}  // namespace

Csv::Csv(std::vector<std::string> header) : header_(std::move(header)) {}

void Csv::add(std::vector<std::string> row) {
  row.resize(header_.size());
  rows_.push_back(std::move(row));
}

std::string Csv::str() const {
  std::ostringstream os;
  write_row(os, header_);
  for (const auto& r : rows_) write_row(os, r);
  return os.str();
}

Stats describe(std::span<const double> values) {
  Stats s;
  s.count = values.size();
  if (values.empty()) return s;
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  s.min = v.front();
  s.max = v.back();
  const std::size_t n = v.size();
  s.median = n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
  s.mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(n);
  if (n > 1) {
    double ss = 0.0;
    for (double x : v) ss += (x - s.mean) * (x - s.mean);
    s.std = std::sqrt(ss / static_cast<double>(n - 1));
  }
  return s;
}

std::string front_svg(std::span<const FrontPoint> points, std::string_view title) {
  constexpr double W = 640, H = 480, L = 80, R = 20, T = 40, B = 60;
  double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (!points.empty()) {
    auto [xa, xb] = std::minmax_element(points.begin(), points.end(), [](auto a, auto b) { return a.f1 < b.f1; });
    auto [ya, yb] = std::minmax_element(points.begin(), points.end(), [](auto a, auto b) { return a.f2 < b.f2; });
    x0 = xa->f1;
    x1 = xb->f1;
    y0 = ya->f2;
    y1 = yb->f2;
  }
  if (x1 - x0 <= 0) { x0 -= 1; x1 += 1; }
  if (y1 - y0 <= 0) { y0 -= 0.5; y1 += 0.5; }
  const double px = 0.05 * (x1 - x0);
  const double py = 0.05 * (y1 - y0);
  x0 -= px; x1 += px; y0 -= py; y1 += py;
  auto sx = [&](double v) { return L + (v - x0) / (x1 - x0) * (W - L - R); };
  auto sy = [&](double v) { return H - B - (v - y0) / (y1 - y0) * (H - T - B); };
  auto num = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return std::string(buf);
  };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 " << W
     << ' ' << H << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">"
     << title << "</text>\n";
  os << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B
     << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
  os << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 15
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">f1 travel time (s)</text>\n";
  os << "<text x=\"20\" y=\"" << (T + H - B) / 2 << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
     << "font-size=\"12\" transform=\"rotate(-90 20 " << (T + H - B) / 2 << ")\">f2</text>\n";
  for (double v : {x0 + px, x1 - px}) {
    os << "<text x=\"" << sx(v) << "\" y=\"" << H - B + 16
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">" << num(v) << "</text>\n";
  }
  for (double v : {y0 + py, y1 - py}) {
    os << "<text x=\"" << L - 6 << "\" y=\"" << sy(v) + 3
       << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">" << num(v) << "</text>\n";
  }
  if (points.size() > 1) {
    os << "<polyline fill=\"none\" stroke=\"#999\" stroke-dasharray=\"4 3\" points=\"";
    for (std::size_t k = 0; k < points.size(); ++k) os << (k ? " " : "") << sx(points[k].f1) << ',' << sy(points[k].f2);
    os << "\"/>\n";
  }
  for (const FrontPoint& p : points) {
    os << "<circle cx=\"" << sx(p.f1) << "\" cy=\"" << sy(p.f2) << "\" r=\"4\" fill=\"#1f77b4\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string safe_name(std::string_view id) {
  std::string out(id);
  for (char& c : out) {
    if (c == ':' || c == '/' || c == '\\') c = '-';
  }
  return out;
}

}  // namespace catsp::app
