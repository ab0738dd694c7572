// Self-contained SVG charts from sweep CSVs: one polyline per input file,
// log-scaled y by default (the BER-curve style), legend from caller labels.
#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "polarlink/construction.hpp"  // detail::format_g6
#include "polarlink/errors.hpp"

namespace polarlink {

struct PlotOptions {
  std::string x_col = "snr_db";
  std::string y_col = "ber";
  bool log_y = true;
  std::string title;
};

// Values at or below zero cannot sit on a log axis; they are pinned here.
inline constexpr double kLogFloor = 1e-8;

namespace detail {

struct Series {
  std::vector<double> x;
  std::vector<double> y;
};

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  fields.push_back(cur);
  return fields;
}

inline Series read_series(const std::string& path, const PlotOptions& opt) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open for reading: " + path);
  std::string line;
  if (!std::getline(in, line)) throw ParseError(path, 1, "empty file");
  const std::vector<std::string> header = split_csv_line(line);
  std::size_t xi = header.size(), yi = header.size();
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == opt.x_col) xi = i;
    if (header[i] == opt.y_col) yi = i;
  }
  if (xi == header.size())
    throw ParseError(path, 1, "no column named '" + opt.x_col + "'");
  if (yi == header.size())
    throw ParseError(path, 1, "no column named '" + opt.y_col + "'");

  Series s;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    const std::vector<std::string> f = split_csv_line(line);
    if (f.size() != header.size())
      throw ParseError(path, lineno, "wrong number of fields");
    try {
      std::size_t pos = 0;
      const double x = std::stod(f[xi], &pos);
      if (pos != f[xi].size()) throw std::invalid_argument("trailing junk");
      const double y = std::stod(f[yi], &pos);
      if (pos != f[yi].size()) throw std::invalid_argument("trailing junk");
      s.x.push_back(x);
      s.y.push_back(y);
    } catch (const std::exception&) {
      throw ParseError(path, lineno, "malformed numeric field");
    }
  }
  return s;
}

// Round a raw interval to a pleasant tick step (1/2/2.5/5 x 10^k).
inline double nice_step(double range, int target_ticks) {
  const double raw = range / std::max(1, target_ticks);
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 2.5, 5.0, 10.0})
    if (raw <= m * mag * (1.0 + 1e-12)) return m * mag;
  return 10.0 * mag;
}

}  // namespace detail

// Render csv_paths into one chart at out_path.  labels must pair up with the
// csv paths one-to-one.
inline void emit_plot(const std::vector<std::string>& csv_paths,
                      const std::vector<std::string>& labels,
                      const std::string& out_path,
                      const PlotOptions& opt = PlotOptions{}) {
  if (csv_paths.empty())
    throw std::invalid_argument("emit_plot: need at least one CSV");
  if (labels.size() != csv_paths.size())
    throw std::invalid_argument("emit_plot: label count must match CSV count");

  std::vector<detail::Series> series;
  for (const std::string& path : csv_paths) {
    detail::Series s = detail::read_series(path, opt);
    if (opt.log_y)
      for (double& y : s.y) y = std::log10(std::max(y, kLogFloor));
    series.push_back(std::move(s));
  }

  double x_min = 1e300, x_max = -1e300, y_min = 1e300, y_max = -1e300;
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      x_min = std::min(x_min, s.x[i]);
      x_max = std::max(x_max, s.x[i]);
      y_min = std::min(y_min, s.y[i]);
      y_max = std::max(y_max, s.y[i]);
    }
  if (x_min > x_max) {  // all series empty: draw an empty frame
    x_min = 0.0;
    x_max = 1.0;
    y_min = opt.log_y ? -1.0 : 0.0;
    y_max = opt.log_y ? 0.0 : 1.0;
  }
  if (x_max - x_min < 1e-12) {
    x_min -= 0.5;
    x_max += 0.5;
  }
  if (y_max - y_min < 1e-12) {
    y_min -= opt.log_y ? 0.5 : 0.5;
    y_max += opt.log_y ? 0.5 : 0.5;
  }

  const double width = 800, height = 560;
  const double ml = 80, mr = 24, mt = 42, mb = 56;
  const double pw = width - ml - mr, ph = height - mt - mb;
  auto sx = [&](double x) { return ml + (x - x_min) / (x_max - x_min) * pw; };
  auto sy = [&](double y) { return mt + (y_max - y) / (y_max - y_min) * ph; };

  static const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                   "#9467bd", "#ff7f0e", "#8c564b"};
  const std::size_t n_colors = sizeof(kPalette) / sizeof(kPalette[0]);

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " "
      << height << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!opt.title.empty())
    svg << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"16\">"
        << opt.title << "</text>\n";

  // Gridlines and ticks.
  svg << "<g font-family=\"sans-serif\" font-size=\"12\" fill=\"black\">\n";
  const double xstep = detail::nice_step(x_max - x_min, 7);
  for (double t = std::ceil(x_min / xstep) * xstep; t <= x_max + 1e-9;
       t += xstep) {
    svg << "<line x1=\"" << sx(t) << "\" y1=\"" << mt << "\" x2=\"" << sx(t)
        << "\" y2=\"" << mt + ph << "\" stroke=\"#dddddd\"/>\n";
    svg << "<text x=\"" << sx(t) << "\" y=\"" << mt + ph + 18
        << "\" text-anchor=\"middle\">" << detail::format_g6(t) << "</text>\n";
  }
  if (opt.log_y) {
    for (double d = std::ceil(y_min - 1e-9); d <= y_max + 1e-9; d += 1.0) {
      svg << "<line x1=\"" << ml << "\" y1=\"" << sy(d) << "\" x2=\"" << ml + pw
          << "\" y2=\"" << sy(d) << "\" stroke=\"#dddddd\"/>\n";
      svg << "<text x=\"" << ml - 8 << "\" y=\"" << sy(d) + 4
          << "\" text-anchor=\"end\">1e" << detail::format_g6(d) << "</text>\n";
    }
  } else {
    const double ystep = detail::nice_step(y_max - y_min, 6);
    for (double t = std::ceil(y_min / ystep) * ystep; t <= y_max + 1e-9;
         t += ystep) {
      svg << "<line x1=\"" << ml << "\" y1=\"" << sy(t) << "\" x2=\"" << ml + pw
          << "\" y2=\"" << sy(t) << "\" stroke=\"#dddddd\"/>\n";
      svg << "<text x=\"" << ml - 8 << "\" y=\"" << sy(t) + 4
          << "\" text-anchor=\"end\">" << detail::format_g6(t) << "</text>\n";
    }
  }
  // Axis labels.
  svg << "<text x=\"" << ml + pw / 2 << "\" y=\"" << height - 12
      << "\" text-anchor=\"middle\">" << opt.x_col << "</text>\n";
  svg << "<text x=\"18\" y=\"" << mt + ph / 2
      << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " << mt + ph / 2
      << ")\">" << opt.y_col << (opt.log_y ? " (log)" : "") << "</text>\n";
  svg << "</g>\n";

  // Frame.
  svg << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw
      << "\" height=\"" << ph << "\" fill=\"none\" stroke=\"black\"/>\n";

  // Data.
  for (std::size_t si = 0; si < series.size(); ++si) {
    const auto& s = series[si];
    if (s.x.empty()) continue;
    const char* color = kPalette[si % n_colors];
    svg << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (i) svg << ' ';
      svg << detail::format_g6(sx(s.x[i])) << ',' << detail::format_g6(sy(s.y[i]));
    }
    svg << "\"/>\n";
    for (std::size_t i = 0; i < s.x.size(); ++i)
      svg << "<circle cx=\"" << detail::format_g6(sx(s.x[i])) << "\" cy=\""
          << detail::format_g6(sy(s.y[i])) << "\" r=\"3\" fill=\"" << color
          << "\"/>\n";
  }

  // Legend.
  svg << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
  for (std::size_t si = 0; si < labels.size(); ++si) {
    const double ly = mt + 14 + 18 * static_cast<double>(si);
    const char* color = kPalette[si % n_colors];
    svg << "<line x1=\"" << ml + pw - 150 << "\" y1=\"" << ly << "\" x2=\""
        << ml + pw - 122 << "\" y2=\"" << ly << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << ml + pw - 116 << "\" y=\"" << ly + 4 << "\">"
        << labels[si] << "</text>\n";
  }
  svg << "</g>\n</svg>\n";

  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + out_path);
  out << svg.str();
  if (!out) throw IoError("write failed: " + out_path);
}

}  // namespace polarlink
