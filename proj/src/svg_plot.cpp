#include "shc/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace shc {

namespace {

const char* kColors[] = {"#1f6fb4", "#d1495b", "#2e8b57",
                         "#8a5cb8", "#c98a00", "#3b3b3b"};

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

std::string render_svg(const std::vector<PlotSeries>& series,
                       const PlotOptions& opt) {
  if (series.empty()) throw std::runtime_error("render_svg: no series");
  auto tx = [&](double x) {
    if (!opt.log_x) return x;
    if (!(x > 0.0))
      throw std::runtime_error("render_svg: log axis needs positive x");
    return std::log10(x);
  };

  double x_lo = 1e300, x_hi = -1e300, y_lo = 1e300, y_hi = -1e300;
  for (const PlotSeries& s : series) {
    if (s.x.size() != s.y.size())
      throw std::runtime_error("render_svg: series size mismatch");
    for (size_t i = 0; i < s.x.size(); ++i) {
      x_lo = std::min(x_lo, tx(s.x[i]));
      x_hi = std::max(x_hi, tx(s.x[i]));
      y_lo = std::min(y_lo, s.y[i]);
      y_hi = std::max(y_hi, s.y[i]);
    }
  }
  if (opt.has_target) {
    y_lo = std::min(y_lo, opt.target);
    y_hi = std::max(y_hi, opt.target);
  }
  if (x_hi <= x_lo) x_hi = x_lo + 1.0;
  if (y_hi <= y_lo) y_hi = y_lo + 1.0;
  const double y_pad = 0.05 * (y_hi - y_lo);
  y_lo -= y_pad;
  y_hi += y_pad;

  const double ml = 64, mr = 16, mt = 32, mb = 48;
  const double pw = opt.width - ml - mr, ph = opt.height - mt - mb;
  auto px = [&](double x) { return ml + pw * (tx(x) - x_lo) / (x_hi - x_lo); };
  auto py = [&](double y) { return mt + ph * (y_hi - y) / (y_hi - y_lo); };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opt.width
      << "\" height=\"" << opt.height << "\" viewBox=\"0 0 " << opt.width
      << " " << opt.height << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw
      << "\" height=\"" << ph
      << "\" fill=\"none\" stroke=\"#888\" stroke-width=\"1\"/>\n";
  if (!opt.title.empty())
    svg << "<text x=\"" << opt.width / 2.0
        << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\" "
           "font-family=\"sans-serif\">"
        << escape_xml(opt.title) << "</text>\n";
  svg << "<text x=\"" << ml + pw / 2.0 << "\" y=\"" << opt.height - 12
      << "\" text-anchor=\"middle\" font-size=\"12\" "
         "font-family=\"sans-serif\">"
      << escape_xml(opt.x_label) << "</text>\n";
  if (!opt.y_label.empty())
    svg << "<text x=\"16\" y=\"" << mt + ph / 2.0
        << "\" text-anchor=\"middle\" font-size=\"12\" "
           "font-family=\"sans-serif\" transform=\"rotate(-90 16 "
        << mt + ph / 2.0 << ")\">" << escape_xml(opt.y_label) << "</text>\n";

  // Axis ticks: 5 per axis, labelled in data units.
  for (int i = 0; i <= 4; ++i) {
    const double fx = x_lo + (x_hi - x_lo) * i / 4.0;
    const double vx = opt.log_x ? std::pow(10.0, fx) : fx;
    const double cx = ml + pw * i / 4.0;
    svg << "<line x1=\"" << cx << "\" y1=\"" << mt + ph << "\" x2=\"" << cx
        << "\" y2=\"" << mt + ph + 4 << "\" stroke=\"#555\"/>\n"
        << "<text x=\"" << cx << "\" y=\"" << mt + ph + 16
        << "\" text-anchor=\"middle\" font-size=\"10\" "
           "font-family=\"sans-serif\">"
        << fmt(vx) << "</text>\n";
    const double vy = y_lo + (y_hi - y_lo) * i / 4.0;
    const double cy = py(vy);
    svg << "<line x1=\"" << ml - 4 << "\" y1=\"" << cy << "\" x2=\"" << ml
        << "\" y2=\"" << cy << "\" stroke=\"#555\"/>\n"
        << "<text x=\"" << ml - 6 << "\" y=\"" << cy + 3
        << "\" text-anchor=\"end\" font-size=\"10\" "
           "font-family=\"sans-serif\">"
        << fmt(vy) << "</text>\n";
  }

  if (opt.has_target)
    svg << "<line x1=\"" << ml << "\" y1=\"" << py(opt.target) << "\" x2=\""
        << ml + pw << "\" y2=\"" << py(opt.target)
        << "\" stroke=\"#444\" stroke-width=\"1\" "
           "stroke-dasharray=\"6,4\"/>\n";

  for (size_t si = 0; si < series.size(); ++si) {
    const PlotSeries& s = series[si];
    const char* color = kColors[si % (sizeof(kColors) / sizeof(kColors[0]))];
    svg << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.5\" points=\"";
    for (size_t i = 0; i < s.x.size(); ++i) {
      if (i) svg << ' ';
      svg << fmt(px(s.x[i])) << ',' << fmt(py(s.y[i]));
    }
    svg << "\"/>\n";
    svg << "<text x=\"" << ml + 8 << "\" y=\"" << mt + 14 + 14.0 * si
        << "\" font-size=\"11\" font-family=\"sans-serif\" fill=\"" << color
        << "\">" << escape_xml(s.label) << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string render_csv_svg(const CsvTable& table, const std::string& x_column,
                           const std::vector<std::string>& y_columns,
                           const PlotOptions& opt) {
  const int xc = table.column(x_column);
  if (xc < 0)
    throw std::runtime_error("render_csv_svg: no column " + x_column);
  std::vector<PlotSeries> series;
  for (const std::string& name : y_columns) {
    const int yc = table.column(name);
    if (yc < 0) throw std::runtime_error("render_csv_svg: no column " + name);
    PlotSeries s;
    s.label = name;
    for (const auto& row : table.rows) {
      s.x.push_back(row[xc]);
      s.y.push_back(row[yc]);
    }
    series.push_back(std::move(s));
  }
  return render_svg(series, opt);
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
}

}  // namespace shc
