#include "core/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "core/stats.hpp"
#include "core/strfmt.hpp"

namespace kinexam {

namespace {

constexpr double kW = 640.0, kH = 480.0, kPad = 50.0;

std::string num(double v) {
  std::ostringstream ss;
  ss.precision(2);
  ss << std::fixed << v;
  return ss.str();
}

std::string esc(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string svg_scatter(const std::vector<std::vector<double>>& points,
                        const std::vector<int>& labels,
                        const std::string& title) {
  if (points.size() != labels.size())
    throw ValueError("points/labels length mismatch");

  double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  if (!points.empty()) {
    xmin = xmax = points[0].at(0);
    ymin = ymax = points[0].size() > 1 ? points[0][1] : 0.0;
    for (const auto& p : points) {
      xmin = std::min(xmin, p[0]);
      xmax = std::max(xmax, p[0]);
      const double y = p.size() > 1 ? p[1] : 0.0;
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  }
  if (xmax - xmin < 1e-12) xmax = xmin + 1.0;
  if (ymax - ymin < 1e-12) ymax = ymin + 1.0;

  auto sx = [&](double x) {
    return kPad + (x - xmin) / (xmax - xmin) * (kW - 2 * kPad);
  };
  auto sy = [&](double y) {
    return kH - kPad - (y - ymin) / (ymax - ymin) * (kH - 2 * kPad);
  };

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW
      << "\" height=\"" << kH << "\" viewBox=\"0 0 " << kW << " " << kH
      << "\">\n";
  out << "<rect width=\"" << kW << "\" height=\"" << kH
      << "\" fill=\"white\"/>\n";
  out << "<text x=\"" << kW / 2 << "\" y=\"24\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"16\">"
      << esc(title) << "</text>\n";
  out << "<line x1=\"" << kPad << "\" y1=\"" << kH - kPad << "\" x2=\""
      << kW - kPad << "\" y2=\"" << kH - kPad
      << "\" stroke=\"#444\" stroke-width=\"1\"/>\n";
  out << "<line x1=\"" << kPad << "\" y1=\"" << kPad << "\" x2=\"" << kPad
      << "\" y2=\"" << kH - kPad
      << "\" stroke=\"#444\" stroke-width=\"1\"/>\n";
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double y = points[i].size() > 1 ? points[i][1] : 0.0;
    const char* color = labels[i] == 1 ? "#d62728" : "#2ca02c";
    out << "<circle cx=\"" << num(sx(points[i][0])) << "\" cy=\""
        << num(sy(y)) << "\" r=\"4\" fill=\"" << color
        << "\" fill-opacity=\"0.7\"/>\n";
  }
  out << "<circle cx=\"" << kW - 150 << "\" cy=\"20\" r=\"4\" fill=\"#2ca02c\"/>"
      << "<text x=\"" << kW - 140
      << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"12\">normal"
         "</text>\n"
      << "<circle cx=\"" << kW - 150 << "\" cy=\"36\" r=\"4\" fill=\"#d62728\"/>"
      << "<text x=\"" << kW - 140
      << "\" y=\"40\" font-family=\"sans-serif\" font-size=\"12\">abnormal"
         "</text>\n";
  out << "</svg>\n";
  return out.str();
}

namespace {

struct Box {
  double lo, q1, med, q3, hi;
};

Box box_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  auto quantile = [&](double q) {
    const double pos = q * static_cast<double>(v.size() - 1);
    const std::size_t i = static_cast<std::size_t>(pos);
    const double frac = pos - static_cast<double>(i);
    return i + 1 < v.size() ? v[i] * (1 - frac) + v[i + 1] * frac : v[i];
  };
  return {v.front(), quantile(0.25), quantile(0.5), quantile(0.75), v.back()};
}

}  // namespace

std::string svg_distance_boxes(const DistanceReport& report,
                               std::size_t max_features) {
  const std::size_t nf = std::min(max_features, report.features.size());
  if (nf == 0) throw ValueError("no features to plot");

  const double group_w = (kW - 2 * kPad) / static_cast<double>(nf);
  const double box_w = std::min(14.0, group_w / 4.0);

  double vmax = 1e-9;
  for (std::size_t i = 0; i < nf; ++i) {
    const FeatureDistances& fd = report.features[i];
    for (const auto* arr : {&fd.aa, &fd.nn, &fd.na})
      for (double v : *arr) vmax = std::max(vmax, v);
  }

  auto sy = [&](double v) {
    return kH - kPad - v / vmax * (kH - 2 * kPad);
  };

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW
      << "\" height=\"" << kH << "\" viewBox=\"0 0 " << kW << " " << kH
      << "\">\n";
  out << "<rect width=\"" << kW << "\" height=\"" << kH
      << "\" fill=\"white\"/>\n";
  out << "<line x1=\"" << kPad << "\" y1=\"" << kH - kPad << "\" x2=\""
      << kW - kPad << "\" y2=\"" << kH - kPad
      << "\" stroke=\"#444\" stroke-width=\"1\"/>\n";

  const char* colors[3] = {"#1f77b4", "#2ca02c", "#d62728"};
  for (std::size_t i = 0; i < nf; ++i) {
    const FeatureDistances& fd = report.features[i];
    const double gx = kPad + group_w * (static_cast<double>(i) + 0.5);
    const std::vector<double>* arrays[3] = {&fd.aa, &fd.nn, &fd.na};
    for (int a = 0; a < 3; ++a) {
      if (arrays[a]->empty()) continue;
      const Box b = box_of(*arrays[a]);
      const double cx = gx + (a - 1) * (box_w + 4.0);
      out << "<line x1=\"" << num(cx) << "\" y1=\"" << num(sy(b.lo))
          << "\" x2=\"" << num(cx) << "\" y2=\"" << num(sy(b.hi))
          << "\" stroke=\"" << colors[a] << "\"/>\n";
      out << "<rect x=\"" << num(cx - box_w / 2) << "\" y=\""
          << num(sy(b.q3)) << "\" width=\"" << num(box_w) << "\" height=\""
          << num(std::max(1.0, sy(b.q1) - sy(b.q3))) << "\" fill=\""
          << colors[a] << "\" fill-opacity=\"0.5\" stroke=\"" << colors[a]
          << "\"/>\n";
      out << "<line x1=\"" << num(cx - box_w / 2) << "\" y1=\""
          << num(sy(b.med)) << "\" x2=\"" << num(cx + box_w / 2)
          << "\" y2=\"" << num(sy(b.med)) << "\" stroke=\"#000\"/>\n";
    }
    out << "<text x=\"" << num(gx) << "\" y=\"" << kH - kPad + 16
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"8\">"
        << esc(fd.feature) << "</text>\n";
  }
  out << "<text x=\"" << kPad << "\" y=\"20\" font-family=\"sans-serif\" "
         "font-size=\"12\">A-A (blue)  N-N (green)  N-A (red), normalized"
         "</text>\n";
  out << "</svg>\n";
  return out.str();
}

}  // namespace kinexam
