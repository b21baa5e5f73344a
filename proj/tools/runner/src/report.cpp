#include "gfp/runner/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "gfp/runner/io.hpp"

namespace gfp::runner {

namespace fs = std::filesystem;

namespace {

std::string real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string short_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string file_tag(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (std::isalnum(static_cast<unsigned char>(c))) out += c;
    else if (c == '.') out += 'p';
    else if (c == '-') out += 'm';
    else if (!out.empty() && out.back() != '_') out += '_';
  }
  while (!out.empty() && out.back() == '_') out.pop_back();
  return out;
}

struct CsvRow {
  std::string shape;
  std::optional<double> s, r, m;
  double value = 0.0;
  std::string method;
};

std::optional<double> opt(const std::string& f) {
  if (f.empty()) return std::nullopt;
  return std::stod(f);
}

std::vector<CsvRow> load_rows(const fs::path& csv) {
  if (!fs::exists(csv)) throw ReportError("missing " + csv.string());
  const auto records = parse_csv(read_file(csv));
  if (records.empty() || records.front() != kCsvColumns) throw ReportError("unexpected CSV header in " + csv.string());
  std::vector<CsvRow> rows;
  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto& f = records[i];
    if (f.size() != kCsvColumns.size()) throw ReportError("malformed CSV record " + std::to_string(i));
    rows.push_back({f[1], opt(f[2]), opt(f[3]), opt(f[4]), std::stod(f[5]), f[7]});
  }
  return rows;
}

}  // namespace

std::vector<Figure> build_figures(const fs::path& run_dir) {
  if (!fs::is_directory(run_dir)) throw ReportError("not a directory: " + run_dir.string());
  const fs::path manifest_path = run_dir / "manifest.json";
  if (!fs::exists(manifest_path)) throw ReportError("no run manifest in " + run_dir.string());
  json manifest;
  try {
    manifest = json::parse(read_file(manifest_path));
  } catch (const json::parse_error& e) {
    throw ReportError(std::string("unreadable manifest: ") + e.what());
  }
  const std::string experiment = manifest.value("experiment", "");
  const auto rows = load_rows(run_dir / "results.csv");
  if (rows.empty()) throw ReportError("no result rows in " + run_dir.string());

  std::vector<Figure> figures;
  if (experiment == "sweep") {
    Series series{"sweep.dat", rows.front().shape, {}};
    for (const auto& r : rows) series.points.emplace_back(1.0 - *r.s, (1.0 - *r.s) * r.value);
    std::sort(series.points.begin(), series.points.end());
    figures.push_back({"sweep", "1 - s", "(1 - s) P_s", {series}});
  } else if (experiment == "cube-density") {
    std::vector<std::string> shapes;
    std::vector<double> orders;
    for (const auto& r : rows) {
      if (std::find(shapes.begin(), shapes.end(), r.shape) == shapes.end()) shapes.push_back(r.shape);
      if (std::find(orders.begin(), orders.end(), *r.s) == orders.end()) orders.push_back(*r.s);
    }
    Figure fig{"cube_density", "r", "normalized density", {}};
    for (std::size_t i = 0; i < shapes.size(); ++i) {
      for (std::size_t j = 0; j < orders.size(); ++j) {
        std::string stem = "cube_" + file_tag(shapes[i].substr(shapes[i].find("x0=")));
        if (orders.size() > 1) stem += "_s" + file_tag(short_real(orders[j]));
        Series series{stem + ".dat", shapes[i] + (orders.size() > 1 ? " s=" + short_real(orders[j]) : ""), {}};
        for (const auto& r : rows)
          if (r.shape == shapes[i] && *r.s == orders[j]) series.points.emplace_back(*r.r, r.value);
        std::sort(series.points.begin(), series.points.end());
        fig.series.push_back(std::move(series));
      }
    }
    figures.push_back(std::move(fig));
  } else if (experiment == "isoperimetry") {
    std::map<std::pair<std::string, double>, Series> by_cell;
    std::vector<std::pair<std::string, double>> order;
    for (const auto& r : rows) {
      if (r.method == "failed") continue;
      const auto key = std::make_pair(r.shape, *r.s);
      if (!by_cell.count(key)) {
        order.push_back(key);
        by_cell[key] = Series{"deficit_" + r.shape + "_s" + file_tag(short_real(*r.s)) + ".dat",
                              r.shape + " s=" + short_real(*r.s), {}};
      }
      by_cell[key].points.emplace_back(*r.m, r.value);
    }
    Figure fig{"isoperimetric_deficit", "m", "deficit", {}};
    for (const auto& key : order) {
      Series s = by_cell[key];
      std::sort(s.points.begin(), s.points.end());
      fig.series.push_back(std::move(s));
    }
    figures.push_back(std::move(fig));
  } else if (experiment == "perimeter") {
    Series series{"perimeter.dat", rows.front().shape, {}};
    for (const auto& r : rows) series.points.emplace_back(*r.s, r.value);
    std::sort(series.points.begin(), series.points.end());
    figures.push_back({"perimeter", "s", "P_s", {series}});
  }
  return figures;
}

std::string render_svg(const Figure& fig) {
  constexpr double W = 640, H = 420, L = 80, R = 20, T = 30, B = 60;
  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  for (const auto& s : fig.series) {
    for (const auto& [x, y] : s.points) {
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      x0 = std::min(x0, x), x1 = std::max(x1, x);
      y0 = std::min(y0, y), y1 = std::max(y1, y);
    }
  }
  if (!(x0 <= x1)) x0 = 0, x1 = 1;
  if (!(y0 <= y1)) y0 = 0, y1 = 1;
  if (x1 == x0) x0 -= 0.5, x1 += 0.5;
  if (y1 == y0) y0 -= 0.5, y1 += 0.5;
  const double py = 0.05 * (y1 - y0);
  y0 -= py, y1 += py;
  auto sx = [&](double x) { return L + (x - x0) / (x1 - x0) * (W - L - R); };
  auto sy = [&](double y) { return H - B - (y - y0) / (y1 - y0) * (H - T - B); };
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf"};

  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"420\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += "<rect x=\"" + real(L) + "\" y=\"" + real(T) + "\" width=\"" + real(W - L - R) + "\" height=\"" +
         real(H - T - B) + "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double xv = x0 + k * (x1 - x0) / 4, yv = y0 + k * (y1 - y0) / 4;
    out += "<text x=\"" + real(sx(xv)) + "\" y=\"" + real(H - B + 16) + "\" text-anchor=\"middle\">" +
           short_real(xv) + "</text>\n";
    out += "<text x=\"" + real(L - 6) + "\" y=\"" + real(sy(yv) + 4) + "\" text-anchor=\"end\">" + short_real(yv) +
           "</text>\n";
  }
  out += "<text x=\"" + real(L + (W - L - R) / 2) + "\" y=\"" + real(H - 20) + "\" text-anchor=\"middle\">" +
         escape_xml(fig.x_label) + "</text>\n";
  out += "<text transform=\"translate(18," + real(T + (H - T - B) / 2) + ") rotate(-90)\" text-anchor=\"middle\">" +
         escape_xml(fig.y_label) + "</text>\n";
  for (std::size_t i = 0; i < fig.series.size(); ++i) {
    const auto& s = fig.series[i];
    const char* color = colors[i % std::size(colors)];
    std::string pts;
    for (const auto& [x, y] : s.points) {
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      pts += real(sx(x)) + "," + real(sy(y)) + " ";
      out += "<circle cx=\"" + real(sx(x)) + "\" cy=\"" + real(sy(y)) + "\" r=\"3\" fill=\"" + color + "\"/>\n";
    }
    out += "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"" + color + "\"/>\n";
    out += "<text x=\"" + real(L + 10) + "\" y=\"" + real(T + 16 + 14 * i) + "\" fill=\"" + color + "\">" +
           escape_xml(s.label) + "</text>\n";
  }
  return out + "</svg>\n";
}

std::vector<fs::path> write_report(const fs::path& run_dir) {
  const auto figures = build_figures(run_dir);
  std::vector<fs::path> written;
  if (figures.empty()) return written;
  const fs::path plots = run_dir / "plots";
  fs::create_directories(plots);
  for (const auto& fig : figures) {
    for (const auto& s : fig.series) {
      std::string dat = "# " + fig.x_label + "\t" + fig.y_label + "\t(" + s.label + ")\n";
      for (const auto& [x, y] : s.points) dat += real(x) + "\t" + real(y) + "\n";
      write_atomic(plots / s.file, dat);
      written.push_back(plots / s.file);
    }
    write_atomic(plots / (fig.name + ".svg"), render_svg(fig));
    written.push_back(plots / (fig.name + ".svg"));
  }
  return written;
}

}  // namespace gfp::runner
