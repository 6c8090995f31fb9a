#include "semcom/report.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "semcom/errors.hpp"

namespace semcom {

namespace {

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

std::string fixed2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << content;
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace

std::string metrics_csv(const std::vector<MetricsRow>& rows) {
  std::string csv = "snr_db,mean_ss,mean_ber,mean_cr_ratio,mean_tt_ms,delivery_rate,n_samples\n";
  for (const MetricsRow& r : rows) {
    csv += fixed6(r.snr_db) + ',' + fixed6(r.mean_ss) + ',' + fixed6(r.mean_ber) + ',' +
           fixed6(r.mean_cr_ratio) + ',' + fixed6(r.mean_tt_ms) + ',' +
           fixed6(r.delivery_rate) + ',' + std::to_string(r.n_samples) + '\n';
  }
  return csv;
}

std::string timing_csv(const std::vector<TimingRow>& rows) {
  std::string csv = "snr_db,mean_processing_ms,mean_total_tt_ms,n_samples\n";
  for (const TimingRow& r : rows) {
    csv += fixed6(r.snr_db) + ',' + fixed6(r.mean_processing_ms) + ',' +
           fixed6(r.mean_total_tt_ms) + ',' + std::to_string(r.n_samples) + '\n';
  }
  return csv;
}

std::string line_chart_svg(const std::vector<MetricsRow>& rows, const std::string& y_label,
                           double (*selector)(const MetricsRow&)) {
  constexpr double width = 640, height = 420;
  constexpr double left = 70, right = 20, top = 30, bottom = 50;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;

  if (rows.empty())
    return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fixed2(width) + "\" height=\"" +
           fixed2(height) + "\"/>\n";

  double x_min = rows.front().snr_db, x_max = rows.back().snr_db;
  if (x_max <= x_min) x_max = x_min + 1.0;
  double y_max = 0.0;
  for (const MetricsRow& r : rows) y_max = std::max(y_max, selector(r));
  if (y_max <= 0.0) y_max = 1.0;
  y_max *= 1.05;

  const auto px = [&](double x) { return left + (x - x_min) / (x_max - x_min) * plot_w; };
  const auto py = [&](double y) { return top + (1.0 - y / y_max) * plot_h; };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fixed2(width) + "\" height=\"" +
         fixed2(height) + "\" viewBox=\"0 0 " + fixed2(width) + " " + fixed2(height) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<line x1=\"" + fixed2(left) + "\" y1=\"" + fixed2(top + plot_h) + "\" x2=\"" +
         fixed2(left + plot_w) + "\" y2=\"" + fixed2(top + plot_h) +
         "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  svg += "<line x1=\"" + fixed2(left) + "\" y1=\"" + fixed2(top) + "\" x2=\"" + fixed2(left) +
         "\" y2=\"" + fixed2(top + plot_h) + "\" stroke=\"black\" stroke-width=\"1\"/>\n";

  for (const MetricsRow& r : rows) {
    const double x = px(r.snr_db);
    svg += "<line x1=\"" + fixed2(x) + "\" y1=\"" + fixed2(top + plot_h) + "\" x2=\"" + fixed2(x) +
           "\" y2=\"" + fixed2(top + plot_h + 5) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + fixed2(x) + "\" y=\"" + fixed2(top + plot_h + 20) +
           "\" font-size=\"12\" text-anchor=\"middle\">" + fixed2(r.snr_db) + "</text>\n";
  }
  for (int i = 0; i <= 4; ++i) {
    const double yv = y_max * i / 4.0;
    const double y = py(yv);
    svg += "<line x1=\"" + fixed2(left - 5) + "\" y1=\"" + fixed2(y) + "\" x2=\"" + fixed2(left) +
           "\" y2=\"" + fixed2(y) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + fixed2(left - 10) + "\" y=\"" + fixed2(y + 4) +
           "\" font-size=\"12\" text-anchor=\"end\">" + fixed6(yv) + "</text>\n";
  }

  svg += "<polyline fill=\"none\" stroke=\"#1f6fb2\" stroke-width=\"2\" points=\"";
  for (const MetricsRow& r : rows)
    svg += fixed2(px(r.snr_db)) + "," + fixed2(py(selector(r))) + " ";
  svg += "\"/>\n";
  for (const MetricsRow& r : rows) {
    svg += "<circle cx=\"" + fixed2(px(r.snr_db)) + "\" cy=\"" + fixed2(py(selector(r))) +
           "\" r=\"3\" fill=\"#1f6fb2\"/>\n";
  }

  svg += "<text x=\"" + fixed2(left + plot_w / 2) + "\" y=\"" + fixed2(height - 10) +
         "\" font-size=\"13\" text-anchor=\"middle\">snr_db</text>\n";
  svg += "<text x=\"18\" y=\"" + fixed2(top + plot_h / 2) +
         "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 18 " +
         fixed2(top + plot_h / 2) + ")\">" + y_label + "</text>\n";
  svg += "</svg>\n";
  return svg;
}

void write_report(const SweepResult& result, const nlohmann::json& resolved_config,
                  const std::string& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create directory " + out_dir + ": " + ec.message());

  const std::filesystem::path dir(out_dir);
  write_file((dir / "metrics.csv").string(), metrics_csv(result.rows));
  write_file((dir / "timing.csv").string(), timing_csv(result.timing));
  write_file((dir / "run.json").string(), resolved_config.dump(2) + "\n");
  if (!result.rows.empty()) {
    write_file((dir / "ss_vs_snr.svg").string(),
               line_chart_svg(result.rows, "mean_ss", [](const MetricsRow& r) { return r.mean_ss; }));
    write_file((dir / "ber_vs_snr.svg").string(),
               line_chart_svg(result.rows, "mean_ber",
                              [](const MetricsRow& r) { return r.mean_ber; }));
  }
}

}  // namespace semcom
