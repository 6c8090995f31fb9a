#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "semcom/pipeline.hpp"

namespace semcom {

std::string metrics_csv(const std::vector<MetricsRow>& rows);
std::string timing_csv(const std::vector<TimingRow>& rows);

// Self-contained line chart; y values taken from `rows` via the selector.
std::string line_chart_svg(const std::vector<MetricsRow>& rows, const std::string& y_label,
                           double (*selector)(const MetricsRow&));

// Writes metrics.csv, timing.csv, run.json, and (when rows are non-empty)
// ss_vs_snr.svg and ber_vs_snr.svg into out_dir. Creates the directory.
// Throws IoError when a file cannot be written.
void write_report(const SweepResult& result, const nlohmann::json& resolved_config,
                  const std::string& out_dir);

}  // namespace semcom
