#include "llmastar/metrics.hpp"

#include <cmath>
#include <cstdio>

namespace llmastar {

double geometric_mean(std::span<const double> ratios) {
    if (ratios.empty()) throw MetricError("geometric mean of an empty list");
    double log_sum = 0.0;
    for (double r : ratios) {
        if (!(r > 0.0) || !std::isfinite(r)) throw MetricError("geometric mean needs finite positive ratios");
        log_sum += std::log(r);
    }
    return std::exp(log_sum / static_cast<double>(ratios.size()));
}

EfficiencyRatios efficiency_ratios(std::span<const RunRecord> runs, std::span<const RunRecord> baseline) {
    if (runs.size() != baseline.size()) throw MetricError("runs and baseline cover different sample counts");
    std::vector<double> ops;
    std::vector<double> storage;
    for (std::size_t i = 0; i < runs.size(); ++i) {
        const RunRecord& run = runs[i];
        const RunRecord& base = baseline[i];
        if (run.sample_id != base.sample_id) {
            throw MetricError("misaligned samples: '" + run.sample_id + "' vs baseline '" + base.sample_id + "'");
        }
        if (!run.valid || !run.stats) continue;
        if (!base.stats) throw MetricError("baseline for '" + base.sample_id + "' has no search stats");
        if (base.stats->expansions == 0 || base.stats->peak_storage == 0) {
            throw MetricError("baseline for '" + base.sample_id + "' has a zero counter");
        }
        ops.push_back(static_cast<double>(run.stats->expansions) / static_cast<double>(base.stats->expansions));
        storage.push_back(static_cast<double>(run.stats->peak_storage) /
                          static_cast<double>(base.stats->peak_storage));
    }
    return {100.0 * geometric_mean(ops), 100.0 * geometric_mean(storage)};
}

double relative_path_length(std::span<const RunRecord> runs) {
    std::vector<double> ratios;
    for (const RunRecord& run : runs) {
        if (!run.valid || !run.path_length) continue;
        if (run.optimal_length > 0.0) {
            ratios.push_back(*run.path_length / run.optimal_length);
        } else if (*run.path_length == 0.0) {
            ratios.push_back(1.0);
        } else {
            throw MetricError("sample '" + run.sample_id + "' has a zero optimal length but a nonzero path");
        }
    }
    if (ratios.empty()) throw MetricError("relative path length needs at least one valid run");
    return 100.0 * geometric_mean(ratios);
}

double valid_path_ratio(std::span<const RunRecord> runs) {
    if (runs.empty()) throw MetricError("valid path ratio of an empty run list");
    std::size_t valid = 0;
    for (const RunRecord& run : runs) valid += run.valid ? 1 : 0;
    return 100.0 * static_cast<double>(valid) / static_cast<double>(runs.size());
}

std::vector<GrowthRow> growth_factor(std::span<const ScalePoint> series) {
    const ScalePoint* base = nullptr;
    for (std::size_t i = 0; i < series.size(); ++i) {
        if (i > 0 && series[i].scale <= series[i - 1].scale) throw MetricError("growth series must be sorted by scale");
        if (series[i].scale == 1) base = &series[i];
        if (!(series[i].mean_ops > 0.0) || !(series[i].mean_storage > 0.0)) {
            throw MetricError("growth series means must be positive");
        }
    }
    if (base == nullptr) throw MetricError("growth series is missing scale 1");
    std::vector<GrowthRow> rows;
    rows.reserve(series.size());
    for (const ScalePoint& p : series) {
        GrowthRow row;
        row.scale = p.scale;
        row.ops_growth = p.mean_ops / base->mean_ops;
        row.storage_growth = p.mean_storage / base->mean_storage;
        row.combined = (row.ops_growth + row.storage_growth) / 2.0;
        rows.push_back(row);
    }
    return rows;
}

ReportRow make_report_row(const std::string& label, std::span<const RunRecord> runs,
                          std::span<const RunRecord> baseline) {
    ReportRow row;
    row.algorithm = label;
    row.samples = runs.size();
    row.valid_path_ratio = valid_path_ratio(runs);
    bool any_valid = false;
    bool searched = false;
    for (const RunRecord& r : runs) {
        any_valid = any_valid || r.valid;
        searched = searched || (r.valid && r.stats.has_value());
    }
    if (any_valid) row.relative_path_length = relative_path_length(runs);
    if (searched) {
        const EfficiencyRatios eff = efficiency_ratios(runs, baseline);
        row.operation_ratio = eff.operation_ratio;
        row.storage_ratio = eff.storage_ratio;
    }
    return row;
}

Json report_to_json(const BenchReport& report) {
    Json j = Json::object();
    j["scale"] = report.scale;
    j["samples"] = report.samples;
    Json rows = Json::array();
    auto opt = [](const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); };
    for (const ReportRow& r : report.rows) {
        Json row = Json::object();
        row["algorithm"] = r.algorithm;
        row["operation_ratio"] = opt(r.operation_ratio);
        row["storage_ratio"] = opt(r.storage_ratio);
        row["relative_path_length"] = opt(r.relative_path_length);
        row["valid_path_ratio"] = r.valid_path_ratio;
        row["samples"] = r.samples;
        rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    return j;
}

std::string report_to_table(const BenchReport& report) {
    auto cell = [](const std::optional<double>& v) {
        if (!v) return std::string("-");
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.2f", *v);
        return std::string(buf);
    };
    std::size_t label_width = 11;
    for (const ReportRow& r : report.rows) label_width = std::max(label_width, r.algorithm.size());

    char line[256];
    std::string out;
    std::snprintf(line, sizeof line, "%-*s  %19s  %17s  %24s  %20s\n", static_cast<int>(label_width), "Methodology",
                  "Operation Ratio (%)", "Storage Ratio (%)", "Relative Path Length (%)", "Valid Path Ratio (%)");
    out += line;
    out += std::string(label_width + 2 + 19 + 2 + 17 + 2 + 24 + 2 + 20, '-') + "\n";
    for (const ReportRow& r : report.rows) {
        std::snprintf(line, sizeof line, "%-*s  %19s  %17s  %24s  %20s\n", static_cast<int>(label_width),
                      r.algorithm.c_str(), cell(r.operation_ratio).c_str(), cell(r.storage_ratio).c_str(),
                      cell(r.relative_path_length).c_str(), cell(r.valid_path_ratio).c_str());
        out += line;
    }
    std::snprintf(line, sizeof line, "samples: %zu  scale: %d\n", report.samples, report.scale);
    out += line;
    return out;
}

}  // namespace llmastar
