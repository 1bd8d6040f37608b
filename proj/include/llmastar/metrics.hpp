#pragma once

// Evaluation metrics: geometric-mean ratios against the A* baseline,
// relative path length, valid-path ratio and scale growth factors.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "llmastar/env.hpp"
#include "llmastar/error.hpp"
#include "llmastar/search.hpp"

namespace llmastar {

class MetricError : public Error {
public:
    explicit MetricError(const std::string& what) : Error(ErrorCategory::data, what) {}
};

/// One algorithm run on one sample.
struct RunRecord {
    std::string sample_id;
    std::string algorithm;
    /// Absent for the LLM-only baseline, which does no search.
    std::optional<SearchStats> stats;
    std::optional<double> path_length;
    bool valid = false;
    /// A* (Euclidean h) cost on the same sample.
    double optimal_length = 0.0;
};

/// exp(mean(log r)). Throws MetricError on an empty list or a ratio <= 0.
double geometric_mean(std::span<const double> ratios);

struct EfficiencyRatios {
    double operation_ratio = 0.0;  ///< percent
    double storage_ratio = 0.0;    ///< percent
};

/// Per-sample expansions and peak-storage ratios against `baseline`,
/// geometric-mean aggregated, in percent. Runs are aligned by position and
/// must carry the same sample ids. Invalid runs are skipped.
EfficiencyRatios efficiency_ratios(std::span<const RunRecord> runs, std::span<const RunRecord> baseline);

/// Geometric mean of path_length / optimal_length over valid runs, in percent.
double relative_path_length(std::span<const RunRecord> runs);

/// 100 * valid / total.
double valid_path_ratio(std::span<const RunRecord> runs);

struct ScalePoint {
    int scale = 1;
    double mean_ops = 0.0;
    double mean_storage = 0.0;
};

struct GrowthRow {
    int scale = 1;
    double ops_growth = 1.0;
    double storage_growth = 1.0;
    /// Arithmetic mean of the two growth factors.
    double combined = 1.0;
};

/// Usage at each scale relative to scale 1. The series must be sorted by
/// scale and contain scale 1.
std::vector<GrowthRow> growth_factor(std::span<const ScalePoint> series);

/// One row of the results table. Search-free methods leave the efficiency
/// columns empty.
struct ReportRow {
    std::string algorithm;
    std::optional<double> operation_ratio;
    std::optional<double> storage_ratio;
    std::optional<double> relative_path_length;
    double valid_path_ratio = 0.0;
    std::size_t samples = 0;
};

struct BenchReport {
    int scale = 1;
    std::size_t samples = 0;
    std::vector<ReportRow> rows;
};

/// Builds a row from `runs` against the A* `baseline` on the same samples.
ReportRow make_report_row(const std::string& label, std::span<const RunRecord> runs,
                          std::span<const RunRecord> baseline);

Json report_to_json(const BenchReport& report);
/// Aligned columns: Operation Ratio, Storage Ratio, Relative Path Length,
/// Valid Path Ratio (all %).
std::string report_to_table(const BenchReport& report);

}  // namespace llmastar
