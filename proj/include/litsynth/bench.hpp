#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "litsynth/eval.hpp"
#include "litsynth/fixtures.hpp"
#include "litsynth/pipeline.hpp"

namespace litsynth {

struct LinearFit {
    double slope = 0;
    double intercept = 0;
    double r2 = 0;
    double predict(double x) const { return slope * x + intercept; }
};

/// Ordinary least squares of y on x. r2 is 1 for a perfect fit, including
/// the constant case. Needs at least two distinct x values.
LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);

/// The published scaling model: minutes and GB per paper, plus intercepts.
inline constexpr LinearFit kPublishedTimeModel{0.04, 1.0, 1.0};
inline constexpr LinearFit kPublishedMemoryModel{0.01, 1.0, 1.0};

struct AblationRow {
    std::string configuration;  // "full" or "no_<stage>"
    EvalReport eval;
    double f1 = 0;  // pooled over all tasks
    double seconds = 0;
    RunOutput output;
};

/// Runs the full configuration plus one run per disabled stage, each with
/// its own KB/report/artifact paths under `work_dir`, and scores every KB
/// against `gold`.
std::vector<AblationRow> run_ablation(const RunConfig& base, const std::vector<GoldAnnotation>& gold,
                                      const std::filesystem::path& work_dir);
std::string format_ablation(const std::vector<AblationRow>& rows);

struct SpeedupResult {
    std::size_t documents = 0;
    std::size_t workers = 0;
    double serial_seconds = 0;
    double parallel_seconds = 0;
    double ratio = 0;  // serial / parallel
    bool same_kb = false;
};

/// Runs the pipeline over `base.corpus_cache` with one worker and with
/// `workers` workers and compares wall time. The KBs must match.
SpeedupResult measure_speedup(const RunConfig& base, std::size_t workers, const std::filesystem::path& work_dir);

struct ScalingMeasurement {
    std::size_t n = 0;
    double time_minutes = 0;
    double peak_memory_gb = 0;
    std::size_t workers = 0;
    std::size_t processed = 0;  // records the run wrote to its KB
};

struct ScalingReport {
    std::vector<ScalingMeasurement> measurements;
    LinearFit time_fit;
    LinearFit memory_fit;
};

struct ScalingOptions {
    std::size_t workers = 4;
    std::uint64_t seed = 42;
    std::size_t length_words = 1500;
    CorpusFormat format = CorpusFormat::pdf;
    std::filesystem::path data_dir;  // empty: default
};

/// For each n, generates a synthetic corpus, then runs the pipeline in a
/// child process. Wall time is taken around the child; peak memory is the
/// larger of the child's maximum resident set and 1 Hz samples of its
/// resident set. Corpus generation is not timed.
ScalingReport run_scaling(const std::vector<std::size_t>& sizes, const ScalingOptions& opts,
                          const std::filesystem::path& work_dir);
std::string format_scaling(const ScalingReport& r);

}  // namespace litsynth
