#include "litsynth/bench.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <thread>

#include <sys/resource.h>
#include <sys/wait.h>
#include <unistd.h>

#include <spdlog/spdlog.h>

#include "litsynth/kb.hpp"
#include "litsynth/text.hpp"

namespace fs = std::filesystem;

namespace litsynth {

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("linear_fit needs >= 2 paired points");
    const double n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0) throw std::invalid_argument("linear_fit needs two distinct x values");
    LinearFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double ss_res = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double e = y[i] - f.predict(x[i]);
        ss_res += e * e;
    }
    f.r2 = syy > 0 ? 1.0 - ss_res / syy : (ss_res == 0 ? 1.0 : 0.0);
    return f;
}

namespace {

RunConfig variant(const RunConfig& base, const fs::path& dir) {
    RunConfig c = base;
    c.kb_path = dir / "kb.jsonl";
    c.report_path = dir / "report.md";
    c.artifacts_dir = dir / "artifacts";
    c.overwrite = true;
    std::error_code ec;
    fs::remove(c.kb_path, ec);
    return c;
}

double seconds_since(std::chrono::steady_clock::time_point t) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

}  // namespace

std::vector<AblationRow> run_ablation(const RunConfig& base, const std::vector<GoldAnnotation>& gold,
                                      const fs::path& work_dir) {
    std::vector<std::pair<std::string, std::string>> configs{{"full", ""}};
    for (const char* stage : kStageNames) configs.emplace_back(std::string("no_") + stage, stage);

    std::vector<AblationRow> rows;
    for (const auto& [name, stage] : configs) {
        RunConfig c = variant(base, work_dir / name);
        for (auto& [k, on] : c.stage_toggles) on = true;
        if (!stage.empty()) c.stage_toggles[stage] = false;
        AblationRow row;
        row.configuration = name;
        const auto t0 = std::chrono::steady_clock::now();
        row.output = run_pipeline(c);
        row.seconds = seconds_since(t0);
        row.eval = evaluate_corpus(gold, KnowledgeBase::load(c.kb_path));
        row.f1 = row.eval.pooled.f1;
        spdlog::info("ablation {}: F1 {:.4f} in {:.2f}s", name, row.f1, row.seconds);
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string format_ablation(const std::vector<AblationRow>& rows) {
    std::string out;
    char buf[200];
    std::snprintf(buf, sizeof buf, "%-26s %8s %8s %8s %8s %8s %10s\n", "configuration", "F1", "relev.", "hyper", "result",
                  "cite", "seconds");
    out += buf;
    const auto task_f1 = [](const EvalReport& r, Task t) {
        const auto it = r.tasks.find(t);
        return it == r.tasks.end() ? 0.0 : it->second.f1;
    };
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%-26s %8.4f %8.4f %8.4f %8.4f %8.4f %10.3f\n", r.configuration.c_str(), r.f1,
                      task_f1(r.eval, Task::relevance), task_f1(r.eval, Task::hyperparams),
                      task_f1(r.eval, Task::results), task_f1(r.eval, Task::citations), r.seconds);
        out += buf;
    }
    return out;
}

SpeedupResult measure_speedup(const RunConfig& base, std::size_t workers, const fs::path& work_dir) {
    SpeedupResult r;
    r.workers = workers;
    const auto timed = [&](std::size_t n, const fs::path& dir) {
        RunConfig c = variant(base, dir);
        c.worker_count = n;
        c.stage_toggles["parallel_parsing"] = true;
        const auto t0 = std::chrono::steady_clock::now();
        const RunOutput out = run_pipeline(c);
        const double s = seconds_since(t0);
        std::size_t docs = 0;
        for (const auto& [status, count] : out.status_counts) docs += count;
        r.documents = docs;
        return std::make_pair(s, read_file(c.kb_path));
    };
    const auto [t1, kb1] = timed(1, work_dir / "serial");
    const auto [tn, kbn] = timed(workers, work_dir / ("workers-" + std::to_string(workers)));
    r.serial_seconds = t1;
    r.parallel_seconds = tn;
    r.ratio = tn > 0 ? t1 / tn : 0;
    r.same_kb = kb1 == kbn;
    return r;
}

namespace {

// Resident set of `pid` in kB from /proc, 0 when unavailable.
long resident_kb(pid_t pid) {
    std::ifstream in("/proc/" + std::to_string(pid) + "/status");
    std::string line;
    while (std::getline(in, line))
        if (line.rfind("VmRSS:", 0) == 0) return std::atol(line.c_str() + 6);
    return 0;
}

}  // namespace

ScalingReport run_scaling(const std::vector<std::size_t>& sizes, const ScalingOptions& opts, const fs::path& work_dir) {
    ScalingReport report;
    for (std::size_t n : sizes) {
        const fs::path dir = work_dir / ("n" + std::to_string(n));
        const fs::path corpus = dir / "corpus";
        fs::remove_all(dir);
        generate_corpus(random_specs(n, opts.seed, opts.length_words), opts.seed, corpus, opts.format);

        RunConfig cfg;
        cfg.topic_query = "autoregressive";
        cfg.worker_count = opts.workers;
        cfg.random_seed = opts.seed;
        cfg.corpus_cache = corpus;
        cfg.data_dir = opts.data_dir;
        cfg = variant(cfg, dir / "run");

        int fds[2];
        if (pipe(fds) != 0) throw std::runtime_error("pipe failed");
        std::fflush(nullptr);
        const auto t0 = std::chrono::steady_clock::now();
        const pid_t pid = fork();
        if (pid < 0) throw std::runtime_error("fork failed");
        if (pid == 0) {
            close(fds[0]);
            int code = 0;
            std::size_t processed = 0;
            try {
                run_pipeline(cfg);
                processed = KnowledgeBase::load(cfg.kb_path).size();
            } catch (const std::exception& e) {
                std::fprintf(stderr, "scaling run n=%zu failed: %s\n", n, e.what());
                code = 1;
            }
            const auto written = write(fds[1], &processed, sizeof processed);
            close(fds[1]);
            _exit(written == sizeof processed ? code : 1);
        }
        close(fds[1]);

        long peak_kb = 0;
        int status = 0;
        rusage usage{};
        auto next_sample = t0;
        for (;;) {
            const auto now = std::chrono::steady_clock::now();
            if (now >= next_sample) {
                peak_kb = std::max(peak_kb, resident_kb(pid));
                next_sample += std::chrono::seconds(1);
            }
            const pid_t done = wait4(pid, &status, WNOHANG, &usage);
            if (done == pid) break;
            if (done < 0) throw std::runtime_error("wait4 failed");
            std::this_thread::sleep_for(std::chrono::milliseconds(5));
        }
        const double seconds = seconds_since(t0);
        std::size_t processed = 0;
        const auto got = read(fds[0], &processed, sizeof processed);
        close(fds[0]);
        if (!WIFEXITED(status) || WEXITSTATUS(status) != 0 || got != static_cast<ssize_t>(sizeof processed))
            throw std::runtime_error("scaling run for n=" + std::to_string(n) + " failed");

        peak_kb = std::max(peak_kb, static_cast<long>(usage.ru_maxrss));
        ScalingMeasurement m;
        m.n = n;
        m.workers = opts.workers;
        m.time_minutes = seconds / 60.0;
        m.peak_memory_gb = static_cast<double>(peak_kb) / (1024.0 * 1024.0);
        m.processed = processed;
        spdlog::info("scaling n={}: {:.3f}s, peak {:.1f} MB", n, seconds, static_cast<double>(peak_kb) / 1024.0);
        report.measurements.push_back(m);
    }
    if (report.measurements.size() >= 2) {
        std::vector<double> x, t, mem;
        for (const auto& m : report.measurements) {
            x.push_back(static_cast<double>(m.n));
            t.push_back(m.time_minutes);
            mem.push_back(m.peak_memory_gb);
        }
        report.time_fit = linear_fit(x, t);
        report.memory_fit = linear_fit(x, mem);
    }
    return report;
}

std::string format_scaling(const ScalingReport& r) {
    std::string out;
    char buf[200];
    std::snprintf(buf, sizeof buf, "%8s %8s %14s %14s %10s\n", "n", "workers", "time_min", "peak_mem_gb", "processed");
    out += buf;
    for (const auto& m : r.measurements) {
        std::snprintf(buf, sizeof buf, "%8zu %8zu %14.6f %14.6f %10zu\n", m.n, m.workers, m.time_minutes,
                      m.peak_memory_gb, m.processed);
        out += buf;
    }
    std::snprintf(buf, sizeof buf, "time:   T(n) = %.6g n + %.6g   (R^2 %.4f)\n", r.time_fit.slope, r.time_fit.intercept,
                  r.time_fit.r2);
    out += buf;
    std::snprintf(buf, sizeof buf, "memory: M(n) = %.6g n + %.6g   (R^2 %.4f)\n", r.memory_fit.slope,
                  r.memory_fit.intercept, r.memory_fit.r2);
    out += buf;
    return out;
}

}  // namespace litsynth
