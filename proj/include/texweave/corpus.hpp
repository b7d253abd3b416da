#ifndef TEXWEAVE_CORPUS_HPP
#define TEXWEAVE_CORPUS_HPP

#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "texweave/config.hpp"
#include "texweave/errors.hpp"
#include "texweave/image_io.hpp"
#include "texweave/log.hpp"
#include "texweave/metrics.hpp"
#include "texweave/parallel.hpp"

namespace texweave {

struct manifest_row {
    std::string image;
    int period_rows = 0;
    int period_cols = 0;
    std::string gt;    // empty: no ground truth, row is inspected but not scored
    std::string group; // empty: counted in the overall aggregate only
};

namespace detail {

inline std::string trim(const std::string& s)
{
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

inline std::vector<std::string> split_csv_line(const std::string& line)
{
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ','))
        fields.push_back(trim(field));
    if (!line.empty() && line.back() == ',')
        fields.push_back("");
    return fields;
}

} // namespace detail

/// Parses a corpus manifest: CSV with the exact header
/// image,period_rows,period_cols,gt,group. The gt and group fields may be
/// empty; relative image/gt paths are resolved against the manifest's
/// directory.
inline std::vector<manifest_row> parse_manifest(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw io_error("cannot open manifest: " + path);

    const std::filesystem::path base = std::filesystem::path(path).parent_path();
    auto resolve = [&](const std::string& p) {
        if (p.empty() || std::filesystem::path(p).is_absolute()) return p;
        return (base / p).string();
    };

    std::string line;
    if (!std::getline(in, line))
        throw format_error("manifest is empty: " + path);
    if (detail::split_csv_line(line) !=
        std::vector<std::string>{"image", "period_rows", "period_cols", "gt", "group"})
        throw format_error("manifest header must be image,period_rows,period_cols,gt,group");

    std::vector<manifest_row> rows;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (detail::trim(line).empty()) continue;
        auto fields = detail::split_csv_line(line);
        if (fields.size() < 3 || fields.size() > 5)
            throw format_error("manifest line " + std::to_string(line_no) +
                               ": expected 3 to 5 fields, got " + std::to_string(fields.size()));
        fields.resize(5);
        manifest_row row;
        row.image = resolve(fields[0]);
        try {
            row.period_rows = std::stoi(fields[1]);
            row.period_cols = std::stoi(fields[2]);
        } catch (const std::exception&) {
            throw format_error("manifest line " + std::to_string(line_no) +
                               ": period fields must be integers");
        }
        row.gt = resolve(fields[3]);
        row.group = fields[4];
        rows.push_back(std::move(row));
    }
    return rows;
}

struct corpus_row_result {
    manifest_row row;
    bool ok = false;
    bool scored = false; // had ground truth and contributed to the aggregates
    std::string error;
    int defective_blocks = 0; // predicted, summed over the four crops
    confusion_counts counts;
    metric_summary metrics;
    double seconds = 0.0;
};

struct corpus_result {
    std::vector<corpus_row_result> rows;
    std::map<std::string, confusion_counts> group_counts; // keyed by group tag
    confusion_counts overall;                             // pooled over all scored rows
    int failures = 0;
};

/// Runs the inspection pipeline over every manifest row (restricted to
/// cfg.group when set) and micro-averages the confusion counts: counts are
/// pooled per group and overall before the metric division. Rows run
/// concurrently under cfg.jobs; a failing row is recorded and excluded from
/// the aggregates without stopping the rest.
inline corpus_result corpus_run(const std::vector<manifest_row>& manifest, const run_config& cfg)
{
    std::vector<const manifest_row*> selected;
    for (const manifest_row& row : manifest)
        if (cfg.group.empty() || row.group == cfg.group)
            selected.push_back(&row);

    corpus_result result;
    result.rows.resize(selected.size());

    // Parallelism is spent across rows; each row's pipeline runs single
    // threaded. Results land in per-row slots, so aggregation order below is
    // fixed regardless of the worker count.
    inspect_options opts = options_from_config(cfg);
    opts.jobs = 1;

    detail::parallel_for(static_cast<int>(selected.size()), cfg.jobs, [&](int i) {
        corpus_row_result& out = result.rows[static_cast<std::size_t>(i)];
        out.row = *selected[static_cast<std::size_t>(i)];
        const auto start = std::chrono::steady_clock::now();
        try {
            const periodicity period{out.row.period_rows, out.row.period_cols};
            const raster img = load_grayscale(out.row.image);
            const inspection_report report = inspect(img, period, cfg.bank_for(period), opts);
            for (const crop_analysis& crop : report.crops)
                for (std::uint8_t flag : crop.grid.defective)
                    out.defective_blocks += flag ? 1 : 0;
            if (!out.row.gt.empty()) {
                const mask_raster gt = load_mask(out.row.gt);
                const evaluation_result eval = evaluate(report, gt, cfg.min_overlap);
                out.counts = eval.counts;
                out.metrics = eval.metrics;
                out.scored = true;
            }
            out.ok = true;
        } catch (const std::exception& e) {
            out.error = e.what();
            log_warn("corpus row " + out.row.image + " failed: " + out.error);
        }
        out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                          .count();
    });

    for (const corpus_row_result& row : result.rows) {
        if (!row.ok) {
            ++result.failures;
            continue;
        }
        if (!row.scored) continue;
        result.overall += row.counts;
        result.group_counts[row.row.group] += row.counts;
    }
    return result;
}

} // namespace texweave

#endif
