#ifndef TEXWEAVE_REPORT_HPP
#define TEXWEAVE_REPORT_HPP

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "texweave/corpus.hpp"
#include "texweave/errors.hpp"
#include "texweave/fusion.hpp"
#include "texweave/metrics.hpp"

namespace texweave {

inline nlohmann::json counts_to_json(const confusion_counts& c)
{
    return {{"tp", c.tp}, {"tn", c.tn}, {"fp", c.fp}, {"fn", c.fn}};
}

inline nlohmann::json metrics_to_json(const metric_summary& m)
{
    return {{"precision", m.precision}, {"recall", m.recall}, {"accuracy", m.accuracy}};
}

inline nlohmann::json crop_to_json(const crop_analysis& crop)
{
    nlohmann::json j{{"corner", to_string(crop.grid.crop.corner)},
                     {"row_offset", crop.grid.crop.row_offset},
                     {"col_offset", crop.grid.crop.col_offset},
                     {"block_rows", crop.grid.block_rows},
                     {"block_cols", crop.grid.block_cols},
                     {"energies", crop.grid.energies},
                     {"defective", crop.grid.defective},
                     {"gate_suppressed", crop.gate_suppressed}};
    if (!crop.gate_suppressed) {
        j["cluster_sizes"] = crop.clusters.sizes;
        j["defective_cluster"] = crop.clusters.defective_cluster;
    }
    if (!crop.tree.merges.empty())
        j["final_merge_cost"] = crop.tree.merges.back().cost;
    return j;
}

/// Per-image report body. The caller adds the image path and, when ground
/// truth was available, the evaluation block.
inline nlohmann::json report_to_json(const inspection_report& report)
{
    int defective_blocks = 0;
    nlohmann::json crops = nlohmann::json::array();
    for (const crop_analysis& crop : report.crops) {
        crops.push_back(crop_to_json(crop));
        for (std::uint8_t flag : crop.grid.defective)
            defective_blocks += flag ? 1 : 0;
    }
    return {{"period", {{"rows", report.period.rows}, {"cols", report.period.cols}}},
            {"bank",
             {{"scales", report.bank.num_scales},
              {"orientations", report.bank.num_orientations},
              {"sigma", report.bank.sigma},
              {"kmax", report.bank.k_max},
              {"spacing", report.bank.spacing},
              {"kernel_height", report.bank.kernel_height},
              {"kernel_width", report.bank.kernel_width}}},
            {"crops", crops},
            {"defective_blocks", defective_blocks}};
}

inline nlohmann::json evaluation_to_json(const evaluation_result& eval, double min_overlap)
{
    nlohmann::json per_crop = nlohmann::json::array();
    for (const confusion_counts& c : eval.per_crop)
        per_crop.push_back(counts_to_json(c));
    nlohmann::json j{{"min_overlap", min_overlap},
                     {"counts", counts_to_json(eval.counts)},
                     {"per_crop_counts", per_crop}};
    j.update(metrics_to_json(eval.metrics));
    return j;
}

inline nlohmann::json corpus_to_json(const corpus_result& result)
{
    nlohmann::json rows = nlohmann::json::array();
    for (const corpus_row_result& row : result.rows) {
        nlohmann::json j{{"image", row.row.image},
                         {"group", row.row.group},
                         {"ok", row.ok},
                         {"scored", row.scored},
                         {"defective_blocks", row.defective_blocks},
                         {"seconds", row.seconds}};
        if (!row.ok) j["error"] = row.error;
        if (row.scored) {
            j["counts"] = counts_to_json(row.counts);
            j.update(metrics_to_json(row.metrics));
        }
        rows.push_back(std::move(j));
    }

    nlohmann::json groups = nlohmann::json::object();
    for (const auto& [tag, counts] : result.group_counts) {
        nlohmann::json g{{"counts", counts_to_json(counts)}};
        g.update(metrics_to_json(metrics_from_counts(counts)));
        groups[tag] = std::move(g);
    }

    nlohmann::json overall{{"counts", counts_to_json(result.overall)}};
    overall.update(metrics_to_json(metrics_from_counts(result.overall)));

    return {{"rows", rows},
            {"groups", groups},
            {"overall", overall},
            {"failures", result.failures}};
}

/// Merge history of all four crops: crop,merge_index,cluster_a,cluster_b,cost,new_size.
inline std::string dendrogram_csv(const inspection_report& report)
{
    std::ostringstream out;
    out.precision(17);
    out << "crop,merge_index,cluster_a,cluster_b,cost,new_size\n";
    for (const crop_analysis& crop : report.crops) {
        const char* corner = to_string(crop.grid.crop.corner);
        for (std::size_t i = 0; i < crop.tree.merges.size(); ++i) {
            const merge_step& m = crop.tree.merges[i];
            out << corner << ',' << i << ',' << m.cluster_a << ',' << m.cluster_b << ','
                << m.cost << ',' << m.new_size << '\n';
        }
    }
    return out.str();
}

/// Block-energy features of all four crops: crop,block_row,block_col,energy.
inline std::string features_csv(const inspection_report& report)
{
    std::ostringstream out;
    out.precision(17);
    out << "crop,block_row,block_col,energy\n";
    for (const crop_analysis& crop : report.crops) {
        const char* corner = to_string(crop.grid.crop.corner);
        for (int i = 0; i < crop.grid.block_rows; ++i)
            for (int j = 0; j < crop.grid.block_cols; ++j)
                out << corner << ',' << i << ',' << j << ',' << crop.grid.energy(i, j) << '\n';
    }
    return out.str();
}

inline void write_text_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw io_error("cannot open for writing: " + path);
    out << text;
    if (!out)
        throw io_error("failed writing: " + path);
}

} // namespace texweave

#endif
