#ifndef TEXWEAVE_CONFIG_HPP
#define TEXWEAVE_CONFIG_HPP

#include <numbers>
#include <string>

#include <json.hpp>

#include "texweave/fusion.hpp"
#include "texweave/gabor.hpp"
#include "texweave/padding.hpp"

namespace texweave {

/// Everything a run needs, serializable so a run can be reproduced from its
/// config file alone. Defaults reproduce the reference filter configuration
/// (5 scales, 8 orientations, sigma = 2*pi, k_max = pi/2, spacing = sqrt(2)).
struct run_config {
    std::string input;    // single image (inspect)
    std::string manifest; // manifest CSV (corpus)
    int period_rows = 0;  // rows per periodic unit, required for inspect
    int period_cols = 0;  // columns per periodic unit
    int scales = 5;
    int orientations = 8;
    double sigma = 2.0 * std::numbers::pi;
    double kmax = std::numbers::pi / 2.0;
    double spacing = std::numbers::sqrt2;
    padding_mode padding = padding_mode::reflect;
    conv_engine engine = conv_engine::automatic;
    std::string out = ".";
    std::string gt;
    std::string group; // corpus: restrict to rows with this group tag
    double min_overlap = 0.0;
    double min_separation = 0.0; // 0 disables the no-defect gate
    int jobs = 1;
    bool dump_gabor_space = false;
    bool dump_features = false;
    bool dump_dendrogram = false;
    bool dump_kernels = false;

    /// Bank for one image: kernel size is half the periodic unit.
    gabor_bank_config bank_for(const periodicity& period) const
    {
        gabor_bank_config cfg;
        cfg.num_scales = scales;
        cfg.num_orientations = orientations;
        cfg.sigma = sigma;
        cfg.k_max = kmax;
        cfg.spacing = spacing;
        const auto [kh, kw] = kernel_size_from_periodicity(period);
        cfg.kernel_height = kh;
        cfg.kernel_width = kw;
        return cfg;
    }

    bool operator==(const run_config&) const = default;
};

inline void to_json(nlohmann::json& j, const run_config& c)
{
    j = nlohmann::json{{"input", c.input},
                       {"manifest", c.manifest},
                       {"period_rows", c.period_rows},
                       {"period_cols", c.period_cols},
                       {"scales", c.scales},
                       {"orientations", c.orientations},
                       {"sigma", c.sigma},
                       {"kmax", c.kmax},
                       {"spacing", c.spacing},
                       {"padding", to_string(c.padding)},
                       {"engine", to_string(c.engine)},
                       {"out", c.out},
                       {"gt", c.gt},
                       {"group", c.group},
                       {"min_overlap", c.min_overlap},
                       {"min_separation", c.min_separation},
                       {"jobs", c.jobs},
                       {"dump_gabor_space", c.dump_gabor_space},
                       {"dump_features", c.dump_features},
                       {"dump_dendrogram", c.dump_dendrogram},
                       {"dump_kernels", c.dump_kernels}};
}

/// Keys absent from the JSON leave the corresponding field untouched, so a
/// partial config acts as an override on top of whatever c already holds
/// (defaults, or values parsed from the command line).
inline void from_json(const nlohmann::json& j, run_config& c)
{
    c.input = j.value("input", c.input);
    c.manifest = j.value("manifest", c.manifest);
    c.period_rows = j.value("period_rows", c.period_rows);
    c.period_cols = j.value("period_cols", c.period_cols);
    c.scales = j.value("scales", c.scales);
    c.orientations = j.value("orientations", c.orientations);
    c.sigma = j.value("sigma", c.sigma);
    c.kmax = j.value("kmax", c.kmax);
    c.spacing = j.value("spacing", c.spacing);
    c.padding = padding_mode_from_string(j.value("padding", std::string(to_string(c.padding))));
    c.engine = conv_engine_from_string(j.value("engine", std::string(to_string(c.engine))));
    c.out = j.value("out", c.out);
    c.gt = j.value("gt", c.gt);
    c.group = j.value("group", c.group);
    c.min_overlap = j.value("min_overlap", c.min_overlap);
    c.min_separation = j.value("min_separation", c.min_separation);
    c.jobs = j.value("jobs", c.jobs);
    c.dump_gabor_space = j.value("dump_gabor_space", c.dump_gabor_space);
    c.dump_features = j.value("dump_features", c.dump_features);
    c.dump_dendrogram = j.value("dump_dendrogram", c.dump_dendrogram);
    c.dump_kernels = j.value("dump_kernels", c.dump_kernels);
}

inline inspect_options options_from_config(const run_config& c)
{
    inspect_options opts;
    opts.padding = c.padding;
    opts.engine = c.engine;
    opts.jobs = c.jobs;
    opts.min_separation = c.min_separation;
    return opts;
}

} // namespace texweave

#endif
