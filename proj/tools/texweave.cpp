// Command-line front end: inspect one image, score a corpus manifest, or
// generate synthetic test textures. Exit codes: 0 success, 1 pipeline
// failure, 2 usage error.

#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "texweave/texweave.hpp"

namespace fs = std::filesystem;

namespace {

struct synth_cli {
    std::string kind = "checker";
    std::string defect = "none";
    bool straddle = false;
    int periods_rows = 8;
    int periods_cols = 8;
    int unit_rows = 25;
    int unit_cols = 25;
    std::uint64_t seed = 1;
    double noise = 0.01;
    std::string name = "synth";
    std::string out = ".";
};

texweave::raster mask_to_raster(const texweave::mask_raster& mask)
{
    texweave::raster img(mask.height(), mask.width());
    for (std::size_t i = 0; i < mask.size(); ++i)
        img[i] = mask[i] ? 1.0 : 0.0;
    return img;
}

void apply_config_file(const std::string& path, texweave::run_config& cfg)
{
    std::ifstream in(path);
    if (!in)
        throw texweave::io_error("cannot open config: " + path);
    nlohmann::json j;
    in >> j;
    j.get_to(cfg);
}

void dump_kernels(const texweave::gabor_bank_config& bank_cfg, const fs::path& out_dir)
{
    for (const texweave::gabor_kernel& k : texweave::make_bank(bank_cfg)) {
        texweave::raster re(k.values.height(), k.values.width());
        texweave::raster im(k.values.height(), k.values.width());
        for (std::size_t i = 0; i < k.values.size(); ++i) {
            re[i] = k.values[i].real();
            im[i] = k.values[i].imag();
        }
        const std::string stem =
            "kernel.v" + std::to_string(k.scale_index) + ".o" + std::to_string(k.orientation_index);
        texweave::save_grayscale(texweave::normalize_min_max(re),
                                 (out_dir / (stem + ".re.png")).string());
        texweave::save_grayscale(texweave::normalize_min_max(im),
                                 (out_dir / (stem + ".im.png")).string());
    }
}

int run_inspect(const texweave::run_config& cfg)
{
    if (cfg.input.empty()) {
        std::cerr << "inspect: --input is required\n";
        return 2;
    }
    if (cfg.period_rows < 2 || cfg.period_cols < 2) {
        std::cerr << "inspect: --period-rows and --period-cols (each >= 2) are required\n";
        return 2;
    }

    const texweave::periodicity period{cfg.period_rows, cfg.period_cols};
    const texweave::gabor_bank_config bank_cfg = cfg.bank_for(period);
    const texweave::raster img = texweave::load_grayscale(cfg.input);
    texweave::log_info("inspecting " + cfg.input + " (" + std::to_string(img.height()) + "x" +
                       std::to_string(img.width()) + ")");

    const texweave::inspection_report report =
        texweave::inspect(img, period, bank_cfg, texweave::options_from_config(cfg));

    const fs::path out_dir(cfg.out);
    fs::create_directories(out_dir);
    const std::string stem = fs::path(cfg.input).stem().string();

    texweave::save_overlay(img, report.edges, (out_dir / (stem + ".overlay.png")).string());
    texweave::save_grayscale(mask_to_raster(report.mask),
                             (out_dir / (stem + ".mask.png")).string());

    nlohmann::json j = texweave::report_to_json(report);
    j["image"] = cfg.input;
    j["config"] = cfg;
    if (!cfg.gt.empty()) {
        const texweave::mask_raster gt = texweave::load_mask(cfg.gt);
        const texweave::evaluation_result eval = texweave::evaluate(report, gt, cfg.min_overlap);
        j["evaluation"] = texweave::evaluation_to_json(eval, cfg.min_overlap);
    }
    texweave::write_text_file((out_dir / (stem + ".report.json")).string(), j.dump(2) + "\n");

    if (cfg.dump_gabor_space)
        texweave::save_grayscale(texweave::normalize_min_max(report.gabor_image),
                                 (out_dir / (stem + ".gabor.png")).string());
    if (cfg.dump_features)
        texweave::write_text_file((out_dir / (stem + ".features.csv")).string(),
                                  texweave::features_csv(report));
    if (cfg.dump_dendrogram)
        texweave::write_text_file((out_dir / (stem + ".dendrogram.csv")).string(),
                                  texweave::dendrogram_csv(report));
    if (cfg.dump_kernels)
        dump_kernels(bank_cfg, out_dir);
    return 0;
}

int run_corpus(const texweave::run_config& cfg)
{
    if (cfg.manifest.empty()) {
        std::cerr << "corpus: --manifest is required\n";
        return 2;
    }

    const auto manifest = texweave::parse_manifest(cfg.manifest);
    const texweave::corpus_result result = texweave::corpus_run(manifest, cfg);

    const fs::path out_dir(cfg.out);
    fs::create_directories(out_dir);
    nlohmann::json j = texweave::corpus_to_json(result);
    j["manifest"] = cfg.manifest;
    j["config"] = cfg;
    texweave::write_text_file((out_dir / "corpus.report.json").string(), j.dump(2) + "\n");

    const auto overall = texweave::metrics_from_counts(result.overall);
    std::cout << result.rows.size() << " rows, " << result.failures
              << " failed; pooled precision " << overall.precision << ", recall "
              << overall.recall << ", accuracy " << overall.accuracy << "\n";

    if (result.rows.empty()) {
        texweave::log_error("no manifest rows matched");
        return 1;
    }
    return result.failures > 0 ? 1 : 0;
}

int run_synth(const synth_cli& args)
{
    texweave::synth_params params;
    params.kind = texweave::texture_kind_from_string(args.kind);
    params.defect = texweave::defect_kind_from_string(args.defect);
    params.straddle = args.straddle;
    params.periods_rows = args.periods_rows;
    params.periods_cols = args.periods_cols;
    params.unit = {args.unit_rows, args.unit_cols};
    params.seed = args.seed;
    params.noise = args.noise;

    const texweave::synth_output out = texweave::make_texture(params);
    const fs::path out_dir(args.out);
    fs::create_directories(out_dir);
    texweave::save_grayscale(out.image, (out_dir / (args.name + ".png")).string());
    texweave::save_grayscale(mask_to_raster(out.gt), (out_dir / (args.name + ".gt.png")).string());
    std::cout << args.name << ".png: " << out.image.height() << "x" << out.image.width()
              << ", defect " << args.defect << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Defect detection in periodic textures"};
    app.require_subcommand(1);

    texweave::run_config cfg;
    std::string config_path;
    std::string padding = to_string(cfg.padding);
    std::string engine = to_string(cfg.engine);

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON config file; its keys override flags");
        sub->add_option("--scales", cfg.scales, "Number of wavelet scales");
        sub->add_option("--orientations", cfg.orientations, "Number of wavelet orientations");
        sub->add_option("--sigma", cfg.sigma, "Gaussian envelope width");
        sub->add_option("--kmax", cfg.kmax, "Peak wavenumber");
        sub->add_option("--spacing", cfg.spacing, "Scale spacing factor f");
        sub->add_option("--padding", padding, "Border padding mode")
            ->check(CLI::IsMember({"reflect", "wrap", "zero"}));
        sub->add_option("--engine", engine, "Convolution engine")
            ->check(CLI::IsMember({"auto", "direct", "frequency"}));
        sub->add_option("--out", cfg.out, "Output directory");
        sub->add_option("--min-overlap", cfg.min_overlap,
                        "Ground-truth pixel fraction above which a block counts as defective")
            ->check(CLI::Range(0.0, 1.0));
        sub->add_option("--min-separation", cfg.min_separation,
                        "Declare no defect when final merge cost <= tau x median merge cost "
                        "(0 disables)");
        sub->add_option("--jobs", cfg.jobs, "Worker thread cap")->check(CLI::PositiveNumber);
        sub->add_flag("--dump-gabor-space", cfg.dump_gabor_space,
                      "Write the fused response image as PNG");
        sub->add_flag("--dump-features", cfg.dump_features, "Write block energies as CSV");
        sub->add_flag("--dump-dendrogram", cfg.dump_dendrogram, "Write merge histories as CSV");
        sub->add_flag("--dump-kernels", cfg.dump_kernels,
                      "Write kernel real/imaginary parts as PNGs");
    };

    CLI::App* inspect = app.add_subcommand("inspect", "Detect defects in one image");
    inspect->add_option("--input", cfg.input, "Input image (PNG or PGM)");
    inspect->add_option("--period-rows", cfg.period_rows, "Rows per periodic unit");
    inspect->add_option("--period-cols", cfg.period_cols, "Columns per periodic unit");
    inspect->add_option("--gt", cfg.gt, "Ground-truth defect mask to score against");
    add_common(inspect);

    CLI::App* corpus = app.add_subcommand("corpus", "Score every image in a manifest");
    corpus->add_option("--manifest", cfg.manifest,
                       "CSV manifest: image,period_rows,period_cols,gt,group");
    corpus->add_option("--group", cfg.group, "Restrict to rows with this group tag");
    add_common(corpus);

    synth_cli synth_args;
    CLI::App* synth = app.add_subcommand("synth", "Generate a synthetic periodic texture");
    synth->add_option("--kind", synth_args.kind, "Texture family")
        ->check(CLI::IsMember({"checker", "stripes", "dots"}));
    synth->add_option("--defect", synth_args.defect, "Injected defect")
        ->check(CLI::IsMember({"none", "bar", "hole", "blob"}));
    synth->add_flag("--straddle", synth_args.straddle,
                    "Shift the defect half a unit across block boundaries");
    synth->add_option("--periods-rows", synth_args.periods_rows, "Periodic units per column")
        ->check(CLI::PositiveNumber);
    synth->add_option("--periods-cols", synth_args.periods_cols, "Periodic units per row")
        ->check(CLI::PositiveNumber);
    synth->add_option("--unit-rows", synth_args.unit_rows, "Rows per periodic unit");
    synth->add_option("--unit-cols", synth_args.unit_cols, "Columns per periodic unit");
    synth->add_option("--seed", synth_args.seed, "RNG seed");
    synth->add_option("--noise", synth_args.noise, "Uniform noise amplitude");
    synth->add_option("--name", synth_args.name, "Output file stem");
    synth->add_option("--out", synth_args.out, "Output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2; // 0 covers --help/--version
    }

    try {
        cfg.padding = texweave::padding_mode_from_string(padding);
        cfg.engine = texweave::conv_engine_from_string(engine);
        if (!config_path.empty())
            apply_config_file(config_path, cfg);
        if (app.got_subcommand(inspect)) return run_inspect(cfg);
        if (app.got_subcommand(corpus)) return run_corpus(cfg);
        return run_synth(synth_args);
    } catch (const std::invalid_argument& e) {
        std::cerr << "texweave: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "texweave: " << e.what() << "\n";
        return 1;
    }
}
