#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

#include "texweave/image_io.hpp"

using namespace texweave;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string cli_binary()
{
    const char* bin = std::getenv("TEXWEAVE_CLI");
    REQUIRE(bin != nullptr); // exported by the test harness
    return bin;
}

int run_cli(const std::string& args)
{
    const std::string cmd = cli_binary() + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    REQUIRE(WIFEXITED(status));
    return WEXITSTATUS(status);
}

fs::path fresh_dir(const std::string& name)
{
    const fs::path dir = fs::temp_directory_path() / "texweave_cli_tests" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

json read_json(const fs::path& path)
{
    std::ifstream in(path);
    REQUIRE(in.good());
    json j;
    in >> j;
    return j;
}

std::string quoted(const fs::path& p) { return "'" + p.string() + "'"; }

} // namespace

TEST_CASE("synth writes the texture and its ground truth", "[cli]")
{
    const fs::path dir = fresh_dir("synth");
    REQUIRE(run_cli("synth --kind checker --defect bar --periods-rows 6 --periods-cols 6"
                    " --unit-rows 20 --unit-cols 20 --seed 5 --name sample --out " +
                    quoted(dir)) == 0);

    const raster img = load_grayscale((dir / "sample.png").string());
    REQUIRE(img.height() == 120);
    REQUIRE(img.width() == 120);
    const mask_raster gt = load_mask((dir / "sample.gt.png").string());
    long long positives = 0;
    for (auto v : gt)
        positives += v != 0;
    REQUIRE(positives == 20LL * 3 * 20); // the bar
}

TEST_CASE("inspect emits overlay, mask, and scored report", "[cli]")
{
    const fs::path dir = fresh_dir("inspect");
    REQUIRE(run_cli("synth --kind checker --defect bar --periods-rows 6 --periods-cols 6"
                    " --unit-rows 20 --unit-cols 20 --seed 9 --name fabric --out " +
                    quoted(dir)) == 0);
    REQUIRE(run_cli("inspect --input " + quoted(dir / "fabric.png") +
                    " --period-rows 20 --period-cols 20 --gt " + quoted(dir / "fabric.gt.png") +
                    " --jobs 2 --out " + quoted(dir)) == 0);

    REQUIRE(fs::exists(dir / "fabric.overlay.png"));
    REQUIRE(fs::exists(dir / "fabric.mask.png"));
    const raster mask = load_grayscale((dir / "fabric.mask.png").string());
    REQUIRE(mask.height() == 120);
    REQUIRE(mask.width() == 120);

    const json report = read_json(dir / "fabric.report.json");
    REQUIRE(report["image"] == (dir / "fabric.png").string());
    REQUIRE(report["config"]["period_rows"] == 20);
    REQUIRE(report["config"]["jobs"] == 2);
    REQUIRE(report["period"]["rows"] == 20);
    REQUIRE(report["crops"].size() == 4);
    for (const auto& crop : report["crops"]) {
        REQUIRE(crop.contains("energies"));
        REQUIRE(crop.contains("defective"));
    }

    // exact-multiple checker + bar: every crop nails the three bar blocks
    REQUIRE(report["evaluation"]["counts"]["tp"] == 12);
    REQUIRE(report["evaluation"]["counts"]["fp"] == 0);
    REQUIRE(report["evaluation"]["counts"]["fn"] == 0);
    REQUIRE(report["evaluation"]["precision"] == 1.0);
    REQUIRE(report["evaluation"]["recall"] == 1.0);
}

TEST_CASE("inspect honors the dump flags", "[cli]")
{
    const fs::path dir = fresh_dir("dumps");
    REQUIRE(run_cli("synth --periods-rows 4 --periods-cols 4 --unit-rows 15 --unit-cols 15"
                    " --name t --out " + quoted(dir)) == 0);
    REQUIRE(run_cli("inspect --input " + quoted(dir / "t.png") +
                    " --period-rows 15 --period-cols 15 --out " + quoted(dir) +
                    " --dump-gabor-space --dump-features --dump-dendrogram --dump-kernels") == 0);

    REQUIRE(fs::exists(dir / "t.gabor.png"));

    std::ifstream features(dir / "t.features.csv");
    std::string header;
    std::getline(features, header);
    REQUIRE(header == "crop,block_row,block_col,energy");
    int feature_rows = 0;
    for (std::string line; std::getline(features, line);)
        feature_rows += !line.empty();
    REQUIRE(feature_rows == 4 * 16); // 4 crops x 4x4 blocks

    std::ifstream dendro(dir / "t.dendrogram.csv");
    std::getline(dendro, header);
    REQUIRE(header == "crop,merge_index,cluster_a,cluster_b,cost,new_size");
    int merge_rows = 0;
    for (std::string line; std::getline(dendro, line);)
        merge_rows += !line.empty();
    REQUIRE(merge_rows == 4 * 15); // n - 1 merges per crop

    REQUIRE(fs::exists(dir / "kernel.v0.o0.re.png"));
    REQUIRE(fs::exists(dir / "kernel.v4.o7.im.png"));
}

TEST_CASE("a config file overrides contradicting flags", "[cli]")
{
    const fs::path dir = fresh_dir("config");
    REQUIRE(run_cli("synth --periods-rows 4 --periods-cols 4 --unit-rows 15 --unit-cols 15"
                    " --name c --out " + quoted(dir)) == 0);

    {
        std::ofstream out(dir / "override.json");
        out << R"({"padding": "wrap", "jobs": 3})";
    }
    REQUIRE(run_cli("inspect --input " + quoted(dir / "c.png") +
                    " --period-rows 15 --period-cols 15 --padding reflect --jobs 1 --out " +
                    quoted(dir) + " --config " + quoted(dir / "override.json")) == 0);

    const json report = read_json(dir / "c.report.json");
    REQUIRE(report["config"]["padding"] == "wrap"); // config wins over the flag
    REQUIRE(report["config"]["jobs"] == 3);
    // flags not named in the config survive
    REQUIRE(report["config"]["period_rows"] == 15);
}

TEST_CASE("corpus scores a manifest and reports failures", "[cli]")
{
    const fs::path dir = fresh_dir("corpus");
    for (int i = 0; i < 2; ++i)
        REQUIRE(run_cli("synth --kind checker --defect bar --periods-rows 5 --periods-cols 5"
                        " --unit-rows 20 --unit-cols 20 --seed " + std::to_string(40 + i) +
                        " --name img" + std::to_string(i) + " --out " + quoted(dir)) == 0);

    {
        std::ofstream out(dir / "all.csv");
        out << "image,period_rows,period_cols,gt,group\n"
            << "img0.png,20,20,img0.gt.png,a\n"
            << "img1.png,20,20,img1.gt.png,b\n";
    }
    REQUIRE(run_cli("corpus --manifest " + quoted(dir / "all.csv") + " --out " + quoted(dir)) == 0);
    json report = read_json(dir / "corpus.report.json");
    REQUIRE(report["rows"].size() == 2);
    REQUIRE(report["failures"] == 0);
    REQUIRE(report["overall"]["counts"]["tp"] > 0);
    REQUIRE(report["groups"].contains("a"));
    REQUIRE(report["groups"].contains("b"));

    SECTION("a broken row flips the exit code but not the report")
    {
        {
            std::ofstream out(dir / "broken.csv");
            out << "image,period_rows,period_cols,gt,group\n"
                << "img0.png,20,20,img0.gt.png,a\n"
                << "missing.png,20,20,,\n";
        }
        REQUIRE(run_cli("corpus --manifest " + quoted(dir / "broken.csv") + " --out " +
                        quoted(dir)) == 1);
        report = read_json(dir / "corpus.report.json");
        REQUIRE(report["failures"] == 1);
        REQUIRE(report["rows"].size() == 2);
        bool saw_error = false;
        for (const auto& row : report["rows"])
            saw_error = saw_error || row.contains("error");
        REQUIRE(saw_error);
    }

    SECTION("the group filter drops non-matching rows")
    {
        REQUIRE(run_cli("corpus --manifest " + quoted(dir / "all.csv") + " --group a --out " +
                        quoted(dir)) == 0);
        report = read_json(dir / "corpus.report.json");
        REQUIRE(report["rows"].size() == 1);
        REQUIRE(report["groups"].size() == 1);
    }

    SECTION("an empty selection is an error")
    {
        REQUIRE(run_cli("corpus --manifest " + quoted(dir / "all.csv") +
                        " --group nope --out " + quoted(dir)) == 1);
    }
}

TEST_CASE("usage errors exit with status 2", "[cli]")
{
    const fs::path dir = fresh_dir("usage");
    REQUIRE(run_cli("") == 2);                       // subcommand required
    REQUIRE(run_cli("polish --shine high") == 2);    // unknown subcommand
    REQUIRE(run_cli("inspect --frobnicate") == 2);   // unknown flag
    REQUIRE(run_cli("inspect") == 2);                // --input missing
    REQUIRE(run_cli("inspect --input x.png") == 2);  // period missing
    REQUIRE(run_cli("inspect --input x.png --period-rows 1 --period-cols 20") == 2);
    REQUIRE(run_cli("inspect --input x.png --period-rows 20 --period-cols 20"
                    " --padding mirror") == 2);      // bad enum value
    REQUIRE(run_cli("synth --kind tartan") == 2);
    REQUIRE(run_cli("synth --periods-rows 2 --periods-cols 2 --defect bar --out " +
                    quoted(dir)) == 2);              // too small for a defect
    REQUIRE(run_cli("corpus") == 2);                 // --manifest missing
}

TEST_CASE("pipeline failures exit with status 1", "[cli]")
{
    const fs::path dir = fresh_dir("pipefail");
    REQUIRE(run_cli("inspect --input " + quoted(dir / "no_such.png") +
                    " --period-rows 20 --period-cols 20 --out " + quoted(dir)) == 1);

    {
        std::ofstream out(dir / "bad.csv");
        out << "not,a,valid,header,line\n";
    }
    REQUIRE(run_cli("corpus --manifest " + quoted(dir / "bad.csv")) == 1);
}

TEST_CASE("help exits cleanly", "[cli]")
{
    REQUIRE(run_cli("--help") == 0);
    REQUIRE(run_cli("inspect --help") == 0);
    REQUIRE(run_cli("synth --help") == 0);
}
