#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <vector>

#include "texweave/config.hpp"
#include "texweave/fusion.hpp"
#include "texweave/synth.hpp"

using namespace texweave;

namespace {

block_grid grid_with_defects(int block_rows, int block_cols, const periodicity& p,
                             std::initializer_list<std::pair<int, int>> defects,
                             int row_offset = 0, int col_offset = 0)
{
    block_grid g;
    g.crop = {crop_corner::top_left, row_offset, col_offset, block_rows * p.rows,
              block_cols * p.cols};
    g.period = p;
    g.block_rows = block_rows;
    g.block_cols = block_cols;
    g.energies.assign(static_cast<std::size_t>(block_rows) * block_cols, 0.0);
    g.defective.assign(g.energies.size(), 0);
    for (auto [i, j] : defects)
        g.defective[static_cast<std::size_t>(i) * block_cols + j] = 1;
    return g;
}

int count_ones(const mask_raster& m)
{
    int n = 0;
    for (auto v : m)
        n += v != 0;
    return n;
}

// Chebyshev distance from (r, c) to the nearest set pixel; large if none
int nearest_set(const mask_raster& m, int r, int c)
{
    int best = 1 << 20;
    for (int rr = 0; rr < m.height(); ++rr)
        for (int cc = 0; cc < m.width(); ++cc)
            if (m(rr, cc))
                best = std::min(best, std::max(std::abs(rr - r), std::abs(cc - c)));
    return best;
}

} // namespace

TEST_CASE("one defective block draws a 96-pixel perimeter", "[fusion]")
{
    const periodicity p{25, 25};
    const std::array<block_grid, 1> grids{grid_with_defects(4, 4, p, {{0, 0}})};
    const mask_raster out = block_boundaries(grids, 100, 100);

    REQUIRE(count_ones(out) == 96); // 4 * 25 - 4
    for (int c = 0; c < 25; ++c) {
        REQUIRE(out(0, c) == 1);
        REQUIRE(out(24, c) == 1);
    }
    for (int r = 0; r < 25; ++r) {
        REQUIRE(out(r, 0) == 1);
        REQUIRE(out(r, 24) == 1);
    }
    REQUIRE(out(1, 1) == 0); // interior stays empty
    REQUIRE(out(12, 12) == 0);
    REQUIRE(out(25, 25) == 0); // neighbors untouched
}

TEST_CASE("boundaries respect the crop offset and overlay as a union", "[fusion]")
{
    const periodicity p{10, 10};
    const std::array<block_grid, 2> grids{
        grid_with_defects(3, 3, p, {{0, 0}}),
        grid_with_defects(3, 3, p, {{0, 0}}, 5, 5), // shifted crop, overlapping perimeter
    };
    const mask_raster out = block_boundaries(grids, 40, 40);

    // first grid's block spans rows/cols 0..9, second spans 5..14
    REQUIRE(out(0, 0) == 1);
    REQUIRE(out(5, 5) == 1);
    REQUIRE(out(14, 14) == 1);
    REQUIRE(out(9, 5) == 1); // crossing point stays 1, not 2
    for (auto v : out)
        REQUIRE((v == 0 || v == 1));

    const std::array<block_grid, 1> clean{grid_with_defects(3, 3, p, {})};
    REQUIRE(count_ones(block_boundaries(clean, 40, 40)) == 0);
}

TEST_CASE("hole filling closes perimeters and leaves open shapes alone", "[fusion]")
{
    SECTION("hollow rectangle becomes solid")
    {
        mask_raster m(20, 20, 0);
        for (int c = 4; c <= 13; ++c) {
            m(4, c) = 1;
            m(13, c) = 1;
        }
        for (int r = 4; r <= 13; ++r) {
            m(r, 4) = 1;
            m(r, 13) = 1;
        }
        const mask_raster filled = fill_holes(m);
        for (int r = 0; r < 20; ++r)
            for (int c = 0; c < 20; ++c)
                REQUIRE(filled(r, c) == ((r >= 4 && r <= 13 && c >= 4 && c <= 13) ? 1 : 0));
    }

    SECTION("all-zero stays all-zero")
    {
        REQUIRE(count_ones(fill_holes(mask_raster(15, 9, 0))) == 0);
    }

    SECTION("a gap connects the inside to the border")
    {
        mask_raster m(10, 10, 0);
        for (int c = 2; c <= 7; ++c) {
            m(2, c) = 1;
            m(7, c) = 1;
        }
        for (int r = 2; r <= 7; ++r)
            m(r, 2) = 1;
        // right wall missing: interior is reachable, nothing gets filled
        REQUIRE(fill_holes(m) == m);
    }

    SECTION("nested perimeters fill to the outer extent")
    {
        mask_raster m(30, 30, 0);
        auto ring = [&](int lo, int hi) {
            for (int c = lo; c <= hi; ++c) {
                m(lo, c) = 1;
                m(hi, c) = 1;
            }
            for (int r = lo; r <= hi; ++r) {
                m(r, lo) = 1;
                m(r, hi) = 1;
            }
        };
        ring(3, 24);
        ring(9, 18);
        const mask_raster filled = fill_holes(m);
        for (int r = 0; r < 30; ++r)
            for (int c = 0; c < 30; ++c)
                REQUIRE(filled(r, c) == ((r >= 3 && r <= 24 && c >= 3 && c <= 24) ? 1 : 0));
    }

    SECTION("filling is idempotent on random rectangle unions")
    {
        std::mt19937_64 eng(23);
        for (int trial = 0; trial < 30; ++trial) {
            mask_raster m(24, 24, 0);
            const int rects = 1 + static_cast<int>(eng() % 4);
            for (int k = 0; k < rects; ++k) {
                const int r0 = static_cast<int>(eng() % 16);
                const int c0 = static_cast<int>(eng() % 16);
                const int r1 = r0 + 3 + static_cast<int>(eng() % 6);
                const int c1 = c0 + 3 + static_cast<int>(eng() % 6);
                for (int c = c0; c <= std::min(c1, 23); ++c) {
                    m(r0, c) = 1;
                    m(std::min(r1, 23), c) = 1;
                }
                for (int r = r0; r <= std::min(r1, 23); ++r) {
                    m(r, c0) = 1;
                    m(r, std::min(c1, 23)) = 1;
                }
            }
            const mask_raster once = fill_holes(m);
            REQUIRE(fill_holes(once) == once);
            // filling never erases anything
            for (std::size_t i = 0; i < m.size(); ++i)
                REQUIRE(once[i] >= m[i]);
        }
    }
}

TEST_CASE("edge tracing hugs the mask outline", "[fusion][canny]")
{
    SECTION("empty mask yields no edges")
    {
        REQUIRE(count_ones(canny_edges(mask_raster(32, 32, 0), {})) == 0);
    }

    SECTION("solid square produces a thin ring near its boundary")
    {
        mask_raster m(100, 100, 0);
        for (int r = 30; r < 70; ++r)
            for (int c = 40; c < 80; ++c)
                m(r, c) = 1;
        const mask_raster edges = canny_edges(m, {});
        REQUIRE(count_ones(edges) > 0);

        mask_raster outline(100, 100, 0);
        for (int r = 30; r < 70; ++r)
            for (int c = 40; c < 80; ++c)
                if (r == 30 || r == 69 || c == 40 || c == 79)
                    outline(r, c) = 1;

        // every edge pixel sits within 2 px of the outline, and the outline
        // is covered within 2 px by edges (corners round off slightly)
        for (int r = 0; r < 100; ++r)
            for (int c = 0; c < 100; ++c) {
                if (edges(r, c)) {
                    INFO("edge pixel (" << r << "," << c << ")");
                    REQUIRE(nearest_set(outline, r, c) <= 2);
                }
                if (outline(r, c)) {
                    INFO("outline pixel (" << r << "," << c << ")");
                    REQUIRE(nearest_set(edges, r, c) <= 2);
                }
            }

        // thin: far fewer edge pixels than the solid area
        REQUIRE(count_ones(edges) < 40 * 40 / 2);
    }

    SECTION("a lone pixel cannot produce a sprawling response")
    {
        mask_raster m(40, 40, 0);
        m(20, 20) = 1;
        const mask_raster edges = canny_edges(m, {});
        for (int r = 0; r < 40; ++r)
            for (int c = 0; c < 40; ++c)
                if (edges(r, c))
                    REQUIRE((std::abs(r - 20) <= 3 && std::abs(c - 20) <= 3));
    }
}

TEST_CASE("inspect isolates a single overwritten block exactly", "[fusion][pipeline]")
{
    synth_params sp;
    sp.kind = texture_kind::checker;
    sp.periods_rows = sp.periods_cols = 8;
    sp.unit = {25, 25};
    sp.noise = 0.0;
    raster img = make_texture(sp).image;
    for (int r = 50; r < 75; ++r)
        for (int c = 75; c < 100; ++c)
            img(r, c) = 0.95;

    const run_config rc;
    const inspection_report report =
        inspect(img, sp.unit, bank_config_for_period(sp.unit), options_from_config(rc));

    // 200 = 8 * 25 exactly: the four crops coincide, so the verdict is the
    // union of four identical grids and the mask is that one block footprint
    for (int r = 0; r < 200; ++r)
        for (int c = 0; c < 200; ++c) {
            INFO("pixel (" << r << "," << c << ")");
            REQUIRE(report.mask(r, c) == ((r >= 50 && r < 75 && c >= 75 && c < 100) ? 1 : 0));
        }

    for (const crop_analysis& crop : report.crops) {
        REQUIRE_FALSE(crop.gate_suppressed);
        int flagged = 0;
        for (auto d : crop.grid.defective)
            flagged += d != 0;
        REQUIRE(flagged == 1);
        REQUIRE(crop.grid.is_defective(2, 3));
    }

    // edges trace the mask outline
    REQUIRE(count_ones(report.edges) > 0);
    mask_raster outline(200, 200, 0);
    for (int r = 50; r < 75; ++r)
        for (int c = 75; c < 100; ++c)
            if (r == 50 || r == 74 || c == 75 || c == 99)
                outline(r, c) = 1;
    for (int r = 0; r < 200; ++r)
        for (int c = 0; c < 200; ++c)
            if (report.edges(r, c))
                REQUIRE(nearest_set(outline, r, c) <= 2);
}

TEST_CASE("inspect is deterministic run to run", "[fusion][pipeline]")
{
    synth_params sp;
    sp.kind = texture_kind::stripes;
    sp.periods_rows = sp.periods_cols = 4;
    sp.unit = {20, 20};
    sp.defect = defect_kind::hole;
    sp.seed = 77;
    const raster img = make_texture(sp).image;

    inspect_options opts;
    opts.jobs = 4;
    const inspection_report a = inspect(img, sp.unit, bank_config_for_period(sp.unit), opts);
    const inspection_report b = inspect(img, sp.unit, bank_config_for_period(sp.unit), opts);
    REQUIRE(a.gabor_image == b.gabor_image);
    REQUIRE(a.mask == b.mask);
    REQUIRE(a.edges == b.edges);
    for (int i = 0; i < 4; ++i) {
        REQUIRE(a.crops[i].grid.defective == b.crops[i].grid.defective);
        REQUIRE(a.crops[i].grid.energies == b.crops[i].grid.energies);
    }
}

TEST_CASE("isolated defective blocks fill to their exact rectangles", "[fusion]")
{
    const periodicity p{10, 10};
    const std::array<block_grid, 1> grids{grid_with_defects(5, 5, p, {{0, 0}, {3, 4}})};
    const mask_raster filled = fill_holes(block_boundaries(grids, 50, 50));
    for (int r = 0; r < 50; ++r)
        for (int c = 0; c < 50; ++c) {
            const bool a = r < 10 && c < 10;
            const bool b = r >= 30 && r < 40 && c >= 40;
            REQUIRE(filled(r, c) == ((a || b) ? 1 : 0));
        }
}

TEST_CASE("separation gate mutes clean fabric but not real defects", "[fusion][gate]")
{
    synth_params sp;
    sp.kind = texture_kind::checker;
    sp.periods_rows = sp.periods_cols = 8;
    sp.unit = {25, 25};
    sp.seed = 5;

    inspect_options opts;
    opts.padding = padding_mode::wrap; // keeps border energy periodic, see README
    opts.min_separation = 1e6;

    SECTION("clean texture: every crop suppressed, empty mask")
    {
        const raster img = make_texture(sp).image;
        const inspection_report report = inspect(img, sp.unit, bank_config_for_period(sp.unit), opts);
        for (const crop_analysis& crop : report.crops) {
            REQUIRE(crop.gate_suppressed);
            for (auto d : crop.grid.defective)
                REQUIRE(d == 0);
        }
        REQUIRE(count_ones(report.mask) == 0);
        REQUIRE(count_ones(report.edges) == 0);
    }

    SECTION("defective texture: gate stays open and the defect is found")
    {
        sp.defect = defect_kind::bar;
        const raster img = make_texture(sp).image;
        const inspection_report report = inspect(img, sp.unit, bank_config_for_period(sp.unit), opts);
        bool any_open = false;
        for (const crop_analysis& crop : report.crops)
            any_open = any_open || !crop.gate_suppressed;
        REQUIRE(any_open);
        REQUIRE(count_ones(report.mask) > 0);
    }
}
