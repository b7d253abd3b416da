#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "texweave/blocks.hpp"

using namespace texweave;
using Catch::Matchers::WithinAbs;

TEST_CASE("crop sizes are the largest periodic multiples", "[blocks]")
{
    REQUIRE(crop_sizes(99, 120, {25, 30}) == std::pair{75, 120});
    REQUIRE(crop_sizes(256, 256, {25, 25}) == std::pair{250, 250});
    REQUIRE(crop_sizes(250, 250, {25, 25}) == std::pair{250, 250}); // exact multiple
    REQUIRE(crop_sizes(50, 60, {25, 30}) == std::pair{50, 60});

    REQUIRE_THROWS_AS(crop_sizes(49, 120, {25, 30}), std::invalid_argument);
    REQUIRE_THROWS_AS(crop_sizes(120, 59, {25, 30}), std::invalid_argument);
    REQUIRE_THROWS_AS(crop_sizes(120, 120, {0, 30}), std::invalid_argument);
}

TEST_CASE("four corner crops share size and absorb the residue", "[blocks]")
{
    const auto crops = four_corner_crops(256, 256, {25, 25});
    REQUIRE(crops[0].corner == crop_corner::top_left);
    REQUIRE(crops[1].corner == crop_corner::top_right);
    REQUIRE(crops[2].corner == crop_corner::bottom_left);
    REQUIRE(crops[3].corner == crop_corner::bottom_right);
    for (const auto& c : crops) {
        REQUIRE(c.crop_height == 250);
        REQUIRE(c.crop_width == 250);
    }
    REQUIRE(crops[0].row_offset == 0);
    REQUIRE(crops[0].col_offset == 0);
    REQUIRE(crops[1].row_offset == 0);
    REQUIRE(crops[1].col_offset == 6);
    REQUIRE(crops[2].row_offset == 6);
    REQUIRE(crops[2].col_offset == 0);
    REQUIRE(crops[3].row_offset == 6);
    REQUIRE(crops[3].col_offset == 6);

    // exact multiple: all four crops collapse onto the same region
    for (const auto& c : four_corner_crops(250, 250, {25, 25})) {
        REQUIRE(c.row_offset == 0);
        REQUIRE(c.col_offset == 0);
    }
}

TEST_CASE("crop geometry holds for every valid image size", "[blocks]")
{
    // exhaustive sweep; cheap enough to check the full invariant set
    for (int m = 10; m <= 64; ++m)
        for (int n = 10; n <= 64; ++n) {
            const periodicity p{5, 4};
            const auto [ch, cw] = crop_sizes(m, n, p);
            REQUIRE(ch % p.rows == 0);
            REQUIRE(cw % p.cols == 0);
            REQUIRE(ch <= m);
            REQUIRE(cw <= n);
            REQUIRE(m - ch < p.rows);
            REQUIRE(n - cw < p.cols);
            for (const auto& c : four_corner_crops(m, n, p)) {
                REQUIRE(c.row_offset >= 0);
                REQUIRE(c.col_offset >= 0);
                REQUIRE(c.row_offset + c.crop_height <= m);
                REQUIRE(c.col_offset + c.crop_width <= n);
            }
        }
}

TEST_CASE("block energies sum the fused response per periodic unit", "[blocks]")
{
    const periodicity p{25, 25};

    SECTION("zeros stay zero")
    {
        raster fused(100, 100, 0.0);
        const auto grid = block_energies(fused, four_corner_crops(100, 100, p)[0], p);
        REQUIRE(grid.block_rows == 4);
        REQUIRE(grid.block_cols == 4);
        for (double e : grid.energies)
            REQUIRE(e == 0.0);
        for (auto d : grid.defective)
            REQUIRE(d == 0);
    }

    SECTION("constant image gives the block pixel count")
    {
        raster fused(100, 100, 1.0);
        const auto grid = block_energies(fused, four_corner_crops(100, 100, p)[0], p);
        for (double e : grid.energies)
            REQUIRE_THAT(e, WithinAbs(625.0, 1e-12));
    }

    SECTION("a lone pixel lands in exactly one block")
    {
        raster fused(110, 110, 0.0);
        fused(30, 40) = 10.0;
        const auto grid = block_energies(fused, four_corner_crops(110, 110, p)[0], p);
        for (int i = 0; i < grid.block_rows; ++i)
            for (int j = 0; j < grid.block_cols; ++j)
                REQUIRE(grid.energy(i, j) == ((i == 1 && j == 1) ? 10.0 : 0.0));
    }
}

TEST_CASE("block energies agree with direct arithmetic on random data", "[blocks]")
{
    std::mt19937_64 eng(42);
    auto uniform = [&] { return static_cast<double>(eng() >> 11) * 0x1.0p-53; };

    for (int trial = 0; trial < 25; ++trial) {
        const periodicity p{3 + static_cast<int>(eng() % 5), 3 + static_cast<int>(eng() % 5)};
        const int h = 2 * p.rows + static_cast<int>(eng() % 20);
        const int w = 2 * p.cols + static_cast<int>(eng() % 20);
        raster fused(h, w);
        for (double& v : fused)
            v = uniform();

        for (const auto& crop : four_corner_crops(h, w, p)) {
            const auto grid = block_energies(fused, crop, p);

            double crop_total = 0.0;
            for (int r = 0; r < crop.crop_height; ++r)
                for (int c = 0; c < crop.crop_width; ++c)
                    crop_total += fused(crop.row_offset + r, crop.col_offset + c);

            double energy_total = 0.0;
            for (int i = 0; i < grid.block_rows; ++i)
                for (int j = 0; j < grid.block_cols; ++j) {
                    double direct = 0.0;
                    for (int r = 0; r < p.rows; ++r)
                        for (int c = 0; c < p.cols; ++c)
                            direct += fused(crop.row_offset + i * p.rows + r,
                                            crop.col_offset + j * p.cols + c);
                    REQUIRE_THAT(grid.energy(i, j), WithinAbs(direct, 1e-9));
                    energy_total += grid.energy(i, j);
                }
            // tiling covers the crop exactly once
            REQUIRE_THAT(energy_total, WithinAbs(crop_total, 1e-6));
        }
    }
}

TEST_CASE("block energies validate the crop", "[blocks]")
{
    raster fused(50, 50, 0.0);
    const periodicity p{10, 10};

    crop_spec bad{crop_corner::top_left, 0, 0, 45, 50}; // height not a multiple
    REQUIRE_THROWS_AS(block_energies(fused, bad, p), std::invalid_argument);

    crop_spec outside{crop_corner::top_left, 20, 0, 40, 50}; // runs past the bottom
    REQUIRE_THROWS_AS(block_energies(fused, outside, p), std::invalid_argument);

    crop_spec negative{crop_corner::top_left, -1, 0, 40, 50};
    REQUIRE_THROWS_AS(block_energies(fused, negative, p), std::invalid_argument);

    crop_spec empty{crop_corner::top_left, 0, 0, 0, 50};
    REQUIRE_THROWS_AS(block_energies(fused, empty, p), std::invalid_argument);
}
