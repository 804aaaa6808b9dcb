#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "basketsom/analysis.hpp"
#include "basketsom/errors.hpp"
#include "basketsom/report.hpp"
#include "basketsom/rng.hpp"
#include "basketsom/synth.hpp"
#include "test_util.hpp"

using namespace basketsom;

namespace {

UMatrix umatrix_of(int rows, int cols, std::vector<double> values) {
    UMatrix u;
    u.rows = rows;
    u.cols = cols;
    u.values = std::move(values);
    return u;
}

std::string pgm_bytes(const GrayscaleImage& image) {
    std::ostringstream out;
    write_pgm(out, image);
    return out.str();
}

}  // namespace

TEST_CASE("render_umatrix maps the value range onto 0..255") {
    SUBCASE("uniform matrix renders all black") {
        const auto image =
            render_umatrix(umatrix_of(2, 3, std::vector<double>(6, 4.2)), 1);
        CHECK(image.width == 3);
        CHECK(image.height == 2);
        for (const auto pixel : image.pixels) CHECK(pixel == 0);
    }
    SUBCASE("endpoints hit 0 and 255") {
        const auto image = render_umatrix(umatrix_of(1, 2, {0.0, 10.0}), 1);
        CHECK(image.pixels == std::vector<std::uint8_t>{0, 255});
    }
    SUBCASE("scale 2 expands each cell into a block, rounding half up") {
        const auto image =
            render_umatrix(umatrix_of(2, 2, {0.0, 5.0, 5.0, 10.0}), 2);
        CHECK(image.width == 4);
        CHECK(image.height == 4);
        const std::vector<std::uint8_t> expected = {
            0, 0, 128, 128,
            0, 0, 128, 128,
            128, 128, 255, 255,
            128, 128, 255, 255};
        CHECK(image.pixels == expected);
    }
    SUBCASE("scale must be positive") {
        CHECK_THROWS_AS(render_umatrix(umatrix_of(1, 2, {0, 1}), 0), Error);
    }
}

TEST_CASE("render_umatrix is monotone for a fixed value range") {
    SeededRng rng(51);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<double> values(12);
        for (double& v : values) v = rng.uniform_double();
        values[0] = 0.0;   // pin the range so both renders normalize alike
        values[11] = 1.0;
        std::vector<double> raised = values;
        for (std::size_t i = 1; i < 11; ++i)
            raised[i] = values[i] + (1.0 - values[i]) * rng.uniform_double();

        const auto a = render_umatrix(umatrix_of(3, 4, values), 1);
        const auto b = render_umatrix(umatrix_of(3, 4, raised), 1);
        for (std::size_t i = 0; i < a.pixels.size(); ++i)
            CHECK(a.pixels[i] <= b.pixels[i]);
    }
}

TEST_CASE("write_pgm emits the exact P5 byte layout") {
    GrayscaleImage one;
    one.width = 1;
    one.height = 1;
    one.pixels = {0};
    const std::string expected("P5\n1 1\n255\n\0", 12);
    CHECK(pgm_bytes(one) == expected);

    // 2x2 U-matrix rendered at scale 2, frozen byte for byte.
    const auto image =
        render_umatrix(umatrix_of(2, 2, {0.0, 5.0, 5.0, 10.0}), 2);
    const std::string bytes = pgm_bytes(image);
    std::string frozen = "P5\n4 4\n255\n";
    for (const unsigned char pixel :
         {0, 0, 128, 128, 0, 0, 128, 128, 128, 128, 255, 255, 128, 128, 255,
          255})
        frozen.push_back(static_cast<char>(pixel));
    CHECK(bytes == frozen);
}

TEST_CASE("write_pgm output parses back to the same image") {
    SeededRng rng(52);
    GrayscaleImage image;
    image.width = 7;
    image.height = 5;
    image.pixels.resize(35);
    for (auto& pixel : image.pixels)
        pixel = static_cast<std::uint8_t>(rng.uniform_index(256));

    const std::string bytes = pgm_bytes(image);
    const auto parsed = testutil::parse_pgm(bytes);
    CHECK(parsed.width == image.width);
    CHECK(parsed.height == image.height);
    CHECK(parsed.maxval == 255);
    CHECK(std::vector<unsigned char>(image.pixels.begin(),
                                     image.pixels.end()) == parsed.pixels);

    // header + one payload byte per pixel, nothing else
    const std::string header = "P5\n7 5\n255\n";
    CHECK(bytes.size() == header.size() + 35);
}

TEST_CASE("emit_grid_map renders dots for an unlabeled grid") {
    std::ostringstream out;
    emit_grid_map(out, 2, 3, {}, {});
    CHECK(out.str() == ". . .\n. . .\nlegend:\n");
}

TEST_CASE("emit_grid_map shows cluster ids, product ids and a legend") {
    std::map<CellIndex, std::vector<std::string>> labels;
    labels[{0, 0}] = {"Aceite vegetal"};
    std::vector<Cluster> clusters(1);
    clusters[0].id = 1;
    clusters[0].cells = {{0, 0}};

    std::ostringstream out;
    emit_grid_map(out, 1, 2, labels, clusters);
    const std::string text = out.str();
    CHECK(text.find("1:[1]") != std::string::npos);
    CHECK(text.find("1 Aceite vegetal") != std::string::npos);
}

TEST_CASE("emit_grid_map labels exactly the associated cells") {
    SynthSpec spec;
    spec.n_baskets = 600;
    spec.n_products = 8;
    spec.groups = {{{0, 1, 2, 3}, 0.85}, {{4, 5, 6, 7}, 0.85}};
    spec.p_bg = 0.05;
    spec.seed = 61;
    const auto baskets = generate(spec);
    const auto catalog = synth_catalog(8);

    SomConfig config;
    config.rows = 4;
    config.cols = 6;
    config.iterations = 1500;
    config.seed = 61;
    const auto [grid, report] = train(baskets, config);
    const auto labels = cell_associations(grid, catalog, 0.5);
    const auto umatrix = compute_umatrix(grid);
    const auto clusters = extract_clusters(umatrix);

    std::ostringstream out;
    emit_grid_map(out, grid.rows, grid.cols, labels, clusters);
    const std::string text = out.str();

    std::size_t labeled_cells = 0;
    for (const auto& [cell, names] : labels) labeled_cells += !names.empty();
    std::size_t rendered = 0;
    for (std::size_t pos = text.find(":["); pos != std::string::npos;
         pos = text.find(":[", pos + 2))
        ++rendered;
    CHECK(rendered == labeled_cells);
}

TEST_CASE("report CSV writers use the agreed columns and formats") {
    AssociationReport report;
    Cluster cluster;
    cluster.id = 1;
    cluster.cells = {{0, 0}, {0, 1}};
    cluster.dominant_products = {"Aceite", "Fideos"};
    report.clusters.push_back(cluster);
    report.cell_labels[{0, 0}] = {"Aceite", "Fideos"};
    report.cell_labels[{0, 1}] = {};
    report.support["Aceite"] = 0.4;
    report.support["Fideos"] = 1.0 / 3.0;
    report.confidence[{"Aceite", "Fideos"}] = 0.75;

    std::ostringstream clusters_csv;
    write_clusters_csv(clusters_csv, report);
    CHECK(clusters_csv.str() ==
          "cluster_id,cells,dominant_products\n"
          "1,0:0 0:1,Aceite|Fideos\n");

    std::ostringstream labels_csv;
    write_labels_csv(labels_csv, report);
    CHECK(labels_csv.str() ==
          "row,col,products\n"
          "0,0,Aceite|Fideos\n");

    std::ostringstream stats_csv;
    write_stats_csv(stats_csv, report);
    CHECK(stats_csv.str() ==
          "kind,product_a,product_b,value\n"
          "support,Aceite,,0.4000\n"
          "support,Fideos,,0.3333\n"
          "confidence,Aceite,Fideos,0.7500\n");
}
