#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "basketsom/commands.hpp"
#include "basketsom/version.hpp"

namespace {

using namespace basketsom;

void add_format_flags(CLI::App* cmd, CsvFormatSpec& format,
                      std::string& delimiter, std::string& date_order) {
    cmd->add_option("--delimiter", delimiter,
                    "field delimiter of the input file")
        ->capture_default_str();
    cmd->add_option("--date-order", date_order,
                    "date component order: dmy, mdy or ymd")
        ->check(CLI::IsMember({"dmy", "mdy", "ymd"}))
        ->capture_default_str();
    cmd->add_option_function<std::string>(
           "--thousands",
           [&format](const std::string& value) {
               format.thousands_separator = value.empty() ? '\0' : value[0];
           },
           "thousands separator allowed inside prices");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string(kToolName) +
                 " - market-basket SOM analysis toolkit"};
    app.set_version_flag("--version",
                         std::string(kToolName) + " " +
                             std::string(kToolVersion));
    app.require_subcommand(1);

    int rc = 0;

    // ingest: raw transaction log -> basket matrix + catalog
    IngestOptions ingest;
    std::string ingest_delim = ";";
    std::string ingest_order = "dmy";
    auto* cmd_ingest = app.add_subcommand(
        "ingest", "parse a transaction log into binary basket vectors");
    cmd_ingest->set_config("--config");
    cmd_ingest->add_option("input", ingest.input, "transaction CSV file")
        ->required();
    cmd_ingest->add_option("--out-baskets", ingest.out_baskets,
                           "basket matrix output path")
        ->capture_default_str();
    cmd_ingest->add_option("--out-catalog", ingest.out_catalog,
                           "product catalog output path")
        ->capture_default_str();
    cmd_ingest->add_flag("--skip-bad-rows", ingest.skip_bad_rows,
                         "report invalid rows but keep going");
    add_format_flags(cmd_ingest, ingest.format, ingest_delim, ingest_order);
    cmd_ingest->callback([&] {
        if (!ingest_delim.empty()) ingest.format.delimiter = ingest_delim[0];
        if (ingest_order == "mdy")
            ingest.format.date_order = DateOrder::month_day_year;
        else if (ingest_order == "ymd")
            ingest.format.date_order = DateOrder::year_month_day;
        rc = run_ingest(ingest, std::cout, std::cerr);
    });

    // train: basket matrix -> trained map
    TrainOptions train;
    std::string init_mode = "random_binary";
    std::string schedule = "constant";
    double radius0 = 0.0;
    auto* cmd_train =
        app.add_subcommand("train", "train a self-organizing map");
    cmd_train->set_config("--config");
    cmd_train->add_option("baskets", train.baskets, "basket matrix file")
        ->required();
    cmd_train->add_option("--out", train.out, "trained map output path")
        ->capture_default_str();
    cmd_train->add_option("--rows", train.config.rows, "grid rows")
        ->capture_default_str();
    cmd_train->add_option("--cols", train.config.cols, "grid columns")
        ->capture_default_str();
    cmd_train
        ->add_option("--rate", train.config.learning_rate, "learning rate")
        ->capture_default_str();
    cmd_train
        ->add_option("--iters", train.config.iterations,
                     "training iterations")
        ->capture_default_str();
    cmd_train->add_option("--seed", train.config.seed, "generator seed")
        ->capture_default_str();
    cmd_train
        ->add_option("--init", init_mode,
                     "initialization: random_binary or random_uniform")
        ->check(CLI::IsMember({"random_binary", "random_uniform"}))
        ->capture_default_str();
    cmd_train
        ->add_option("--schedule", schedule,
                     "learning-rate schedule: constant or linear_decay")
        ->check(CLI::IsMember({"constant", "linear_decay"}))
        ->capture_default_str();
    cmd_train->add_option("--radius0", radius0,
                          "initial neighborhood radius "
                          "(default max(rows, cols)/2)");
    cmd_train
        ->add_option("--radius1", train.config.final_radius,
                     "final neighborhood radius")
        ->capture_default_str();
    cmd_train->callback([&] {
        train.config.init_mode = *parse_init_mode(init_mode);
        train.config.rate_schedule = *parse_rate_schedule(schedule);
        if (radius0 > 0.0) train.config.initial_radius = radius0;
        rc = run_train(train, std::cout, std::cerr);
    });

    // report: trained map + basket matrix -> analysis artifacts
    ReportOptions report;
    auto* cmd_report = app.add_subcommand(
        "report", "write U-matrix, cluster and statistics reports");
    cmd_report->set_config("--config");
    cmd_report->add_option("map", report.map, "trained map file")->required();
    cmd_report->add_option("baskets", report.baskets, "basket matrix file")
        ->required();
    cmd_report->add_option("--out-dir", report.out_dir, "output directory")
        ->capture_default_str();
    cmd_report
        ->add_option("--percentile", report.percentile,
                     "U-matrix percentile below which cells are clustered")
        ->capture_default_str();
    cmd_report
        ->add_option("--theta", report.theta,
                     "weight threshold for product association")
        ->capture_default_str();
    cmd_report
        ->add_option("--scale", report.scale,
                     "pixels per U-matrix cell in umatrix.pgm")
        ->capture_default_str();
    cmd_report->callback(
        [&] { rc = run_report(report, std::cout, std::cerr); });

    // synth: seeded synthetic basket matrix with planted groups
    SynthOptions synth;
    auto* cmd_synth = app.add_subcommand(
        "synth", "generate a synthetic basket matrix with planted groups");
    cmd_synth->set_config("--config");
    cmd_synth->add_option("--baskets", synth.baskets, "number of baskets")
        ->capture_default_str();
    cmd_synth->add_option("--products", synth.products, "number of products")
        ->capture_default_str();
    cmd_synth
        ->add_option("--groups", synth.groups,
                     "number of planted co-purchase groups")
        ->capture_default_str();
    cmd_synth->add_option("--p-in", synth.p_in,
                          "in-group purchase probability")
        ->capture_default_str();
    cmd_synth->add_option("--p-bg", synth.p_bg,
                          "background purchase probability")
        ->capture_default_str();
    cmd_synth->add_option("--seed", synth.seed, "generator seed")
        ->capture_default_str();
    cmd_synth->add_option("--out-baskets", synth.out_baskets,
                          "basket matrix output path")
        ->capture_default_str();
    cmd_synth->add_option("--out-catalog", synth.out_catalog,
                          "product catalog output path")
        ->capture_default_str();
    cmd_synth->callback([&] { rc = run_synth(synth, std::cout, std::cerr); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }
    return rc;
}
