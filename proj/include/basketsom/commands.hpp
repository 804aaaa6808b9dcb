#pragma once

#include <cstdint>
#include <ostream>
#include <string>

#include "basketsom/ingest.hpp"
#include "basketsom/som.hpp"

// Subcommand bodies behind the CLI. Each returns a process exit code:
// 0 success, 1 validation/parse error, 2 I/O error. Flag parsing lives in
// tools/; these take already-filled option structs so tests can drive them
// directly.
namespace basketsom {

struct IngestOptions {
    std::string input;
    std::string out_baskets = "baskets.csv";
    std::string out_catalog = "catalog.txt";
    CsvFormatSpec format;
    bool skip_bad_rows = false;  // report and continue instead of failing
};

int run_ingest(const IngestOptions& options, std::ostream& out,
               std::ostream& err);

struct TrainOptions {
    std::string baskets;
    std::string out = "map.som";
    SomConfig config;
};

int run_train(const TrainOptions& options, std::ostream& out,
              std::ostream& err);

struct ReportOptions {
    std::string map;
    std::string baskets;
    std::string out_dir = "report";
    double percentile = 40.0;
    double theta = 0.5;
    int scale = 10;
};

int run_report(const ReportOptions& options, std::ostream& out,
               std::ostream& err);

struct SynthOptions {
    std::size_t baskets = 5000;
    std::size_t products = 30;
    int groups = 3;
    double p_in = 0.8;
    double p_bg = 0.05;
    std::uint64_t seed = 1;
    std::string out_baskets = "baskets.csv";
    std::string out_catalog = "catalog.txt";
};

int run_synth(const SynthOptions& options, std::ostream& out,
              std::ostream& err);

}  // namespace basketsom
