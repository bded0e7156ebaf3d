#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "lca/core.hpp"
#include "lca/distance.hpp"

namespace lca {

enum class RankingFormat { Ranks, Order, Buckets };

RankingFormat ranking_format_from_string(const std::string& name);
std::string to_string(RankingFormat format);

/// Line-oriented ranking files. Blank lines and `#` comments are skipped;
/// a `# n=N` directive pins the ground-set size (needed when every line
/// ends in an unrated tail `|*`). An explicit n_hint takes precedence.
RankingSample parse_rankings(std::istream& in, RankingFormat format, int n_hint = 0);
RankingSample parse_rankings_file(const std::string& path, RankingFormat format, int n_hint = 0);

void write_rankings(std::ostream& out, const RankingSample& sample, RankingFormat format);
std::string format_ranking(const Ranking& ranking, RankingFormat format);

enum class DatasetKind { Sushi, JesterPermutations, JesterPartial, MovieLens };

DatasetKind dataset_kind_from_string(const std::string& name);

struct ImportOptions {
    int n = 0;           // ground-set size; sushi defaults to 10, jester to the column count
    int top_items = 50;  // movielens: most-rated movies kept
    int top_users = 500; // movielens: users with the largest coverage of those movies
    int max_users = 0;   // 0 = keep everyone
};

RankingSample import_dataset(DatasetKind kind, const std::string& path,
                             const ImportOptions& options = {});

struct ExperimentConfig {
    std::vector<std::string> methods;
    Metric metric = Metric::Kendall;
    int n = 10;
    int m = 50;
    int trials = 50;
    std::vector<double> lambda_grid;  // phi = exp(-lambda); takes precedence when set
    std::vector<double> phi_grid;
    std::uint64_t seed = 0;
    std::string dataset_kind;  // empty = synthetic
    std::string dataset_path;
    ImportOptions import_options;
    std::string synthetic_model = "mallows";  // mallows | gmm
    std::string reference;                    // ratio column baseline; default first method
    std::string bucketize = "none";           // none | greedy | optimal (lc-* methods)
    int restarts = 5;
    int threads = 1;
    bool compose_pivot_with_best_pick = true;
    bool include_timing = true;  // wall-time column is inherently run-dependent
    std::string output_path;     // empty = stdout

    static ExperimentConfig from_json_file(const std::string& path);
    static ExperimentConfig from_json_text(const std::string& text);

    void check() const;
};

struct BenchRow {
    std::string method;
    double grid_value = 0.0;
    int trials = 0;
    double mean_dav = 0.0;
    double stddev = 0.0;
    double ratio = 0.0;
    double wall_seconds = 0.0;
    bool available = true;
};

struct BenchReport {
    std::vector<BenchRow> rows;
    bool include_timing = true;

    std::string to_csv() const;
};

/// Known aggregation methods, in registry order.
const std::vector<std::string>& registered_methods();

/// Runs trials x grid for every configured method and reports per-method
/// average distances. Per-trial seeds derive from (seed, grid index, trial
/// index), so results do not depend on the thread count.
BenchReport run_benchmark(const ExperimentConfig& config);

/// CLI entry points. run_cli works on explicit streams so end-to-end tests
/// can drive every subcommand in-process.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err);
int cli_main(int argc, char** argv);

}  // namespace lca
