#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <sstream>

#include <CLI11.hpp>

#include "lca/aggregate.hpp"
#include "lca/baselines.hpp"
#include "lca/io.hpp"
#include "lca/lehmer.hpp"
#include "lca/models.hpp"
#include "lca/rng.hpp"

namespace lca {

namespace {

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> values;
    std::string item;
    std::istringstream stream(text);
    while (std::getline(stream, item, ',')) {
        if (item.empty()) continue;
        values.push_back(std::stod(item));
    }
    return values;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> values;
    for (double v : parse_double_list(text)) values.push_back(static_cast<int>(v));
    return values;
}

std::vector<std::string> parse_string_list(const std::string& text) {
    std::vector<std::string> values;
    std::string item;
    std::istringstream stream(text);
    while (std::getline(stream, item, ',')) {
        if (!item.empty()) values.push_back(item);
    }
    return values;
}

RankingSample load_sample(const std::string& path, RankingFormat format, int n_hint,
                          std::istream& in) {
    if (path.empty() || path == "-") return parse_rankings(in, format, n_hint);
    return parse_rankings_file(path, format, n_hint);
}

class OutputTarget {
public:
    OutputTarget(const std::string& path, std::ostream& fallback) {
        if (!path.empty() && path != "-") {
            file_.open(path);
            if (!file_) raise(ErrorKind::FormatError, "cannot write '" + path + "'");
            stream_ = &file_;
        } else {
            stream_ = &fallback;
        }
    }
    std::ostream& stream() { return *stream_; }

private:
    std::ofstream file_;
    std::ostream* stream_ = nullptr;
};

std::string join_ints(const std::vector<int>& values) {
    std::ostringstream out;
    for (size_t i = 0; i < values.size(); ++i) {
        if (i > 0) out << ' ';
        out << values[i];
    }
    return out.str();
}

bool is_randomized(const std::string& method) {
    return method == "fas-pivot" || method == "insertion-comp" || method == "pick-a-perm";
}

int run_verify(const std::string& check, int n, double phi, const std::string& phi_grid,
               const std::string& n_grid, const std::string& input, double tolerance,
               std::istream& in, std::ostream& out) {
    bool all_pass = true;
    const std::vector<double> phis =
        phi_grid.empty() ? std::vector<double>{0.1, 0.2, 0.3} : parse_double_list(phi_grid);
    const std::vector<int> ns =
        n_grid.empty() ? std::vector<int>{4, 5, 6} : parse_int_list(n_grid);

    if (check == "remark" || check == "all") {
        const MallowsParams params(Permutation::identity(n), phi);
        const MallowsPmf pmf = exact_mallows_pmf(params);
        const int u = std::min(3, n);
        const std::vector<Rational> marginal = pmf.rank_marginal(u);
        out << "exact marginals of element " << u << " (n=" << n << ", phi=" << phi << "):\n";
        for (int j = 1; j <= n; ++j)
            out << "  P[rank=" << j << "] = " << std::fixed << std::setprecision(6)
                << to_double(marginal[static_cast<size_t>(j) - 1]) << "\n";
        out.unsetf(std::ios::fixed);
        RankingSample empirical;
        if (check == "remark" && !input.empty())
            empirical = load_sample(input, RankingFormat::Ranks, n, in);
        if (!empirical.empty()) {
            std::vector<double> freq(static_cast<size_t>(n), 0.0);
            for (int i = 0; i < empirical.size(); ++i)
                freq[static_cast<size_t>(
                    std::get<Permutation>(empirical.at(i)).rank_of(u) - 1)] += 1.0;
            for (double& f : freq) f /= empirical.size();
            bool ok = true;
            for (int j = 1; j <= n; ++j) {
                const double exact = to_double(marginal[static_cast<size_t>(j) - 1]);
                const double dev = std::abs(freq[static_cast<size_t>(j) - 1] - exact);
                out << "  empirical P[rank=" << j << "] = " << freq[static_cast<size_t>(j) - 1]
                    << " (dev " << dev << ")\n";
                if (dev > tolerance) ok = false;
            }
            out << (ok ? "remark: PASS" : "remark: FAIL") << " (tolerance " << tolerance
                << ", m=" << empirical.size() << ")\n";
            all_pass = all_pass && ok;
        }
    }

    if (check == "lemma-ratios" || check == "all") {
        for (double p : phis)
            for (int nn : ns) {
                const MallowsParams params(Permutation::identity(nn), p);
                bool ok = true;
                std::vector<int> full(static_cast<size_t>(nn));
                std::iota(full.begin(), full.end(), 1);
                std::vector<int> subset(full.begin() + 1, full.end());
                for (int u = 1; u <= nn; ++u) {
                    if (!check_lemma_position_ratios(params, u, full).pass) ok = false;
                    if (u > 1 && !check_lemma_position_ratios(params, u, subset).pass) ok = false;
                }
                out << "lemma-ratios phi=" << p << " n=" << nn << ": "
                    << (ok ? "PASS" : "FAIL") << "\n";
                all_pass = all_pass && ok;
            }
    }

    if (check == "lemma-tails" || check == "all") {
        for (double p : phis)
            for (int nn : ns) {
                const MallowsParams params(Permutation::identity(nn), p);
                bool ok = true;
                std::vector<int> full(static_cast<size_t>(nn));
                std::iota(full.begin(), full.end(), 1);
                std::vector<int> subset(full.begin() + 1, full.end());
                for (int u = 1; u <= nn; ++u) {
                    if (!check_lemma_tail_bounds(params, u, full).pass) ok = false;
                    if (u > 1 && !check_lemma_tail_bounds(params, u, subset).pass) ok = false;
                }
                out << "lemma-tails phi=" << p << " n=" << nn << ": "
                    << (ok ? "PASS" : "FAIL") << "\n";
                all_pass = all_pass && ok;
            }
    }

    if (check == "vote-bound" || check == "all") {
        for (double p : phis)
            for (int nn : ns) {
                if (nn > 6) continue;
                bool ok = true;
                std::vector<int> full(static_cast<size_t>(nn));
                std::iota(full.begin(), full.end(), 1);
                // a permutation centroid and a two-bucket centroid
                std::vector<PartialRanking> centroids;
                centroids.push_back(PartialRanking::from_permutation(Permutation::identity(nn)));
                std::vector<int> halves(static_cast<size_t>(nn), 2);
                for (int x = 1; x <= (nn + 1) / 2; ++x) halves[static_cast<size_t>(x) - 1] = 1;
                centroids.push_back(PartialRanking(std::move(halves)));
                for (const PartialRanking& sigma0 : centroids) {
                    const GmmParams params(sigma0, p);
                    for (int u = 1; u <= nn; ++u)
                        if (!check_partial_vote_bound(params, u, full).pass) ok = false;
                }
                out << "vote-bound phi=" << p << " n=" << nn << ": "
                    << (ok ? "PASS" : "FAIL") << "\n";
                all_pass = all_pass && ok;
            }
    }

    out << (all_pass ? "verify: PASS" : "verify: FAIL") << "\n";
    return all_pass ? 0 : 2;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err) {
    CLI::App app{"Rank aggregation via Lehmer codes"};
    app.require_subcommand(1);

    // encode
    auto* encode_cmd = app.add_subcommand("encode", "Lehmer-encode rankings");
    std::string enc_input = "-", enc_output = "-", enc_format = "ranks";
    int enc_n = 0;
    encode_cmd->add_option("--input,-i", enc_input, "rankings file, - for stdin");
    encode_cmd->add_option("--output,-o", enc_output, "output file, - for stdout");
    encode_cmd->add_option("--format,-f", enc_format, "ranks|order|buckets");
    encode_cmd->add_option("--n", enc_n, "ground-set size hint");

    // decode
    auto* decode_cmd = app.add_subcommand("decode", "invert Lehmer codes");
    std::string dec_input = "-", dec_output = "-";
    bool dec_partial = false;
    decode_cmd->add_option("--input,-i", dec_input, "code file, - for stdin");
    decode_cmd->add_option("--output,-o", dec_output, "output file, - for stdout");
    decode_cmd->add_flag("--partial", dec_partial, "read 'c | c-prime' pairs");

    // distance
    auto* dist_cmd = app.add_subcommand("distance", "distances between rankings");
    std::string dist_metric = "kendall", dist_format = "ranks";
    std::string dist_a, dist_b;
    int dist_n = 0;
    dist_cmd->add_option("fileA", dist_a, "first rankings file")->required();
    dist_cmd->add_option("fileB", dist_b, "second rankings file (default: identity)");
    dist_cmd->add_option("--metric,-m", dist_metric, "kendall|kemeny|kemeny-unrated|footrule");
    dist_cmd->add_option("--format,-f", dist_format, "ranks|order|buckets");
    dist_cmd->add_option("--n", dist_n, "ground-set size hint");

    // aggregate
    auto* agg_cmd = app.add_subcommand("aggregate", "aggregate a set of rankings");
    std::string agg_method;
    std::string agg_input = "-", agg_output = "-", agg_format = "ranks";
    std::string agg_bucketize = "none", agg_metric;
    std::uint64_t agg_seed = 0;
    int agg_restarts = 5, agg_threads = 1, agg_n = 0;
    agg_cmd
        ->add_option("--method", agg_method,
                     "lc-median|lc-mode|borda|fas-pivot|insertion-comp|spearman|pick-a-perm")
        ->required();
    agg_cmd->add_option("--input,-i", agg_input, "rankings file, - for stdin");
    agg_cmd->add_option("--output,-o", agg_output, "output file, - for stdout");
    agg_cmd->add_option("--format,-f", agg_format, "ranks|order|buckets");
    agg_cmd->add_option("--n", agg_n, "ground-set size hint");
    agg_cmd->add_option("--bucketize", agg_bucketize, "none|greedy|optimal");
    agg_cmd->add_option("--metric", agg_metric, "objective metric (default: by input kind)");
    auto* agg_seed_opt = agg_cmd->add_option("--seed", agg_seed, "RNG seed");
    agg_cmd->add_option("--restarts", agg_restarts, "restarts for randomized methods");
    agg_cmd->add_option("--threads", agg_threads, "worker threads");

    // sample
    auto* sample_cmd = app.add_subcommand("sample", "draw from a ranking model");
    std::string sample_model;
    int sample_n = 10, sample_m = 1;
    double sample_phi = -1.0, sample_lambda = -1.0;
    std::uint64_t sample_seed = 0;
    std::string sample_centroid, sample_output = "-", sample_format;
    int sample_burn_in = -1, sample_thinning = -1;
    sample_cmd->add_option("model", sample_model, "mallows|gmm")->required();
    sample_cmd->add_option("--n", sample_n, "ground-set size");
    sample_cmd->add_option("--m", sample_m, "number of draws");
    sample_cmd->add_option("--phi", sample_phi, "dispersion in (0,1]");
    sample_cmd->add_option("--lambda", sample_lambda, "dispersion as phi = exp(-lambda)");
    sample_cmd->add_option("--seed", sample_seed, "RNG seed")->required();
    sample_cmd->add_option("--centroid", sample_centroid,
                           "centroid file (ranks for mallows, buckets for gmm)");
    sample_cmd->add_option("--output,-o", sample_output, "output file, - for stdout");
    sample_cmd->add_option("--format,-f", sample_format, "output format");
    sample_cmd->add_option("--burn-in", sample_burn_in, "Metropolis burn-in (gmm, n > 7)");
    sample_cmd->add_option("--thinning", sample_thinning, "Metropolis thinning (gmm, n > 7)");

    // import
    auto* import_cmd = app.add_subcommand("import", "convert a public dataset");
    std::string import_kind, import_path, import_output = "-";
    ImportOptions import_options;
    import_cmd->add_option("--kind", import_kind, "sushi|jester-perm|jester-partial|movielens")
        ->required();
    import_cmd->add_option("--path", import_path, "source file")->required();
    import_cmd->add_option("--output,-o", import_output, "output file, - for stdout");
    import_cmd->add_option("--n", import_options.n, "element count (sushi, jester)");
    import_cmd->add_option("--top-items", import_options.top_items, "movielens: movies kept");
    import_cmd->add_option("--top-users", import_options.top_users, "movielens: users kept");
    import_cmd->add_option("--max-users", import_options.max_users, "cap on imported users");

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "run the benchmark harness");
    std::string bench_config;
    std::string bench_methods, bench_metric, bench_lambda_grid, bench_phi_grid;
    std::string bench_dataset_kind, bench_dataset_path, bench_synthetic, bench_reference;
    std::string bench_bucketize, bench_output;
    int bench_n = 0, bench_m = 0, bench_trials = 0, bench_restarts = 0, bench_threads = 0;
    std::uint64_t bench_seed = 0;
    bool bench_no_timing = false, bench_no_compose = false;
    bench_cmd->add_option("--config", bench_config, "JSON config file");
    bench_cmd->add_option("--methods", bench_methods, "comma-separated method list");
    bench_cmd->add_option("--metric", bench_metric, "evaluation metric");
    bench_cmd->add_option("--n", bench_n, "elements (synthetic)");
    bench_cmd->add_option("--m", bench_m, "rankings per trial");
    bench_cmd->add_option("--trials", bench_trials, "trials per grid point");
    bench_cmd->add_option("--lambda-grid", bench_lambda_grid, "comma-separated lambdas");
    bench_cmd->add_option("--phi-grid", bench_phi_grid, "comma-separated phis");
    auto* bench_seed_opt = bench_cmd->add_option("--seed", bench_seed, "master seed");
    bench_cmd->add_option("--dataset-kind", bench_dataset_kind, "dataset instead of synthetic");
    bench_cmd->add_option("--dataset-path", bench_dataset_path, "dataset file");
    bench_cmd->add_option("--synthetic", bench_synthetic, "mallows|gmm");
    bench_cmd->add_option("--reference", bench_reference, "method for the ratio column");
    bench_cmd->add_option("--bucketize", bench_bucketize, "none|greedy|optimal");
    bench_cmd->add_option("--restarts", bench_restarts, "restarts for randomized methods");
    bench_cmd->add_option("--threads", bench_threads, "worker threads");
    bench_cmd->add_option("--output,-o", bench_output, "CSV output file");
    bench_cmd->add_flag("--no-timing", bench_no_timing, "omit the wall-time column");
    bench_cmd->add_flag("--no-compose", bench_no_compose,
                        "do not take the better of fas-pivot and the best member");

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "run the model checkers");
    std::string verify_check = "all";
    int verify_n = 4;
    double verify_phi = 0.9, verify_tolerance = 0.005;
    std::string verify_phi_grid, verify_n_grid, verify_input = "-";
    verify_cmd->add_option("check", verify_check, "remark|lemma-ratios|lemma-tails|vote-bound|all");
    verify_cmd->add_option("--n", verify_n, "elements for the remark check");
    verify_cmd->add_option("--phi", verify_phi, "dispersion for the remark check");
    verify_cmd->add_option("--phi-grid", verify_phi_grid, "comma-separated phis for lemma grids");
    verify_cmd->add_option("--n-grid", verify_n_grid, "comma-separated sizes for lemma grids");
    verify_cmd->add_option("--input,-i", verify_input, "rankings for the empirical remark check");
    verify_cmd->add_option("--tolerance", verify_tolerance, "empirical tolerance");

    std::vector<const char*> argv;
    argv.push_back("lca");
    for (const std::string& arg : args) argv.push_back(arg.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        if (app.got_subcommand(encode_cmd)) {
            const RankingSample sample =
                load_sample(enc_input, ranking_format_from_string(enc_format), enc_n, in);
            OutputTarget target(enc_output, out);
            const std::vector<LehmerPair> codes = encode_sample(sample);
            for (int i = 0; i < sample.size(); ++i) {
                const LehmerPair& pair = codes[static_cast<size_t>(i)];
                if (ranking_kind(sample.at(i)) == RankingKind::Full)
                    target.stream() << join_ints(pair.code.c) << "\n";
                else
                    target.stream()
                        << join_ints(pair.code.c) << " | " << join_ints(pair.c_prime) << "\n";
            }
            return 0;
        }

        if (app.got_subcommand(decode_cmd)) {
            std::ifstream file;
            std::istream* source = &in;
            if (dec_input != "-" && !dec_input.empty()) {
                file.open(dec_input);
                if (!file) raise(ErrorKind::ParseError, "cannot open '" + dec_input + "'");
                source = &file;
            }
            RankingSample decoded;
            std::string line;
            int line_no = 0;
            while (std::getline(*source, line)) {
                ++line_no;
                if (const size_t hash = line.find('#'); hash != std::string::npos)
                    line.resize(hash);
                std::istringstream tokens(line);
                if (dec_partial) {
                    std::string left, right;
                    if (!std::getline(tokens, left, '|')) continue;
                    std::getline(tokens, right);
                    std::vector<int> c, c_prime;
                    std::istringstream ls(left), rs(right);
                    int v;
                    while (ls >> v) c.push_back(v);
                    while (rs >> v) c_prime.push_back(v);
                    if (c.empty()) continue;
                    LehmerPair pair;
                    pair.code.c = std::move(c);
                    pair.c_prime = std::move(c_prime);
                    try {
                        decoded.add(decode_partial(pair));
                    } catch (const Error& e) {
                        raise(ErrorKind::ParseError,
                              "line " + std::to_string(line_no) + ": " + e.what());
                    }
                } else {
                    std::vector<int> c;
                    int v;
                    while (tokens >> v) c.push_back(v);
                    if (c.empty()) continue;
                    LehmerCode code;
                    code.c = std::move(c);
                    try {
                        decoded.add(decode(code));
                    } catch (const Error& e) {
                        raise(ErrorKind::ParseError,
                              "line " + std::to_string(line_no) + ": " + e.what());
                    }
                }
            }
            if (decoded.empty()) raise(ErrorKind::EmptyInput, "no codes to decode");
            OutputTarget target(dec_output, out);
            write_rankings(target.stream(), decoded,
                           dec_partial ? RankingFormat::Buckets : RankingFormat::Ranks);
            return 0;
        }

        if (app.got_subcommand(dist_cmd)) {
            const RankingFormat format = ranking_format_from_string(dist_format);
            const Metric metric = metric_from_string(dist_metric);
            const RankingSample a = load_sample(dist_a, format, dist_n, in);
            if (a.empty()) raise(ErrorKind::EmptyInput, "no rankings in '" + dist_a + "'");
            RankingSample b;
            if (dist_b.empty()) {
                b.add(Permutation::identity(a.n()));
            } else {
                b = load_sample(dist_b, format, dist_n, in);
            }
            if (b.size() != a.size() && b.size() != 1)
                raise(ErrorKind::SizeMismatch, "fileB must hold 1 or matching rankings");
            for (int i = 0; i < a.size(); ++i) {
                const Ranking& right = b.at(b.size() == 1 ? 0 : i);
                out << pair_distance(a.at(i), right, metric).str() << "\n";
            }
            return 0;
        }

        if (app.got_subcommand(agg_cmd)) {
            if (is_randomized(agg_method) && agg_seed_opt->count() == 0) {
                err << "error: --seed is required for method '" << agg_method << "'\n";
                return 1;
            }
            if (agg_method == "faslp-pivot") {
                err << "error: faslp-pivot is unavailable (needs an LP solver)\n";
                return 1;
            }
            const RankingSample sample =
                load_sample(agg_input, ranking_format_from_string(agg_format), agg_n, in);
            Permutation result = [&] {
                if (agg_method == "lc-median" || agg_method == "lc-mode") {
                    const Rule rule = agg_method == "lc-median" ? Rule::Median : Rule::Mode;
                    return sample.all_permutations()
                               ? aggregate_permutations(sample, rule, agg_threads).sigma_hat
                               : aggregate_partial(sample, rule, agg_threads).sigma_hat;
                }
                if (agg_method == "borda") return borda(sample);
                if (agg_method == "spearman") return spearman_optimal(sample);
                if (agg_method == "pick-a-perm")
                    return pick_a_perm(sample, PickStrategy::Random, agg_seed);
                if (agg_method == "fas-pivot")
                    return fas_pivot(sample, agg_seed, agg_restarts);
                if (agg_method == "insertion-comp")
                    return insertion_comp(sample, agg_seed, agg_restarts);
                raise(ErrorKind::ParseError, "unknown method '" + agg_method + "'");
            }();
            Ranking output = Ranking(result);
            if (agg_bucketize == "greedy") output = greedy_bucketize(result, sample);
            else if (agg_bucketize == "optimal") output = optimal_bucketize(result, sample);
            else if (agg_bucketize != "none")
                raise(ErrorKind::ParseError, "bucketize must be none|greedy|optimal");
            const Metric metric =
                agg_metric.empty()
                    ? (sample.all_permutations() && agg_bucketize == "none" ? Metric::Kendall
                                                                            : Metric::Kemeny)
                    : metric_from_string(agg_metric);
            const HalfInt objective = cumulative(sample, output, metric, agg_threads);
            OutputTarget target(agg_output, out);
            if (ranking_kind(output) == RankingKind::Partial)
                target.stream() << "# n=" << sample.n() << "\n";
            target.stream() << format_ranking(output, ranking_kind(output) == RankingKind::Full
                                                          ? RankingFormat::Ranks
                                                          : RankingFormat::Buckets)
                            << "\n";
            target.stream() << "# D=" << objective.str() << " D_av="
                            << objective.to_double() / sample.size() << " metric="
                            << to_string(metric) << "\n";
            return 0;
        }

        if (app.got_subcommand(sample_cmd)) {
            if ((sample_phi < 0) == (sample_lambda < 0))
                raise(ErrorKind::InvalidPhi, "give exactly one of --phi or --lambda");
            const double phi = sample_phi >= 0 ? sample_phi : std::exp(-sample_lambda);
            OutputTarget target(sample_output, out);
            if (sample_model == "mallows") {
                Permutation centroid = Permutation::identity(sample_n);
                if (!sample_centroid.empty()) {
                    const RankingSample c =
                        parse_rankings_file(sample_centroid, RankingFormat::Ranks);
                    if (c.size() != 1 || !c.all_permutations())
                        raise(ErrorKind::ParseError, "centroid file must hold one permutation");
                    centroid = std::get<Permutation>(c.at(0));
                }
                const MallowsParams params(centroid, phi,
                                           sample_lambda >= 0
                                               ? std::optional<double>(sample_lambda)
                                               : std::nullopt);
                Rng rng(sample_seed);
                RankingSample draws;
                for (int i = 0; i < sample_m; ++i) draws.add(sample_mallows(params, rng));
                write_rankings(target.stream(), draws,
                               sample_format.empty() ? RankingFormat::Ranks
                                                     : ranking_format_from_string(sample_format));
            } else if (sample_model == "gmm") {
                PartialRanking centroid = PartialRanking::from_permutation(
                    Permutation::identity(sample_n));
                if (!sample_centroid.empty()) {
                    const RankingSample c =
                        parse_rankings_file(sample_centroid, RankingFormat::Buckets, sample_n);
                    if (c.size() != 1)
                        raise(ErrorKind::ParseError, "centroid file must hold one ranking");
                    centroid = as_partial(c.at(0));
                }
                const GmmParams params(centroid, phi);
                GmmSampler sampler(params, sample_seed,
                                   MetropolisConfig{sample_burn_in, sample_thinning});
                RankingSample draws;
                for (PartialRanking& draw : sampler.draw(sample_m)) draws.add(std::move(draw));
                write_rankings(target.stream(), draws,
                               sample_format.empty() ? RankingFormat::Buckets
                                                     : ranking_format_from_string(sample_format));
            } else {
                raise(ErrorKind::ParseError, "model must be mallows|gmm");
            }
            return 0;
        }

        if (app.got_subcommand(import_cmd)) {
            const RankingSample sample = import_dataset(
                dataset_kind_from_string(import_kind), import_path, import_options);
            OutputTarget target(import_output, out);
            write_rankings(target.stream(), sample,
                           sample.all_permutations() ? RankingFormat::Ranks
                                                     : RankingFormat::Buckets);
            return 0;
        }

        if (app.got_subcommand(bench_cmd)) {
            ExperimentConfig cfg;
            if (!bench_config.empty()) cfg = ExperimentConfig::from_json_file(bench_config);
            if (!bench_methods.empty()) cfg.methods = parse_string_list(bench_methods);
            if (!bench_metric.empty()) cfg.metric = metric_from_string(bench_metric);
            if (bench_n > 0) cfg.n = bench_n;
            if (bench_m > 0) cfg.m = bench_m;
            if (bench_trials > 0) cfg.trials = bench_trials;
            if (!bench_lambda_grid.empty()) cfg.lambda_grid = parse_double_list(bench_lambda_grid);
            if (!bench_phi_grid.empty()) cfg.phi_grid = parse_double_list(bench_phi_grid);
            if (bench_seed_opt->count() > 0) cfg.seed = bench_seed;
            if (!bench_dataset_kind.empty()) cfg.dataset_kind = bench_dataset_kind;
            if (!bench_dataset_path.empty()) cfg.dataset_path = bench_dataset_path;
            if (!bench_synthetic.empty()) cfg.synthetic_model = bench_synthetic;
            if (!bench_reference.empty()) cfg.reference = bench_reference;
            if (!bench_bucketize.empty()) cfg.bucketize = bench_bucketize;
            if (bench_restarts > 0) cfg.restarts = bench_restarts;
            if (bench_threads > 0) cfg.threads = bench_threads;
            if (!bench_output.empty()) cfg.output_path = bench_output;
            if (bench_no_timing) cfg.include_timing = false;
            if (bench_no_compose) cfg.compose_pivot_with_best_pick = false;
            const BenchReport report = run_benchmark(cfg);
            OutputTarget target(cfg.output_path, out);
            target.stream() << report.to_csv();
            return 0;
        }

        if (app.got_subcommand(verify_cmd)) {
            return run_verify(verify_check, verify_n, verify_phi, verify_phi_grid, verify_n_grid,
                              verify_input, verify_tolerance, in, out);
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}

int cli_main(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run_cli(args, std::cin, std::cout, std::cerr);
}

}  // namespace lca
