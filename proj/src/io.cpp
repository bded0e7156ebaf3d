#include "lca/io.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "lca/aggregate.hpp"
#include "lca/baselines.hpp"
#include "lca/lehmer.hpp"
#include "lca/models.hpp"
#include "lca/parallel.hpp"
#include "lca/rng.hpp"

namespace lca {

RankingFormat ranking_format_from_string(const std::string& name) {
    if (name == "ranks") return RankingFormat::Ranks;
    if (name == "order") return RankingFormat::Order;
    if (name == "buckets") return RankingFormat::Buckets;
    raise(ErrorKind::ParseError, "unknown format '" + name + "'");
}

std::string to_string(RankingFormat format) {
    switch (format) {
        case RankingFormat::Ranks: return "ranks";
        case RankingFormat::Order: return "order";
        case RankingFormat::Buckets: return "buckets";
    }
    return "?";
}

namespace {

std::vector<std::string> split_ws(const std::string& text) {
    std::vector<std::string> tokens;
    std::istringstream stream(text);
    std::string token;
    while (stream >> token) tokens.push_back(token);
    return tokens;
}

int parse_int(const std::string& token, int line_no) {
    try {
        size_t used = 0;
        const int value = std::stoi(token, &used);
        if (used != token.size()) throw std::invalid_argument(token);
        return value;
    } catch (const std::exception&) {
        raise(ErrorKind::ParseError,
              "line " + std::to_string(line_no) + ": expected integer, got '" + token + "'");
    }
}

struct RawLine {
    int line_no = 0;
    std::vector<std::vector<int>> segments;  // buckets format
    bool tail = false;
    std::vector<int> values;  // ranks / order formats
};

}  // namespace

RankingSample parse_rankings(std::istream& in, RankingFormat format, int n_hint) {
    std::vector<RawLine> lines;
    std::string line;
    int line_no = 0;
    int directive_n = 0;
    int max_element = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const size_t hash = line.find('#'); hash != std::string::npos) {
            const std::string comment = line.substr(hash + 1);
            const std::vector<std::string> ctokens = split_ws(comment);
            if (ctokens.size() == 1 && ctokens[0].rfind("n=", 0) == 0)
                directive_n = parse_int(ctokens[0].substr(2), line_no);
            line.resize(hash);
        }
        RawLine raw;
        raw.line_no = line_no;
        if (format == RankingFormat::Buckets) {
            std::vector<std::string> segments;
            std::string segment;
            std::istringstream stream(line);
            while (std::getline(stream, segment, '|')) segments.push_back(segment);
            bool any = false;
            for (size_t s = 0; s < segments.size(); ++s) {
                const std::vector<std::string> tokens = split_ws(segments[s]);
                if (tokens.size() == 1 && tokens[0] == "*") {
                    if (s + 1 != segments.size())
                        raise(ErrorKind::ParseError,
                              "line " + std::to_string(line_no) + ": '*' must end the line");
                    raw.tail = true;
                    any = true;
                    continue;
                }
                if (tokens.empty()) {
                    if (!segments[s].empty() && segments.size() > 1)
                        raise(ErrorKind::ParseError,
                              "line " + std::to_string(line_no) + ": empty bucket");
                    continue;
                }
                std::vector<int> bucket;
                for (const std::string& token : tokens) {
                    const int e = parse_int(token, line_no);
                    max_element = std::max(max_element, e);
                    bucket.push_back(e);
                }
                raw.segments.push_back(std::move(bucket));
                any = true;
            }
            if (!any) continue;
        } else {
            const std::vector<std::string> tokens = split_ws(line);
            if (tokens.empty()) continue;
            for (const std::string& token : tokens) raw.values.push_back(parse_int(token, line_no));
        }
        lines.push_back(std::move(raw));
    }

    RankingSample sample;
    if (format != RankingFormat::Buckets) {
        int n = 0;
        for (const RawLine& raw : lines) {
            if (n == 0) n = static_cast<int>(raw.values.size());
            else if (n != static_cast<int>(raw.values.size()))
                raise(ErrorKind::InconsistentN,
                      "line " + std::to_string(raw.line_no) + ": expected " + std::to_string(n) +
                          " entries, got " + std::to_string(raw.values.size()));
            try {
                if (format == RankingFormat::Ranks) {
                    sample.add(validate(raw.values, RankingKind::Full));
                } else {
                    // order: elements from highest to lowest rank
                    std::vector<int> ranks(raw.values.size(), 0);
                    for (size_t i = 0; i < raw.values.size(); ++i) {
                        const int e = raw.values[i];
                        if (e < 1 || e > n)
                            raise(ErrorKind::RankOutOfRange, "element " + std::to_string(e));
                        if (ranks[static_cast<size_t>(e) - 1] != 0)
                            raise(ErrorKind::DuplicateRank, "element " + std::to_string(e));
                        ranks[static_cast<size_t>(e) - 1] = static_cast<int>(i) + 1;
                    }
                    sample.add(Permutation(std::move(ranks)));
                }
            } catch (const Error& e) {
                if (e.kind() == ErrorKind::InconsistentN) throw;
                raise(ErrorKind::ParseError,
                      "line " + std::to_string(raw.line_no) + ": " + e.what());
            }
        }
        return sample;
    }

    const int n = n_hint > 0 ? n_hint : (directive_n > 0 ? directive_n : max_element);
    for (const RawLine& raw : lines) {
        std::vector<int> bucket_of(static_cast<size_t>(std::max(n, 1)), 0);
        int listed = 0;
        int next_bucket = 0;
        for (const std::vector<int>& bucket : raw.segments) {
            ++next_bucket;
            for (int e : bucket) {
                if (e < 1 || e > n)
                    raise(n_hint > 0 || directive_n > 0 ? ErrorKind::ParseError
                                                        : ErrorKind::InconsistentN,
                          "line " + std::to_string(raw.line_no) + ": element " +
                              std::to_string(e) + " outside [1," + std::to_string(n) + "]");
                if (bucket_of[static_cast<size_t>(e) - 1] != 0)
                    raise(ErrorKind::ParseError, "line " + std::to_string(raw.line_no) +
                                                     ": element " + std::to_string(e) +
                                                     " listed twice");
                bucket_of[static_cast<size_t>(e) - 1] = next_bucket;
                ++listed;
            }
        }
        if (raw.tail) {
            if (listed == n)
                raise(ErrorKind::ParseError,
                      "line " + std::to_string(raw.line_no) + ": unrated tail is empty");
            ++next_bucket;
            for (int e = 1; e <= n; ++e)
                if (bucket_of[static_cast<size_t>(e) - 1] == 0)
                    bucket_of[static_cast<size_t>(e) - 1] = next_bucket;
        } else if (listed != n) {
            raise(ErrorKind::InconsistentN,
                  "line " + std::to_string(raw.line_no) + ": " + std::to_string(listed) +
                      " of " + std::to_string(n) + " elements listed and no tail marker");
        }
        try {
            sample.add(PartialRanking(std::move(bucket_of), raw.tail));
        } catch (const Error& e) {
            raise(ErrorKind::ParseError, "line " + std::to_string(raw.line_no) + ": " + e.what());
        }
    }
    return sample;
}

RankingSample parse_rankings_file(const std::string& path, RankingFormat format, int n_hint) {
    std::ifstream in(path);
    if (!in) raise(ErrorKind::ParseError, "cannot open '" + path + "'");
    RankingSample sample = parse_rankings(in, format, n_hint);
    sample.meta.source = path;
    return sample;
}

std::string format_ranking(const Ranking& ranking, RankingFormat format) {
    std::ostringstream out;
    switch (format) {
        case RankingFormat::Ranks: {
            const auto* p = std::get_if<Permutation>(&ranking);
            if (p == nullptr)
                raise(ErrorKind::FormatError, "ranks format holds full rankings only");
            for (int x = 1; x <= p->size(); ++x) {
                if (x > 1) out << ' ';
                out << p->rank_of(x);
            }
            break;
        }
        case RankingFormat::Order: {
            const auto* p = std::get_if<Permutation>(&ranking);
            if (p == nullptr)
                raise(ErrorKind::FormatError, "order format holds full rankings only");
            const Permutation inv = p->inverse();
            for (int i = 1; i <= p->size(); ++i) {
                if (i > 1) out << ' ';
                out << inv.rank_of(i);
            }
            break;
        }
        case RankingFormat::Buckets: {
            const PartialRanking pr = as_partial(ranking);
            const int shown =
                pr.unrated_tail() ? pr.bucket_count() - 1 : pr.bucket_count();
            for (int k = 1; k <= shown; ++k) {
                if (k > 1) out << " | ";
                const std::vector<int> members = pr.bucket_members(k);
                for (size_t i = 0; i < members.size(); ++i) {
                    if (i > 0) out << ' ';
                    out << members[i];
                }
            }
            if (pr.unrated_tail()) out << " |*";
            break;
        }
    }
    return out.str();
}

void write_rankings(std::ostream& out, const RankingSample& sample, RankingFormat format) {
    if (format == RankingFormat::Buckets) out << "# n=" << sample.n() << "\n";
    for (int i = 0; i < sample.size(); ++i)
        out << format_ranking(sample.at(i), format) << "\n";
}

// ---------------------------------------------------------------------------
// Dataset adapters

DatasetKind dataset_kind_from_string(const std::string& name) {
    if (name == "sushi") return DatasetKind::Sushi;
    if (name == "jester-perm" || name == "jester-permutations")
        return DatasetKind::JesterPermutations;
    if (name == "jester-partial") return DatasetKind::JesterPartial;
    if (name == "movielens") return DatasetKind::MovieLens;
    raise(ErrorKind::FormatError, "unknown dataset kind '" + name + "'");
}

namespace {

/// Round half away from zero.
int round_score(double score) {
    return static_cast<int>(score >= 0 ? std::floor(score + 0.5) : std::ceil(score - 0.5));
}

std::vector<std::string> split_fields(const std::string& line, char delim) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream stream(line);
    while (std::getline(stream, field, delim)) fields.push_back(field);
    return fields;
}

RankingSample import_sushi(const std::string& path, const ImportOptions& options) {
    std::ifstream in(path);
    if (!in) raise(ErrorKind::FormatError, "cannot open '" + path + "'");
    const int n = options.n > 0 ? options.n : 10;
    RankingSample sample;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::vector<std::string> tokens = split_ws(line);
        if (tokens.empty()) continue;
        if (static_cast<int>(tokens.size()) < n) {
            if (line_no == 1) continue;  // header
            raise(ErrorKind::FormatError,
                  "line " + std::to_string(line_no) + ": expected at least " +
                      std::to_string(n) + " item ids");
        }
        // the trailing n fields are 0-based item ids, most preferred first
        std::vector<int> ranks(static_cast<size_t>(n), 0);
        for (int i = 0; i < n; ++i) {
            const int item = parse_int(tokens[tokens.size() - static_cast<size_t>(n - i)], line_no);
            if (item < 0 || item >= n)
                raise(ErrorKind::FormatError,
                      "line " + std::to_string(line_no) + ": item id " + std::to_string(item));
            if (ranks[static_cast<size_t>(item)] != 0)
                raise(ErrorKind::FormatError,
                      "line " + std::to_string(line_no) + ": item " + std::to_string(item) +
                          " repeated");
            ranks[static_cast<size_t>(item)] = i + 1;
        }
        sample.add(Permutation(std::move(ranks)));
        if (options.max_users > 0 && sample.size() >= options.max_users) break;
    }
    if (sample.empty()) raise(ErrorKind::FormatError, "no orders in '" + path + "'");
    sample.meta.source = "sushi:" + path;
    return sample;
}

RankingSample import_jester(const std::string& path, const ImportOptions& options,
                            bool permutations) {
    std::ifstream in(path);
    if (!in) raise(ErrorKind::FormatError, "cannot open '" + path + "'");
    RankingSample sample;
    std::string line;
    int line_no = 0;
    int n = options.n;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::vector<std::string> fields = split_fields(line, ',');
        if (fields.size() <= 1) fields = split_ws(line);
        if (fields.size() <= 1)
            raise(ErrorKind::FormatError, "line " + std::to_string(line_no) + ": no scores");
        if (n == 0) n = static_cast<int>(fields.size()) - 1;
        if (static_cast<int>(fields.size()) - 1 != n)
            raise(ErrorKind::FormatError,
                  "line " + std::to_string(line_no) + ": expected " + std::to_string(n) +
                      " scores");
        std::vector<double> scores(static_cast<size_t>(n));
        std::vector<char> rated(static_cast<size_t>(n), 0);
        int rated_count = 0;
        for (int j = 0; j < n; ++j) {
            const std::string& field = fields[static_cast<size_t>(j) + 1];
            double value = 0;
            try {
                value = std::stod(field);
            } catch (const std::exception&) {
                raise(ErrorKind::FormatError,
                      "line " + std::to_string(line_no) + ": bad score '" + field + "'");
            }
            scores[static_cast<size_t>(j)] = value;
            if (value != 99.0) {
                rated[static_cast<size_t>(j)] = 1;
                ++rated_count;
            }
        }
        if (permutations) {
            if (rated_count != n) continue;  // only users who rated everything
            std::vector<int> order(static_cast<size_t>(n));
            std::iota(order.begin(), order.end(), 0);
            std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
                return scores[static_cast<size_t>(a)] > scores[static_cast<size_t>(b)];
            });
            std::vector<int> ranks(static_cast<size_t>(n));
            for (int i = 0; i < n; ++i) ranks[static_cast<size_t>(order[i])] = i + 1;
            sample.add(Permutation(std::move(ranks)));
        } else {
            if (rated_count == 0) continue;
            // distinct rounded scores, best first
            std::vector<int> rounded(static_cast<size_t>(n), 0);
            std::vector<int> levels;
            for (int j = 0; j < n; ++j)
                if (rated[static_cast<size_t>(j)]) {
                    rounded[static_cast<size_t>(j)] = round_score(scores[static_cast<size_t>(j)]);
                    levels.push_back(rounded[static_cast<size_t>(j)]);
                }
            std::sort(levels.begin(), levels.end(), std::greater<>());
            levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
            const bool tail = rated_count < n;
            std::vector<int> bucket_of(static_cast<size_t>(n), 0);
            for (int j = 0; j < n; ++j) {
                if (!rated[static_cast<size_t>(j)]) {
                    bucket_of[static_cast<size_t>(j)] = static_cast<int>(levels.size()) + 1;
                } else {
                    const auto it = std::find(levels.begin(), levels.end(),
                                              rounded[static_cast<size_t>(j)]);
                    bucket_of[static_cast<size_t>(j)] =
                        static_cast<int>(it - levels.begin()) + 1;
                }
            }
            sample.add(PartialRanking(std::move(bucket_of), tail));
        }
        if (options.max_users > 0 && sample.size() >= options.max_users) break;
    }
    if (sample.empty()) raise(ErrorKind::SelectionInfeasible, "no usable users in '" + path + "'");
    sample.meta.source = (permutations ? "jester-perm:" : "jester-partial:") + path;
    return sample;
}

RankingSample import_movielens(const std::string& path, const ImportOptions& options) {
    std::ifstream in(path);
    if (!in) raise(ErrorKind::FormatError, "cannot open '" + path + "'");
    struct Entry {
        int user;
        int item;
        int rating;
    };
    std::vector<Entry> entries;
    std::map<int, int> item_counts;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::vector<std::string> fields = split_ws(line);
        if (fields.empty()) continue;
        if (fields.size() < 3)
            raise(ErrorKind::FormatError,
                  "line " + std::to_string(line_no) + ": expected user, item, rating");
        const int user = parse_int(fields[0], line_no);
        const int item = parse_int(fields[1], line_no);
        const int rating = parse_int(fields[2], line_no);
        if (rating < 1 || rating > 5)
            raise(ErrorKind::FormatError,
                  "line " + std::to_string(line_no) + ": rating " + std::to_string(rating));
        entries.push_back({user, item, rating});
        ++item_counts[item];
    }

    const int top_items = options.top_items;
    const int top_users = options.top_users;
    if (static_cast<int>(item_counts.size()) < top_items)
        raise(ErrorKind::SelectionInfeasible,
              "only " + std::to_string(item_counts.size()) + " movies, need " +
                  std::to_string(top_items));
    std::vector<std::pair<int, int>> by_count(item_counts.begin(), item_counts.end());
    std::sort(by_count.begin(), by_count.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    std::map<int, int> item_index;  // item id -> element 1..n
    for (int i = 0; i < top_items; ++i) item_index[by_count[static_cast<size_t>(i)].first] = i + 1;

    std::map<int, std::vector<std::pair<int, int>>> user_ratings;  // user -> (element, rating)
    for (const Entry& e : entries) {
        const auto it = item_index.find(e.item);
        if (it != item_index.end()) user_ratings[e.user].push_back({it->second, e.rating});
    }
    if (static_cast<int>(user_ratings.size()) < top_users)
        raise(ErrorKind::SelectionInfeasible,
              "only " + std::to_string(user_ratings.size()) + " users, need " +
                  std::to_string(top_users));
    std::vector<std::pair<int, int>> coverage;  // (user, #rated)
    for (const auto& [user, ratings] : user_ratings)
        coverage.push_back({user, static_cast<int>(ratings.size())});
    std::sort(coverage.begin(), coverage.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });

    RankingSample sample;
    for (int u = 0; u < top_users; ++u) {
        const auto& ratings = user_ratings[coverage[static_cast<size_t>(u)].first];
        std::vector<int> score(static_cast<size_t>(top_items), 0);  // 0 = unrated
        for (const auto& [element, rating] : ratings) score[static_cast<size_t>(element) - 1] = rating;
        std::vector<int> levels;
        for (int s : score)
            if (s > 0) levels.push_back(s);
        std::sort(levels.begin(), levels.end(), std::greater<>());
        levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
        const bool tail =
            std::any_of(score.begin(), score.end(), [](int s) { return s == 0; });
        std::vector<int> bucket_of(static_cast<size_t>(top_items), 0);
        for (int j = 0; j < top_items; ++j) {
            if (score[static_cast<size_t>(j)] == 0) {
                bucket_of[static_cast<size_t>(j)] = static_cast<int>(levels.size()) + 1;
            } else {
                const auto it =
                    std::find(levels.begin(), levels.end(), score[static_cast<size_t>(j)]);
                bucket_of[static_cast<size_t>(j)] = static_cast<int>(it - levels.begin()) + 1;
            }
        }
        sample.add(PartialRanking(std::move(bucket_of), tail));
    }
    sample.meta.source = "movielens:" + path;
    return sample;
}

}  // namespace

RankingSample import_dataset(DatasetKind kind, const std::string& path,
                             const ImportOptions& options) {
    switch (kind) {
        case DatasetKind::Sushi: return import_sushi(path, options);
        case DatasetKind::JesterPermutations: return import_jester(path, options, true);
        case DatasetKind::JesterPartial: return import_jester(path, options, false);
        case DatasetKind::MovieLens: return import_movielens(path, options);
    }
    raise(ErrorKind::FormatError, "unknown dataset kind");
}

// ---------------------------------------------------------------------------
// Benchmark harness

const std::vector<std::string>& registered_methods() {
    static const std::vector<std::string> methods = {
        "lc-median", "lc-mode",  "borda",       "fas-pivot",
        "insertion-comp", "spearman", "pick-a-perm", "faslp-pivot"};
    return methods;
}

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        raise(ErrorKind::ParseError, std::string("config: ") + e.what());
    }
    ExperimentConfig cfg;
    try {
        if (j.contains("methods")) cfg.methods = j["methods"].get<std::vector<std::string>>();
        if (j.contains("metric")) cfg.metric = metric_from_string(j["metric"].get<std::string>());
        if (j.contains("n")) cfg.n = j["n"].get<int>();
        if (j.contains("m")) cfg.m = j["m"].get<int>();
        if (j.contains("trials")) cfg.trials = j["trials"].get<int>();
        if (j.contains("lambda_grid"))
            cfg.lambda_grid = j["lambda_grid"].get<std::vector<double>>();
        if (j.contains("phi_grid")) cfg.phi_grid = j["phi_grid"].get<std::vector<double>>();
        if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
        if (j.contains("dataset_kind")) cfg.dataset_kind = j["dataset_kind"].get<std::string>();
        if (j.contains("dataset_path")) cfg.dataset_path = j["dataset_path"].get<std::string>();
        if (j.contains("synthetic_model"))
            cfg.synthetic_model = j["synthetic_model"].get<std::string>();
        if (j.contains("reference")) cfg.reference = j["reference"].get<std::string>();
        if (j.contains("bucketize")) cfg.bucketize = j["bucketize"].get<std::string>();
        if (j.contains("restarts")) cfg.restarts = j["restarts"].get<int>();
        if (j.contains("threads")) cfg.threads = j["threads"].get<int>();
        if (j.contains("compose_pivot_with_best_pick"))
            cfg.compose_pivot_with_best_pick = j["compose_pivot_with_best_pick"].get<bool>();
        if (j.contains("include_timing")) cfg.include_timing = j["include_timing"].get<bool>();
        if (j.contains("output")) cfg.output_path = j["output"].get<std::string>();
        if (j.contains("import")) {
            const auto& imp = j["import"];
            if (imp.contains("n")) cfg.import_options.n = imp["n"].get<int>();
            if (imp.contains("top_items")) cfg.import_options.top_items = imp["top_items"].get<int>();
            if (imp.contains("top_users")) cfg.import_options.top_users = imp["top_users"].get<int>();
            if (imp.contains("max_users")) cfg.import_options.max_users = imp["max_users"].get<int>();
        }
    } catch (const nlohmann::json::exception& e) {
        raise(ErrorKind::ParseError, std::string("config: ") + e.what());
    }
    return cfg;
}

ExperimentConfig ExperimentConfig::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) raise(ErrorKind::ParseError, "cannot open config '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return from_json_text(text.str());
}

void ExperimentConfig::check() const {
    if (methods.empty()) raise(ErrorKind::ParseError, "config: no methods");
    const auto& known = registered_methods();
    for (const std::string& method : methods)
        if (std::find(known.begin(), known.end(), method) == known.end())
            raise(ErrorKind::ParseError, "config: unknown method '" + method + "'");
    if (trials < 1) raise(ErrorKind::ParseError, "config: trials must be >= 1");
    if (bucketize != "none" && bucketize != "greedy" && bucketize != "optimal")
        raise(ErrorKind::ParseError, "config: bucketize must be none|greedy|optimal");
    if (dataset_kind.empty()) {
        if (synthetic_model != "mallows" && synthetic_model != "gmm")
            raise(ErrorKind::ParseError, "config: synthetic_model must be mallows|gmm");
        if (lambda_grid.empty() && phi_grid.empty())
            raise(ErrorKind::ParseError, "config: synthetic runs need a lambda or phi grid");
        if (n < 1) raise(ErrorKind::ParseError, "config: n must be >= 1");
        if (m < 1) raise(ErrorKind::ParseError, "config: m must be >= 1");
    }
}

namespace {

PartialRanking random_weak_order(int n, Rng& rng) {
    std::vector<int> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 1);
    rng.shuffle(order);
    std::vector<int> bucket_of(static_cast<size_t>(n), 0);
    int bucket = 1;
    bucket_of[static_cast<size_t>(order[0]) - 1] = 1;
    for (int i = 1; i < n; ++i) {
        if (rng.uniform01() < 0.5) ++bucket;  // half the adjacent pairs merge
        bucket_of[static_cast<size_t>(order[i]) - 1] = bucket;
    }
    return PartialRanking(std::move(bucket_of));
}

Permutation run_method(const std::string& method, const RankingSample& sample,
                       std::uint64_t seed, const ExperimentConfig& cfg) {
    if (method == "lc-median" || method == "lc-mode") {
        const Rule rule = method == "lc-median" ? Rule::Median : Rule::Mode;
        return sample.all_permutations() ? aggregate_permutations(sample, rule).sigma_hat
                                         : aggregate_partial(sample, rule).sigma_hat;
    }
    if (method == "borda") return borda(sample);
    if (method == "spearman") return spearman_optimal(sample);
    if (method == "pick-a-perm") return pick_a_perm(sample, PickStrategy::Random, seed);
    if (method == "insertion-comp") return insertion_comp(sample, seed, cfg.restarts);
    if (method == "fas-pivot") {
        Permutation pivot = fas_pivot(sample, seed, cfg.restarts);
        if (!cfg.compose_pivot_with_best_pick) return pivot;
        Permutation best_member = pick_a_perm(sample, PickStrategy::Best);
        const Metric metric = sample.all_permutations() ? Metric::Kendall : Metric::Kemeny;
        return cumulative(sample, Ranking(best_member), metric) <
                       cumulative(sample, Ranking(pivot), metric)
                   ? best_member
                   : pivot;
    }
    raise(ErrorKind::ParseError, "method '" + method + "' cannot aggregate");
}

Ranking apply_bucketize(const std::string& kind, Permutation sigma,
                        const RankingSample& sample) {
    if (kind == "greedy") return greedy_bucketize(sigma, sample);
    if (kind == "optimal") return optimal_bucketize(sigma, sample);
    return Ranking(std::move(sigma));
}

std::string format_double(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.6g", value);
    return buffer;
}

}  // namespace

std::string BenchReport::to_csv() const {
    std::ostringstream out;
    out << "method,grid_value,trials,mean_dav,stddev,ratio,wall_seconds\n";
    for (const BenchRow& row : rows) {
        out << row.method << ',' << format_double(row.grid_value) << ',' << row.trials << ',';
        if (row.available) {
            out << format_double(row.mean_dav) << ',' << format_double(row.stddev) << ',';
            if (std::isfinite(row.ratio)) out << format_double(row.ratio);
            out << ',';
            if (include_timing) out << format_double(row.wall_seconds);
        } else {
            out << ",,,";  // unavailable: no numbers to report
        }
        out << '\n';
    }
    return out.str();
}

BenchReport run_benchmark(const ExperimentConfig& config) {
    config.check();

    const bool synthetic = config.dataset_kind.empty();
    RankingSample pool;
    if (!synthetic) {
        pool = import_dataset(dataset_kind_from_string(config.dataset_kind),
                              config.dataset_path, config.import_options);
        if (config.m > pool.size())
            raise(ErrorKind::SelectionInfeasible,
                  "m = " + std::to_string(config.m) + " exceeds pool of " +
                      std::to_string(pool.size()));
    }

    std::vector<double> grid;
    const bool lambda_given = !config.lambda_grid.empty();
    if (synthetic)
        grid = lambda_given ? config.lambda_grid : config.phi_grid;
    else
        grid = {static_cast<double>(config.m)};

    std::vector<std::string> active;
    for (const std::string& method : config.methods)
        if (method != "faslp-pivot") active.push_back(method);

    const int g_count = static_cast<int>(grid.size());
    const int cells = g_count * config.trials;
    // dav[(g * trials + t) * methods + k]
    std::vector<double> dav(static_cast<size_t>(cells) * active.size(), 0.0);
    std::vector<double> wall(static_cast<size_t>(cells) * active.size(), 0.0);
    std::vector<std::exception_ptr> failures(static_cast<size_t>(cells));

    parallel_for(cells, config.threads, [&](int begin, int end) {
        for (int cell = begin; cell < end; ++cell) {
            try {
                const int g = cell / config.trials;
                const int t = cell % config.trials;
                const std::uint64_t trial_seed =
                    seed_split(config.seed, static_cast<std::uint64_t>(g),
                               static_cast<std::uint64_t>(t));

                RankingSample sample;
                if (synthetic) {
                    const double phi =
                        lambda_given ? std::exp(-grid[static_cast<size_t>(g)])
                                     : grid[static_cast<size_t>(g)];
                    Rng centroid_rng(seed_split(trial_seed, 1));
                    Rng draw_rng(seed_split(trial_seed, 2));
                    if (config.synthetic_model == "mallows") {
                        std::vector<int> ranks(static_cast<size_t>(config.n));
                        std::iota(ranks.begin(), ranks.end(), 1);
                        centroid_rng.shuffle(ranks);
                        const MallowsParams params(Permutation(std::move(ranks)), phi);
                        for (int i = 0; i < config.m; ++i)
                            sample.add(sample_mallows(params, draw_rng));
                    } else {
                        const GmmParams params(random_weak_order(config.n, centroid_rng), phi);
                        GmmSampler sampler(params, seed_split(trial_seed, 2));
                        for (PartialRanking& draw : sampler.draw(config.m))
                            sample.add(std::move(draw));
                    }
                } else {
                    Rng pick_rng(seed_split(trial_seed, 3));
                    std::vector<int> index(static_cast<size_t>(pool.size()));
                    std::iota(index.begin(), index.end(), 0);
                    for (int i = 0; i < config.m; ++i) {
                        const int j = pick_rng.uniform_int(i, pool.size() - 1);
                        std::swap(index[static_cast<size_t>(i)], index[static_cast<size_t>(j)]);
                        sample.add(pool.at(index[static_cast<size_t>(i)]));
                    }
                }

                for (size_t k = 0; k < active.size(); ++k) {
                    const auto start = std::chrono::steady_clock::now();
                    Permutation out =
                        run_method(active[k], sample,
                                   seed_split(trial_seed, 100 + static_cast<std::uint64_t>(k)),
                                   config);
                    const Ranking result = apply_bucketize(config.bucketize, std::move(out), sample);
                    const double value = average_distance(sample, result, config.metric);
                    const auto stop = std::chrono::steady_clock::now();
                    const size_t slot = static_cast<size_t>(cell) * active.size() + k;
                    dav[slot] = value;
                    wall[slot] = std::chrono::duration<double>(stop - start).count();
                }
            } catch (...) {
                failures[static_cast<size_t>(cell)] = std::current_exception();
            }
        }
    });
    for (const auto& failure : failures)
        if (failure) std::rethrow_exception(failure);

    // reference means per grid point
    std::string reference = config.reference;
    if (reference.empty() && !active.empty()) reference = active.front();

    BenchReport report;
    report.include_timing = config.include_timing;
    std::map<std::pair<int, std::string>, double> means;
    for (int g = 0; g < g_count; ++g) {
        for (size_t k = 0; k < active.size(); ++k) {
            double sum = 0.0;
            for (int t = 0; t < config.trials; ++t)
                sum += dav[static_cast<size_t>(g * config.trials + t) * active.size() + k];
            means[{g, active[k]}] = sum / config.trials;
        }
    }
    for (int g = 0; g < g_count; ++g) {
        for (const std::string& method : config.methods) {
            BenchRow row;
            row.method = method;
            row.grid_value = grid[static_cast<size_t>(g)];
            if (method == "faslp-pivot") {
                row.available = false;  // needs an LP solver; reported, not substituted
                report.rows.push_back(std::move(row));
                continue;
            }
            const size_t k = static_cast<size_t>(
                std::find(active.begin(), active.end(), method) - active.begin());
            row.trials = config.trials;
            row.mean_dav = means[{g, method}];
            double ss = 0.0;
            double wall_total = 0.0;
            for (int t = 0; t < config.trials; ++t) {
                const size_t slot = static_cast<size_t>(g * config.trials + t) * active.size() + k;
                const double d = dav[slot] - row.mean_dav;
                ss += d * d;
                wall_total += wall[slot];
            }
            row.stddev = config.trials > 1 ? std::sqrt(ss / (config.trials - 1)) : 0.0;
            row.wall_seconds = wall_total;
            const auto ref = means.find({g, reference});
            row.ratio = ref != means.end() && ref->second != 0.0
                            ? row.mean_dav / ref->second
                            : std::numeric_limits<double>::quiet_NaN();
            report.rows.push_back(std::move(row));
        }
    }
    return report;
}

}  // namespace lca
