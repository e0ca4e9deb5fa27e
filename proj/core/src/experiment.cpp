#include "solmut/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "json.hpp"

#include "solmut/errors.hpp"
#include "solmut/random.hpp"

using nlohmann::ordered_json;

namespace solmut {

namespace {

std::vector<std::size_t> iota(std::size_t n) {
    std::vector<std::size_t> v(n);
    std::iota(v.begin(), v.end(), std::size_t{0});
    return v;
}

double mean(const std::vector<double>& xs) {
    if (xs.empty()) return 0.0;
    return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

std::vector<std::string> names(const std::vector<std::string>& ids, std::vector<std::size_t> idx, bool sort) {
    if (sort) std::sort(idx.begin(), idx.end());
    std::vector<std::string> out;
    for (auto i : idx) out.push_back(ids[i]);
    return out;
}

} // namespace

CoverageMatrix CoverageMatrix::parse(std::string_view json_text) {
    CoverageMatrix c;
    try {
        auto doc = ordered_json::parse(json_text);
        for (const auto& t : doc.at("tests")) {
            c.test_ids.push_back(t.at("id").get<std::string>());
            std::set<std::string> lines, branches;
            for (const auto& l : t.value("lines", ordered_json::array())) lines.insert(l.is_string() ? l.get<std::string>() : l.dump());
            for (const auto& b : t.value("branches", ordered_json::array()))
                branches.insert(b.is_string() ? b.get<std::string>() : b.dump());
            c.lines.push_back(std::move(lines));
            c.branches.push_back(std::move(branches));
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("malformed coverage file: ") + e.what());
    }
    return c;
}

MutantSplit split_mutants(std::size_t n, std::uint64_t seed) {
    if (n < 2) throw ExperimentInfeasible("need at least 2 useful mutants, have " + std::to_string(n));
    auto order = iota(n);
    SplitMix64 rng(seed);
    shuffle(order, rng);
    MutantSplit s;
    s.m1.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n / 2));
    s.m2.assign(order.begin() + static_cast<std::ptrdiff_t>(n / 2), order.end());
    std::sort(s.m1.begin(), s.m1.end());
    std::sort(s.m2.begin(), s.m2.end());
    return s;
}

std::vector<std::size_t> select_ts_cov(const CoverageMatrix& coverage, std::uint64_t seed) {
    std::set<std::string> all_lines, all_branches;
    for (std::size_t t = 0; t < coverage.test_ids.size(); ++t) {
        all_lines.insert(coverage.lines[t].begin(), coverage.lines[t].end());
        all_branches.insert(coverage.branches[t].begin(), coverage.branches[t].end());
    }
    auto order = iota(coverage.test_ids.size());
    SplitMix64 rng(seed);
    shuffle(order, rng);
    std::set<std::string> lines, branches;
    std::vector<std::size_t> chosen;
    for (auto t : order) {
        if (lines.size() == all_lines.size() && branches.size() == all_branches.size()) break;
        bool adds = false;
        for (const auto& l : coverage.lines[t]) adds |= lines.insert(l).second;
        for (const auto& b : coverage.branches[t]) adds |= branches.insert(b).second;
        if (adds) chosen.push_back(t);
    }
    return chosen;
}

std::size_t killed_by(const KillMatrix& matrix, const std::vector<std::size_t>& rows,
                      const std::vector<std::size_t>& tests) {
    std::size_t n = 0;
    for (auto r : rows)
        n += std::any_of(tests.begin(), tests.end(), [&](std::size_t t) { return kills(matrix.cells[r][t]); }) ? 1 : 0;
    return n;
}

double score_on(const KillMatrix& matrix, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& tests) {
    if (rows.empty()) return 0.0;
    return 100.0 * static_cast<double>(killed_by(matrix, rows, tests)) / static_cast<double>(rows.size());
}

std::vector<std::size_t> select_ts_ms1(const KillMatrix& matrix, const std::vector<std::size_t>& m1,
                                       std::uint64_t seed) {
    auto all_tests = iota(matrix.cols());
    std::size_t target = killed_by(matrix, m1, all_tests);
    auto order = all_tests;
    SplitMix64 rng(seed);
    shuffle(order, rng);
    std::vector<bool> dead(m1.size(), false);
    std::size_t killed = 0;
    std::vector<std::size_t> chosen;
    for (auto t : order) {
        if (killed == target) break;
        bool adds = false;
        for (std::size_t k = 0; k < m1.size(); ++k) {
            if (!dead[k] && kills(matrix.cells[m1[k]][t])) {
                dead[k] = true;
                ++killed;
                adds = true;
            }
        }
        if (adds) chosen.push_back(t);
    }
    return chosen;
}

ExperimentResult run_experiment(const KillMatrix& matrix, const CoverageMatrix& coverage,
                                const ExperimentConfig& config) {
    if (config.runs < 1) throw Error("experiment needs at least one run");
    // Align coverage to matrix columns.
    CoverageMatrix cov;
    for (const auto& id : matrix.test_ids) {
        auto it = std::find(coverage.test_ids.begin(), coverage.test_ids.end(), id);
        if (it == coverage.test_ids.end()) throw ExperimentInfeasible("no coverage recorded for test " + id);
        auto k = static_cast<std::size_t>(it - coverage.test_ids.begin());
        cov.test_ids.push_back(id);
        cov.lines.push_back(coverage.lines[k]);
        cov.branches.push_back(coverage.branches[k]);
    }

    ExperimentResult result;
    auto all_tests = iota(matrix.cols());
    std::vector<double> ts, by_cov, by_ms1, size_cov, size_ms1;
    for (int r = 0; r < config.runs; ++r) {
        RunRecord rec;
        rec.seed = derive_seed(config.seed, static_cast<std::uint64_t>(r));
        auto split = split_mutants(matrix.rows(), rec.seed);
        auto ts_cov = select_ts_cov(cov, derive_seed(rec.seed, 1));
        auto ts_ms1 = select_ts_ms1(matrix, split.m1, derive_seed(rec.seed, 2));
        rec.m1 = names(matrix.mutant_ids, split.m1, true);
        rec.m2 = names(matrix.mutant_ids, split.m2, true);
        rec.ts_cov = names(matrix.test_ids, ts_cov, false);
        rec.ts_ms1 = names(matrix.test_ids, ts_ms1, false);
        rec.ms1_ts = score_on(matrix, split.m1, all_tests);
        rec.ms1_cov = score_on(matrix, split.m1, ts_cov);
        rec.ms1_ms1 = score_on(matrix, split.m1, ts_ms1);
        rec.ms2_ts = score_on(matrix, split.m2, all_tests);
        rec.ms2_cov = score_on(matrix, split.m2, ts_cov);
        rec.ms2_ms1 = score_on(matrix, split.m2, ts_ms1);
        ts.push_back(rec.ms2_ts);
        by_cov.push_back(rec.ms2_cov);
        by_ms1.push_back(rec.ms2_ms1);
        size_cov.push_back(static_cast<double>(ts_cov.size()));
        size_ms1.push_back(static_cast<double>(ts_ms1.size()));
        result.runs.push_back(std::move(rec));
    }
    result.avg_ms2_ts = mean(ts);
    result.avg_ms2_cov = mean(by_cov);
    result.avg_ms2_ms1 = mean(by_ms1);
    result.avg_size_cov = mean(size_cov);
    result.avg_size_ms1 = mean(size_ms1);
    if (result.avg_ms2_ts > 0) {
        result.detection_rate_cov = result.avg_ms2_cov / result.avg_ms2_ts;
        result.detection_rate_ms1 = result.avg_ms2_ms1 / result.avg_ms2_ts;
    }
    try {
        result.wilcoxon_p = wilcoxon_paired(by_ms1, by_cov);
    } catch (const InsufficientPairs& e) {
        result.wilcoxon_note = e.what();
    }
    return result;
}

std::string ExperimentResult::to_json() const {
    auto opt = [](const std::optional<double>& v) { return v ? ordered_json(*v) : ordered_json(); };
    ordered_json run_list = ordered_json::array();
    for (std::size_t i = 0; i < runs.size(); ++i) {
        const auto& r = runs[i];
        run_list.push_back(ordered_json{
            {"run", i},
            {"seed", r.seed},
            {"m1", r.m1},
            {"m2", r.m2},
            {"ts_cov", r.ts_cov},
            {"ts_ms1", r.ts_ms1},
            {"ms1", {{"ts", r.ms1_ts}, {"ts_cov", r.ms1_cov}, {"ts_ms1", r.ms1_ms1}}},
            {"ms2", {{"ts", r.ms2_ts}, {"ts_cov", r.ms2_cov}, {"ts_ms1", r.ms2_ms1}}},
        });
    }
    ordered_json doc{
        {"runs", run_list},
        {"averages",
         {{"ms2_ts", avg_ms2_ts},
          {"ms2_ts_cov", avg_ms2_cov},
          {"ms2_ts_ms1", avg_ms2_ms1},
          {"size_ts_cov", avg_size_cov},
          {"size_ts_ms1", avg_size_ms1}}},
        {"detection_rate_cov", opt(detection_rate_cov)},
        {"detection_rate_ms1", opt(detection_rate_ms1)},
        {"wilcoxon_p", opt(wilcoxon_p)},
    };
    if (!wilcoxon_p) doc["wilcoxon_note"] = wilcoxon_note;
    return doc.dump(2) + "\n";
}

double wilcoxon_paired(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw DimensionMismatch("wilcoxon: samples differ in length");
    std::vector<double> d;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double x = a[i] - b[i];
        if (std::fabs(x) > 1e-12) d.push_back(x);
    }
    const std::size_t n = d.size();
    if (n < 5) throw InsufficientPairs("wilcoxon: " + std::to_string(n) + " non-zero pairs, need 5");

    // Midranks of |d|, doubled so they stay integral.
    std::vector<std::size_t> order = iota(n);
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return std::fabs(d[x]) < std::fabs(d[y]); });
    std::vector<long> rank2(n);
    double tie_term = 0;
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j + 1 < n && std::fabs(std::fabs(d[order[j + 1]]) - std::fabs(d[order[i]])) <= 1e-9) ++j;
        long mid2 = static_cast<long>(i + 1 + j + 1); // 2 * average of ranks i+1..j+1
        for (std::size_t k = i; k <= j; ++k) rank2[order[k]] = mid2;
        double t = static_cast<double>(j - i + 1);
        tie_term += t * t * t - t;
        i = j + 1;
    }
    long w2 = 0, total2 = 0;
    for (std::size_t i = 0; i < n; ++i) {
        total2 += rank2[i];
        if (d[i] > 0) w2 += rank2[i];
    }

    if (n <= 20) {
        // counts[s]: sign assignments whose doubled positive-rank sum is s.
        std::vector<double> counts(static_cast<std::size_t>(total2) + 1, 0.0);
        counts[0] = 1.0;
        long reach = 0;
        for (auto r : rank2) {
            for (long s = reach; s >= 0; --s)
                if (counts[static_cast<std::size_t>(s)] != 0.0) counts[static_cast<std::size_t>(s + r)] += counts[static_cast<std::size_t>(s)];
            reach += r;
        }
        double all = std::ldexp(1.0, static_cast<int>(n));
        double lower = 0, upper = 0;
        for (long s = 0; s <= total2; ++s) {
            if (s <= w2) lower += counts[static_cast<std::size_t>(s)];
            if (s >= w2) upper += counts[static_cast<std::size_t>(s)];
        }
        return std::min(1.0, 2.0 * std::min(lower, upper) / all);
    }

    double nn = static_cast<double>(n);
    double w = static_cast<double>(w2) / 2.0;
    double mu = nn * (nn + 1) / 4.0;
    double var = nn * (nn + 1) * (2 * nn + 1) / 24.0 - tie_term / 48.0;
    if (var <= 0) return 1.0;
    double z = std::max(0.0, std::fabs(w - mu) - 0.5) / std::sqrt(var);
    return std::min(1.0, std::erfc(z / std::sqrt(2.0)));
}

} // namespace solmut
