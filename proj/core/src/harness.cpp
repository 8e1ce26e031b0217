#include "fnclass/harness.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fnclass/errors.hpp"
#include "fnclass/parallel.hpp"

namespace fnclass {

namespace {

constexpr std::size_t kMaxSplitAttempts = 10000;

}  // namespace

void SplitConfig::validate() const {
    if (!(train_fraction > 0.0 && train_fraction < 1.0)) throw DomainError("train fraction must lie in (0, 1)");
    if (!(level > 0.0 && level < 1.0)) throw DomainError("confidence level must lie in (0, 1)");
    transform.validate();
}

std::vector<double> RepeatedSummary::aucs() const {
    std::vector<double> out;
    out.reserve(replicates.size());
    for (const auto& r : replicates) out.push_back(r.auc.auc);
    return out;
}

Split split_sample(const LabeledSample& sample, const SplitConfig& config, Rng& rng) {
    config.validate();
    if (sample.n0() < 2 || sample.n1() < 2)
        throw InsufficientDataError("splitting needs at least 2 negatives and 2 positives");
    const std::size_t n = sample.size();
    const auto n_train = static_cast<std::size_t>(std::llround(config.train_fraction * static_cast<double>(n)));

    // Partial Fisher-Yates: the first n_train slots are a simple random sample.
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    for (std::size_t i = 0; i < n_train && i + 1 < n; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, n - 1);
        std::swap(idx[i], idx[pick(rng)]);
    }
    Split s{LabeledSample(sample.grid()), LabeledSample(sample.grid()), {}, {}};
    s.train_index.assign(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(n_train));
    s.test_index.assign(idx.begin() + static_cast<std::ptrdiff_t>(n_train), idx.end());
    std::sort(s.train_index.begin(), s.train_index.end());
    std::sort(s.test_index.begin(), s.test_index.end());

    std::size_t train1 = 0, test1 = 0;
    for (auto i : s.train_index) train1 += sample.label(i) == Label::Positive;
    for (auto i : s.test_index) test1 += sample.label(i) == Label::Positive;
    const std::size_t train0 = s.train_index.size() - train1, test0 = s.test_index.size() - test1;
    if (train0 < 2) throw ResampleNeededError("train", 0, "training cohort has fewer than 2 negatives");
    if (train1 < 2) throw ResampleNeededError("train", 1, "training cohort has fewer than 2 positives");
    if (test0 < 1) throw ResampleNeededError("test", 0, "testing cohort has no negatives");
    if (test1 < 1) throw ResampleNeededError("test", 1, "testing cohort has no positives");

    s.train = sample.subset(s.train_index);
    s.test = sample.subset(s.test_index);
    return s;
}

SplitResult evaluate_system(const SampleSystem& system, const LabeledSample& test, const SplitConfig& config,
                            unsigned threads) {
    const auto scores = score_batch(system, test, threads);
    std::vector<double> neg, pos;
    for (std::size_t i = 0; i < scores.size(); ++i)
        (test.label(i) == Label::Positive ? pos : neg).push_back(scores[i]);
    SplitResult r;
    r.roc = roc_curve(neg, pos);
    r.auc = auc_ci(neg, pos, config.level);
    r.train = {system.sample.n0(), system.sample.n1()};
    r.test = {test.n0(), test.n1()};
    r.seed = config.seed;
    return r;
}

SplitResult evaluate_split(const LabeledSample& sample, const SplitConfig& config, Rng& rng, unsigned threads) {
    const Split s = split_sample(sample, config, rng);
    SystemMeta meta{config.seed, "training cohort"};
    const auto system = make_system(s.train, config.transform, meta);
    return evaluate_system(system, s.test, config, threads);
}

Split split_with_redraw(const LabeledSample& sample, const SplitConfig& config, std::uint64_t stream,
                        std::size_t& redraws, std::uint64_t* used_seed) {
    for (std::size_t attempt = 0; attempt < kMaxSplitAttempts; ++attempt) {
        const std::uint64_t seed = derive_seed(config.seed, {kStreamSplit, stream, attempt});
        Rng rng(seed);
        try {
            Split s = split_sample(sample, config, rng);
            if (used_seed) *used_seed = seed;
            return s;
        } catch (const ResampleNeededError&) {
            ++redraws;
        }
    }
    throw ResampleNeededError("train", -1, "no valid split found after " + std::to_string(kMaxSplitAttempts) +
                                               " attempts; the sample is too small for this train fraction");
}

RocCurve vertical_mean(std::span<const RocCurve> curves) {
    if (curves.empty()) throw InsufficientDataError("mean of zero ROC curves");
    RocCurve mean{curves.front().p_grid, std::vector<double>(curves.front().p_grid.size(), 0.0)};
    for (const auto& c : curves) {
        if (c.p_grid != mean.p_grid) throw DimensionError("ROC curves do not share a p-grid");
        for (std::size_t k = 0; k < c.values.size(); ++k) mean.values[k] += c.values[k];
    }
    for (auto& v : mean.values) v /= static_cast<double>(curves.size());
    return mean;
}

RepeatedSummary repeated_evaluation(const LabeledSample& sample, const SplitConfig& config, std::size_t reps,
                                    unsigned threads) {
    if (reps < 1) throw UsageError("repeated evaluation needs at least one replicate");
    config.validate();
    struct Slot {
        SplitResult result;
        std::size_t redraws = 0;
    };
    std::vector<Slot> slots(reps);
    parallel_for(reps, threads, [&](std::size_t r) {
        std::uint64_t seed = 0;
        const Split s = split_with_redraw(sample, config, r, slots[r].redraws, &seed);
        SplitConfig local = config;
        local.seed = seed;
        const auto system = make_system(s.train, config.transform, {seed, "training cohort"});
        slots[r].result = evaluate_system(system, s.test, local);
    });

    RepeatedSummary out;
    out.replicates.reserve(reps);
    for (auto& s : slots) {
        out.redraws += s.redraws;
        out.replicates.push_back(std::move(s.result));
    }
    std::vector<RocCurve> curves;
    curves.reserve(reps);
    double sum = 0.0, lo = 0.0, hi = 0.0;
    out.min_auc = 1.0;
    out.max_auc = 0.0;
    for (const auto& r : out.replicates) {
        curves.push_back(r.roc);
        sum += r.auc.auc;
        lo += r.auc.ci_low;
        hi += r.auc.ci_high;
        out.min_auc = std::min(out.min_auc, r.auc.auc);
        out.max_auc = std::max(out.max_auc, r.auc.auc);
    }
    const double n = static_cast<double>(reps);
    out.mean_auc = sum / n;
    out.mean_ci_low = lo / n;
    out.mean_ci_high = hi / n;
    out.mean_roc = vertical_mean(curves);
    return out;
}

std::vector<ConsistencyRow> consistency_check(const ModelSpec& model, std::span<const SampleSize> sizes,
                                              std::size_t reps, const ConsistencyOptions& options) {
    if (reps == 0) throw UsageError("consistency check needs at least one replicate");
    for (std::size_t s = 1; s < sizes.size(); ++s)
        if (sizes[s].n0 + sizes[s].n1 <= sizes[s - 1].n0 + sizes[s - 1].n1)
            throw UsageError("consistency check sizes must be increasing");

    Rng ref_rng = make_rng(options.seed, {kStreamReference, 0});
    const auto ref_sample = gen_sample(model, options.reference_n, options.reference_n, ref_rng);
    const auto ref_scores = loo_scores(ref_sample, options.transform, options.threads);
    const Ecdf ref_neg(ref_scores.neg_scores()), ref_pos(ref_scores.pos_scores());

    std::vector<ConsistencyRow> rows;
    for (std::size_t s = 0; s < sizes.size(); ++s) {
        std::vector<double> sup(reps);
        parallel_for(reps, options.threads, [&](std::size_t r) {
            Rng rng = make_rng(options.seed, {kStreamSample, s, r});
            const auto sample = gen_sample(model, sizes[s].n0, sizes[s].n1, rng);
            const auto scores = loo_scores(sample, options.transform);
            sup[r] = roc_sup_distance(Ecdf(scores.neg_scores()), Ecdf(scores.pos_scores()), ref_neg, ref_pos);
        });
        ConsistencyRow row{sizes[s], 0.0, 0.0, reps};
        for (double x : sup) row.mean_sup += x;
        row.mean_sup /= static_cast<double>(reps);
        for (double x : sup) row.sd_sup += (x - row.mean_sup) * (x - row.mean_sup);
        row.sd_sup = reps > 1 ? std::sqrt(row.sd_sup / static_cast<double>(reps - 1)) : 0.0;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace fnclass
