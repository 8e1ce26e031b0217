#include "fnclass/simlab.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "fnclass/baselines.hpp"
#include "fnclass/errors.hpp"
#include "fnclass/harness.hpp"
#include "fnclass/parallel.hpp"
#include "fnclass/pbc.hpp"

namespace fnclass {

namespace {

const char* family_name(ModelFamily f) {
    switch (f) {
        case ModelFamily::I: return "I";
        case ModelFamily::II: return "II";
        case ModelFamily::III: return "III";
        case ModelFamily::IV: return "IV";
    }
    return "?";
}

double log_normal_cdf(double z) {
    // Phi(z) = erfc(-z / sqrt 2) / 2 keeps precision in the lower tail.
    return std::log(0.5 * std::erfc(-z / std::numbers::sqrt2));
}

double draw_mixture_coefficient(Rng& rng) {
    std::bernoulli_distribution coin(0.5);
    std::normal_distribution<double> spread(0.0, 0.25);
    const double centre = coin(rng) ? 2.0 : -2.0;
    return centre + spread(rng);
}

std::vector<double> mean_curve(const ModelSpec& model, Label label, Rng& rng) {
    const auto t = model.grid->points();
    std::vector<double> v(t.size());
    const bool positive_shape = label == Label::Positive && model.variant != ModelVariant::a;
    switch (model.family) {
        case ModelFamily::I: {
            const double amp = positive_shape ? 7.0 / 5.0 : 1.0;
            for (std::size_t k = 0; k < t.size(); ++k) v[k] = amp * std::sin(std::numbers::pi * t[k]);
            break;
        }
        case ModelFamily::II: {
            const double c = draw_mixture_coefficient(rng);
            for (std::size_t k = 0; k < t.size(); ++k) {
                const double t2 = t[k] * t[k];
                if (label == Label::Positive)
                    v[k] = c * t2;
                else
                    v[k] = t[k] <= 0.0 ? c * t2 : -c * t2;
            }
            break;
        }
        case ModelFamily::III: {
            std::normal_distribution<double> loc(label == Label::Positive ? 0.15 : -0.15, 0.1);
            std::normal_distribution<double> scale(0.5, 0.2);
            const double mu = loc(rng);
            double sigma = 0.0;
            while (sigma == 0.0) sigma = std::abs(scale(rng));
            const double norm = 1.0 / (sigma * std::sqrt(2.0 * std::numbers::pi));
            for (std::size_t k = 0; k < t.size(); ++k) {
                const double z = (t[k] - mu) / sigma;
                v[k] = norm * std::exp(-0.5 * z * z);
            }
            break;
        }
        case ModelFamily::IV: {
            const double sign = positive_shape ? 0.5 : -0.5;
            for (std::size_t k = 0; k < t.size(); ++k) {
                const double d = t[k] - 2.0;
                v[k] = sign * t[k] * t[k] * t[k] / (d * d);
            }
            break;
        }
    }
    return v;
}

}  // namespace

ModelSpec ModelSpec::parse(const std::string& name) {
    const auto dash = name.find('-');
    if (dash == std::string::npos || dash + 2 != name.size())
        throw SpecError("model name must look like 'I-b', got '" + name + "'");
    const std::string fam = name.substr(0, dash);
    ModelSpec m;
    if (fam == "I")
        m.family = ModelFamily::I;
    else if (fam == "II")
        m.family = ModelFamily::II;
    else if (fam == "III")
        m.family = ModelFamily::III;
    else if (fam == "IV")
        m.family = ModelFamily::IV;
    else
        throw SpecError("unknown model family '" + fam + "'");
    switch (name.back()) {
        case 'a': m.variant = ModelVariant::a; break;
        case 'b': m.variant = ModelVariant::b; break;
        case 'c': m.variant = ModelVariant::c; break;
        case 'd': m.variant = ModelVariant::d; break;
        default: throw SpecError("unknown model variant '" + std::string(1, name.back()) + "'");
    }
    return m;
}

std::string ModelSpec::name() const {
    static constexpr char variants[] = {'a', 'b', 'c', 'd'};
    return std::string(family_name(family)) + "-" + variants[static_cast<int>(variant)];
}

NoiseSpec noise_for(const ModelSpec& model, Label label) {
    if (!(model.noise_scale >= 0.0) || !std::isfinite(model.noise_scale))
        throw SpecError("noise_scale must be a finite nonnegative number");
    if (model.noise_scale == 0.0) return {};
    const double rate_a = kNominalRateA * model.noise_scale;
    const double rate_b = kNominalRateB * model.noise_scale;
    switch (model.variant) {
        case ModelVariant::a:
            if (model.family == ModelFamily::II || model.family == ModelFamily::III) return {};
            return {NoiseKind::BrownianScaled, rate_a, model.corr_length};
        case ModelVariant::b: return {NoiseKind::BrownianScaled, rate_a, model.corr_length};
        case ModelVariant::c:
            return {NoiseKind::BrownianScaled, label == Label::Positive ? rate_b : rate_a, model.corr_length};
        case ModelVariant::d: return {NoiseKind::ExpVariogram, rate_a, model.corr_length};
    }
    return {};
}

std::vector<double> gen_noise(const NoiseSpec& spec, const Grid& grid, Rng& rng) {
    const auto t = grid.points();
    std::vector<double> e(t.size(), 0.0);
    if (spec.kind == NoiseKind::None) return e;
    if (!(spec.rate > 0.0)) throw SpecError("noise rate must be positive");
    std::normal_distribution<double> z(0.0, 1.0);
    if (spec.kind == NoiseKind::BrownianScaled) {
        for (std::size_t k = 1; k < t.size(); ++k) e[k] = e[k - 1] + std::sqrt(spec.rate * (t[k] - t[k - 1])) * z(rng);
        return e;
    }
    if (!(spec.corr_length > 0.0)) throw SpecError("variogram correlation length must be positive");
    // Exact AR(1) recursion of the exponential-correlation Gaussian process.
    double g = z(rng);
    const double scale = std::sqrt(spec.rate);
    for (std::size_t k = 0; k < t.size(); ++k) {
        if (k > 0) {
            const double rho = std::exp(-(t[k] - t[k - 1]) / spec.corr_length);
            g = rho * g + std::sqrt(1.0 - rho * rho) * z(rng);
        }
        e[k] = scale * (-log_normal_cdf(g) - 1.0);
    }
    return e;
}

Trajectory gen_trajectory(const ModelSpec& model, Label label, Rng& rng) {
    auto v = mean_curve(model, label, rng);
    const auto noise = gen_noise(noise_for(model, label), *model.grid, rng);
    for (std::size_t k = 0; k < v.size(); ++k) v[k] += noise[k];
    return Trajectory(model.grid, std::move(v));
}

LabeledSample gen_sample(const ModelSpec& model, std::size_t n0, std::size_t n1, Rng& rng) {
    LabeledSample s(model.grid);
    for (std::size_t i = 0; i < n0; ++i) s.add(gen_trajectory(model, Label::Negative, rng), Label::Negative);
    for (std::size_t i = 0; i < n1; ++i) s.add(gen_trajectory(model, Label::Positive, rng), Label::Positive);
    return s;
}

std::vector<SampleSize> parse_sizes(const std::string& text) {
    std::vector<SampleSize> out;
    std::stringstream groups(text);
    std::string group;
    while (std::getline(groups, group, ';')) {
        if (group.empty()) continue;
        const auto comma = group.find(',');
        if (comma == std::string::npos) throw UsageError("sample size must be 'n0,n1', got '" + group + "'");
        try {
            std::size_t used0 = 0, used1 = 0;
            const std::string a = group.substr(0, comma), b = group.substr(comma + 1);
            const long n0 = std::stol(a, &used0), n1 = std::stol(b, &used1);
            if (used0 != a.size() || used1 != b.size() || n0 < 1 || n1 < 1) throw std::invalid_argument(group);
            out.push_back({static_cast<std::size_t>(n0), static_cast<std::size_t>(n1)});
        } catch (const std::logic_error&) {
            throw UsageError("sample size must be two positive integers 'n0,n1', got '" + group + "'");
        }
    }
    if (out.empty()) throw UsageError("no sample sizes given");
    return out;
}

std::string to_string(Criterion c) {
    switch (c) {
        case Criterion::PBC: return "PBC";
        case Criterion::Min: return "Min";
        case Criterion::Max: return "Max";
        case Criterion::Int: return "Int";
    }
    return "?";
}

Criterion criterion_from_string(const std::string& name) {
    if (name == "PBC" || name == "pbc") return Criterion::PBC;
    if (name == "Min" || name == "min") return Criterion::Min;
    if (name == "Max" || name == "max") return Criterion::Max;
    if (name == "Int" || name == "int") return Criterion::Int;
    throw UsageError("unknown criterion '" + name + "'");
}

std::vector<double> ViolinTable::aucs(Criterion c, SampleSize size) const {
    std::vector<double> out;
    for (const auto& r : rows)
        if (r.criterion == c && r.size == size) out.push_back(r.auc);
    return out;
}

double ViolinTable::mean_auc(Criterion c, SampleSize size) const {
    const auto a = aucs(c, size);
    if (a.empty()) return std::nan("");
    double s = 0.0;
    for (double x : a) s += x;
    return s / static_cast<double>(a.size());
}

namespace {

SplitConfig split_config(const StudyOptions& o) {
    SplitConfig c;
    c.train_fraction = o.train_fraction;
    c.transform = o.transform;
    c.level = o.level;
    c.seed = o.seed;
    return c;
}

std::uint64_t replicate_stream(std::size_t size_index, std::size_t rep) {
    return (static_cast<std::uint64_t>(size_index) << 32) | static_cast<std::uint64_t>(rep);
}

ReducerKind reducer_for(Criterion c) {
    switch (c) {
        case Criterion::Min: return ReducerKind::Min;
        case Criterion::Max: return ReducerKind::Max;
        default: return ReducerKind::Int;
    }
}

}  // namespace

ViolinTable mc_auc_study(const ModelSpec& model, std::span<const SampleSize> sizes, std::size_t reps,
                         std::span<const Criterion> criteria, const StudyOptions& options) {
    ViolinTable table;
    if (criteria.empty() || sizes.empty() || reps == 0) return table;
    const SplitConfig cfg = split_config(options);
    cfg.validate();
    const std::string scenario = model.name();

    struct Slot {
        std::vector<AucRow> rows;
        std::size_t redraws = 0;
    };
    std::vector<Slot> slots(sizes.size() * reps);
    parallel_for(slots.size(), options.threads, [&](std::size_t job) {
        const std::size_t s = job / reps, r = job % reps;
        Rng rng = make_rng(options.seed, {kStreamSample, s, r});
        const LabeledSample sample = gen_sample(model, sizes[s].n0, sizes[s].n1, rng);
        Slot& slot = slots[job];
        for (Criterion c : criteria) {
            AucRow row{scenario, sizes[s], r, c, 0.5, 0.5, 0.5};
            if (c == Criterion::PBC) {
                const Split split = split_with_redraw(sample, cfg, replicate_stream(s, r), slot.redraws);
                const auto system = make_system(split.train, cfg.transform);
                const auto res = evaluate_system(system, split.test, cfg);
                row.auc = res.auc.auc;
                row.ci_low = res.auc.ci_low;
                row.ci_high = res.auc.ci_high;
            } else {
                const auto b = baseline_auc(sample, reducer_for(c), cfg.level);
                row.auc = b.estimate.auc;
                row.ci_low = b.estimate.ci_low;
                row.ci_high = b.estimate.ci_high;
            }
            slot.rows.push_back(std::move(row));
        }
    });
    for (auto& slot : slots) {
        table.redraws += slot.redraws;
        for (auto& row : slot.rows) table.rows.push_back(std::move(row));
    }
    return table;
}

double real_system_auc(const ModelSpec& model, std::size_t n, const StudyOptions& options) {
    Rng train_rng = make_rng(options.seed, {kStreamRealSystem, 0});
    Rng test_rng = make_rng(options.seed, {kStreamRealSystem, 1});
    const auto system = make_system(gen_sample(model, n, n, train_rng), options.transform);
    const auto test = gen_sample(model, n, n, test_rng);
    const auto scores = score_batch(system, test, options.threads);
    std::vector<double> neg(scores.begin(), scores.begin() + static_cast<std::ptrdiff_t>(n));
    std::vector<double> pos(scores.begin() + static_cast<std::ptrdiff_t>(n), scores.end());
    return auc(neg, pos);
}

std::vector<CoverageReport> coverage_study(const ModelSpec& model, std::span<const SampleSize> sizes,
                                           std::size_t reps, const CoverageOptions& options) {
    if (reps == 0) throw UsageError("coverage study needs at least one replicate");
    const StudyOptions& o = options.study;
    const SplitConfig cfg = split_config(o);
    cfg.validate();
    const double real_auc = real_system_auc(model, options.real_system_n, o);

    struct Slot {
        double length = 0.0, auc = 0.0;
        bool covers_sample = false, covers_real = false;
        std::size_t redraws = 0;
    };
    std::vector<CoverageReport> reports;
    for (std::size_t s = 0; s < sizes.size(); ++s) {
        std::vector<Slot> slots(reps);
        parallel_for(reps, o.threads, [&](std::size_t r) {
            Slot& slot = slots[r];
            Rng rng = make_rng(o.seed, {kStreamSample, s, r});
            const LabeledSample sample = gen_sample(model, sizes[s].n0, sizes[s].n1, rng);
            const Split split = split_with_redraw(sample, cfg, replicate_stream(s, r), slot.redraws);
            const auto system = make_system(split.train, cfg.transform);
            const auto res = evaluate_system(system, split.test, cfg);

            Rng ref_rng = make_rng(o.seed, {kStreamSystemRef, s, r});
            const std::size_t m = options.sample_reference_n;
            const auto ref_scores = score_batch(system, gen_sample(model, m, m, ref_rng));
            const std::span<const double> all(ref_scores);
            const double sample_auc = auc(all.first(m), all.subspan(m));

            slot.length = res.auc.length();
            slot.auc = res.auc.auc;
            slot.covers_sample = res.auc.covers(sample_auc);
            slot.covers_real = res.auc.covers(real_auc);
        });
        CoverageReport rep;
        rep.scenario = model.name();
        rep.size = sizes[s];
        rep.reps = reps;
        rep.real_auc = real_auc;
        std::size_t hit_sample = 0, hit_real = 0;
        double len = 0.0, a = 0.0;
        for (const auto& slot : slots) {
            hit_sample += slot.covers_sample;
            hit_real += slot.covers_real;
            len += slot.length;
            a += slot.auc;
            rep.redraws += slot.redraws;
        }
        const double n = static_cast<double>(reps);
        rep.coverage_sample = 100.0 * static_cast<double>(hit_sample) / n;
        rep.coverage_real = 100.0 * static_cast<double>(hit_real) / n;
        rep.mean_length = len / n;
        rep.mean_auc = a / n;
        reports.push_back(rep);
    }
    return reports;
}

}  // namespace fnclass
