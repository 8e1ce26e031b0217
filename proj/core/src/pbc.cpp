#include "fnclass/pbc.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fnclass/errors.hpp"
#include "fnclass/parallel.hpp"

namespace fnclass {

void SampleSystem::validate() const {
    if (sample.n0() < 1 || sample.n1() < 1)
        throw InsufficientDataError("a sample-system needs at least one negative and one positive trajectory");
    transform.validate();
}

SampleSystem make_system(LabeledSample sample, TransformSpec transform, SystemMeta meta) {
    SampleSystem s{std::move(sample), transform, std::move(meta)};
    s.validate();
    return s;
}

std::vector<double> ScoreSet::scores_for(Label l) const {
    std::vector<double> out;
    for (std::size_t i = 0; i < scores.size(); ++i)
        if (labels[i] == l) out.push_back(scores[i]);
    return out;
}

PairTally pbc_tally(std::span<const double> dist_pos, std::span<const double> dist_neg, const TransformSpec& spec) {
    const FittedTransform h = fit_transform(dist_pos, spec);
    std::vector<double> hp(dist_pos.size()), hn(dist_neg.size());
    std::transform(dist_pos.begin(), dist_pos.end(), hp.begin(), h);
    std::transform(dist_neg.begin(), dist_neg.end(), hn.begin(), h);
    std::sort(hp.begin(), hp.end());
    return tally_less(hp, hn);
}

std::vector<PairTally> loo_tallies(const LabeledSample& sample, const TransformSpec& transform, unsigned threads) {
    if (sample.n0() < 2 || sample.n1() < 2)
        throw InsufficientDataError("leave-one-out scores need at least 2 negatives and 2 positives (got " +
                                    std::to_string(sample.n0()) + ", " + std::to_string(sample.n1()) + ")");
    transform.validate();
    const DistanceMatrix D = distance_matrix(sample, threads);
    const std::size_t n = sample.size();
    std::vector<PairTally> out(n);
    parallel_for(n, threads, [&](std::size_t i) {
        std::vector<double> dpos, dneg;
        dpos.reserve(sample.n1());
        dneg.reserve(sample.n0());
        const auto row = D.row(i);
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            (sample.label(j) == Label::Positive ? dpos : dneg).push_back(row[j]);
        }
        out[i] = pbc_tally(dpos, dneg, transform);
    });
    return out;
}

ScoreSet loo_scores(const LabeledSample& sample, const TransformSpec& transform, unsigned threads) {
    const auto tallies = loo_tallies(sample, transform, threads);
    ScoreSet s;
    s.scores.reserve(tallies.size());
    for (const auto& t : tallies) s.scores.push_back(t.value());
    s.labels.assign(sample.labels().begin(), sample.labels().end());
    return s;
}

double score_new(const SampleSystem& system, std::span<const double> values) {
    const LabeledSample& ref = system.sample;
    const auto d = distances_to(values, ref);
    std::vector<double> dpos, dneg;
    dpos.reserve(ref.n1());
    dneg.reserve(ref.n0());
    for (std::size_t j = 0; j < d.size(); ++j) (ref.label(j) == Label::Positive ? dpos : dneg).push_back(d[j]);
    if (dpos.empty() || dneg.empty()) throw InsufficientDataError("sample-system lacks one of the classes");
    return pbc_tally(dpos, dneg, system.transform).value();
}

double score_new(const SampleSystem& system, const Trajectory& f) {
    if (!same_grid(f.grid(), system.sample.grid()))
        throw DimensionError("trajectory is not on the system grid; resample it first");
    return score_new(system, f.values());
}

std::vector<double> score_batch(const SampleSystem& system, const LabeledSample& test, unsigned threads) {
    if (!same_grid(test.grid(), system.sample.grid()))
        throw DimensionError("test trajectories are not on the system grid");
    std::vector<double> out(test.size());
    parallel_for(test.size(), threads, [&](std::size_t i) { out[i] = score_new(system, test.row(i)); });
    return out;
}

double classification_threshold(std::span<const double> neg_scores, double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("false-positive level p must lie in [0, 1]");
    if (neg_scores.empty()) throw InsufficientDataError("classification needs the negative score distribution");
    return ecdf_quantile(Ecdf(neg_scores), 1.0 - p);
}

Label classify_score(double score, double p, std::span<const double> neg_scores) {
    return score > classification_threshold(neg_scores, p) ? Label::Positive : Label::Negative;
}

Label classify(const SampleSystem& system, const Trajectory& f, double p, std::span<const double> neg_scores) {
    const double threshold = classification_threshold(neg_scores, p);
    return score_new(system, f) > threshold ? Label::Positive : Label::Negative;
}

// --- persistence -----------------------------------------------------------

namespace {

constexpr int kSystemFormatVersion = 1;

const nlohmann::json& require(const nlohmann::json& j, const char* field) {
    auto it = j.find(field);
    if (it == j.end()) throw ParseError(std::string("system file: missing field '") + field + "'");
    return *it;
}

template <class T>
T field_as(const nlohmann::json& j, const std::string& context) {
    try {
        return j.get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("system file: bad value for '" + context + "': " + e.what());
    }
}

}  // namespace

std::string system_to_json(const SampleSystem& system) {
    nlohmann::json j;
    j["version"] = kSystemFormatVersion;
    const auto pts = system.sample.grid()->points();
    j["grid"] = std::vector<double>(pts.begin(), pts.end());
    std::vector<int> labels;
    nlohmann::json values = nlohmann::json::array();
    for (std::size_t i = 0; i < system.sample.size(); ++i) {
        labels.push_back(to_int(system.sample.label(i)));
        const auto r = system.sample.row(i);
        values.push_back(std::vector<double>(r.begin(), r.end()));
    }
    j["labels"] = labels;
    j["values"] = std::move(values);
    j["transform"] = {{"kind", to_string(system.transform.kind)}, {"tau", system.transform.tau}};
    j["meta"] = {{"seed", system.meta.seed}, {"note", system.meta.note}};
    return j.dump(1);
}

SampleSystem system_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("system file: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("system file: top level must be an object");
    const int version = field_as<int>(require(j, "version"), "version");
    if (version != kSystemFormatVersion)
        throw ParseError("system file: unsupported version " + std::to_string(version));

    auto grid = make_grid(Grid(field_as<std::vector<double>>(require(j, "grid"), "grid")));
    const auto labels = field_as<std::vector<long>>(require(j, "labels"), "labels");
    const auto& values = require(j, "values");
    if (!values.is_array()) throw ParseError("system file: 'values' must be an array of arrays");
    if (values.size() != labels.size())
        throw ParseError("system file: " + std::to_string(values.size()) + " value rows but " +
                         std::to_string(labels.size()) + " labels");

    LabeledSample sample(grid);
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const auto row = field_as<std::vector<double>>(values[i], "values[" + std::to_string(i) + "]");
        if (row.size() != grid->size())
            throw ParseError("system file: values[" + std::to_string(i) + "] has " + std::to_string(row.size()) +
                             " entries, grid has " + std::to_string(grid->size()));
        if (labels[i] != 0 && labels[i] != 1)
            throw ParseError("system file: labels[" + std::to_string(i) + "] must be 0 or 1");
        sample.add(row, label_from_int(labels[i]));
    }

    const auto& t = require(j, "transform");
    TransformSpec spec;
    spec.kind = transform_kind_from_string(field_as<std::string>(require(t, "kind"), "transform.kind"));
    spec.tau = field_as<double>(require(t, "tau"), "transform.tau");

    SystemMeta meta;
    if (auto it = j.find("meta"); it != j.end()) {
        if (auto s = it->find("seed"); s != it->end()) meta.seed = field_as<std::uint64_t>(*s, "meta.seed");
        if (auto n = it->find("note"); n != it->end()) meta.note = field_as<std::string>(*n, "meta.note");
    }
    return make_system(std::move(sample), spec, std::move(meta));
}

void save_system(const SampleSystem& system, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open '" + path.string() + "' for writing");
    out << system_to_json(system) << '\n';
    if (!out) throw ParseError("failed writing '" + path.string() + "'");
}

SampleSystem load_system(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open system file '" + path.string() + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return system_from_json(buf.str());
}

void feed_system(SampleSystem& system, const Trajectory& f, Label label) { system.sample.add(f, label); }

}  // namespace fnclass
