#include "fnclass_cli/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "fnclass/baselines.hpp"
#include "fnclass/errors.hpp"
#include "fnclass/harness.hpp"
#include "fnclass/io.hpp"
#include "fnclass/parallel.hpp"
#include "fnclass/pbc.hpp"
#include "fnclass/simlab.hpp"

namespace fs = std::filesystem;

namespace fnclass::cli {

namespace {

struct Common {
    unsigned threads = 0;
};

struct TransformOpts {
    std::string kind = "identity";
    double tau = 0.5;

    TransformSpec spec() const {
        TransformSpec s{transform_kind_from_string(kind), tau};
        s.validate();
        return s;
    }
};

void add_transform(CLI::App* cmd, TransformOpts& t) {
    cmd->add_option("--transform", t.kind, "distance transform: identity | subgroup_proximity")->capture_default_str();
    cmd->add_option("--tau", t.tau, "anchor quantile for subgroup_proximity")->capture_default_str();
}

struct ModelOpts {
    std::vector<std::string> models;
    std::string sizes = "50,50";
    double noise_scale = kDefaultNoiseScale;

    std::vector<ModelSpec> specs() const {
        std::vector<ModelSpec> out;
        for (const auto& name : models) {
            ModelSpec m = ModelSpec::parse(name);
            if (!(noise_scale >= 0.0)) throw UsageError("--noise-scale must be non-negative");
            m.noise_scale = noise_scale;
            out.push_back(m);
        }
        return out;
    }
};

void add_model(CLI::App* cmd, ModelOpts& m) {
    cmd->add_option("--model", m.models, "model name, e.g. I-b (repeatable)")->required();
    cmd->add_option("--sizes", m.sizes, "sample sizes n0,n1[;n0,n1...]")->capture_default_str();
    cmd->add_option("--noise-scale", m.noise_scale, "multiplier on the nominal noise rates")->capture_default_str();
}

std::string scenario_key(const std::string& model, SampleSize s) {
    return model + "@" + std::to_string(s.n0) + "x" + std::to_string(s.n1);
}

fs::path prepare_dir(const std::string& dir) {
    if (dir.empty()) throw UsageError("--out is required");
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw ParseError("cannot create directory '" + dir + "': " + ec.message());
    return fs::path(dir);
}

// Minimal reader for the tool's own numeric CSV outputs.
struct NumericTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::size_t col(const std::string& name) const {
        const auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) throw ParseError("missing column '" + name + "'");
        return static_cast<std::size_t>(it - header.begin());
    }
};

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        if (!cell.empty() && cell.back() == '\r') cell.pop_back();
        f.push_back(cell);
    }
    if (!line.empty() && line.back() == ',') f.emplace_back();
    return f;
}

NumericTable read_numeric(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    NumericTable t;
    std::string line;
    if (!std::getline(in, line)) throw ParseError("'" + path + "' is empty");
    t.header = split_csv(line);
    long lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        auto f = split_csv(line);
        if (f.size() != t.header.size()) throw ParseError("'" + path + "': wrong number of fields", lineno);
        t.rows.push_back(std::move(f));
    }
    return t;
}

double to_double(const std::string& s) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError("not a number: '" + s + "'");
    }
}

// --- simulate -----------------------------------------------------------------

struct SimulateOpts {
    ModelOpts model;
    TransformOpts transform;
    std::size_t reps = 100;
    std::uint64_t seed = 0;
    std::vector<std::string> criteria{"PBC", "Min", "Max", "Int"};
    double train_fraction = 1.0 / 3.0;
    double level = 0.95;
    std::string out;
};

int cmd_simulate(const SimulateOpts& o, const Common& c, std::ostream& out) {
    const auto dir = prepare_dir(o.out);
    std::vector<Criterion> criteria;
    for (const auto& name : o.criteria) criteria.push_back(criterion_from_string(name));
    const auto sizes = parse_sizes(o.model.sizes);
    StudyOptions so{o.train_fraction, o.transform.spec(), o.level, o.seed, resolve_threads(c.threads)};

    std::ostringstream aucs, summary;
    aucs << "scenario,n0,n1,rep,criterion,auc,ci_low,ci_high\n";
    summary << "scenario,n0,n1,criterion,mean_auc,reps\n";
    std::vector<StripGroup> groups;
    std::size_t redraws = 0;
    for (const auto& model : o.model.specs()) {
        const auto table = mc_auc_study(model, sizes, o.reps, criteria, so);
        redraws += table.redraws;
        for (const auto& r : table.rows)
            aucs << r.scenario << ',' << r.size.n0 << ',' << r.size.n1 << ',' << r.rep << ',' << to_string(r.criterion)
                 << ',' << format_double(r.auc) << ',' << format_double(r.ci_low) << ','
                 << format_double(r.ci_high) << '\n';
        for (const auto& size : sizes)
            for (auto crit : criteria) {
                summary << model.name() << ',' << size.n0 << ',' << size.n1 << ',' << to_string(crit) << ','
                        << format_double(table.mean_auc(crit, size)) << ',' << o.reps << '\n';
                groups.push_back({scenario_key(model.name(), size) + " " + to_string(crit), table.aucs(crit, size)});
                out << scenario_key(model.name(), size) << ' ' << to_string(crit)
                    << " mean AUC " << format_double(table.mean_auc(crit, size)) << '\n';
            }
    }
    write_text_file(dir / "aucs.csv", aucs.str());
    write_text_file(dir / "summary.csv", summary.str());
    write_text_file(dir / "violin.svg", violin_svg(groups, "AUC distributions"));
    out << "split redraws: " << redraws << '\n';
    return 0;
}

// --- generate -------------------------------------------------------------------

struct GenerateOpts {
    std::string model;
    std::size_t n0 = 50, n1 = 50;
    std::uint64_t seed = 0;
    double noise_scale = kDefaultNoiseScale;
    std::string out;
};

int cmd_generate(const GenerateOpts& o, std::ostream& out) {
    ModelSpec m = ModelSpec::parse(o.model);
    m.noise_scale = o.noise_scale;
    Rng rng = make_rng(o.seed, {kStreamSample});
    const auto sample = gen_sample(m, o.n0, o.n1, rng);
    std::ostringstream csv;
    write_long_csv(csv, sample);
    if (o.out.empty() || o.out == "-")
        out << csv.str();
    else
        write_text_file(o.out, csv.str());
    return 0;
}

// --- eval -----------------------------------------------------------------------

struct DataOpts {
    std::string path;
    bool wide = false;
    std::size_t resample = 0;

    IngestResult ingest() const {
        IngestOptions io;
        io.table.wide = wide;
        if (resample > 0) io.resample_to = resample;
        return ingest_csv(path, io);
    }
};

void add_data(CLI::App* cmd, DataOpts& d) {
    cmd->add_option("--data", d.path, "input CSV (id,label,t,value)")->required();
    cmd->add_flag("--wide", d.wide, "input is wide: id,label,<t_1>,...,<t_m>");
    cmd->add_option("--resample", d.resample, "resample every trajectory to N equispaced points");
}

struct EvalOpts {
    DataOpts data;
    TransformOpts transform;
    std::size_t reps = 200;
    double train_fraction = 1.0 / 3.0;
    double level = 0.95;
    std::uint64_t seed = 0;
    std::string out;
};

int cmd_eval(const EvalOpts& o, const Common& c, std::ostream& out) {
    const auto dir = prepare_dir(o.out);
    const auto ingested = o.data.ingest();
    const auto& sample = ingested.sample;
    const unsigned threads = resolve_threads(c.threads);
    SplitConfig cfg{o.train_fraction, o.transform.spec(), o.level, o.seed};
    const auto summary = repeated_evaluation(sample, cfg, o.reps, threads);

    std::ostringstream per_rep, rays, whole;
    per_rep << "rep,auc,ci_low,ci_high,ns0,ns1,nc0,nc1\n";
    rays << "rep,p,sensitivity\n";
    for (std::size_t r = 0; r < summary.replicates.size(); ++r) {
        const auto& x = summary.replicates[r];
        per_rep << r << ',' << format_double(x.auc.auc) << ',' << format_double(x.auc.ci_low) << ','
                << format_double(x.auc.ci_high) << ',' << x.train.n0 << ',' << x.train.n1 << ',' << x.test.n0 << ','
                << x.test.n1 << '\n';
        for (std::size_t k = 0; k < x.roc.p_grid.size(); ++k)
            rays << r << ',' << format_double(x.roc.p_grid[k]) << ',' << format_double(x.roc.values[k]) << '\n';
    }
    std::ostringstream mean_roc;
    write_roc_csv(mean_roc, summary.mean_roc);

    // Whole-sample AUCs: PBC in-sample (leave-one-out) and the scalar criteria.
    whole << "criterion,auc,var,ci_low,ci_high,level,raw_auc,orientation\n";
    const auto scores = loo_scores(sample, cfg.transform, threads);
    const auto pbc = auc_ci(scores.neg_scores(), scores.pos_scores(), o.level);
    whole << "PBC," << format_double(pbc.auc) << ',' << format_double(pbc.variance) << ','
          << format_double(pbc.ci_low) << ',' << format_double(pbc.ci_high) << ',' << format_double(pbc.level) << ','
          << format_double(pbc.auc) << ",higher\n";
    out << "n0=" << sample.n0() << " n1=" << sample.n1() << " grid=" << sample.grid()->size() << '\n';
    out << "whole-sample PBC AUC " << format_double(pbc.auc) << '\n';
    for (auto k : {ReducerKind::Min, ReducerKind::Max, ReducerKind::Int}) {
        const auto b = baseline_auc(sample, k, o.level);
        whole << to_string(k) << ',' << format_double(b.estimate.auc) << ',' << format_double(b.estimate.variance)
              << ',' << format_double(b.estimate.ci_low) << ',' << format_double(b.estimate.ci_high) << ','
              << format_double(b.estimate.level) << ',' << format_double(b.raw_auc) << ',' << to_string(b.orientation)
              << '\n';
        out << "whole-sample " << to_string(k) << " AUC " << format_double(b.estimate.auc) << '\n';
    }

    write_text_file(dir / "per_rep.csv", per_rep.str());
    write_text_file(dir / "roc_rays.csv", rays.str());
    write_text_file(dir / "mean_roc.csv", mean_roc.str());
    write_text_file(dir / "whole_sample.csv", whole.str());
    std::vector<RocCurve> curves;
    for (const auto& r : summary.replicates) curves.push_back(r.roc);
    write_text_file(dir / "roc.svg", roc_svg(curves, &summary.mean_roc, nullptr, "PBC ROC, repeated splits"));
    out << "repeated splits: " << o.reps << ", mean AUC " << format_double(summary.mean_auc) << " (range "
        << format_double(summary.min_auc) << " - " << format_double(summary.max_auc) << "), redraws "
        << summary.redraws << '\n';
    return 0;
}

// --- coverage ---------------------------------------------------------------------

struct CoverageOpts {
    ModelOpts model;
    TransformOpts transform;
    std::size_t reps = 500;
    std::uint64_t seed = 0;
    double train_fraction = 1.0 / 3.0;
    double level = 0.95;
    std::size_t real_n = 2000;
    std::size_t reference_n = 1000;
    std::string out;
};

int cmd_coverage(const CoverageOpts& o, const Common& c, std::ostream& out) {
    const auto sizes = parse_sizes(o.model.sizes);
    CoverageOptions co;
    co.study = {o.train_fraction, o.transform.spec(), o.level, o.seed, resolve_threads(c.threads)};
    co.real_system_n = o.real_n;
    co.sample_reference_n = o.reference_n;
    std::ostringstream csv;
    csv << "scenario,coverage_sample,coverage_real,mean_length\n";
    for (const auto& model : o.model.specs()) {
        for (const auto& r : coverage_study(model, sizes, o.reps, co)) {
            const auto key = scenario_key(r.scenario, r.size);
            csv << key << ',' << format_double(r.coverage_sample) << ',' << format_double(r.coverage_real) << ','
                << format_double(r.mean_length) << '\n';
            out << key << ": coverage sample " << format_double(r.coverage_sample) << "%, real "
                << format_double(r.coverage_real) << "%, mean length " << format_double(r.mean_length)
                << ", mean AUC " << format_double(r.mean_auc) << ", real AUC " << format_double(r.real_auc) << '\n';
        }
    }
    if (o.out.empty() || o.out == "-")
        out << csv.str();
    else
        write_text_file(o.out, csv.str());
    return 0;
}

// --- consistency --------------------------------------------------------------------

struct ConsistencyOpts {
    ModelOpts model;
    TransformOpts transform;
    std::size_t reps = 50;
    std::uint64_t seed = 0;
    std::size_t reference_n = 2000;
    std::string out;
};

int cmd_consistency(const ConsistencyOpts& o, const Common& c, std::ostream& out) {
    const auto sizes = parse_sizes(o.model.sizes);
    ConsistencyOptions co{o.reference_n, o.transform.spec(), o.seed, resolve_threads(c.threads)};
    std::ostringstream csv;
    csv << "scenario,n0,n1,mean_sup,sd_sup,reps\n";
    for (const auto& model : o.model.specs())
        for (const auto& r : consistency_check(model, sizes, o.reps, co))
            csv << model.name() << ',' << r.size.n0 << ',' << r.size.n1 << ',' << format_double(r.mean_sup) << ','
                << format_double(r.sd_sup) << ',' << r.reps << '\n';
    if (o.out.empty() || o.out == "-")
        out << csv.str();
    else
        write_text_file(o.out, csv.str());
    return 0;
}

// --- score ------------------------------------------------------------------------

struct ScoreOpts {
    std::string system;
    std::string data;
    bool wide = false;
    double specificity = 0.8;
    std::string out;
};

std::vector<std::pair<Series, Trajectory>> on_system_grid(const std::string& path, bool wide, bool need_labels,
                                                          const GridPtr& grid) {
    TableOptions to;
    to.wide = wide;
    to.require_labels = need_labels;
    auto table = read_table(path, to);
    std::vector<std::pair<Series, Trajectory>> out;
    for (auto& s : table.series) {
        auto f = series_on_grid(s, grid);
        out.emplace_back(std::move(s), std::move(f));
    }
    return out;
}

int cmd_score(const ScoreOpts& o, const Common& c, std::ostream& out) {
    if (!(o.specificity >= 0.0 && o.specificity <= 1.0)) throw DomainError("--specificity must lie in [0, 1]");
    const auto system = load_system(o.system);
    const auto items = on_system_grid(o.data, o.wide, false, system.sample.grid());
    const auto reference = loo_scores(system.sample, system.transform, resolve_threads(c.threads));
    const auto neg = reference.neg_scores();
    const double p = 1.0 - o.specificity;
    std::ostringstream csv;
    csv << "id,score,label_hat\n";
    for (const auto& [s, f] : items) {
        const double score = score_new(system, f);
        csv << s.id << ',' << format_double(score) << ',' << to_int(classify_score(score, p, neg)) << '\n';
    }
    if (o.out.empty() || o.out == "-")
        out << csv.str();
    else
        write_text_file(o.out, csv.str());
    return 0;
}

// --- system -----------------------------------------------------------------------

struct SystemOpts {
    DataOpts data;
    TransformOpts transform;
    std::string system;
    std::string out;
    std::string note;
    std::uint64_t seed = 0;
};

int cmd_system_save(const SystemOpts& o, std::ostream& out) {
    auto ingested = o.data.ingest();
    const auto system = make_system(std::move(ingested.sample), o.transform.spec(), {o.seed, o.note});
    save_system(system, o.out);
    out << "saved " << system.sample.size() << " trajectories (" << system.sample.n0() << " negative, "
        << system.sample.n1() << " positive) to " << o.out << '\n';
    return 0;
}

int cmd_system_load(const SystemOpts& o, std::ostream& out) {
    const auto system = load_system(o.system);
    const auto& g = *system.sample.grid();
    out << "n0=" << system.sample.n0() << '\n'
        << "n1=" << system.sample.n1() << '\n'
        << "grid_points=" << g.size() << '\n'
        << "grid_range=" << format_double(g.front()) << ',' << format_double(g.back()) << '\n'
        << "transform=" << to_string(system.transform.kind) << '\n'
        << "tau=" << format_double(system.transform.tau) << '\n'
        << "seed=" << system.meta.seed << '\n'
        << "note=" << system.meta.note << '\n';
    return 0;
}

int cmd_system_feed(const SystemOpts& o, std::ostream& out) {
    auto system = load_system(o.system);
    const auto items = on_system_grid(o.data.path, o.data.wide, true, system.sample.grid());
    for (const auto& [s, f] : items) feed_system(system, f, *s.label);
    const std::string dest = o.out.empty() ? o.system : o.out;
    save_system(system, dest);
    out << "fed " << items.size() << " trajectories; system now has " << system.sample.n0() << " negative and "
        << system.sample.n1() << " positive\n";
    return 0;
}

// --- plots ------------------------------------------------------------------------

struct RocPlotOpts {
    std::string rays;
    std::string mean;
    std::string highlight;
    std::string title;
    std::string out;
};

RocCurve read_curve(const NumericTable& t, const std::vector<std::size_t>& rows) {
    const auto cp = t.col("p"), cs = t.col("sensitivity");
    RocCurve c;
    for (auto i : rows) {
        c.p_grid.push_back(to_double(t.rows[i][cp]));
        c.values.push_back(to_double(t.rows[i][cs]));
    }
    return c;
}

RocCurve read_single_curve(const std::string& path) {
    const auto t = read_numeric(path);
    std::vector<std::size_t> all(t.rows.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return read_curve(t, all);
}

int cmd_roc_plot(const RocPlotOpts& o, std::ostream& out) {
    const auto t = read_numeric(o.rays);
    const auto crep = t.col("rep");
    std::map<std::string, std::vector<std::size_t>> by_rep;
    std::vector<std::string> order;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        auto [it, inserted] = by_rep.try_emplace(t.rows[i][crep]);
        if (inserted) order.push_back(t.rows[i][crep]);
        it->second.push_back(i);
    }
    std::vector<RocCurve> curves;
    for (const auto& rep : order) curves.push_back(read_curve(t, by_rep[rep]));
    const RocCurve mean = o.mean.empty() ? vertical_mean(curves) : read_single_curve(o.mean);
    std::optional<RocCurve> hl;
    if (!o.highlight.empty()) hl = read_single_curve(o.highlight);
    write_text_file(o.out, roc_svg(curves, &mean, hl ? &*hl : nullptr, o.title));
    out << "wrote " << curves.size() << " curves to " << o.out << '\n';
    return 0;
}

struct ViolinPlotOpts {
    std::string aucs;
    std::string title;
    std::string out;
};

int cmd_violin_plot(const ViolinPlotOpts& o, std::ostream& out) {
    const auto t = read_numeric(o.aucs);
    const auto cs = t.col("scenario"), c0 = t.col("n0"), c1 = t.col("n1"), cc = t.col("criterion"),
               ca = t.col("auc");
    std::vector<StripGroup> groups;
    std::map<std::string, std::size_t> index;
    for (const auto& row : t.rows) {
        const std::string key = row[cs] + "@" + row[c0] + "x" + row[c1] + " " + row[cc];
        auto [it, inserted] = index.try_emplace(key, groups.size());
        if (inserted) groups.push_back({key, {}});
        groups[it->second].values.push_back(to_double(row[ca]));
    }
    write_text_file(o.out, violin_svg(groups, o.title));
    out << "wrote " << groups.size() << " groups to " << o.out << '\n';
    return 0;
}

int report(const std::string& msg, int code, std::ostream& err) {
    err << "error: " << msg << '\n';
    return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"fnclass: probability-based classification of functional trajectories"};
    app.name("fnclass");
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "key=value configuration file (INI/TOML style)");
    Common common;
    app.add_option("--threads", common.threads, "worker threads (0: FNCLASS_THREADS or 1); never changes results");

    SimulateOpts sim;
    auto* c_sim = app.add_subcommand("simulate", "Monte Carlo AUC study on a generative model");
    add_model(c_sim, sim.model);
    add_transform(c_sim, sim.transform);
    c_sim->add_option("--reps", sim.reps, "replicates per size")->capture_default_str();
    c_sim->add_option("--seed", sim.seed, "master seed")->required();
    c_sim->add_option("--criteria", sim.criteria, "subset of PBC Min Max Int")->delimiter(',');
    c_sim->add_option("--train-frac", sim.train_fraction)->capture_default_str();
    c_sim->add_option("--level", sim.level)->capture_default_str();
    c_sim->add_option("--out", sim.out, "output directory")->required();

    GenerateOpts gen;
    auto* c_gen = app.add_subcommand("generate", "write one simulated sample as long-format CSV");
    c_gen->add_option("--model", gen.model)->required();
    c_gen->add_option("--n0", gen.n0)->capture_default_str();
    c_gen->add_option("--n1", gen.n1)->capture_default_str();
    c_gen->add_option("--seed", gen.seed)->required();
    c_gen->add_option("--noise-scale", gen.noise_scale)->capture_default_str();
    c_gen->add_option("--out", gen.out, "output CSV (default stdout)");

    EvalOpts ev;
    auto* c_eval = app.add_subcommand("eval", "repeated train/test evaluation of a dataset");
    add_data(c_eval, ev.data);
    add_transform(c_eval, ev.transform);
    c_eval->add_option("--reps", ev.reps)->capture_default_str();
    c_eval->add_option("--train-frac", ev.train_fraction)->capture_default_str();
    c_eval->add_option("--level", ev.level)->capture_default_str();
    c_eval->add_option("--seed", ev.seed)->required();
    c_eval->add_option("--out", ev.out, "output directory")->required();

    CoverageOpts cov;
    auto* c_cov = app.add_subcommand("coverage", "confidence-interval coverage study");
    add_model(c_cov, cov.model);
    add_transform(c_cov, cov.transform);
    c_cov->add_option("--reps", cov.reps)->capture_default_str();
    c_cov->add_option("--seed", cov.seed)->required();
    c_cov->add_option("--train-frac", cov.train_fraction)->capture_default_str();
    c_cov->add_option("--level", cov.level)->capture_default_str();
    c_cov->add_option("--real-n", cov.real_n, "per-class size of the real-system reference")->capture_default_str();
    c_cov->add_option("--reference-n", cov.reference_n, "per-class size of each sample-system reference")
        ->capture_default_str();
    c_cov->add_option("--out", cov.out, "output CSV (default stdout)");

    ConsistencyOpts con;
    auto* c_con = app.add_subcommand("consistency", "sup-norm distance to a large-sample reference ROC");
    add_model(c_con, con.model);
    add_transform(c_con, con.transform);
    c_con->add_option("--reps", con.reps)->capture_default_str();
    c_con->add_option("--seed", con.seed)->required();
    c_con->add_option("--reference-n", con.reference_n)->capture_default_str();
    c_con->add_option("--out", con.out, "output CSV (default stdout)");

    ScoreOpts sc;
    auto* c_score = app.add_subcommand("score", "score new trajectories against a stored system");
    c_score->add_option("--system", sc.system, ".pbcsys.json file")->required();
    c_score->add_option("--data", sc.data, "CSV of trajectories; labels optional")->required();
    c_score->add_flag("--wide", sc.wide);
    c_score->add_option("--specificity", sc.specificity, "target specificity of label_hat")->capture_default_str();
    c_score->add_option("--out", sc.out, "output CSV (default stdout)");

    SystemOpts sys;
    auto* c_sys = app.add_subcommand("system", "manage stored sample-systems");
    c_sys->require_subcommand(1);
    auto* c_save = c_sys->add_subcommand("save", "build a system from labelled data");
    add_data(c_save, sys.data);
    add_transform(c_save, sys.transform);
    c_save->add_option("--out", sys.out, ".pbcsys.json destination")->required();
    c_save->add_option("--note", sys.note);
    c_save->add_option("--seed", sys.seed, "recorded in the system metadata");
    auto* c_load = c_sys->add_subcommand("load", "print a summary of a stored system");
    c_load->add_option("--system", sys.system)->required();
    auto* c_feed = c_sys->add_subcommand("feed", "append labelled trajectories to a system");
    c_feed->add_option("--system", sys.system)->required();
    c_feed->add_option("--data", sys.data.path)->required();
    c_feed->add_flag("--wide", sys.data.wide);
    c_feed->add_option("--out", sys.out, "destination (default: overwrite --system)");

    RocPlotOpts rp;
    auto* c_rp = app.add_subcommand("roc-plot", "SVG of ROC rays with their vertical mean");
    c_rp->add_option("--rays", rp.rays, "CSV rep,p,sensitivity")->required();
    c_rp->add_option("--mean", rp.mean, "CSV p,sensitivity (default: vertical mean of the rays)");
    c_rp->add_option("--highlight", rp.highlight, "CSV p,sensitivity drawn in red");
    c_rp->add_option("--title", rp.title);
    c_rp->add_option("--out", rp.out)->required();

    ViolinPlotOpts vp;
    auto* c_vp = app.add_subcommand("violin-plot", "SVG strip/quantile summary of simulate's aucs.csv");
    c_vp->add_option("--aucs", vp.aucs)->required();
    c_vp->add_option("--title", vp.title);
    c_vp->add_option("--out", vp.out)->required();

    std::vector<const char*> argv{"fnclass"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return exit_code(ErrorKind::Usage);
    }

    try {
        if (*c_sim) return cmd_simulate(sim, common, out);
        if (*c_gen) return cmd_generate(gen, out);
        if (*c_eval) return cmd_eval(ev, common, out);
        if (*c_cov) return cmd_coverage(cov, common, out);
        if (*c_con) return cmd_consistency(con, common, out);
        if (*c_score) return cmd_score(sc, common, out);
        if (*c_save) return cmd_system_save(sys, out);
        if (*c_load) return cmd_system_load(sys, out);
        if (*c_feed) return cmd_system_feed(sys, out);
        if (*c_rp) return cmd_roc_plot(rp, out);
        if (*c_vp) return cmd_violin_plot(vp, out);
    } catch (const Error& e) {
        return report(e.what(), exit_code(e.kind()), err);
    } catch (const fs::filesystem_error& e) {
        return report(e.what(), exit_code(ErrorKind::Data), err);
    }
    return report("no command given", exit_code(ErrorKind::Usage), err);
}

}  // namespace fnclass::cli
