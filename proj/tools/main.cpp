// taxosim: query semantic similarity over a concept hierarchy, compute
// per-concept information content from corpus counts, and benchmark
// measures against human similarity ratings.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "taxosim/evaluation.hpp"
#include "taxosim/format.hpp"
#include "taxosim/measures.hpp"

using nlohmann::json;
using namespace taxosim;

namespace {

// Relative inputs fall back to $TAXOSIM_DATA_DIR when not found locally.
std::string resolve_path(const std::string& path) {
    namespace fs = std::filesystem;
    if (path.empty() || fs::exists(path) || fs::path(path).is_absolute()) return path;
    if (const char* dir = std::getenv("TAXOSIM_DATA_DIR")) {
        fs::path candidate = fs::path(dir) / path;
        if (fs::exists(candidate)) return candidate.string();
    }
    return path;
}

struct CommonOpts {
    std::string taxonomy_path;
    std::string freq_path;
    std::string freq_kind = "word-resnik";
    std::string estimator = "mle";
    std::string ic_path;
    std::string measure = "jc";
    double alpha = 0.5;
    double beta = 0.3;
    std::vector<std::string> type_factor;
    std::vector<std::string> sussna_min;
    std::vector<std::string> sussna_max;
    int d_max = 0;
    double conversion_c = 0.0;
    bool has_conversion_c = false;
    double log_base = 2.0;
    std::string format = "tsv";
    std::string lsuper = "ic";
    bool no_virtual_root = false;
};

void add_common_flags(CLI::App* cmd, CommonOpts& o, bool with_measure) {
    cmd->add_option("--taxonomy", o.taxonomy_path, "taxonomy file")->required();
    cmd->add_option("--freq", o.freq_path, "frequency file");
    cmd->add_option("--freq-kind", o.freq_kind, "word-resnik|word-richardson|sense");
    cmd->add_option("--estimator", o.estimator, "mle|good-turing");
    cmd->add_option("--ic-path", o.ic_path, "precomputed information-content file");
    if (with_measure) {
        cmd->add_option("--measure", o.measure, "edge|resnik|sussna|jc|jc-simplified");
        cmd->add_option("--alpha", o.alpha, "depth-scaling exponent");
        cmd->add_option("--beta", o.beta, "density factor in [0,1]");
        cmd->add_option("--type-factor", o.type_factor, "rel=value (repeatable)");
        cmd->add_option("--sussna-min", o.sussna_min, "rel=value (repeatable)");
        cmd->add_option("--sussna-max", o.sussna_max, "rel=value (repeatable)");
        cmd->add_option("--d-max", o.d_max, "maximum depth for the edge-counting ceiling");
        cmd->add_option("--conversion-c", o.conversion_c, "distance-to-similarity constant")
            ->each([&o](const std::string&) { o.has_conversion_c = true; });
        cmd->add_option("--lsuper", o.lsuper, "subsumer rule: ic|depth");
    }
    cmd->add_option("--log-base", o.log_base, "logarithm base for content values");
    cmd->add_option("--format", o.format, "tsv|json")->check(CLI::IsMember({"tsv", "json"}));
    cmd->add_flag("--no-virtual-root", o.no_virtual_root,
                  "do not attach multiple roots to a synthetic root");
}

MeasureConfig measure_config(const CommonOpts& o) {
    MeasureConfig cfg;
    cfg.alpha = o.alpha;
    cfg.beta = o.beta;
    cfg.log_base = o.log_base;
    if (o.d_max > 0) cfg.d_max = o.d_max;
    if (o.has_conversion_c) cfg.conversion_c = o.conversion_c;
    if (o.lsuper == "depth")
        cfg.lsuper_rule = LsuperRule::max_depth;
    else if (o.lsuper != "ic")
        throw Error("unknown subsumer rule: " + o.lsuper);
    auto parse_kv = [](const std::string& s, std::map<std::string, double>& into) {
        auto eq = s.find('=');
        if (eq == std::string::npos || eq == 0) throw Error("expected rel=value, got: " + s);
        into[s.substr(0, eq)] = std::stod(s.substr(eq + 1));
    };
    for (const std::string& s : o.type_factor) parse_kv(s, cfg.type_factors);
    for (const std::string& s : o.sussna_min) parse_kv(s, cfg.sussna_min);
    for (const std::string& s : o.sussna_max) parse_kv(s, cfg.sussna_max);
    if (auto warning = cfg.validate()) std::cerr << "warning: " << *warning << "\n";
    return cfg;
}

Taxonomy load_taxonomy_opt(const CommonOpts& o) {
    return load_taxonomy(resolve_path(o.taxonomy_path), !o.no_virtual_root);
}

// Loads or computes the content table a measure needs; null when it needs none.
std::optional<IcTable> load_ic_opt(const CommonOpts& o, const Taxonomy& t, bool needed) {
    if (!o.ic_path.empty() && !o.freq_path.empty())
        throw Error("supply only one of --freq and --ic-path");
    if (!needed) return std::nullopt;
    if (!o.ic_path.empty()) {
        IcTable ic = read_ic_file(resolve_path(o.ic_path));
        if (t.virtual_root() && !ic.covers(*t.virtual_root()))
            ic.set_entry(*t.virtual_root(), 1.0, 0.0);
        return ic;
    }
    if (o.freq_path.empty())
        throw Error("this measure needs information content: supply --freq or --ic-path");
    PropagationScheme scheme = parse_propagation(o.freq_kind);
    FreqKind kind = scheme == PropagationScheme::sense_tagged ? FreqKind::sense : FreqKind::word;
    FrequencyTable f = load_frequency_file(resolve_path(o.freq_path), kind);
    for (const std::string& w : f.warnings) std::cerr << "warning: " << w << "\n";
    IcTable ic = build_ic_table(t, f, scheme, parse_estimator(o.estimator), o.log_base);
    for (const std::string& w : ic.warnings()) std::cerr << "warning: " << w << "\n";
    return ic;
}

std::string opt_str(const std::optional<ConceptId>& v) { return v ? *v : "-"; }

int cmd_sim(const CommonOpts& o, const std::string& w1, const std::string& w2) {
    Taxonomy t = load_taxonomy_opt(o);
    MeasureConfig cfg = measure_config(o);
    MeasureId id = parse_measure_id(o.measure);
    std::optional<IcTable> ic = load_ic_opt(o, t, measure_needs_ic(id));
    MeasureResult r = word_similarity(t, ic ? &*ic : nullptr, cfg, id, w1, w2);
    if (o.format == "json") {
        json out{{"measure", measure_name(id)},
                 {"word1", w1},
                 {"word2", w2},
                 {"kind", r.kind == MeasureKind::distance ? "distance" : "similarity"},
                 {"value", r.value}};
        out["sense1"] = r.senses ? json(r.senses->first) : json(nullptr);
        out["sense2"] = r.senses ? json(r.senses->second) : json(nullptr);
        out["subsumer"] = r.subsumer ? json(*r.subsumer) : json(nullptr);
        out["path_len"] = r.path_len ? json(*r.path_len) : json(nullptr);
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "measure\tword1\tword2\tkind\tvalue\tsense1\tsense2\tsubsumer\tpath_len\n";
        std::cout << measure_name(id) << "\t" << w1 << "\t" << w2 << "\t"
                  << (r.kind == MeasureKind::distance ? "distance" : "similarity") << "\t"
                  << format_number(r.value, 12) << "\t"
                  << (r.senses ? r.senses->first : std::string("-")) << "\t"
                  << (r.senses ? r.senses->second : std::string("-")) << "\t"
                  << opt_str(r.subsumer) << "\t"
                  << (r.path_len ? std::to_string(*r.path_len) : std::string("-")) << "\n";
    }
    return 0;
}

int cmd_ic(const CommonOpts& o) {
    Taxonomy t = load_taxonomy_opt(o);
    if (o.freq_path.empty()) throw Error("ic needs --freq");
    PropagationScheme scheme = parse_propagation(o.freq_kind);
    FreqKind kind = scheme == PropagationScheme::sense_tagged ? FreqKind::sense : FreqKind::word;
    FrequencyTable f = load_frequency_file(resolve_path(o.freq_path), kind);
    for (const std::string& w : f.warnings) std::cerr << "warning: " << w << "\n";
    IcTable ic = build_ic_table(t, f, scheme, parse_estimator(o.estimator), o.log_base);
    for (const std::string& w : ic.warnings()) std::cerr << "warning: " << w << "\n";
    write_ic_table(std::cout, ic);
    return 0;
}

json report_json(const EvalReport& rep) {
    json skipped = json::array();
    for (const SkippedPair& s : rep.skipped)
        skipped.push_back({{"word1", s.word1}, {"word2", s.word2}, {"reason", s.reason}});
    return json{{"dataset", rep.dataset},
                {"id", rep.id},
                {"n", rep.n_pairs_used},
                {"r", rep.r},
                {"skipped", skipped}};
}

void print_reports(const std::vector<EvalReport>& reports, const std::string& format) {
    if (format == "json") {
        json arr = json::array();
        for (const EvalReport& rep : reports) arr.push_back(report_json(rep));
        std::cout << arr.dump(2) << "\n";
        return;
    }
    std::cout << "dataset\tid\tn\tr\tskipped\n";
    for (const EvalReport& rep : reports) {
        std::string skipped;
        for (const SkippedPair& s : rep.skipped) {
            if (!skipped.empty()) skipped += ",";
            skipped += s.word1 + ":" + s.word2;
        }
        if (skipped.empty()) skipped = "-";
        std::cout << rep.dataset << "\t" << rep.id << "\t" << rep.n_pairs_used << "\t"
                  << format_number(rep.r, 10) << "\t" << skipped << "\n";
    }
}

int cmd_eval(const CommonOpts& o, const std::string& ratings_path, const std::string& mode,
             const std::string& ablate) {
    RatingDataset ds = load_ratings_file(resolve_path(ratings_path));
    if (!ablate.empty()) {
        auto comma = ablate.find(',');
        if (comma == std::string::npos) throw Error("--ablate expects word1,word2");
        ds = ablate_pair(ds, ablate.substr(0, comma), ablate.substr(comma + 1));
    }
    std::vector<EvalReport> reports;
    if (mode == "columns") {
        for (const std::string& col : ds.extra_columns) reports.push_back(evaluate_column(ds, col));
    } else if (mode == "measure") {
        Taxonomy t = load_taxonomy_opt(o);
        MeasureConfig cfg = measure_config(o);
        MeasureId id = parse_measure_id(o.measure);
        std::optional<IcTable> ic = load_ic_opt(o, t, measure_needs_ic(id));
        reports.push_back(evaluate_measure(t, ic ? &*ic : nullptr, cfg, id, ds));
    } else {
        throw Error("unknown eval mode: " + mode);
    }
    if (reports.empty()) throw Error("dataset has no value columns to evaluate");
    print_reports(reports, o.format);
    return 0;
}

int cmd_sweep(const CommonOpts& o, const std::string& ratings_path,
              std::vector<double> alphas, std::vector<double> betas) {
    Taxonomy t = load_taxonomy_opt(o);
    MeasureConfig base = measure_config(o);
    std::optional<IcTable> ic = load_ic_opt(o, t, true);
    RatingDataset ds = load_ratings_file(resolve_path(ratings_path));
    if (alphas.empty()) alphas = default_sweep_alphas();
    if (betas.empty()) betas = default_sweep_betas();
    SweepResult res = parameter_sweep(t, *ic, base, ds, alphas, betas);
    for (const std::string& w : res.warnings) std::cerr << "warning: " << w << "\n";
    if (o.format == "json") {
        json out{{"alphas", res.alphas},
                 {"betas", res.betas},
                 {"r", res.r},
                 {"best", {{"alpha", res.alphas[res.best_alpha]},
                           {"beta", res.betas[res.best_beta]},
                           {"r", res.r[res.best_alpha][res.best_beta]}}}};
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "alpha\\beta";
        for (double b : res.betas) std::cout << "\t" << format_number(b, 10);
        std::cout << "\n";
        for (std::size_t i = 0; i < res.alphas.size(); ++i) {
            std::cout << format_number(res.alphas[i], 10);
            for (double r : res.r[i]) std::cout << "\t" << format_number(r, 10);
            std::cout << "\n";
        }
        std::cout << "# best\talpha=" << format_number(res.alphas[res.best_alpha], 10)
                  << "\tbeta=" << format_number(res.betas[res.best_beta], 10)
                  << "\tr=" << format_number(res.r[res.best_alpha][res.best_beta], 10) << "\n";
    }
    return 0;
}

int cmd_info(const CommonOpts& o) {
    Taxonomy t = load_taxonomy_opt(o);
    std::size_t virtual_edges = 0;
    for (const Edge& e : t.edges())
        if (e.relation == kVirtualRelation) ++virtual_edges;
    if (o.format == "json") {
        json out{{"concepts", t.size()},
                 {"edges", t.edges().size() - virtual_edges},
                 {"roots", t.roots().size()},
                 {"virtual_root", t.virtual_root() ? json(*t.virtual_root()) : json(nullptr)},
                 {"words", t.word_index().size()},
                 {"max_depth", t.max_depth()},
                 {"average_density", t.average_density()}};
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "concepts\t" << t.size() << "\n"
                  << "edges\t" << (t.edges().size() - virtual_edges) << "\n"
                  << "roots\t" << t.roots().size() << "\n"
                  << "virtual_root\t" << (t.virtual_root() ? *t.virtual_root() : "-") << "\n"
                  << "words\t" << t.word_index().size() << "\n"
                  << "max_depth\t" << t.max_depth() << "\n"
                  << "average_density\t" << format_number(t.average_density(), 10) << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"semantic similarity over concept hierarchies"};
    app.require_subcommand(1);

    CommonOpts sim_o, ic_o, eval_o, sweep_o, info_o;
    std::string sim_w1, sim_w2;
    std::string eval_ratings, eval_mode = "columns", eval_ablate;
    std::string sweep_ratings;
    std::vector<double> sweep_alphas, sweep_betas;

    CLI::App* sim = app.add_subcommand("sim", "similarity or distance between two words");
    add_common_flags(sim, sim_o, true);
    sim->add_option("word1", sim_w1)->required();
    sim->add_option("word2", sim_w2)->required();

    CLI::App* ic = app.add_subcommand("ic", "per-concept probability and information content");
    add_common_flags(ic, ic_o, false);

    CLI::App* eval = app.add_subcommand("eval", "correlate a measure or dataset columns "
                                                "with human ratings");
    add_common_flags(eval, eval_o, true);
    eval->get_option("--taxonomy")->required(false);
    eval->add_option("ratings", eval_ratings, "ratings TSV")->required();
    eval->add_option("--mode", eval_mode, "columns|measure");
    eval->add_option("--ablate", eval_ablate, "word1,word2 pair to remove first");

    CLI::App* sweep = app.add_subcommand("sweep", "correlation grid over alpha and beta");
    add_common_flags(sweep, sweep_o, true);
    sweep->add_option("ratings", sweep_ratings, "ratings TSV")->required();
    sweep->add_option("--alphas", sweep_alphas, "alpha grid (default: the published rows)");
    sweep->add_option("--betas", sweep_betas, "beta grid (default: the published columns)");

    CLI::App* info = app.add_subcommand("info", "taxonomy statistics");
    add_common_flags(info, info_o, false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) return cmd_sim(sim_o, sim_w1, sim_w2);
        if (ic->parsed()) return cmd_ic(ic_o);
        if (eval->parsed()) return cmd_eval(eval_o, eval_ratings, eval_mode, eval_ablate);
        if (sweep->parsed()) return cmd_sweep(sweep_o, sweep_ratings, sweep_alphas, sweep_betas);
        if (info->parsed()) return cmd_info(info_o);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
