#include "taxosim/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace taxosim {

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == '\t') {
            out.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

double parse_double(const std::string& s, int lineno, const std::string& what) {
    std::size_t pos = 0;
    double v = 0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != s.size() || !std::isfinite(v))
        throw ParseError("bad " + what + ": '" + s + "'", lineno);
    return v;
}

}  // namespace

int RatingDataset::extra_index(const std::string& column) const {
    auto it = std::find(extra_columns.begin(), extra_columns.end(), column);
    if (it == extra_columns.end()) throw LookupError("unknown column: " + column);
    return static_cast<int>(it - extra_columns.begin());
}

RatingDataset load_ratings(std::istream& in, const std::string& name) {
    RatingDataset ds;
    ds.name = name;
    std::string line;
    int lineno = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells = split_tabs(line);
        if (!have_header) {
            if (cells.size() < 3)
                throw ParseError("header needs at least word1, word2 and a rating column", lineno);
            ds.extra_columns.assign(cells.begin() + 3, cells.end());
            have_header = true;
            continue;
        }
        if (cells.size() != ds.extra_columns.size() + 3)
            throw ParseError("row has " + std::to_string(cells.size()) + " cells, expected " +
                                 std::to_string(ds.extra_columns.size() + 3),
                             lineno);
        RatingRow row;
        row.word1 = cells[0];
        row.word2 = cells[1];
        if (row.word1.empty() || row.word2.empty()) throw ParseError("empty word", lineno);
        if (cells[2] == "NA") throw ParseError("NA not allowed in the rating column", lineno);
        row.rating = parse_double(cells[2], lineno, "rating");
        for (std::size_t i = 3; i < cells.size(); ++i) {
            if (cells[i] == "NA")
                row.extras.push_back(std::nullopt);
            else
                row.extras.push_back(parse_double(cells[i], lineno, "value"));
        }
        ds.rows.push_back(std::move(row));
    }
    if (!have_header) throw Error("ratings file is empty");
    if (ds.rows.size() < 2) throw Error("ratings dataset needs at least 2 rows");
    return ds;
}

RatingDataset load_ratings_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open ratings file: " + path);
    std::string name = path;
    if (auto slash = name.find_last_of('/'); slash != std::string::npos) name.erase(0, slash + 1);
    if (auto dot = name.find_last_of('.'); dot != std::string::npos && dot > 0) name.erase(dot);
    return load_ratings(in, name);
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw Error("input lengths differ");
    const std::size_t n = x.size();
    if (n < 2) throw Error("need at least 2 points");
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double dx = x[i] - mx, dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0) throw Error("first argument has zero variance");
    if (syy == 0.0) throw Error("second argument has zero variance");
    return sxy / std::sqrt(sxx * syy);
}

EvalReport evaluate_column(const RatingDataset& ds, const std::string& column) {
    int col = ds.extra_index(column);
    EvalReport rep;
    rep.dataset = ds.name;
    rep.id = column;
    std::vector<double> ratings, values;
    for (const RatingRow& row : ds.rows) {
        if (!row.extras[col]) {
            rep.skipped.push_back({row.word1, row.word2, "NA"});
            continue;
        }
        ratings.push_back(row.rating);
        values.push_back(*row.extras[col]);
    }
    rep.n_pairs_used = static_cast<int>(ratings.size());
    rep.r = pearson(ratings, values);
    return rep;
}

EvalReport evaluate_measure(const Taxonomy& t, const IcTable* ic, const MeasureConfig& cfg,
                            MeasureId id, const RatingDataset& ds) {
    EvalReport rep;
    rep.dataset = ds.name;
    rep.id = measure_name(id);
    std::vector<double> ratings, values;
    for (const RatingRow& row : ds.rows) {
        try {
            MeasureResult r = word_similarity(t, ic, cfg, id, row.word1, row.word2);
            if (r.kind == MeasureKind::distance) r = distance_to_similarity(r, t, cfg);
            ratings.push_back(row.rating);
            values.push_back(r.value);
        } catch (const Error& e) {
            rep.skipped.push_back({row.word1, row.word2, e.what()});
        }
    }
    rep.n_pairs_used = static_cast<int>(ratings.size());
    if (rep.n_pairs_used < 2) throw Error("fewer than 2 usable pairs for measure " + rep.id);
    rep.r = pearson(ratings, values);
    return rep;
}

SweepResult parameter_sweep(const Taxonomy& t, const IcTable& ic, const MeasureConfig& base,
                            const RatingDataset& ds, const std::vector<double>& alphas,
                            const std::vector<double>& betas) {
    if (alphas.empty() || betas.empty()) throw Error("empty parameter grid");
    SweepResult out;
    out.alphas = alphas;
    out.betas = betas;
    out.r.assign(alphas.size(), std::vector<double>(betas.size(), 0.0));
    double best = -2.0;
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        for (std::size_t j = 0; j < betas.size(); ++j) {
            MeasureConfig cfg = base;
            cfg.alpha = alphas[i];
            cfg.beta = betas[j];
            cfg.validate();  // negative alpha reported once below, bad beta throws
            EvalReport rep = evaluate_measure(t, &ic, cfg, MeasureId::jc, ds);
            out.r[i][j] = rep.r;
            if (rep.r > best) {
                best = rep.r;
                out.best_alpha = i;
                out.best_beta = j;
            }
        }
    }
    if (std::any_of(alphas.begin(), alphas.end(), [](double a) { return a < 0.0; }))
        out.warnings.push_back("grid contains negative alpha values; depth scaling inverts there");
    return out;
}

RatingDataset ablate_pair(const RatingDataset& ds, const std::string& w1, const std::string& w2) {
    RatingDataset out;
    out.name = ds.name + "-minus-" + w1 + "-" + w2;
    out.extra_columns = ds.extra_columns;
    bool found = false;
    for (const RatingRow& row : ds.rows) {
        bool match = (row.word1 == w1 && row.word2 == w2) || (row.word1 == w2 && row.word2 == w1);
        if (match) {
            found = true;
            continue;
        }
        out.rows.push_back(row);
    }
    if (!found) throw LookupError("pair not in dataset: " + w1 + ", " + w2);
    return out;
}

}  // namespace taxosim
