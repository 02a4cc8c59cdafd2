#include "taxosim/corpus_stats.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "taxosim/format.hpp"

namespace taxosim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream iss(line);
    std::string tok;
    while (iss >> tok) out.push_back(tok);
    return out;
}

}  // namespace

FrequencyTable load_frequencies(std::istream& in, FreqKind kind) {
    FrequencyTable f;
    f.kind = kind;
    std::string line;
    int lineno = 0;
    bool saw_header = false;
    std::int64_t declared_n = -1;
    std::int64_t sum = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::vector<std::string> tok = split_ws(line);
        if (tok.empty()) continue;
        if (tok[0] == "N" && !saw_header && f.counts.empty()) {
            if (tok.size() != 2) throw ParseError("expected: N <int>", lineno);
            try {
                declared_n = std::stoll(tok[1]);
            } catch (const std::exception&) {
                throw ParseError("bad corpus size: " + tok[1], lineno);
            }
            if (declared_n < 1) throw ParseError("corpus size must be >= 1", lineno);
            saw_header = true;
            continue;
        }
        if (tok.size() != 2) throw ParseError("expected: <token> <count>", lineno);
        std::int64_t count = 0;
        try {
            count = std::stoll(tok[1]);
        } catch (const std::exception&) {
            throw ParseError("bad count: " + tok[1], lineno);
        }
        if (count < 0) throw ParseError("negative count for token: " + tok[0], lineno);
        auto [it, inserted] = f.counts.emplace(tok[0], count);
        if (!inserted) {
            it->second += count;
            f.warnings.push_back("duplicate token '" + tok[0] + "' on line " +
                                 std::to_string(lineno) + "; counts summed");
        }
        sum += count;
    }
    f.total_n = declared_n >= 1 ? declared_n : sum;
    if (f.total_n < 1) throw Error("frequency table has no mass and no declared corpus size");
    return f;
}

FrequencyTable load_frequency_file(const std::string& path, FreqKind kind) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open frequency file: " + path);
    return load_frequencies(in, kind);
}

namespace {

// Adds `mass` at concept index i and to every ancestor, each ancestor once
// regardless of how many ancestry paths reach it.
void spread_to_ancestors(const Taxonomy& t, int i, double mass, std::vector<double>& acc) {
    std::vector<int> stack{i};
    std::vector<char> seen(t.size(), 0);
    seen[i] = 1;
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        acc[x] += mass;
        for (const auto& l : t.parents_of(x)) {
            if (!seen[l.node]) {
                seen[l.node] = 1;
                stack.push_back(l.node);
            }
        }
    }
}

ConceptFreq to_freq_map(const Taxonomy& t, const std::vector<double>& acc) {
    ConceptFreq out;
    for (std::size_t i = 0; i < t.size(); ++i) out[t.id_of(static_cast<int>(i))] = acc[i];
    return out;
}

ConceptFreq concept_freq_from_words(const Taxonomy& t, const FrequencyTable& f,
                                    bool divide_by_senses) {
    if (f.kind != FreqKind::word) throw Error("word-kind frequency table required");
    std::vector<double> acc(t.size(), 0.0);
    for (const auto& [word, count] : f.counts) {
        if (count == 0 || !t.has_word(word)) continue;  // tokens outside the taxonomy are ignored
        const std::set<ConceptId>& senses = t.senses(word);
        double mass = static_cast<double>(count);
        if (divide_by_senses) mass /= static_cast<double>(senses.size());
        for (const ConceptId& c : senses) spread_to_ancestors(t, t.index_of(c), mass, acc);
    }
    return to_freq_map(t, acc);
}

}  // namespace

ConceptFreq concept_freq_resnik(const Taxonomy& t, const FrequencyTable& f) {
    return concept_freq_from_words(t, f, false);
}

ConceptFreq concept_freq_richardson(const Taxonomy& t, const FrequencyTable& f) {
    return concept_freq_from_words(t, f, true);
}

ConceptFreq concept_freq_tagged(const Taxonomy& t, const FrequencyTable& f) {
    if (f.kind != FreqKind::sense) throw Error("sense-kind frequency table required");
    std::vector<double> acc(t.size(), 0.0);
    for (const auto& [cid, count] : f.counts) {
        if (!t.contains(cid)) throw LookupError("sense count for unknown concept id: " + cid);
        if (count == 0) continue;
        spread_to_ancestors(t, t.index_of(cid), static_cast<double>(count), acc);
    }
    return to_freq_map(t, acc);
}

const char* estimator_name(Estimator e) {
    return e == Estimator::mle ? "mle" : "good-turing";
}

Estimator parse_estimator(const std::string& name) {
    if (name == "mle") return Estimator::mle;
    if (name == "good-turing") return Estimator::good_turing;
    throw LookupError("unknown estimator: " + name);
}

double IcTable::prob_of(const ConceptId& c) const {
    auto it = prob_.find(c);
    if (it == prob_.end()) throw LookupError("concept not covered by content table: " + c);
    return it->second;
}

double IcTable::ic_of(const ConceptId& c) const {
    auto it = ic_.find(c);
    if (it == ic_.end()) throw LookupError("concept not covered by content table: " + c);
    return it->second;
}

bool IcTable::finite_ic(const ConceptId& c) const { return std::isfinite(ic_of(c)); }

void IcTable::set_entry(const ConceptId& c, double prob, double ic) {
    prob_[c] = prob;
    ic_[c] = ic;
}

IcTable mle_probability(const ConceptFreq& cf, double total_n) {
    if (!(total_n > 0)) throw Error("corpus size must be positive");
    IcTable out;
    out.estimator_ = Estimator::mle;
    for (const auto& [c, freq] : cf)
        out.prob_[c] = std::clamp(freq / total_n, 0.0, 1.0);
    return out;
}

IcTable good_turing_probability(const ConceptFreq& cf, double total_n) {
    if (!(total_n > 0)) throw Error("corpus size must be positive");
    if (cf.empty()) throw Error("empty concept-frequency table");

    IcTable out;
    out.estimator_ = Estimator::good_turing;

    // Bin the counts. The count-of-count statistics need integers; anything
    // fractional (sense-split propagation) is rounded for binning.
    std::map<long long, long long> count_of_counts;
    bool warned_fraction = false;
    std::map<ConceptId, long long> binned;
    for (const auto& [c, v] : cf) {
        if (v < 0) throw Error("negative count for concept: " + c);
        long long r = std::llround(v);
        if (!warned_fraction && std::fabs(v - static_cast<double>(r)) > 1e-9) {
            out.warnings_.push_back("non-integer counts rounded for Good-Turing binning");
            warned_fraction = true;
        }
        binned[c] = r;
        ++count_of_counts[r];
    }
    long long n_unseen = 0;
    if (auto it = count_of_counts.find(0); it != count_of_counts.end()) {
        n_unseen = it->second;
        count_of_counts.erase(it);
    }
    if (count_of_counts.empty()) throw Error("Good-Turing requires at least one nonzero count");

    if (count_of_counts.size() < 2) {
        // One distinct nonzero count: the log-log fit is underdetermined.
        out.warnings_.push_back("degenerate count table (" +
                                std::to_string(count_of_counts.size()) +
                                " distinct nonzero count); falling back to add-one smoothing");
        double denom = total_n + static_cast<double>(cf.size());
        for (const auto& [c, r] : binned)
            out.prob_[c] = std::clamp((static_cast<double>(r) + 1.0) / denom, 0.0, 1.0);
        return out;
    }

    std::vector<long long> rs;
    std::vector<double> nr;
    for (const auto& [r, n] : count_of_counts) {
        rs.push_back(r);
        nr.push_back(static_cast<double>(n));
    }
    const std::size_t k = rs.size();

    // Averaged count-of-counts: spread each N_r over the surrounding gap so
    // unobserved counts do not bias the fit.
    std::vector<double> z(k);
    for (std::size_t j = 0; j < k; ++j) {
        double lo = j == 0 ? 0.0 : static_cast<double>(rs[j - 1]);
        double hi = j + 1 < k ? static_cast<double>(rs[j + 1])
                              : 2.0 * static_cast<double>(rs[j]) - lo;
        z[j] = nr[j] / (0.5 * (hi - lo));
    }

    // Least-squares line through (log r, log Z).
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t j = 0; j < k; ++j) {
        double x = std::log(static_cast<double>(rs[j]));
        double y = std::log(z[j]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double denom_fit = static_cast<double>(k) * sxx - sx * sx;
    double slope = denom_fit != 0.0 ? (static_cast<double>(k) * sxy - sx * sy) / denom_fit : 0.0;
    double intercept = (sy - slope * sx) / static_cast<double>(k);
    if (slope > -1.0)
        out.warnings_.push_back("count-of-count fit slope " + format_number(slope, 6) +
                                " > -1; smoothed counts may exceed raw counts");
    auto fitted = [&](double r) { return std::exp(intercept + slope * std::log(r)); };

    // Smoothed counts: empirical ratios while they differ significantly from
    // the fitted ones, then the fit from the first insignificant difference.
    std::map<long long, double> smoothed;
    bool use_fit = false;
    for (std::size_t j = 0; j < k; ++j) {
        long long r = rs[j];
        double fit_star = (static_cast<double>(r) + 1.0) * fitted(static_cast<double>(r) + 1.0) /
                          fitted(static_cast<double>(r));
        if (!use_fit) {
            bool next_observed = j + 1 < k && rs[j + 1] == r + 1;
            if (!next_observed) {
                use_fit = true;
            } else {
                double ratio = nr[j + 1] / nr[j];
                double turing_star = (static_cast<double>(r) + 1.0) * ratio;
                double sd = (static_cast<double>(r) + 1.0) *
                            std::sqrt(ratio / nr[j] * (1.0 + ratio));
                if (std::fabs(turing_star - fit_star) <= 1.96 * sd) {
                    use_fit = true;
                } else {
                    smoothed[r] = turing_star;
                    continue;
                }
            }
        }
        smoothed[r] = fit_star;
    }

    // Keep the count -> smoothed-count map monotone so probabilities stay
    // ordered along taxonomy edges.
    double running = 0.0;
    for (auto& [r, star] : smoothed) {
        if (star < running) star = running;
        running = star;
    }

    const double n1 = count_of_counts.count(1) ? static_cast<double>(count_of_counts.at(1)) : 0.0;
    double min_seen = kInf;
    for (const auto& [c, r] : binned) {
        if (r == 0) continue;
        double p = std::clamp(smoothed.at(r) / total_n, 0.0, 1.0);
        if (p <= 0.0) p = std::numeric_limits<double>::min();
        out.prob_[c] = p;
        min_seen = std::min(min_seen, p);
    }
    if (n_unseen > 0) {
        double unseen_mass = std::max(n1, 1.0) / total_n;
        double each = unseen_mass / static_cast<double>(n_unseen);
        each = std::min(each, min_seen);
        for (const auto& [c, r] : binned)
            if (r == 0) out.prob_[c] = each;
    }
    return out;
}

IcTable information_content(IcTable partial, double log_base) {
    if (!(log_base > 1.0)) throw Error("log base must be > 1");
    partial.log_base_ = log_base;
    partial.ic_.clear();
    const double lb = std::log(log_base);
    for (const auto& [c, p] : partial.prob_)
        partial.ic_[c] = p > 0.0 ? std::max(0.0, -std::log(p) / lb) : kInf;
    return partial;
}

const char* propagation_name(PropagationScheme s) {
    switch (s) {
        case PropagationScheme::word_resnik: return "word-resnik";
        case PropagationScheme::word_richardson: return "word-richardson";
        case PropagationScheme::sense_tagged: return "sense";
    }
    return "?";
}

PropagationScheme parse_propagation(const std::string& name) {
    if (name == "word-resnik") return PropagationScheme::word_resnik;
    if (name == "word-richardson") return PropagationScheme::word_richardson;
    if (name == "sense") return PropagationScheme::sense_tagged;
    throw LookupError("unknown frequency kind: " + name);
}

ConceptFreq propagate(const Taxonomy& t, const FrequencyTable& f, PropagationScheme scheme) {
    switch (scheme) {
        case PropagationScheme::word_resnik: return concept_freq_resnik(t, f);
        case PropagationScheme::word_richardson: return concept_freq_richardson(t, f);
        case PropagationScheme::sense_tagged: return concept_freq_tagged(t, f);
    }
    throw Error("unhandled propagation scheme");
}

IcTable build_ic_table(const Taxonomy& t, const FrequencyTable& f, PropagationScheme scheme,
                       Estimator estimator, double log_base) {
    ConceptFreq cf = propagate(t, f, scheme);
    IcTable partial = estimator == Estimator::mle
                          ? mle_probability(cf, static_cast<double>(f.total_n))
                          : good_turing_probability(cf, static_cast<double>(f.total_n));
    IcTable full = information_content(std::move(partial), log_base);
    if (t.virtual_root()) full.set_entry(*t.virtual_root(), 1.0, 0.0);
    return full;
}

void write_ic_table(std::ostream& out, const IcTable& ic) {
    out << "# log-base " << format_number(ic.log_base(), 12) << "\n";
    out << "# estimator " << estimator_name(ic.estimator()) << "\n";
    for (const auto& [c, p] : ic.prob()) {
        double v = ic.ic().count(c) ? ic.ic().at(c) : kInf;
        out << c << "\t" << format_number(p, 12) << "\t" << format_number(v, 12) << "\n";
    }
}

IcTable read_ic_table(std::istream& in) {
    IcTable out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::vector<std::string> tok = split_ws(line);
        if (!tok.empty() && tok[0] == "#") {
            if (tok.size() == 3 && tok[1] == "log-base") out.log_base_ = std::stod(tok[2]);
            if (tok.size() == 3 && tok[1] == "estimator") out.estimator_ = parse_estimator(tok[2]);
            continue;
        }
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        tok = split_ws(line);
        if (tok.empty()) continue;
        if (tok.size() != 3)
            throw ParseError("expected: <concept-id> <prob> <ic>", lineno);
        double prob = 0, icv = 0;
        try {
            prob = std::stod(tok[1]);
            icv = tok[2] == "inf" ? kInf : std::stod(tok[2]);
        } catch (const std::exception&) {
            throw ParseError("bad numeric field", lineno);
        }
        if (prob < 0.0 || prob > 1.0) throw ParseError("probability out of [0,1]", lineno);
        if (icv < 0.0) throw ParseError("negative information content", lineno);
        if (out.prob_.count(tok[0])) throw ParseError("duplicate concept id: " + tok[0], lineno);
        out.prob_[tok[0]] = prob;
        out.ic_[tok[0]] = icv;
    }
    return out;
}

IcTable read_ic_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open content table file: " + path);
    return read_ic_table(in);
}

}  // namespace taxosim
