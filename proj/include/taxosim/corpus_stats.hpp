#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "taxosim/taxonomy.hpp"

namespace taxosim {

enum class FreqKind { word, sense };

// Raw corpus counts, keyed by word or by concept id depending on kind.
// total_n is the corpus size; it may exceed the sum of counts (tokens
// outside the taxonomy) and defaults to that sum when no header declares it.
struct FrequencyTable {
    FreqKind kind = FreqKind::word;
    std::map<std::string, std::int64_t> counts;
    std::int64_t total_n = 0;
    std::vector<std::string> warnings;
};

// Line format: optional "N <int>" header, then "<token> <count>" per line;
// '#' starts a comment. Duplicate tokens are summed with a warning.
FrequencyTable load_frequencies(std::istream& in, FreqKind kind);
FrequencyTable load_frequency_file(const std::string& path, FreqKind kind);

using ConceptFreq = std::map<ConceptId, double>;

// freq(c) = sum of freq(w) over every word attachment in the subtree of c.
// Each attachment (word, concept) contributes once per concept that
// subsumes it, so a polysemous word inflates shared ancestors while a
// diamond never double-counts a single attachment.
ConceptFreq concept_freq_resnik(const Taxonomy& t, const FrequencyTable& f);

// As concept_freq_resnik but each word's count is split evenly over its
// senses: an attachment contributes freq(w) / |classes(w)|.
ConceptFreq concept_freq_richardson(const Taxonomy& t, const FrequencyTable& f);

// Sense-tagged counts: freq(c) = own count of c plus the own counts of all
// descendants, each descendant counted exactly once. Throws LookupError on
// a count keyed by an unknown concept.
ConceptFreq concept_freq_tagged(const Taxonomy& t, const FrequencyTable& f);

enum class Estimator { mle, good_turing };

const char* estimator_name(Estimator e);
Estimator parse_estimator(const std::string& name);

// Per-concept probability and information content. prob == 0 encodes an
// unseen concept under MLE; its information content is the +infinity
// sentinel and content-based measures refuse to use it.
class IcTable {
public:
    IcTable() = default;

    double prob_of(const ConceptId& c) const;  // throws LookupError
    double ic_of(const ConceptId& c) const;    // +inf when prob == 0
    bool covers(const ConceptId& c) const { return prob_.count(c) != 0; }
    bool finite_ic(const ConceptId& c) const;

    const std::map<ConceptId, double>& prob() const { return prob_; }
    const std::map<ConceptId, double>& ic() const { return ic_; }
    double log_base() const { return log_base_; }
    Estimator estimator() const { return estimator_; }
    const std::vector<std::string>& warnings() const { return warnings_; }

    void set_entry(const ConceptId& c, double prob, double ic);

private:
    friend IcTable mle_probability(const ConceptFreq&, double);
    friend IcTable good_turing_probability(const ConceptFreq&, double);
    friend IcTable information_content(IcTable, double);
    friend IcTable read_ic_table(std::istream&);

    std::map<ConceptId, double> prob_;
    std::map<ConceptId, double> ic_;   // empty until information_content()
    double log_base_ = 2.0;
    Estimator estimator_ = Estimator::mle;
    std::vector<std::string> warnings_;
};

// P(c) = freq(c) / total_n, clamped to [0, 1]. The ic side stays empty
// until information_content() runs.
IcTable mle_probability(const ConceptFreq& cf, double total_n);

// Simple Good-Turing smoothing over the integer concept counts: smoothed
// counts from a log-log fit of the count-of-count curve with the standard
// empirical/fitted switch, unseen concepts sharing the count-1 mass
// uniformly. Every concept ends up with probability > 0 and the smoothed
// count mapping is kept monotone so content stays ordered along edges.
// Degenerate tables (fewer than two distinct nonzero counts) fall back to
// add-one smoothing with a warning.
IcTable good_turing_probability(const ConceptFreq& cf, double total_n);

// Fills ic(c) = -log(prob(c)) / log(log_base); prob 0 maps to +inf.
IcTable information_content(IcTable partial, double log_base);

enum class PropagationScheme { word_resnik, word_richardson, sense_tagged };

const char* propagation_name(PropagationScheme s);
// Accepts "word-resnik", "word-richardson", "sense".
PropagationScheme parse_propagation(const std::string& name);

ConceptFreq propagate(const Taxonomy& t, const FrequencyTable& f, PropagationScheme scheme);

// Full pipeline: propagate counts, estimate probabilities, take logs. The
// virtual root, when present, is pinned to probability 1 (content 0): it is
// not a corpus event, it subsumes everything.
IcTable build_ic_table(const Taxonomy& t, const FrequencyTable& f, PropagationScheme scheme,
                       Estimator estimator, double log_base);

// One "<concept-id>\t<prob>\t<ic>" line per concept, sorted by id, after
// "# log-base <b>" and "# estimator <name>" comment headers. Probabilities
// carry 12 significant digits; infinite content prints as "inf".
void write_ic_table(std::ostream& out, const IcTable& ic);
IcTable read_ic_table(std::istream& in);
IcTable read_ic_file(const std::string& path);

}  // namespace taxosim
