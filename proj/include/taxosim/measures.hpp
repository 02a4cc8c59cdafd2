#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>

#include "taxosim/corpus_stats.hpp"
#include "taxosim/taxonomy.hpp"

namespace taxosim {

enum class MeasureId { edge, resnik, sussna, jc, jc_simplified };
enum class MeasureKind { similarity, distance };

MeasureId parse_measure_id(const std::string& name);
const char* measure_name(MeasureId id);
MeasureKind measure_kind(MeasureId id);
// Whether the measure needs an information-content table.
bool measure_needs_ic(MeasureId id);

// Rule for picking the joining subsumer of a concept pair: by maximal
// information content or by maximal depth.
enum class LsuperRule { max_ic, max_depth };

struct MeasureConfig {
    double alpha = 0.5;                         // depth-scaling exponent
    double beta = 0.3;                          // density factor, in [0,1]
    std::map<std::string, double> type_factors; // per-relation multiplier on edge factors
    std::map<std::string, double> sussna_min;   // per-relation weight range, default [1,2]
    std::map<std::string, double> sussna_max;
    std::optional<double> conversion_c;         // distance->similarity constant, default 2*d_max
    std::optional<int> d_max;                   // default: max depth of the taxonomy
    double log_base = 2.0;
    LsuperRule lsuper_rule = LsuperRule::max_ic;
    // Relations that edge-counting and weighted paths may traverse.
    std::set<std::string> path_relations{"isa"};

    // Throws Error for beta outside [0,1] or an inverted sussna range;
    // negative alpha is allowed but reported (returned as a warning string).
    std::optional<std::string> validate() const;

    double sussna_min_for(const std::string& relation) const;
    double sussna_max_for(const std::string& relation) const;
    // Configured factor for the relation (default 1) times the edge's own factor.
    double type_factor_for(const Edge& e) const;
    int effective_d_max(const Taxonomy& t) const;
    double effective_conversion_c(const Taxonomy& t) const;
};

struct MeasureResult {
    double value = 0.0;
    MeasureKind kind = MeasureKind::similarity;
    std::optional<ConceptId> subsumer;
    std::optional<int> path_len;
    // Winning sense pair, filled by word_similarity().
    std::optional<std::pair<ConceptId, ConceptId>> senses;
};

// 2*d_max minus the shortest undirected IS-A path length; disconnected
// pairs score 0.
MeasureResult sim_edge_counting(const Taxonomy& t, const ConceptId& c1, const ConceptId& c2,
                                const MeasureConfig& cfg);

// Information content of the most informative common subsumer.
MeasureResult sim_resnik(const Taxonomy& t, const IcTable& ic, const ConceptId& c1,
                         const ConceptId& c2);

// w(x ->r y) = max_r - (max_r - min_r) / n_r(x), where n_r(x) counts the
// r-edges leaving x in the direction of the traversal.
double sussna_directed_weight(const Taxonomy& t, const ConceptId& x, const ConceptId& y,
                              const std::string& relation, const MeasureConfig& cfg);

// Mean of the two directed weights divided by the depth of the deeper node.
double sussna_edge_weight(const Taxonomy& t, const ConceptId& c1, const ConceptId& c2,
                          const MeasureConfig& cfg);

// Minimum total edge weight over undirected IS-A paths.
MeasureResult sussna_distance(const Taxonomy& t, const ConceptId& c1, const ConceptId& c2,
                              const MeasureConfig& cfg);

// IC(c) - IC(p): the negative log conditional probability of the child
// given its parent. Requires an actual edge and finite content on both ends.
double link_strength(const Taxonomy& t, const IcTable& ic, const ConceptId& child,
                     const ConceptId& parent);

// (beta + (1-beta) * avg_density/density(p)) * ((d(p)+1)/d(p))^alpha
//   * [IC(c) - IC(p)] * T(c,p)
double combined_edge_weight(const Taxonomy& t, const IcTable& ic, const ConceptId& child,
                            const ConceptId& parent, const MeasureConfig& cfg);

// Sum of combined_edge_weight over the hops of the path joining c1 and c2
// at their subsumer (each hop child -> parent; the subsumer contributes none).
MeasureResult combined_distance(const Taxonomy& t, const IcTable& ic, const ConceptId& c1,
                                const ConceptId& c2, const MeasureConfig& cfg);

// IC(c1) + IC(c2) - 2 * IC(subsumer): the closed form of the combined
// distance when only link strength is weighted.
MeasureResult jc_distance_simplified(const Taxonomy& t, const IcTable& ic, const ConceptId& c1,
                                     const ConceptId& c2, const MeasureConfig& cfg = {});

// conversion_c - distance, unclamped.
MeasureResult distance_to_similarity(const MeasureResult& d, const Taxonomy& t,
                                     const MeasureConfig& cfg);

// Dispatch by measure id on a concept pair. ic may be null for measures
// that do not need content.
MeasureResult concept_similarity(const Taxonomy& t, const IcTable* ic, const MeasureConfig& cfg,
                                 MeasureId id, const ConceptId& c1, const ConceptId& c2);

// Best value over the sense cross-product: maximum for similarities,
// minimum for distances. Records the winning sense pair.
MeasureResult word_similarity(const Taxonomy& t, const IcTable* ic, const MeasureConfig& cfg,
                              MeasureId id, const std::string& w1, const std::string& w2);

}  // namespace taxosim
