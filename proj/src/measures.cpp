#include "taxosim/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "taxosim/format.hpp"

namespace taxosim {

MeasureId parse_measure_id(const std::string& name) {
    if (name == "edge") return MeasureId::edge;
    if (name == "resnik") return MeasureId::resnik;
    if (name == "sussna") return MeasureId::sussna;
    if (name == "jc") return MeasureId::jc;
    if (name == "jc-simplified") return MeasureId::jc_simplified;
    throw LookupError("unknown measure: " + name);
}

const char* measure_name(MeasureId id) {
    switch (id) {
        case MeasureId::edge: return "edge";
        case MeasureId::resnik: return "resnik";
        case MeasureId::sussna: return "sussna";
        case MeasureId::jc: return "jc";
        case MeasureId::jc_simplified: return "jc-simplified";
    }
    return "?";
}

MeasureKind measure_kind(MeasureId id) {
    switch (id) {
        case MeasureId::edge:
        case MeasureId::resnik: return MeasureKind::similarity;
        default: return MeasureKind::distance;
    }
}

bool measure_needs_ic(MeasureId id) {
    return id == MeasureId::resnik || id == MeasureId::jc || id == MeasureId::jc_simplified;
}

std::optional<std::string> MeasureConfig::validate() const {
    if (!(beta >= 0.0 && beta <= 1.0)) throw Error("beta must be in [0,1]");
    for (const auto& [rel, lo] : sussna_min)
        if (lo > sussna_max_for(rel)) throw Error("sussna range inverted for relation: " + rel);
    for (const auto& [rel, hi] : sussna_max)
        if (sussna_min_for(rel) > hi) throw Error("sussna range inverted for relation: " + rel);
    if (alpha < 0.0)
        return "alpha " + format_number(alpha, 6) + " is negative; depth scaling now grows "
               "with depth instead of shrinking";
    return std::nullopt;
}

double MeasureConfig::sussna_min_for(const std::string& relation) const {
    auto it = sussna_min.find(relation);
    return it != sussna_min.end() ? it->second : 1.0;
}

double MeasureConfig::sussna_max_for(const std::string& relation) const {
    auto it = sussna_max.find(relation);
    return it != sussna_max.end() ? it->second : 2.0;
}

double MeasureConfig::type_factor_for(const Edge& e) const {
    auto it = type_factors.find(e.relation);
    double cfg_factor = it != type_factors.end() ? it->second : 1.0;
    return cfg_factor * e.type_factor;
}

int MeasureConfig::effective_d_max(const Taxonomy& t) const {
    return d_max.value_or(t.max_depth());
}

double MeasureConfig::effective_conversion_c(const Taxonomy& t) const {
    return conversion_c.value_or(2.0 * effective_d_max(t));
}

MeasureResult sim_edge_counting(const Taxonomy& t, const ConceptId& c1, const ConceptId& c2,
                                const MeasureConfig& cfg) {
    MeasureResult r;
    r.kind = MeasureKind::similarity;
    std::optional<int> len = t.shortest_path_length(c1, c2, cfg.path_relations);
    if (!len) {
        r.value = 0.0;  // disconnected trees score zero
        return r;
    }
    r.path_len = *len;
    r.value = 2.0 * cfg.effective_d_max(t) - *len;
    return r;
}

MeasureResult sim_resnik(const Taxonomy& t, const IcTable& ic, const ConceptId& c1,
                         const ConceptId& c2) {
    MeasureResult r;
    r.kind = MeasureKind::similarity;
    ConceptId sub = most_informative_subsumer(t, ic, c1, c2);
    double v = ic.ic_of(sub);
    if (!std::isfinite(v))
        throw DomainError("subsumer " + sub + " has infinite information content");
    r.subsumer = sub;
    r.value = v;
    return r;
}

namespace {

// Resolves the adjacency of x and y and the traversal direction. Returns
// the edge and whether x is the child (x ->r y follows the stored edge) or
// the parent (x ->r' y runs against it).
const Edge* find_adjacent_edge(const Taxonomy& t, const ConceptId& x, const ConceptId& y,
                               const std::string& relation, bool* x_is_child) {
    int xi = t.index_of(x), yi = t.index_of(y);
    for (const auto& l : t.parents_of(xi)) {
        const Edge& e = t.edges()[l.edge];
        if (l.node == yi && e.relation == relation) {
            *x_is_child = true;
            return &e;
        }
    }
    for (const auto& l : t.children_of(xi)) {
        const Edge& e = t.edges()[l.edge];
        if (l.node == yi && e.relation == relation) {
            *x_is_child = false;
            return &e;
        }
    }
    return nullptr;
}

// n_r(x): edges of the relation leaving x in the given direction
// (upward = x as child, downward = x as parent).
int relation_fanout(const Taxonomy& t, int x, const std::string& relation, bool upward) {
    int n = 0;
    const auto& adj = upward ? t.parents_of(x) : t.children_of(x);
    for (const auto& l : adj)
        if (t.edges()[l.edge].relation == relation) ++n;
    return n;
}

const Edge* find_any_adjacent(const Taxonomy& t, const ConceptId& c1, const ConceptId& c2,
                              bool* c1_is_child) {
    int i1 = t.index_of(c1), i2 = t.index_of(c2);
    for (const auto& l : t.parents_of(i1))
        if (l.node == i2 && !t.is_virtual_edge(l.edge)) {
            *c1_is_child = true;
            return &t.edges()[l.edge];
        }
    for (const auto& l : t.children_of(i1))
        if (l.node == i2 && !t.is_virtual_edge(l.edge)) {
            *c1_is_child = false;
            return &t.edges()[l.edge];
        }
    return nullptr;
}

double sussna_weight_of_edge(const Taxonomy& t, const Edge& e, const MeasureConfig& cfg) {
    double up = sussna_directed_weight(t, e.child, e.parent, e.relation, cfg);
    double down = sussna_directed_weight(t, e.parent, e.child, e.relation, cfg);
    int deeper = std::max(t.depth(e.child), t.depth(e.parent));
    return (up + down) / (2.0 * deeper);
}

}  // namespace

double sussna_directed_weight(const Taxonomy& t, const ConceptId& x, const ConceptId& y,
                              const std::string& relation, const MeasureConfig& cfg) {
    bool x_is_child = false;
    const Edge* e = find_adjacent_edge(t, x, y, relation, &x_is_child);
    if (e == nullptr)
        throw DomainError("no '" + relation + "' edge between " + x + " and " + y);
    double lo = cfg.sussna_min_for(relation);
    double hi = cfg.sussna_max_for(relation);
    int n = relation_fanout(t, t.index_of(x), relation, x_is_child);
    return hi - (hi - lo) / static_cast<double>(n);
}

double sussna_edge_weight(const Taxonomy& t, const ConceptId& c1, const ConceptId& c2,
                          const MeasureConfig& cfg) {
    bool c1_is_child = false;
    const Edge* e = find_any_adjacent(t, c1, c2, &c1_is_child);
    if (e == nullptr) throw DomainError("concepts not adjacent: " + c1 + ", " + c2);
    double forward = sussna_directed_weight(t, c1, c2, e->relation, cfg);
    double backward = sussna_directed_weight(t, c2, c1, e->relation, cfg);
    int deeper = std::max(t.depth(c1), t.depth(c2));
    return (forward + backward) / (2.0 * deeper);
}

MeasureResult sussna_distance(const Taxonomy& t, const ConceptId& c1, const ConceptId& c2,
                              const MeasureConfig& cfg) {
    MeasureResult r;
    r.kind = MeasureKind::distance;
    int a = t.index_of(c1), b = t.index_of(c2);
    if (a == b) {
        r.value = 0.0;
        r.path_len = 0;
        return r;
    }
    // Dijkstra over the undirected IS-A graph with per-edge weights.
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(t.size(), inf);
    std::vector<int> hops(t.size(), 0);
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[a] = 0.0;
    heap.push({0.0, a});
    while (!heap.empty()) {
        auto [d, i] = heap.top();
        heap.pop();
        if (d > dist[i]) continue;
        if (i == b) break;
        for (const auto* adj : {&t.parents_of(i), &t.children_of(i)}) {
            for (const auto& l : *adj) {
                const Edge& e = t.edges()[l.edge];
                if (!cfg.path_relations.count(e.relation)) continue;
                double w = sussna_weight_of_edge(t, e, cfg);
                if (w < 0.0) throw Error("negative edge weight on " + e.child + " -> " + e.parent);
                if (dist[i] + w < dist[l.node]) {
                    dist[l.node] = dist[i] + w;
                    hops[l.node] = hops[i] + 1;
                    heap.push({dist[l.node], l.node});
                }
            }
        }
    }
    if (!std::isfinite(dist[b]))
        throw DomainError("concepts unreachable through path relations: " + c1 + ", " + c2);
    r.value = dist[b];
    r.path_len = hops[b];
    return r;
}

double link_strength(const Taxonomy& t, const IcTable& ic, const ConceptId& child,
                     const ConceptId& parent) {
    bool child_first = false;
    const Edge* e = find_any_adjacent(t, child, parent, &child_first);
    bool is_edge = e != nullptr && child_first;
    if (!is_edge && t.virtual_root() && parent == *t.virtual_root()) {
        // virtual attachment edges are real parent edges
        int ci = t.index_of(child), pi = t.index_of(parent);
        for (const auto& l : t.parents_of(ci))
            if (l.node == pi) is_edge = true;
    }
    if (!is_edge) throw DomainError("not a parent edge: " + child + " -> " + parent);
    double ic_c = ic.ic_of(child);
    double ic_p = ic.ic_of(parent);
    if (!std::isfinite(ic_c) || !std::isfinite(ic_p))
        throw DomainError("infinite information content on edge " + child + " -> " + parent);
    return ic_c - ic_p;
}

double combined_edge_weight(const Taxonomy& t, const IcTable& ic, const ConceptId& child,
                            const ConceptId& parent, const MeasureConfig& cfg) {
    double ls = link_strength(t, ic, child, parent);
    int pi = t.index_of(parent);
    int density = t.weighting_density_at(pi);
    if (density < 1) throw Error("parent node without child edges: " + parent);
    double density_factor =
        cfg.beta + (1.0 - cfg.beta) * t.average_density() / static_cast<double>(density);
    double dp = static_cast<double>(t.depth_at(pi));
    double depth_factor = std::pow((dp + 1.0) / dp, cfg.alpha);

    // Type factor of the actual connecting edge (first match child -> parent).
    double type_factor = 1.0;
    for (const auto& l : t.parents_of(t.index_of(child))) {
        if (l.node == pi) {
            type_factor = cfg.type_factor_for(t.edges()[l.edge]);
            break;
        }
    }
    return density_factor * depth_factor * ls * type_factor;
}

namespace {

ConceptId joining_subsumer(const Taxonomy& t, const IcTable& ic, const ConceptId& c1,
                           const ConceptId& c2, const MeasureConfig& cfg) {
    return cfg.lsuper_rule == LsuperRule::max_ic ? most_informative_subsumer(t, ic, c1, c2)
                                                 : deepest_common_subsumer(t, c1, c2);
}

}  // namespace

MeasureResult combined_distance(const Taxonomy& t, const IcTable& ic, const ConceptId& c1,
                                const ConceptId& c2, const MeasureConfig& cfg) {
    MeasureResult r;
    r.kind = MeasureKind::distance;
    ConceptId sub = joining_subsumer(t, ic, c1, c2, cfg);
    std::vector<ConceptId> path = path_through_subsumer(t, c1, c2, sub);
    r.subsumer = sub;
    r.path_len = static_cast<int>(path.size()) - 1;

    // Each node on the path except the subsumer contributes the weight of
    // its hop toward the subsumer.
    auto sub_pos = std::find(path.begin(), path.end(), sub);
    double total = 0.0;
    for (auto it = path.begin(); it != sub_pos; ++it) total += combined_edge_weight(t, ic, *it, *(it + 1), cfg);
    for (auto it = path.end() - 1; it != sub_pos; --it) total += combined_edge_weight(t, ic, *it, *(it - 1), cfg);
    r.value = total;
    return r;
}

MeasureResult jc_distance_simplified(const Taxonomy& t, const IcTable& ic, const ConceptId& c1,
                                     const ConceptId& c2, const MeasureConfig& cfg) {
    MeasureResult r;
    r.kind = MeasureKind::distance;
    ConceptId sub = joining_subsumer(t, ic, c1, c2, cfg);
    double ic1 = ic.ic_of(c1);
    double ic2 = ic.ic_of(c2);
    double ics = ic.ic_of(sub);
    if (!std::isfinite(ic1) || !std::isfinite(ic2) || !std::isfinite(ics))
        throw DomainError("infinite information content on " + c1 + ", " + c2 + " or " + sub);
    r.subsumer = sub;
    r.value = ic1 + ic2 - 2.0 * ics;
    return r;
}

MeasureResult distance_to_similarity(const MeasureResult& d, const Taxonomy& t,
                                     const MeasureConfig& cfg) {
    if (d.kind != MeasureKind::distance) throw Error("conversion expects a distance result");
    MeasureResult r = d;
    r.kind = MeasureKind::similarity;
    r.value = cfg.effective_conversion_c(t) - d.value;
    return r;
}

MeasureResult concept_similarity(const Taxonomy& t, const IcTable* ic, const MeasureConfig& cfg,
                                 MeasureId id, const ConceptId& c1, const ConceptId& c2) {
    if (measure_needs_ic(id) && ic == nullptr)
        throw Error(std::string("measure '") + measure_name(id) +
                    "' needs an information-content table");
    switch (id) {
        case MeasureId::edge: return sim_edge_counting(t, c1, c2, cfg);
        case MeasureId::resnik: return sim_resnik(t, *ic, c1, c2);
        case MeasureId::sussna: return sussna_distance(t, c1, c2, cfg);
        case MeasureId::jc: return combined_distance(t, *ic, c1, c2, cfg);
        case MeasureId::jc_simplified: return jc_distance_simplified(t, *ic, c1, c2, cfg);
    }
    throw Error("unhandled measure id");
}

MeasureResult word_similarity(const Taxonomy& t, const IcTable* ic, const MeasureConfig& cfg,
                              MeasureId id, const std::string& w1, const std::string& w2) {
    const std::set<ConceptId>& s1 = t.senses(w1);
    const std::set<ConceptId>& s2 = t.senses(w2);
    const bool maximize = measure_kind(id) == MeasureKind::similarity;
    std::optional<MeasureResult> best;
    for (const ConceptId& c1 : s1) {
        for (const ConceptId& c2 : s2) {
            MeasureResult r = concept_similarity(t, ic, cfg, id, c1, c2);
            if (!best || (maximize ? r.value > best->value : r.value < best->value)) {
                r.senses = {c1, c2};
                best = r;
            }
        }
    }
    return *best;  // senses() guarantees non-empty sets
}

}  // namespace taxosim
