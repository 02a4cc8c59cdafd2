#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "taxosim/error.hpp"

namespace taxosim {

using ConceptId = std::string;

// A directed link from a child concept to one of its parents. The relation
// tag is free-form ("isa", "partof", ...); "virtual" is reserved for the
// synthetic edges attaching multiple roots to the virtual root.
struct Edge {
    ConceptId child;
    ConceptId parent;
    std::string relation;
    double type_factor = 1.0;
};

inline constexpr const char* kVirtualRelation = "virtual";

// Immutable concept hierarchy: a rooted acyclic graph of typed parent links
// plus a word -> senses index. Construct through parse_taxonomy() or
// TaxonomyBuilder; after construction every query is const and safe to call
// from any number of threads.
class Taxonomy {
public:
    // Number of concepts, including the virtual root if one was synthesized.
    std::size_t size() const { return ids_.size(); }

    bool contains(const ConceptId& c) const { return index_.count(c) != 0; }

    // All concept ids in lexicographic order.
    std::vector<ConceptId> concepts() const;

    const std::vector<Edge>& edges() const { return edges_; }

    // Original roots (concepts that had no parent edge before the virtual
    // root was attached).
    const std::set<ConceptId>& roots() const { return roots_; }

    const std::optional<ConceptId>& virtual_root() const { return virtual_root_; }

    // The virtual root when present, otherwise the unique original root.
    const ConceptId& effective_root() const;

    // classes(w): the set of senses of a word. Throws LookupError for a word
    // absent from the index.
    const std::set<ConceptId>& senses(const std::string& word) const;

    bool has_word(const std::string& word) const { return word_index_.count(word) != 0; }

    const std::map<std::string, std::set<ConceptId>>& word_index() const { return word_index_; }

    // 1 + minimum number of parent edges up to the effective root; the
    // effective root itself has depth 1. Under multiple inheritance the
    // minimum over ancestry chains is taken.
    int depth(const ConceptId& c) const;

    // Maximum depth over all concepts.
    int max_depth() const { return max_depth_; }

    // Number of child edges leaving p, virtual-root edges excluded.
    int local_density(const ConceptId& p) const;

    // Mean number of child edges over the concepts that have at least one
    // (virtual-root edges excluded). 0 for an edgeless taxonomy.
    double average_density() const;

    // Ancestors of c via parent edges of any relation, including c itself
    // and the virtual root when present.
    std::set<ConceptId> subsumers(const ConceptId& c) const;

    // Edge count of the shortest undirected path between c1 and c2 using
    // only the given relations (virtual edges never participate). Empty
    // optional when the concepts are not connected.
    std::optional<int> shortest_path_length(const ConceptId& c1, const ConceptId& c2,
                                            const std::set<std::string>& relations = {"isa"}) const;

    // --- index-based access used by the measure implementations ---

    struct Link {
        int node;       // the other endpoint
        int edge;       // index into edges()
    };

    int index_of(const ConceptId& c) const;  // throws LookupError
    const ConceptId& id_of(int i) const { return ids_[i]; }
    int depth_at(int i) const { return depths_[i]; }
    // Non-virtual child edges of node i; for the virtual root, its virtual
    // edges (so the density ratio of Eq-style edge weights stays defined).
    int weighting_density_at(int i) const;
    const std::vector<Link>& parents_of(int i) const { return parents_[i]; }
    const std::vector<Link>& children_of(int i) const { return children_[i]; }
    bool is_virtual_edge(int e) const { return edges_[e].relation == kVirtualRelation; }

private:
    friend class TaxonomyBuilder;
    Taxonomy() = default;

    std::vector<ConceptId> ids_;               // index -> id
    std::map<ConceptId, int> index_;           // id -> index
    std::vector<Edge> edges_;
    std::vector<std::vector<Link>> parents_;   // sorted by parent id
    std::vector<std::vector<Link>> children_;  // sorted by child id
    std::vector<int> depths_;
    std::set<ConceptId> roots_;
    std::optional<ConceptId> virtual_root_;
    std::map<std::string, std::set<ConceptId>> word_index_;
    int max_depth_ = 1;
    long long density_edges_ = 0;   // non-virtual edge count
    long long density_nodes_ = 0;   // concepts with >= 1 non-virtual child edge
};

// Incremental construction with validation deferred to build().
class TaxonomyBuilder {
public:
    // Throws Error on a duplicate id, an empty id, or whitespace in the id.
    void add_concept(const ConceptId& id, const std::vector<std::string>& words = {});

    // Endpoints may be declared later; checked at build().
    void add_edge(const ConceptId& child, const ConceptId& parent, const std::string& relation,
                  double type_factor = 1.0);

    // Validates (dangling endpoints, cycles), synthesizes a virtual root
    // when more than one root exists and synthesize_virtual_root is set,
    // and freezes the result.
    Taxonomy build(bool synthesize_virtual_root = true);

private:
    Taxonomy t_;
};

// Parses the line-based taxonomy format:
//   # comment
//   node <id> [word1,word2,...]
//   edge <child-id> <parent-id> <relation> [type_factor]
Taxonomy parse_taxonomy(std::istream& in, bool synthesize_virtual_root = true);
Taxonomy load_taxonomy(const std::string& path, bool synthesize_virtual_root = true);

class IcTable;

// The common subsumer of c1 and c2 with maximal information content; ties
// broken by greater depth, then lexicographically smaller id. Throws
// DomainError when no common subsumer exists (possible only with the
// virtual root disabled).
ConceptId most_informative_subsumer(const Taxonomy& t, const IcTable& ic, const ConceptId& c1,
                                    const ConceptId& c2);

// Deepest common subsumer (ties by smaller id); the structural alternative
// used when selecting the joining node by depth instead of by content.
ConceptId deepest_common_subsumer(const Taxonomy& t, const ConceptId& c1, const ConceptId& c2);

// Nodes of the shortest path from c1 up to the given subsumer and back down
// to c2; every hop is a parent edge and the subsumer appears exactly once.
std::vector<ConceptId> path_through_subsumer(const Taxonomy& t, const ConceptId& c1,
                                             const ConceptId& c2, const ConceptId& subsumer);

// path_through_subsumer joined at most_informative_subsumer(t, ic, c1, c2).
std::vector<ConceptId> path_through_lsuper(const Taxonomy& t, const IcTable& ic,
                                           const ConceptId& c1, const ConceptId& c2);

}  // namespace taxosim
