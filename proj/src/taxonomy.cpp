#include "taxosim/taxonomy.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <fstream>
#include <limits>
#include <sstream>

#include "taxosim/corpus_stats.hpp"

namespace taxosim {

namespace {

bool valid_token(const std::string& s) {
    if (s.empty()) return false;
    for (unsigned char ch : s)
        if (std::isspace(ch)) return false;
    return true;
}

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream iss(line);
    std::string tok;
    while (iss >> tok) out.push_back(tok);
    return out;
}

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

}  // namespace

std::vector<ConceptId> Taxonomy::concepts() const {
    std::vector<ConceptId> out;
    out.reserve(index_.size());
    for (const auto& [id, idx] : index_) out.push_back(id);
    return out;
}

const ConceptId& Taxonomy::effective_root() const {
    if (virtual_root_) return *virtual_root_;
    return *roots_.begin();
}

const std::set<ConceptId>& Taxonomy::senses(const std::string& word) const {
    auto it = word_index_.find(word);
    if (it == word_index_.end()) throw LookupError("unknown word: " + word);
    return it->second;
}

int Taxonomy::index_of(const ConceptId& c) const {
    auto it = index_.find(c);
    if (it == index_.end()) throw LookupError("unknown concept id: " + c);
    return it->second;
}

int Taxonomy::depth(const ConceptId& c) const { return depths_[index_of(c)]; }

int Taxonomy::local_density(const ConceptId& p) const {
    int i = index_of(p);
    int n = 0;
    for (const Link& l : children_[i])
        if (!is_virtual_edge(l.edge)) ++n;
    return n;
}

int Taxonomy::weighting_density_at(int i) const {
    int real = 0, virt = 0;
    for (const Link& l : children_[i])
        (is_virtual_edge(l.edge) ? virt : real)++;
    return real > 0 ? real : virt;
}

double Taxonomy::average_density() const {
    if (density_nodes_ == 0) return 0.0;
    return static_cast<double>(density_edges_) / static_cast<double>(density_nodes_);
}

std::set<ConceptId> Taxonomy::subsumers(const ConceptId& c) const {
    std::set<ConceptId> out;
    std::vector<int> stack{index_of(c)};
    std::vector<char> seen(ids_.size(), 0);
    seen[stack[0]] = 1;
    while (!stack.empty()) {
        int i = stack.back();
        stack.pop_back();
        out.insert(ids_[i]);
        for (const Link& l : parents_[i]) {
            if (!seen[l.node]) {
                seen[l.node] = 1;
                stack.push_back(l.node);
            }
        }
    }
    return out;
}

std::optional<int> Taxonomy::shortest_path_length(const ConceptId& c1, const ConceptId& c2,
                                                  const std::set<std::string>& relations) const {
    int a = index_of(c1), b = index_of(c2);
    if (a == b) return 0;
    std::vector<int> dist(ids_.size(), -1);
    std::deque<int> queue{a};
    dist[a] = 0;
    auto admissible = [&](int e) {
        return !is_virtual_edge(e) && relations.count(edges_[e].relation) != 0;
    };
    while (!queue.empty()) {
        int i = queue.front();
        queue.pop_front();
        for (const auto* adj : {&parents_[i], &children_[i]}) {
            for (const Link& l : *adj) {
                if (!admissible(l.edge) || dist[l.node] >= 0) continue;
                dist[l.node] = dist[i] + 1;
                if (l.node == b) return dist[l.node];
                queue.push_back(l.node);
            }
        }
    }
    return std::nullopt;
}

void TaxonomyBuilder::add_concept(const ConceptId& id, const std::vector<std::string>& words) {
    if (!valid_token(id)) throw Error("invalid concept id: '" + id + "'");
    if (t_.index_.count(id)) throw Error("duplicate concept id: " + id);
    t_.index_[id] = static_cast<int>(t_.ids_.size());
    t_.ids_.push_back(id);
    for (const std::string& w : words) {
        if (!valid_token(w)) throw Error("invalid word: '" + w + "'");
        t_.word_index_[w].insert(id);
    }
}

void TaxonomyBuilder::add_edge(const ConceptId& child, const ConceptId& parent,
                               const std::string& relation, double type_factor) {
    if (child == parent) throw Error("self-edge on concept: " + child);
    if (!valid_token(relation)) throw Error("invalid relation tag");
    if (!(type_factor >= 0.0)) throw Error("type factor must be >= 0");
    t_.edges_.push_back(Edge{child, parent, relation, type_factor});
}

Taxonomy TaxonomyBuilder::build(bool synthesize_virtual_root) {
    Taxonomy& t = t_;
    if (t.ids_.empty()) throw Error("taxonomy has no concepts");

    for (const Edge& e : t.edges_) {
        if (!t.index_.count(e.child)) throw Error("edge references unknown concept: " + e.child);
        if (!t.index_.count(e.parent)) throw Error("edge references unknown concept: " + e.parent);
    }
    for (const auto& [word, ids] : t.word_index_)
        for (const ConceptId& c : ids)
            if (!t.index_.count(c)) throw Error("word references unknown concept: " + c);

    // Roots before any virtual attachment.
    std::vector<char> has_parent(t.ids_.size(), 0);
    for (const Edge& e : t.edges_) has_parent[t.index_.at(e.child)] = 1;
    for (std::size_t i = 0; i < t.ids_.size(); ++i)
        if (!has_parent[i]) t.roots_.insert(t.ids_[i]);
    if (t.roots_.empty()) throw Error("cycle detected: taxonomy has no root");

    if (t.roots_.size() > 1 && synthesize_virtual_root) {
        ConceptId vid = "<root>";
        while (t.index_.count(vid)) vid += "_";
        t.index_[vid] = static_cast<int>(t.ids_.size());
        t.ids_.push_back(vid);
        t.virtual_root_ = vid;
        for (const ConceptId& r : t.roots_)
            t.edges_.push_back(Edge{r, vid, kVirtualRelation, 1.0});
    }

    const int n = static_cast<int>(t.ids_.size());
    t.parents_.assign(n, {});
    t.children_.assign(n, {});
    for (std::size_t e = 0; e < t.edges_.size(); ++e) {
        int c = t.index_.at(t.edges_[e].child);
        int p = t.index_.at(t.edges_[e].parent);
        t.parents_[c].push_back({p, static_cast<int>(e)});
        t.children_[p].push_back({c, static_cast<int>(e)});
    }
    auto by_id = [&](const Taxonomy::Link& a, const Taxonomy::Link& b) {
        if (t.ids_[a.node] != t.ids_[b.node]) return t.ids_[a.node] < t.ids_[b.node];
        return a.edge < b.edge;
    };
    for (auto& adj : t.parents_) std::sort(adj.begin(), adj.end(), by_id);
    for (auto& adj : t.children_) std::sort(adj.begin(), adj.end(), by_id);

    // Kahn toposort over parent edges proves acyclicity.
    {
        std::vector<int> pending(n, 0);
        std::deque<int> queue;
        for (int i = 0; i < n; ++i) {
            pending[i] = static_cast<int>(t.parents_[i].size());
            if (pending[i] == 0) queue.push_back(i);
        }
        int visited = 0;
        while (!queue.empty()) {
            int i = queue.front();
            queue.pop_front();
            ++visited;
            for (const auto& l : t.children_[i])
                if (--pending[l.node] == 0) queue.push_back(l.node);
        }
        if (visited != n) throw Error("cycle detected in parent edges");
    }

    // Depths: BFS layers downward from the effective root.
    t.depths_.assign(n, 0);
    {
        int root;
        if (t.virtual_root_) {
            root = t.index_.at(*t.virtual_root_);
        } else if (t.roots_.size() == 1) {
            root = t.index_.at(*t.roots_.begin());
        } else {
            root = -1;  // multi-root with the virtual root disabled
        }
        std::deque<int> queue;
        if (root >= 0) {
            t.depths_[root] = 1;
            queue.push_back(root);
        } else {
            for (const ConceptId& r : t.roots_) {
                int i = t.index_.at(r);
                t.depths_[i] = 1;
                queue.push_back(i);
            }
        }
        while (!queue.empty()) {
            int i = queue.front();
            queue.pop_front();
            for (const auto& l : t.children_[i]) {
                if (t.depths_[l.node] == 0) {
                    t.depths_[l.node] = t.depths_[i] + 1;
                    queue.push_back(l.node);
                }
            }
        }
    }
    t.max_depth_ = *std::max_element(t.depths_.begin(), t.depths_.end());

    t.density_edges_ = 0;
    std::set<int> with_children;
    for (std::size_t e = 0; e < t.edges_.size(); ++e) {
        if (t.edges_[e].relation == kVirtualRelation) continue;
        ++t.density_edges_;
        with_children.insert(t.index_.at(t.edges_[e].parent));
    }
    t.density_nodes_ = static_cast<long long>(with_children.size());

    return std::move(t_);
}

Taxonomy parse_taxonomy(std::istream& in, bool synthesize_virtual_root) {
    TaxonomyBuilder b;
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& msg) -> void { throw ParseError(msg, lineno); };
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::vector<std::string> tok = split_ws(line);
        if (tok.empty()) continue;
        try {
            if (tok[0] == "node") {
                if (tok.size() < 2 || tok.size() > 3) fail("expected: node <id> [word1,word2,...]");
                b.add_concept(tok[1], tok.size() == 3 ? split_commas(tok[2])
                                                      : std::vector<std::string>{});
            } else if (tok[0] == "edge") {
                if (tok.size() < 4 || tok.size() > 5)
                    fail("expected: edge <child> <parent> <relation> [type_factor]");
                double factor = 1.0;
                if (tok.size() == 5) {
                    std::size_t pos = 0;
                    try {
                        factor = std::stod(tok[4], &pos);
                    } catch (const std::exception&) {
                        pos = 0;
                    }
                    if (pos != tok[4].size()) fail("bad type factor: " + tok[4]);
                }
                b.add_edge(tok[1], tok[2], tok[3], factor);
            } else {
                fail("unknown directive: " + tok[0]);
            }
        } catch (const ParseError&) {
            throw;
        } catch (const Error& e) {
            fail(e.what());
        }
    }
    try {
        return b.build(synthesize_virtual_root);
    } catch (const Error& e) {
        throw ParseError(e.what(), lineno);
    }
}

Taxonomy load_taxonomy(const std::string& path, bool synthesize_virtual_root) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open taxonomy file: " + path);
    return parse_taxonomy(in, synthesize_virtual_root);
}

namespace {

std::vector<int> common_subsumer_indices(const Taxonomy& t, const ConceptId& c1,
                                         const ConceptId& c2) {
    std::set<ConceptId> s1 = t.subsumers(c1);
    std::set<ConceptId> s2 = t.subsumers(c2);
    std::vector<int> out;
    for (const ConceptId& c : s1)
        if (s2.count(c)) out.push_back(t.index_of(c));
    if (out.empty())
        throw DomainError("no common subsumer for " + c1 + " and " + c2);
    return out;
}

// Minimum-hop upward chain from `from` to `to` via parent edges; neighbors
// are explored in id order so the result is deterministic.
std::vector<int> upward_chain(const Taxonomy& t, int from, int to) {
    if (from == to) return {from};
    std::vector<int> prev(t.size(), -1);
    std::deque<int> queue{from};
    prev[from] = from;
    while (!queue.empty()) {
        int i = queue.front();
        queue.pop_front();
        for (const auto& l : t.parents_of(i)) {
            if (prev[l.node] >= 0) continue;
            prev[l.node] = i;
            if (l.node == to) {
                std::vector<int> chain;
                for (int x = to; x != from; x = prev[x]) chain.push_back(x);
                chain.push_back(from);
                std::reverse(chain.begin(), chain.end());
                return chain;
            }
            queue.push_back(l.node);
        }
    }
    throw DomainError("no upward path from " + t.id_of(from) + " to " + t.id_of(to));
}

}  // namespace

ConceptId most_informative_subsumer(const Taxonomy& t, const IcTable& ic, const ConceptId& c1,
                                    const ConceptId& c2) {
    const ConceptId* best = nullptr;
    double best_ic = -1.0;
    int best_depth = -1;
    for (int i : common_subsumer_indices(t, c1, c2)) {
        const ConceptId& id = t.id_of(i);
        double v = ic.ic_of(id);
        int d = t.depth_at(i);
        bool better = false;
        if (best == nullptr || v > best_ic) {
            better = true;
        } else if (v == best_ic) {
            if (d > best_depth || (d == best_depth && id < *best)) better = true;
        }
        if (better) {
            best = &id;
            best_ic = v;
            best_depth = d;
        }
    }
    return *best;
}

ConceptId deepest_common_subsumer(const Taxonomy& t, const ConceptId& c1, const ConceptId& c2) {
    const ConceptId* best = nullptr;
    int best_depth = -1;
    for (int i : common_subsumer_indices(t, c1, c2)) {
        const ConceptId& id = t.id_of(i);
        int d = t.depth_at(i);
        if (best == nullptr || d > best_depth || (d == best_depth && id < *best)) {
            best = &id;
            best_depth = d;
        }
    }
    return *best;
}

std::vector<ConceptId> path_through_subsumer(const Taxonomy& t, const ConceptId& c1,
                                             const ConceptId& c2, const ConceptId& subsumer) {
    int s = t.index_of(subsumer);
    std::vector<int> up1 = upward_chain(t, t.index_of(c1), s);
    std::vector<int> up2 = upward_chain(t, t.index_of(c2), s);
    std::vector<ConceptId> out;
    out.reserve(up1.size() + up2.size() - 1);
    for (int i : up1) out.push_back(t.id_of(i));
    for (auto it = up2.rbegin() + 1; it != up2.rend(); ++it) out.push_back(t.id_of(*it));
    return out;
}

std::vector<ConceptId> path_through_lsuper(const Taxonomy& t, const IcTable& ic,
                                           const ConceptId& c1, const ConceptId& c2) {
    return path_through_subsumer(t, c1, c2, most_informative_subsumer(t, ic, c1, c2));
}

}  // namespace taxosim
