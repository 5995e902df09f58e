#include "seamforge/seam.hpp"

#include "seamforge/error.hpp"

#include <algorithm>
#include <map>

namespace seamforge {

std::vector<Edge> SeamChain::edges() const {
    std::vector<Edge> result;
    result.reserve(vertices.size());
    for (size_t i = 0; i + 1 < vertices.size(); ++i) {
        result.push_back(make_edge(vertices[i], vertices[i + 1]));
    }
    return result;
}

double SeamChain::length3d(const Mesh& mesh) const {
    double total = 0.0;
    for (size_t i = 0; i + 1 < vertices.size(); ++i) {
        total += (mesh.positions.row(vertices[i]) - mesh.positions.row(vertices[i + 1])).norm();
    }
    return total;
}

int candidate_id(const Token& token) {
    switch (token.kind) {
        case Token::Kind::eoc: return kCandidateEoc;
        case Token::Kind::eos: return kCandidateEos;
        case Token::Kind::vertex: return token.vertex + kVertexCandidateOffset;
    }
    throw_domain("invalid token kind");
}

Token token_from_candidate(int id) {
    if (id == kCandidateEoc) return Token::eoc();
    if (id == kCandidateEos) return Token::eos();
    if (id < 0) throw_domain("negative candidate id");
    return Token::vert(id - kVertexCandidateOffset);
}

std::vector<int> TokenSequence::candidate_ids() const {
    std::vector<int> ids;
    ids.reserve(tokens.size());
    for (const Token& t : tokens) ids.push_back(candidate_id(t));
    return ids;
}

SeamEdgeSet extract_seams_from_uv(const Mesh& mesh, const AdjacencyTable& adjacency,
                                  double tolerance) {
    if (!mesh.has_uvs()) throw_domain("mesh has no corner UVs; cannot extract seams");

    SeamEdgeSet seams;
    for (const auto& [edge, faces] : adjacency.edge_faces) {
        if (faces[1] < 0) continue;  // boundary edges are never seams
        int f1 = faces[0], f2 = faces[1];
        bool split = false;
        for (int v : {edge.first, edge.second}) {
            Eigen::Vector2d a = mesh.corner_uv(f1, v);
            Eigen::Vector2d b = mesh.corner_uv(f2, v);
            if ((a - b).norm() > tolerance) {
                split = true;
                break;
            }
        }
        if (split) seams.edges.insert(edge);
    }
    return seams;
}

namespace {

// Seam subgraph as per-vertex sorted neighbor lists.
std::map<int, std::vector<int>> seam_adjacency(const SeamEdgeSet& seams) {
    std::map<int, std::vector<int>> adj;
    for (const Edge& e : seams.edges) {
        adj[e.first].push_back(e.second);
        adj[e.second].push_back(e.first);
    }
    for (auto& [v, nbrs] : adj) std::sort(nbrs.begin(), nbrs.end());
    return adj;
}

} // namespace

ChainSet trace_chains(const Mesh& mesh, const SeamEdgeSet& seams) {
    for (const Edge& e : seams.edges) {
        if (e.first < 0 || e.second >= mesh.vertex_count()) {
            throw_domain("seam edge out of range");
        }
    }
    auto adj = seam_adjacency(seams);
    std::set<Edge> unused(seams.edges.begin(), seams.edges.end());

    auto walk = [&](int start, int next) {
        // Follows degree-2 vertices until a junction/endpoint or loop closure.
        std::vector<int> verts{start, next};
        unused.erase(make_edge(start, next));
        int prev = start, cur = next;
        while (cur != start && adj[cur].size() == 2) {
            int nxt = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
            if (!unused.count(make_edge(cur, nxt))) break;
            unused.erase(make_edge(cur, nxt));
            verts.push_back(nxt);
            prev = cur;
            cur = nxt;
        }
        return verts;
    };

    std::vector<SeamChain> chains;

    // Open chains first: start walks at every junction (seam-degree != 2).
    for (const auto& [v, nbrs] : adj) {
        if (nbrs.size() == 2) continue;
        for (int n : nbrs) {
            if (!unused.count(make_edge(v, n))) continue;
            SeamChain chain;
            chain.vertices = walk(v, n);
            chain.is_loop = chain.vertices.front() == chain.vertices.back();
            chains.push_back(std::move(chain));
        }
    }
    // Remaining components are pure loops (every vertex seam-degree 2).
    for (const auto& [v, nbrs] : adj) {
        for (int n : nbrs) {
            if (!unused.count(make_edge(v, n))) continue;
            SeamChain chain;
            chain.vertices = walk(v, n);
            chain.is_loop = true;
            if (chain.vertices.front() != chain.vertices.back()) {
                throw_domain("internal error: open walk in a degree-2 component");
            }
            chains.push_back(std::move(chain));
        }
    }

    // Canonical start and direction per chain.
    for (SeamChain& chain : chains) {
        auto& v = chain.vertices;
        if (chain.is_loop) {
            v.pop_back();  // drop duplicated closing vertex while rotating
            auto smallest = std::min_element(v.begin(), v.end());
            std::rotate(v.begin(), smallest, v.end());
            if (v.size() > 2 && v[1] > v.back()) {
                std::reverse(v.begin() + 1, v.end());
            }
            v.push_back(v.front());
        } else {
            if (v.front() > v.back()) std::reverse(v.begin(), v.end());
        }
    }
    std::sort(chains.begin(), chains.end(), [](const SeamChain& a, const SeamChain& b) {
        int ma = *std::min_element(a.vertices.begin(), a.vertices.end());
        int mb = *std::min_element(b.vertices.begin(), b.vertices.end());
        if (ma != mb) return ma < mb;
        return a.vertices < b.vertices;
    });

    ChainSet result;
    result.chains = std::move(chains);
    return result;
}

SeamEdgeSet chains_to_edges(const ChainSet& chains) {
    SeamEdgeSet seams;
    for (const SeamChain& chain : chains.chains) {
        for (const Edge& e : chain.edges()) {
            if (!seams.edges.insert(e).second) {
                throw_domain("duplicate seam edge (" + std::to_string(e.first) + ", " +
                             std::to_string(e.second) + ") across chains");
            }
        }
    }
    return seams;
}

TokenSequence tokenize(const ChainSet& chains) {
    TokenSequence seq;
    for (const SeamChain& chain : chains.chains) {
        for (int v : chain.vertices) seq.tokens.push_back(Token::vert(v));
        seq.tokens.push_back(Token::eoc());
    }
    seq.tokens.push_back(Token::eos());
    return seq;
}

ChainSet detokenize(const TokenSequence& tokens, const AdjacencyTable* adjacency) {
    ChainSet result;
    std::vector<int> current;
    bool saw_eos = false;
    for (size_t i = 0; i < tokens.tokens.size(); ++i) {
        const Token& t = tokens.tokens[i];
        if (saw_eos) throw_domain("malformed sequence: token after EOS");
        switch (t.kind) {
            case Token::Kind::vertex:
                if (!current.empty() && adjacency &&
                    !adjacency->adjacent(current.back(), t.vertex)) {
                    throw_domain("malformed sequence: vertices " + std::to_string(current.back()) +
                                 " and " + std::to_string(t.vertex) + " are not mesh-adjacent");
                }
                current.push_back(t.vertex);
                break;
            case Token::Kind::eoc: {
                if (current.size() < 2) throw_domain("malformed sequence: empty or single-vertex chain");
                SeamChain chain;
                chain.vertices = std::move(current);
                chain.is_loop = chain.vertices.front() == chain.vertices.back();
                result.chains.push_back(std::move(chain));
                current.clear();
                break;
            }
            case Token::Kind::eos:
                if (i + 1 != tokens.tokens.size()) {
                    throw_domain("malformed sequence: EOS mid-stream");
                }
                // EOS may close a trailing chain in place of EOC.
                if (current.size() == 1) {
                    throw_domain("malformed sequence: single-vertex chain at EOS");
                }
                if (!current.empty()) {
                    SeamChain chain;
                    chain.vertices = std::move(current);
                    chain.is_loop = chain.vertices.front() == chain.vertices.back();
                    result.chains.push_back(std::move(chain));
                    current.clear();
                }
                saw_eos = true;
                break;
        }
    }
    if (!saw_eos) throw_domain("malformed sequence: missing terminal EOS");
    return result;
}

void validate_chains(const ChainSet& chains, const AdjacencyTable& adjacency) {
    std::set<Edge> seen;
    for (const SeamChain& chain : chains.chains) {
        if (chain.vertices.size() < 2) throw_domain("chain with fewer than 2 vertices");
        if (chain.is_loop != (chain.vertices.front() == chain.vertices.back())) {
            throw_domain("is_loop flag inconsistent with endpoints");
        }
        for (size_t i = 0; i + 1 < chain.vertices.size(); ++i) {
            int a = chain.vertices[i], b = chain.vertices[i + 1];
            if (!adjacency.adjacent(a, b)) {
                throw_domain("chain step (" + std::to_string(a) + ", " + std::to_string(b) +
                             ") is not a mesh edge");
            }
            if (!seen.insert(make_edge(a, b)).second) {
                throw_domain("edge reused within the chain set");
            }
        }
    }
}

} // namespace seamforge
