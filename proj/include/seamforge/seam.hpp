#pragma once

#include "seamforge/mesh.hpp"

#include <set>
#include <vector>

namespace seamforge {

struct SeamEdgeSet {
    std::set<Edge> edges;

    bool empty() const { return edges.empty(); }
    size_t size() const { return edges.size(); }
    bool contains(const Edge& e) const { return edges.count(e) > 0; }
};

/// Ordered vertex walk; consecutive vertices are mesh-adjacent. Loops store
/// the start vertex again at the end (first == last).
struct SeamChain {
    std::vector<int> vertices;
    bool is_loop = false;

    int edge_count() const { return static_cast<int>(vertices.size()) - 1; }
    std::vector<Edge> edges() const;
    double length3d(const Mesh& mesh) const;
};

struct ChainSet {
    std::vector<SeamChain> chains;

    bool empty() const { return chains.empty(); }
};

struct Token {
    enum class Kind { eoc, eos, vertex };
    Kind kind = Kind::eoc;
    int vertex = -1;

    static Token eoc() { return {Kind::eoc, -1}; }
    static Token eos() { return {Kind::eos, -1}; }
    static Token vert(int v) { return {Kind::vertex, v}; }

    bool operator==(const Token&) const = default;
};

/// Candidate-id mapping: EOC -> 0, EOS -> 1, Vertex(i) -> i + 2.
constexpr int kCandidateEoc = 0;
constexpr int kCandidateEos = 1;
constexpr int kVertexCandidateOffset = 2;

int candidate_id(const Token& token);
Token token_from_candidate(int id);

struct TokenSequence {
    std::vector<Token> tokens;

    size_t size() const { return tokens.size(); }
    bool empty() const { return tokens.empty(); }
    std::vector<int> candidate_ids() const;
};

/// Marks interior edges whose shared endpoints are not UV-glued across the
/// two incident faces (UV distance > tolerance at either endpoint).
/// Boundary edges are never seams. Throws if the mesh has no corner UVs.
SeamEdgeSet extract_seams_from_uv(const Mesh& mesh, const AdjacencyTable& adjacency,
                                  double tolerance = 1e-6);

/// Decomposes a seam edge set into maximal chains, splitting at vertices of
/// seam-degree != 2. Pure degree-2 components become loops. Deterministic:
/// open chains start at their smaller endpoint; loops start at their
/// smallest vertex heading toward its smaller-index seam neighbor; chains
/// are sorted by smallest contained vertex, then lexicographically.
ChainSet trace_chains(const Mesh& mesh, const SeamEdgeSet& seams);

/// Union of consecutive-pair edges. Throws if chains share an edge.
SeamEdgeSet chains_to_edges(const ChainSet& chains);

TokenSequence tokenize(const ChainSet& chains);

/// Inverse of tokenize. Throws on EOS mid-stream, a missing terminal EOS,
/// empty chains, or (when adjacency is given) non-adjacent consecutive
/// vertices.
ChainSet detokenize(const TokenSequence& tokens, const AdjacencyTable* adjacency = nullptr);

/// Walk property plus edge-disjointness across chains.
void validate_chains(const ChainSet& chains, const AdjacencyTable& adjacency);

} // namespace seamforge
