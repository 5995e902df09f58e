#pragma once

#include "seamforge/mesh.hpp"
#include "seamforge/seam.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

namespace seamforge {

/// Running decode context. `chain_position` counts tokens emitted since the
/// last EOC and resets to 0 right after one.
struct DecodeState {
    TokenSequence history;
    std::optional<int> current_vertex;
    std::optional<int> previous_vertex;
    int chain_position = 0;

    void push(const Token& token);
    bool at_chain_start() const { return chain_position == 0; }
    bool terminated() const {
        return !history.empty() && history.tokens.back().kind == Token::Kind::eos;
    }
};

struct DecodeConfig {
    double temperature = 0.1;
    int max_len = 400;
    std::uint64_t seed = 0;
    bool greedy = false;
    bool allow_empty = false;  // permit EOS as the very first token
};

/// Scoring contract: logits over the full candidate space (size N + 2),
/// finite everywhere. Masking is the harness's job.
class Scorer {
public:
    virtual ~Scorer() = default;
    virtual Eigen::VectorXd score(const DecodeState& state) = 0;
};

/// Allowed candidate ids for the next step, sorted ascending.
/// Start of chain: every vertex, no specials (EOS too when
/// `allow_empty_start` and the history is empty). After a vertex v:
/// 1-ring of v minus the previous vertex, plus EOC and EOS. After EOS: empty.
std::vector<int> candidate_mask(const DecodeState& state, const AdjacencyTable& adjacency,
                                bool allow_empty_start = false);

/// Temperature-scaled softmax over `allowed` ids only; other entries are 0.
Eigen::VectorXd masked_softmax(const Eigen::VectorXd& logits, const std::vector<int>& allowed,
                               double temperature);

struct DecodeResult {
    ChainSet chains;
    TokenSequence tokens;               // exact emitted stream
    std::vector<double> chain_log_probs;  // one per kept chain
    bool truncated = false;
    bool depth_capped = false;
    int dropped_chains = 0;  // merge-time edge-overlap drops (divide and conquer)
};

DecodeResult decode(const Mesh& mesh, const AdjacencyTable& adjacency, Scorer& scorer,
                    const DecodeConfig& config);

/// Dihedral-concavity walker: neighbor steps score by the concavity of the
/// crossed edge plus directional continuity; EOC/EOS logits rise with chain
/// and sequence length so decoding terminates on its own.
std::unique_ptr<Scorer> heuristic_scorer(const Mesh& mesh, const AdjacencyTable& adjacency);

/// Replays a fixed target sequence (large logit on the next target
/// candidate). `num_candidates` is the mesh's vertex count + 2. Throws when
/// queried past its end.
std::unique_ptr<Scorer> replay_scorer(TokenSequence target, int num_candidates);

/// Signed dihedral angle across an interior edge; positive = concave.
/// Boundary edges score 0.
double edge_concavity(const Mesh& mesh, const AdjacencyTable& adjacency, const Edge& edge);

using ScorerFactory =
    std::function<std::unique_ptr<Scorer>(const Mesh& mesh, const AdjacencyTable& adjacency)>;

/// Decodes chain-by-chain; whenever the accumulated cut disconnects the
/// current patch, splits into sub-meshes and recurses on components with at
/// least `min_faces` faces, re-seeding each branch deterministically.
/// Returned chains are expressed in parent vertex indices.
DecodeResult divide_and_conquer_decode(const Mesh& mesh, const ScorerFactory& factory,
                                       const DecodeConfig& config, int min_faces = 64,
                                       int max_depth = 32);

} // namespace seamforge
