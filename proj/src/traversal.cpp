#include "seamforge/traversal.hpp"

#include "seamforge/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace seamforge {

namespace {

constexpr double kLogitFloor = -1e9;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// xorshift-based generator with explicit state; avoids stdlib distribution
// differences so seeded runs are byte-identical everywhere.
struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(splitmix64(seed ^ 0x5bf03635u)) {}
    std::uint64_t next() {
        state = splitmix64(state);
        return state;
    }
    double uniform() {  // [0, 1)
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }
};

} // namespace

void DecodeState::push(const Token& token) {
    switch (token.kind) {
        case Token::Kind::vertex:
            previous_vertex = chain_position == 0 ? std::nullopt : current_vertex;
            current_vertex = token.vertex;
            ++chain_position;
            break;
        case Token::Kind::eoc:
            current_vertex.reset();
            previous_vertex.reset();
            chain_position = 0;
            break;
        case Token::Kind::eos:
            current_vertex.reset();
            previous_vertex.reset();
            break;
    }
    history.tokens.push_back(token);
}

std::vector<int> candidate_mask(const DecodeState& state, const AdjacencyTable& adjacency,
                                bool allow_empty_start) {
    std::vector<int> allowed;
    if (state.terminated()) return allowed;

    const int n = static_cast<int>(adjacency.neighbors.size());
    if (state.at_chain_start()) {
        if (allow_empty_start && state.history.empty()) allowed.push_back(kCandidateEos);
        for (int v = 0; v < n; ++v) allowed.push_back(v + kVertexCandidateOffset);
        return allowed;
    }

    // Mid-chain: 1-ring of the current vertex minus the previous one,
    // plus both specials.
    allowed.push_back(kCandidateEoc);
    allowed.push_back(kCandidateEos);
    int cur = *state.current_vertex;
    for (int nbr : adjacency.neighbors[cur]) {
        if (state.previous_vertex && nbr == *state.previous_vertex) continue;
        allowed.push_back(nbr + kVertexCandidateOffset);
    }
    return allowed;
}

Eigen::VectorXd masked_softmax(const Eigen::VectorXd& logits, const std::vector<int>& allowed,
                               double temperature) {
    if (temperature <= 0.0) throw_domain("temperature must be positive");
    Eigen::VectorXd probs = Eigen::VectorXd::Zero(logits.size());
    if (allowed.empty()) return probs;
    double max_logit = kLogitFloor;
    for (int id : allowed) max_logit = std::max(max_logit, logits[id]);
    double total = 0.0;
    for (int id : allowed) {
        double e = std::exp((logits[id] - max_logit) / temperature);
        probs[id] = e;
        total += e;
    }
    probs /= total;
    return probs;
}

namespace {

struct Picked {
    int candidate;
    double log_prob;
};

Picked pick_candidate(const Eigen::VectorXd& logits, const std::vector<int>& allowed,
                      const DecodeConfig& config, Rng& rng) {
    Eigen::VectorXd probs = masked_softmax(logits, allowed, config.temperature);
    if (config.greedy) {
        int best = allowed.front();
        for (int id : allowed) {
            if (probs[id] > probs[best]) best = id;  // ties keep the smaller id
        }
        return {best, std::log(probs[best])};
    }
    double u = rng.uniform();
    double acc = 0.0;
    for (int id : allowed) {
        acc += probs[id];
        if (u < acc) return {id, std::log(probs[id])};
    }
    return {allowed.back(), std::log(probs[allowed.back()])};
}

// Shared step loop. `on_chain_end` fires after every EOC with the vertices
// of the finished chain; returning false stops decoding (divide and
// conquer splits there).
DecodeResult run_decode(const Mesh& mesh, const AdjacencyTable& adjacency, Scorer& scorer,
                        const DecodeConfig& config,
                        const std::function<bool(const std::vector<int>&)>& on_chain_end) {
    if (config.max_len < 2) throw_domain("max_len must be at least 2");
    const int n_candidates = mesh.vertex_count() + kVertexCandidateOffset;

    DecodeResult result;
    DecodeState state;
    Rng rng(config.seed);

    std::vector<int> current_chain;
    double current_log_prob = 0.0;

    auto close_chain = [&](bool keep) {
        // Single-vertex chains carry no edge and are dropped.
        if (keep && current_chain.size() >= 2) {
            SeamChain chain;
            chain.vertices = current_chain;
            chain.is_loop = chain.vertices.front() == chain.vertices.back();
            result.chains.chains.push_back(std::move(chain));
            result.chain_log_probs.push_back(current_log_prob);
        }
        current_chain.clear();
        current_log_prob = 0.0;
    };

    while (!state.terminated()) {
        if (static_cast<int>(state.history.size()) >= config.max_len) {
            result.truncated = true;
            if (!state.at_chain_start()) {
                state.push(Token::eoc());
                close_chain(true);
            }
            state.push(Token::eos());
            break;
        }

        std::vector<int> allowed = candidate_mask(state, adjacency, config.allow_empty);
        if (allowed.empty()) {
            // Dead end; keep the stream well-formed.
            state.push(Token::eoc());
            std::vector<int> finished = current_chain;
            close_chain(true);
            if (!on_chain_end(finished)) break;
            continue;
        }

        Eigen::VectorXd logits = scorer.score(state);
        if (logits.size() != n_candidates) {
            throw_domain("scorer returned " + std::to_string(logits.size()) +
                         " logits, expected " + std::to_string(n_candidates));
        }
        Picked picked = pick_candidate(logits, allowed, config, rng);
        Token token = token_from_candidate(picked.candidate);
        current_log_prob += picked.log_prob;
        state.push(token);

        if (token.kind == Token::Kind::vertex) {
            current_chain.push_back(token.vertex);
        } else if (token.kind == Token::Kind::eoc) {
            std::vector<int> finished = current_chain;
            close_chain(true);
            if (!on_chain_end(finished)) break;
        } else {
            close_chain(true);  // EOS may end a chain in place of EOC
        }
    }

    result.tokens = state.history;
    return result;
}

} // namespace

DecodeResult decode(const Mesh& mesh, const AdjacencyTable& adjacency, Scorer& scorer,
                    const DecodeConfig& config) {
    return run_decode(mesh, adjacency, scorer, config,
                      [](const std::vector<int>&) { return true; });
}

double edge_concavity(const Mesh& mesh, const AdjacencyTable& adjacency, const Edge& edge) {
    auto it = adjacency.edge_faces.find(edge);
    if (it == adjacency.edge_faces.end() || it->second[1] < 0) return 0.0;
    int f1 = it->second[0], f2 = it->second[1];
    Eigen::Vector3d n1 = mesh.face_normal(f1);
    Eigen::Vector3d n2 = mesh.face_normal(f2);

    // Edge direction as oriented in f1; the sign of the dihedral follows it.
    Eigen::Vector3d dir = Eigen::Vector3d::Zero();
    for (int k = 0; k < 3; ++k) {
        int a = mesh.faces(f1, k), b = mesh.faces(f1, (k + 1) % 3);
        if (make_edge(a, b) == edge) {
            dir = (mesh.positions.row(b) - mesh.positions.row(a)).normalized();
            break;
        }
    }
    double angle = std::atan2(n1.cross(n2).dot(dir), n1.dot(n2));
    return -angle;  // positive for valleys with outward-oriented faces
}

namespace {

class HeuristicScorer final : public Scorer {
public:
    HeuristicScorer(const Mesh& mesh, const AdjacencyTable& adjacency)
        : mesh_(mesh), adjacency_(adjacency) {
        start_scores_ = Eigen::VectorXd::Zero(mesh.vertex_count());
        for (const auto& [edge, faces] : adjacency.edge_faces) {
            double c = edge_concavity(mesh, adjacency, edge);
            concavity_[edge] = c;
            start_scores_[edge.first] = std::max(start_scores_[edge.first], c);
            start_scores_[edge.second] = std::max(start_scores_[edge.second], c);
        }
    }

    Eigen::VectorXd score(const DecodeState& state) override {
        const int n = mesh_.vertex_count();
        Eigen::VectorXd logits = Eigen::VectorXd::Zero(n + kVertexCandidateOffset);

        if (state.at_chain_start()) {
            logits[kCandidateEoc] = kLogitFloor;
            logits[kCandidateEos] = kLogitFloor;
            for (int v = 0; v < n; ++v) {
                logits[v + kVertexCandidateOffset] = kStartWeight * start_scores_[v];
            }
            return logits;
        }

        int cur = *state.current_vertex;
        int edges_in_chain = state.chain_position - 1;
        int total_tokens = static_cast<int>(state.history.size());

        logits[kCandidateEoc] = kEocSlope * (edges_in_chain - kEocOnset);
        logits[kCandidateEos] = edges_in_chain == 0
                                    ? kLogitFloor
                                    : kEosSlope * (total_tokens - kEosOnset);

        Eigen::Vector3d cur_pos = mesh_.positions.row(cur);
        for (int nbr : adjacency_.neighbors[cur]) {
            double concave = concavity_.at(make_edge(cur, nbr));
            double continuity = 0.0;
            if (state.previous_vertex) {
                Eigen::Vector3d incoming =
                    (cur_pos - Eigen::Vector3d(mesh_.positions.row(*state.previous_vertex)))
                        .normalized();
                Eigen::Vector3d outgoing =
                    (Eigen::Vector3d(mesh_.positions.row(nbr)) - cur_pos).normalized();
                continuity = incoming.dot(outgoing);
            }
            logits[nbr + kVertexCandidateOffset] = kConcaveWeight * concave + kDirWeight * continuity;
        }
        return logits;
    }

private:
    static constexpr double kConcaveWeight = 4.0;
    static constexpr double kDirWeight = 1.0;
    static constexpr double kStartWeight = 4.0;
    static constexpr double kEocSlope = 0.35;
    static constexpr double kEocOnset = 10.0;
    static constexpr double kEosSlope = 0.4;
    static constexpr double kEosOnset = 25.0;

    const Mesh& mesh_;
    const AdjacencyTable& adjacency_;
    std::map<Edge, double> concavity_;
    Eigen::VectorXd start_scores_;
};

class ReplayScorer final : public Scorer {
public:
    ReplayScorer(TokenSequence target, int num_candidates)
        : target_(std::move(target)), num_candidates_(num_candidates) {}

    Eigen::VectorXd score(const DecodeState& state) override {
        size_t step = state.history.size();
        if (step >= target_.size()) throw_domain("replay target exhausted");
        Eigen::VectorXd logits = Eigen::VectorXd::Zero(num_candidates_);
        int id = candidate_id(target_.tokens[step]);
        if (id >= num_candidates_) throw_domain("replay target vertex outside candidate space");
        logits[id] = kReplayLogit;
        return logits;
    }

private:
    static constexpr double kReplayLogit = 100.0;
    TokenSequence target_;
    int num_candidates_;
};

} // namespace

std::unique_ptr<Scorer> heuristic_scorer(const Mesh& mesh, const AdjacencyTable& adjacency) {
    return std::make_unique<HeuristicScorer>(mesh, adjacency);
}

std::unique_ptr<Scorer> replay_scorer(TokenSequence target, int num_candidates) {
    return std::make_unique<ReplayScorer>(std::move(target), num_candidates);
}

namespace {

void dc_recurse(const Mesh& mesh, const AdjacencyTable& adjacency, const ScorerFactory& factory,
                const DecodeConfig& config, int min_faces, int max_depth, int depth,
                std::set<Edge>& used_edges, DecodeResult& out,
                const std::function<void(SeamChain&)>& to_parent) {
    auto scorer = factory(mesh, adjacency);

    std::set<Edge> local_cut;
    bool split_pending = false;
    DecodeResult local = run_decode(mesh, adjacency, *scorer, config,
                                    [&](const std::vector<int>& chain_verts) {
                                        for (size_t i = 0; i + 1 < chain_verts.size(); ++i) {
                                            local_cut.insert(make_edge(chain_verts[i], chain_verts[i + 1]));
                                        }
                                        if (local_cut.empty()) return true;
                                        std::vector<int> all(mesh.face_count());
                                        for (int f = 0; f < mesh.face_count(); ++f) all[f] = f;
                                        auto comps = connected_components(
                                            mesh, all, {local_cut.begin(), local_cut.end()});
                                        split_pending = comps.size() >= 2;
                                        return !split_pending;
                                    });

    out.truncated = out.truncated || local.truncated;

    // Merge this level's chains, mapped to parent indices; drop any chain
    // whose edges were already claimed so the union stays edge-disjoint.
    for (size_t i = 0; i < local.chains.chains.size(); ++i) {
        SeamChain chain = local.chains.chains[i];
        to_parent(chain);
        bool clash = false;
        for (const Edge& e : chain.edges()) clash = clash || used_edges.count(e) > 0;
        if (clash) {
            ++out.dropped_chains;
            continue;
        }
        for (const Edge& e : chain.edges()) used_edges.insert(e);
        out.chains.chains.push_back(std::move(chain));
        out.chain_log_probs.push_back(local.chain_log_probs[i]);
    }

    if (!split_pending) return;

    std::vector<int> all(mesh.face_count());
    for (int f = 0; f < mesh.face_count(); ++f) all[f] = f;
    auto comps = connected_components(mesh, all, {local_cut.begin(), local_cut.end()});

    int branch = 0;
    for (const Patch& comp : comps) {
        ++branch;
        if (static_cast<int>(comp.faces.size()) < min_faces) continue;
        if (depth + 1 > max_depth) {
            out.depth_capped = true;
            continue;
        }
        SubMesh sub = extract_submesh(mesh, comp.faces);
        AdjacencyTable sub_adj = build_adjacency(sub.mesh);
        DecodeConfig sub_config = config;
        sub_config.seed = splitmix64(config.seed ^ (0x9E3779B97F4A7C15ull * branch));
        std::function<void(SeamChain&)> lift_then_parent =
            [map = sub.vertex_map, &to_parent](SeamChain& chain) {
                for (int& v : chain.vertices) v = map[v];
                to_parent(chain);
            };
        dc_recurse(sub.mesh, sub_adj, factory, sub_config, min_faces, max_depth, depth + 1,
                   used_edges, out, lift_then_parent);
    }
}

} // namespace

DecodeResult divide_and_conquer_decode(const Mesh& mesh, const ScorerFactory& factory,
                                       const DecodeConfig& config, int min_faces,
                                       int max_depth) {
    DecodeResult out;
    std::set<Edge> used_edges;
    std::function<void(SeamChain&)> identity = [](SeamChain&) {};
    dc_recurse(mesh, build_adjacency(mesh), factory, config, min_faces, max_depth, 0,
               used_edges, out, identity);
    return out;
}

} // namespace seamforge
