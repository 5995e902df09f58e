#include "seamforge/order.hpp"

#include "seamforge/error.hpp"

#include <algorithm>
#include <set>

namespace seamforge {

namespace {

// Every loop edge must be interior to the patch: both incident mesh faces
// inside it. Edges touching the patch boundary disqualify the loop.
bool loop_internal_to_patch(const AdjacencyTable& adjacency, const std::set<int>& patch_faces,
                            const SeamChain& loop) {
    for (const Edge& e : loop.edges()) {
        auto it = adjacency.edge_faces.find(e);
        if (it == adjacency.edge_faces.end()) return false;
        const auto& fs = it->second;
        if (fs[1] < 0) return false;
        if (!patch_faces.count(fs[0]) || !patch_faces.count(fs[1])) return false;
    }
    return true;
}

struct SplitResult {
    std::vector<Patch> parts;
    double balance = 0.0;
};

SplitResult try_split(const Mesh& mesh, const Patch& patch, const SeamChain& loop) {
    SplitResult r;
    r.parts = connected_components(mesh, patch.faces, loop.edges());
    if (r.parts.size() == 2) {
        double a1 = r.parts[0].area, a2 = r.parts[1].area;
        r.balance = std::min(a1, a2) / std::max(a1, a2);
    }
    return r;
}

int leading_vertex(const SeamChain& c) {
    return c.vertices.empty() ? -1 : c.vertices.front();
}

// Decreasing 3D length, then smaller leading vertex, then lexicographic.
void sort_by_length(std::vector<SeamChain>& chains, const Mesh& mesh) {
    std::sort(chains.begin(), chains.end(), [&](const SeamChain& a, const SeamChain& b) {
        double la = a.length3d(mesh), lb = b.length3d(mesh);
        if (la != lb) return la > lb;
        if (leading_vertex(a) != leading_vertex(b)) return leading_vertex(a) < leading_vertex(b);
        return a.vertices < b.vertices;
    });
}

} // namespace

double balance_score(const Mesh& mesh, const Patch& patch, const SeamChain& loop) {
    if (!loop.is_loop || loop.vertices.size() < 4 ||
        loop.vertices.front() != loop.vertices.back()) {
        throw_domain("balance_score requires a loop chain");
    }
    AdjacencyTable adjacency = build_adjacency(mesh);
    std::set<int> patch_faces(patch.faces.begin(), patch.faces.end());
    if (!loop_internal_to_patch(adjacency, patch_faces, loop)) {
        throw_domain("loop is coincident with the patch boundary");
    }
    auto split = try_split(mesh, patch, loop);
    if (split.parts.size() != 2) {
        throw_domain("loop does not separate the patch into two components (got " +
                     std::to_string(split.parts.size()) + ")");
    }
    return split.balance;
}

OrderedChains canonical_order(const Mesh& mesh, const ChainSet& chains) {
    AdjacencyTable adjacency = build_adjacency(mesh);

    std::vector<SeamChain> loops, opens;
    for (const SeamChain& c : chains.chains) {
        (c.is_loop ? loops : opens).push_back(c);
    }

    std::vector<bool> used(loops.size(), false);

    Patch whole;
    whole.faces.resize(mesh.face_count());
    for (int f = 0; f < mesh.face_count(); ++f) whole.faces[f] = f;
    whole.area = patch_area(mesh, whole);

    std::vector<Patch> patches{whole};
    OrderedChains out;

    while (!patches.empty()) {
        // Largest patch; equal areas break on the smallest contained face.
        size_t best_patch = 0;
        for (size_t p = 1; p < patches.size(); ++p) {
            if (patches[p].area > patches[best_patch].area ||
                (patches[p].area == patches[best_patch].area &&
                 patches[p].faces.front() < patches[best_patch].faces.front())) {
                best_patch = p;
            }
        }
        const Patch patch = patches[best_patch];
        std::set<int> patch_faces(patch.faces.begin(), patch.faces.end());

        int best_loop = -1;
        SplitResult best_split;
        for (size_t i = 0; i < loops.size(); ++i) {
            if (used[i]) continue;
            if (!loop_internal_to_patch(adjacency, patch_faces, loops[i])) continue;
            auto split = try_split(mesh, patch, loops[i]);
            if (split.parts.size() != 2) continue;  // non-separating: deferred
            bool better = best_loop < 0 || split.balance > best_split.balance;
            if (!better && split.balance == best_split.balance) {
                int lv = leading_vertex(loops[i]);
                int bv = leading_vertex(loops[best_loop]);
                better = lv < bv || (lv == bv && loops[i].vertices < loops[best_loop].vertices);
            }
            if (better) {
                best_loop = static_cast<int>(i);
                best_split = std::move(split);
            }
        }

        if (best_loop < 0) {
            patches.erase(patches.begin() + static_cast<long>(best_patch));
            continue;
        }

        LoopProvenance prov;
        prov.sequence_index = static_cast<int>(out.sequence.size());
        prov.patch_area = patch.area;
        prov.sub_area_1 = best_split.parts[0].area;
        prov.sub_area_2 = best_split.parts[1].area;
        prov.balance = best_split.balance;
        out.provenance.push_back(prov);
        out.sequence.push_back(loops[best_loop]);
        used[best_loop] = true;

        patches.erase(patches.begin() + static_cast<long>(best_patch));
        patches.push_back(std::move(best_split.parts[0]));
        patches.push_back(std::move(best_split.parts[1]));
    }

    std::vector<SeamChain> leftover_loops;
    for (size_t i = 0; i < loops.size(); ++i) {
        if (!used[i]) leftover_loops.push_back(loops[i]);
    }
    sort_by_length(leftover_loops, mesh);
    for (auto& c : leftover_loops) out.sequence.push_back(std::move(c));

    sort_by_length(opens, mesh);
    for (auto& c : opens) out.sequence.push_back(std::move(c));

    return out;
}

} // namespace seamforge
