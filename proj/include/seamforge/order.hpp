#pragma once

#include "seamforge/mesh.hpp"
#include "seamforge/seam.hpp"

#include <vector>

namespace seamforge {

/// Record of one loop split performed by canonical_order.
struct LoopProvenance {
    int sequence_index = 0;   // position of the loop in the output sequence
    double patch_area = 0.0;  // patch area before the split
    double sub_area_1 = 0.0;  // larger-first not guaranteed; order = component order
    double sub_area_2 = 0.0;
    double balance = 0.0;     // min/max of the sub areas
};

struct OrderedChains {
    std::vector<SeamChain> sequence;
    std::vector<LoopProvenance> provenance;
};

/// min(A1, A2) / max(A1, A2) for the two sub-patches obtained by cutting
/// `patch` along `loop`. Throws if the loop is not strictly interior to the
/// patch (boundary-coincident) or does not separate it into two components.
double balance_score(const Mesh& mesh, const Patch& patch, const SeamChain& loop);

/// Loops-first, balance-first, large-patch-first serialization. Separating
/// loops come first in split order; loops that never separate a patch
/// follow, sorted by decreasing 3D length; open chains close the sequence,
/// also by decreasing 3D length. Ties break on the smaller leading vertex.
OrderedChains canonical_order(const Mesh& mesh, const ChainSet& chains);

} // namespace seamforge
