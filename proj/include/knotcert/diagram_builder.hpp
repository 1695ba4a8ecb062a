#pragma once

#include <cstdint>
#include <vector>

#include "knotcert/knotio.hpp"

namespace knotcert {

// Assembles a PD diagram from crossings whose four ports are given in
// counterclockwise planar order with the under-strand on ports 0 and 2.
// Ports are wired together (possibly through pass-through anchors), then
// orient() traverses the curve, assigns sequential edge labels and emits
// oriented PD tuples. Used by the braid/plat constructions.
class DiagramBuilder {
public:
    struct Port {
        std::uint32_t node;  // crossing index or anchor id
        int port;            // 0..3 for crossings, 0 for anchors
    };

    // Returns the crossing index. Ports 0..3 must be counterclockwise with
    // the under-strand entering/leaving on ports 0 and 2.
    std::uint32_t add_crossing();
    // A pass-through point (used for braid closure arcs and plat caps).
    Port add_anchor();

    Port crossing_port(std::uint32_t crossing, int port) const { return Port{crossing, port}; }
    void connect(Port x, Port y);

    // Number of closed curves made only of anchors (crossing-free loops).
    // Valid after orient().
    std::uint32_t free_loops() const { return free_loops_; }

    // Traverse, orient and label; returns the diagram (crossings in
    // construction order). Throws MultiComponentError if the strands form
    // more than one closed curve.
    KnotDiagram orient();

private:
    struct Node {
        bool is_crossing;
        // For each port: the peer (node, port) wired to it, or -1.
        std::int64_t peer[4] = {-1, -1, -1, -1};
    };
    std::size_t key(Port p) const { return static_cast<std::size_t>(p.node) * 4 + p.port; }

    std::vector<Node> nodes_;
    std::vector<std::uint32_t> crossing_ids_;
    std::uint32_t free_loops_ = 0;
};

}  // namespace knotcert
