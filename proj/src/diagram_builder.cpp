#include "knotcert/diagram_builder.hpp"

#include <array>

namespace knotcert {

std::uint32_t DiagramBuilder::add_crossing() {
    Node n;
    n.is_crossing = true;
    nodes_.push_back(n);
    std::uint32_t id = static_cast<std::uint32_t>(nodes_.size() - 1);
    crossing_ids_.push_back(id);
    return id;
}

DiagramBuilder::Port DiagramBuilder::add_anchor() {
    Node n;
    n.is_crossing = false;
    nodes_.push_back(n);
    return Port{static_cast<std::uint32_t>(nodes_.size() - 1), 0};
}

void DiagramBuilder::connect(Port x, Port y) {
    Node& nx = nodes_.at(x.node);
    Node& ny = nodes_.at(y.node);
    if (nx.peer[x.port] != -1 || ny.peer[y.port] != -1)
        throw Error("DiagramBuilder: port already wired");
    nx.peer[x.port] = static_cast<std::int64_t>(key(y));
    ny.peer[y.port] = static_cast<std::int64_t>(key(x));
}

KnotDiagram DiagramBuilder::orient() {
    // Every crossing has 4 wired ports, every anchor 2.
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        int ports = nodes_[i].is_crossing ? 4 : 2;
        for (int q = 0; q < ports; ++q)
            if (nodes_[i].peer[q] == -1) throw Error("DiagramBuilder: dangling port");
    }

    const std::size_t num_crossings = crossing_ids_.size();
    std::vector<bool> anchor_seen(nodes_.size(), false);

    KnotDiagram d;
    if (num_crossings == 0) {
        // Count pure anchor loops.
        std::uint32_t loops = 0;
        for (std::size_t i = 0; i < nodes_.size(); ++i) {
            if (nodes_[i].is_crossing || anchor_seen[i]) continue;
            ++loops;
            std::size_t cur = key(Port{static_cast<std::uint32_t>(i), 0});
            while (!anchor_seen[cur / 4]) {
                anchor_seen[cur / 4] = true;
                std::size_t exit = (cur / 4) * 4 + (1 - cur % 4);
                cur = static_cast<std::size_t>(nodes_[exit / 4].peer[exit % 4]);
            }
        }
        free_loops_ = loops;
        d.num_loops = loops;
        return d;
    }

    // Traverse the closed curve starting out of crossing 0, port 2 (so the
    // strand enters crossing 0 at port 0).
    const std::uint32_t two_n = static_cast<std::uint32_t>(2 * num_crossings);
    std::vector<std::uint32_t> label(nodes_.size() * 4, 0);
    std::vector<bool> entering(nodes_.size() * 4, false);

    std::uint32_t cur_label = 1;
    const std::size_t start_node = crossing_ids_[0];
    std::size_t exit_key = start_node * 4 + 2;
    while (true) {
        if (cur_label > two_n) throw Error("DiagramBuilder: traversal did not close");
        label[exit_key] = cur_label;
        // follow through anchors to the next crossing port
        std::size_t nxt = static_cast<std::size_t>(nodes_[exit_key / 4].peer[exit_key % 4]);
        while (!nodes_[nxt / 4].is_crossing) {
            anchor_seen[nxt / 4] = true;
            std::size_t other = (nxt / 4) * 4 + (1 - nxt % 4);
            nxt = static_cast<std::size_t>(nodes_[other / 4].peer[other % 4]);
        }
        label[nxt] = cur_label;
        entering[nxt] = true;
        if (nxt == start_node * 4 + 0) break;  // closed up
        exit_key = (nxt / 4) * 4 + (nxt % 4 + 2) % 4;
        ++cur_label;
    }
    if (cur_label != two_n)
        throw MultiComponentError("strands form more than one closed curve");

    // Unvisited anchors mean extra crossing-free loops.
    for (std::size_t i = 0; i < nodes_.size(); ++i)
        if (!nodes_[i].is_crossing && !anchor_seen[i])
            throw MultiComponentError("closure has extra crossing-free loops");

    for (std::uint32_t cid : crossing_ids_) {
        std::size_t base = static_cast<std::size_t>(cid) * 4;
        int u;
        if (entering[base + 0] && !entering[base + 2])
            u = 0;
        else if (entering[base + 2] && !entering[base + 0])
            u = 2;
        else
            throw Error("DiagramBuilder: inconsistent under-strand orientation");
        Crossing c;
        c.a = label[base + static_cast<std::size_t>(u)];
        c.b = label[base + static_cast<std::size_t>((u + 1) % 4)];
        c.c = label[base + static_cast<std::size_t>((u + 2) % 4)];
        c.d = label[base + static_cast<std::size_t>((u + 3) % 4)];
        d.crossings.push_back(c);
    }
    for (std::size_t i = 0; i < d.crossings.size(); ++i)
        d.crossings[i].sign = crossing_roles(d, i).sign;
    return d;
}

}  // namespace knotcert
