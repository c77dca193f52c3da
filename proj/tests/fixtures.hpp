#pragma once

#include <string>

#include "shiftlab/graph.hpp"
#include "shiftlab/specfile.hpp"

inline std::string fixture_path(const std::string& name) {
    return std::string(FIXTURE_DIR) + "/" + name;
}

inline shiftlab::SpecFile load_fixture(const std::string& name) {
    return shiftlab::parse_spec_file(fixture_path(name));
}

inline shiftlab::MultiGraph fixture_graph(const std::string& name) {
    auto sf = load_fixture(name);
    if (sf.graph) return *sf.graph;
    return shiftlab::graph_from_one_step(sf.spec);
}
