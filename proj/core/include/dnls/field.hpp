#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "dnls/errors.hpp"

namespace dnls {

/// Real-valued function on the vertices of one graph. The graph_id ties a
/// field to the graph instance it was created for; every operation checks it.
struct Field {
    std::vector<double> values;
    std::uint64_t graph_id = 0;

    int size() const { return static_cast<int>(values.size()); }
    double operator[](int v) const { return values[static_cast<std::size_t>(v)]; }
    double& operator[](int v) { return values[static_cast<std::size_t>(v)]; }
};

inline void ensure_finite(const Field& u, const char* what) {
    for (double x : u.values) {
        if (!std::isfinite(x)) throw error(std::string(what) + ": field contains a non-finite entry");
    }
}

} // namespace dnls
