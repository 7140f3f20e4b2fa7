#pragma once
#include <string_view>
#include <vector>
namespace toriq {
// Bundled example inputs, byte-identical to the files under fixtures/.
struct Fixture {
    std::string_view name;
    std::string_view description;
    std::string_view text;
};

inline const std::vector<Fixture>& bundled_fixtures() {
    static const std::vector<Fixture> table = {
        {"hyperbolic",
         "punctured plane with the hyperbolic 1-torus t.(z,w) = (tz, t^-1 w)",
         R"JSON({
  "lattice_rank": 2,
  "maximal_cones": [[[1, 0]], [[0, 1]]],
  "sublattice": [[1, -1]],
  "map": {
    "matrix": [[1, 1]],
    "target": {"lattice_rank": 1, "maximal_cones": [[[1]]]}
  }
}
)JSON"},
        {"nobasechange",
         "1-torus acting on a smooth 3-fold whose quotient loses the base-change property",
         R"JSON({
  "lattice_rank": 3,
  "maximal_cones": [[[-1, 0, 0], [0, 1, 0], [1, 1, 1]], [[1, 0, 0], [0, 1, 0], [1, 1, 1]]],
  "sublattice": [[0, 0, 1]],
  "map": {
    "matrix": [[0, 1, 0]],
    "target": {"lattice_rank": 1, "maximal_cones": [[[1]]]}
  }
}
)JSON"},
        {"nobasechange_restricted",
         "the open piece of nobasechange over the punctured base, a plain separation example",
         R"JSON({
  "lattice_rank": 3,
  "maximal_cones": [[[-1, 0, 0]], [[1, 0, 0]]],
  "sublattice": [[0, 0, 1]]
}
)JSON"},
        {"sec5",
         "C* on (C^2 x T^2) u (T^2 x C^2): separated quotients must coarsen to C^3",
         R"JSON({
  "lattice_rank": 4,
  "maximal_cones": [[[1, 0, 0, 0], [0, 1, 0, 0]], [[0, 0, 1, 0], [0, 0, 0, 1]]],
  "sublattice": [[1, 1, 0, -1]],
  "map": {
    "matrix": [[1, 0, 0, 1], [0, 1, 0, 1], [0, 0, 1, 0]],
    "target": {"lattice_rank": 3, "maximal_cones": [[[1, 0, 0], [0, 1, 0], [0, 0, 1]]]}
  }
}
)JSON"},
        {"sec6",
         "C* on a smooth 4-fold: the toric quotient map is not surjective and misses a face orbit",
         R"JSON({
  "lattice_rank": 4,
  "maximal_cones": [
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
    [[1, 0, 0, 0], [2, -1, 0, 0], [0, 0, 1, 0]]
  ],
  "sublattice": [[-2, 0, 1, 1]],
  "map": {
    "matrix": [[1, 1, 1, 1], [0, -1, 0, 0], [0, 0, 1, -1]],
    "target": {
      "lattice_rank": 3,
      "maximal_cones": [[[1, -1, 0], [1, 0, 1], [1, 0, -1]], [[1, 1, 0], [1, 0, 1], [1, 0, -1]]]
    }
  }
}
)JSON"},
        {"sec6_target",
         "the rank-3 target fan of the sec6 quotient map, for validation and slice plots",
         R"JSON({
  "lattice_rank": 3,
  "maximal_cones": [[[1, -1, 0], [1, 0, 1], [1, 0, -1]], [[1, 1, 0], [1, 0, 1], [1, 0, -1]]]
}
)JSON"},
        {"sec7",
         "C* on a smooth 3-fold glued from two copies of C^3: separated quotient, deficient glueing",
         R"JSON({
  "lattice_rank": 3,
  "maximal_cones": [[[1, 0, 0], [1, -1, 0], [1, 1, 1]], [[1, 0, 0], [1, 1, 0], [1, -1, -1]]],
  "sublattice": [[0, 0, 1]],
  "map": {
    "matrix": [[1, 0, 0], [0, 1, 0]],
    "target": {"lattice_rank": 2, "maximal_cones": [[[1, 1], [1, -1]]]}
  }
}
)JSON"},
        {"doubled_line",
         "affine line with doubled origin as a two-chart system of fans, trivial subtorus",
         R"JSON({
  "lattice_rank": 1,
  "charts": [[[1]], [[1]]],
  "intersections": [{"i": 0, "j": 1, "cones": [[]]}],
  "sublattice": []
}
)JSON"},
    };
    return table;
}

inline const Fixture* find_fixture(std::string_view name) {
    std::string_view stem = name;
    if (stem.size() > 5 && stem.substr(stem.size() - 5) == ".json") stem.remove_suffix(5);
    auto slash = stem.rfind('/');
    if (slash != std::string_view::npos) stem.remove_prefix(slash + 1);
    for (const Fixture& f : bundled_fixtures())
        if (f.name == stem) return &f;
    return nullptr;
}

}  // namespace toriq
