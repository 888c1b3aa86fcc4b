#include "leedivide/lee.hpp"

#include <map>

#include "leedivide/homology.hpp"
#include "leedivide/smith.hpp"

namespace leedivide {

RankCheck lee_class_rank_check(const LinkDiagram& D) {
    const RingDescriptor<Integer> ring = ring_z2();
    Cube cube(D);
    RankCheck out;
    out.expected = 1L << D.component_count();
    out.total_rank = total_rank(cube, ring);

    std::map<int, std::vector<SparseVec<Integer>>> by_degree;
    for (const Orientation& o : alternative_orientations(D)) {
        Chain<Integer> a = alpha_cycle(cube, o, ring);
        by_degree[a.degree].push_back(std::move(a.v));
    }
    for (const auto& [deg, cycles] : by_degree) {
        const HomologyPresentation<Integer> P = homology_at(cube, deg, ring, false);
        DenseMatrix<Integer> M;
        for (const auto& z : cycles) M.push_back(project_to_free(z, P));
        const std::size_t cols = P.free_rows.size();
        if (cols == 0) continue;
        out.independent_classes += static_cast<long>(smith_normal_form(M, M.size(), cols).rank);
    }
    out.ok = out.total_rank == out.expected && out.independent_classes == out.expected;
    return out;
}

}  // namespace leedivide
