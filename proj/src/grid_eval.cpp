#include "hermet/grid_eval.hpp"

#include <numbers>
#include <vector>

namespace hermet {

namespace {

struct AxisBox {
    int kmin = 0;
    int kmax = 0;
    int size() const { return kmax - kmin + 1; }
};

} // namespace

void for_each_grid_value(const FourierField& f, int grid_per_axis,
                         const std::function<void(std::size_t, cplx)>& fn, double offset) {
    const int axes = 2 * f.dim();
    const int n_grid = grid_per_axis;
    if (n_grid < 1) throw InvalidInput("grid resolution must be positive");

    std::size_t total = 1;
    for (int a = 0; a < axes; ++a) total *= static_cast<std::size_t>(n_grid);

    if (f.modes().empty()) {
        for (std::size_t i = 0; i < total; ++i) fn(i, cplx(0.0, 0.0));
        return;
    }

    std::vector<AxisBox> box(axes);
    for (int a = 0; a < axes; ++a) {
        box[a].kmin = f.modes().front().first.k[a];
        box[a].kmax = box[a].kmin;
    }
    for (const auto& [k, amp] : f.modes())
        for (int a = 0; a < axes; ++a) {
            box[a].kmin = std::min(box[a].kmin, int(k.k[a]));
            box[a].kmax = std::max(box[a].kmax, int(k.k[a]));
        }

    // Dense frequency tensor over the bounding box, row-major in axis order.
    std::vector<std::size_t> dims(axes);
    std::size_t dense_size = 1;
    for (int a = 0; a < axes; ++a) {
        dims[a] = static_cast<std::size_t>(box[a].size());
        dense_size *= dims[a];
    }
    std::vector<cplx> cur(dense_size, cplx(0.0, 0.0));
    for (const auto& [k, amp] : f.modes()) {
        std::size_t idx = 0;
        for (int a = 0; a < axes; ++a)
            idx = idx * dims[a] + static_cast<std::size_t>(int(k.k[a]) - box[a].kmin);
        cur[idx] += amp;
    }

    const double two_pi = 2.0 * std::numbers::pi;
    auto phase_table = [&](int a) {
        std::vector<cplx> table(static_cast<std::size_t>(n_grid) * dims[a]);
        for (int t = 0; t < n_grid; ++t) {
            const double x = (t + offset) / n_grid;
            for (std::size_t s = 0; s < dims[a]; ++s) {
                const int k = box[a].kmin + static_cast<int>(s);
                table[static_cast<std::size_t>(t) * dims[a] + s] = std::polar(1.0, two_pi * k * x);
            }
        }
        return table;
    };

    // Transform axes 0..axes-2 into grid space; dims[a] becomes n_grid.
    for (int a = 0; a + 1 < axes; ++a) {
        const auto table = phase_table(a);
        std::size_t outer = 1;
        for (int b = 0; b < a; ++b) outer *= static_cast<std::size_t>(n_grid);
        std::size_t inner = 1;
        for (int b = a + 1; b < axes; ++b) inner *= dims[b];
        const std::size_t in_axis = dims[a];
        std::vector<cplx> next(outer * static_cast<std::size_t>(n_grid) * inner, cplx(0.0, 0.0));
        for (std::size_t o = 0; o < outer; ++o) {
            const cplx* in_block = cur.data() + o * in_axis * inner;
            cplx* out_block = next.data() + o * static_cast<std::size_t>(n_grid) * inner;
            for (int t = 0; t < n_grid; ++t) {
                const cplx* ph = table.data() + static_cast<std::size_t>(t) * in_axis;
                cplx* out_line = out_block + static_cast<std::size_t>(t) * inner;
                for (std::size_t s = 0; s < in_axis; ++s) {
                    const cplx w = ph[s];
                    const cplx* in_line = in_block + s * inner;
                    for (std::size_t i = 0; i < inner; ++i) out_line[i] += w * in_line[i];
                }
            }
        }
        cur.swap(next);
        dims[a] = static_cast<std::size_t>(n_grid);
    }

    // Stream the last axis.
    const int last = axes - 1;
    const auto table = phase_table(last);
    const std::size_t in_axis = dims[last];
    std::size_t lines = 1;
    for (int b = 0; b < last; ++b) lines *= dims[b];
    std::size_t out_idx = 0;
    for (std::size_t line = 0; line < lines; ++line) {
        const cplx* in_line = cur.data() + line * in_axis;
        for (int t = 0; t < n_grid; ++t) {
            const cplx* ph = table.data() + static_cast<std::size_t>(t) * in_axis;
            cplx v(0.0, 0.0);
            for (std::size_t s = 0; s < in_axis; ++s) v += ph[s] * in_line[s];
            fn(out_idx++, v);
        }
    }
}

} // namespace hermet
