#ifndef FRECTIFY_NUMERICS_STENCIL_HPP
#define FRECTIFY_NUMERICS_STENCIL_HPP

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace frectify::numerics {

/// Finite-difference weights for the `order`-th derivative at `x0` from the
/// given nodes (Fornberg's recursion). Returned weights apply to function
/// values at `nodes` in order.
template <typename Scalar>
std::vector<Scalar> fornberg_weights(Scalar x0, const std::vector<Scalar>& nodes, int order)
{
    const int n = static_cast<int>(nodes.size());
    if (order < 0 || order >= n)
        throw std::invalid_argument("fornberg_weights: need more nodes than the derivative order");

    // c[j][k]: weight of node j for derivative k.
    std::vector<std::vector<Scalar>> c(n, std::vector<Scalar>(order + 1, Scalar(0)));
    Scalar c1 = 1;
    Scalar c4 = nodes[0] - x0;
    c[0][0] = 1;
    for (int i = 1; i < n; ++i) {
        const int mn = i < order ? i : order;
        Scalar c2 = 1;
        const Scalar c5 = c4;
        c4 = nodes[i] - x0;
        for (int j = 0; j < i; ++j) {
            const Scalar c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (int k = mn; k >= 1; --k)
                c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    std::vector<Scalar> w(n);
    for (int j = 0; j < n; ++j)
        w[j] = c[j][order];
    return w;
}

/// Stencil widths that keep every derivative order at fourth-order accuracy:
/// symmetric stencils gain an order from cancellation, one-sided ones do not.
constexpr int central_width(int order) { return order <= 2 ? 5 : 7; }
constexpr int one_sided_width(int order) { return order + 4; }

/// Derivative of uniformly spaced samples (spacing h), fourth order at every
/// node: central stencils in the interior, shifted windows near the ends.
template <typename Value, typename Scalar>
std::vector<Value> differentiate_uniform(const std::vector<Value>& y, Scalar h, int order)
{
    const int n = static_cast<int>(y.size());
    const int wc = central_width(order);
    const int wb = one_sided_width(order);
    if (n < wb || n < wc)
        throw std::invalid_argument("differentiate_uniform: too few samples for the stencil");

    const int half = wc / 2;
    const Scalar scale = std::pow(h, -order);

    auto integer_nodes = [](int first, int width) {
        std::vector<Scalar> nodes(width);
        for (int j = 0; j < width; ++j)
            nodes[j] = Scalar(first + j);
        return nodes;
    };

    std::vector<Scalar> central = fornberg_weights(Scalar(0), integer_nodes(-half, wc), order);
    // Boundary windows: node i (i < half) uses samples [0, wb); mirrored at the end.
    std::vector<std::vector<Scalar>> head(half), tail(half);
    for (int i = 0; i < half; ++i) {
        head[i] = fornberg_weights(Scalar(i), integer_nodes(0, wb), order);
        tail[i] = fornberg_weights(Scalar(wb - 1 - i), integer_nodes(0, wb), order);
    }

    std::vector<Value> out(n);
    for (int i = 0; i < n; ++i) {
        const std::vector<Scalar>* w = nullptr;
        int first = 0;
        if (i < half) {
            w = &head[i];
            first = 0;
        } else if (i >= n - half) {
            w = &tail[n - 1 - i];
            first = n - wb;
        } else {
            w = &central;
            first = i - half;
        }
        Value acc = (*w)[0] * y[first];
        for (std::size_t j = 1; j < w->size(); ++j)
            acc += (*w)[j] * y[first + static_cast<int>(j)];
        out[i] = scale * acc;
    }
    return out;
}

} // namespace frectify::numerics

#endif // FRECTIFY_NUMERICS_STENCIL_HPP
