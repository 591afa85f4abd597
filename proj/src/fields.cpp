#include "avlab/fields.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace avlab {

ScalarField make_field(std::shared_ptr<const GridDomain> dom) {
    ScalarField u;
    u.values = Vec::Zero(dom->node_count());
    u.dom = std::move(dom);
    return u;
}

ScalarField field_from(std::shared_ptr<const GridDomain> dom,
                       const std::function<double(const Vec&)>& fn) {
    ScalarField u = make_field(dom);
    const Index n = u.dom->node_count();
    for (Index i = 0; i < n; ++i) {
        if (!u.dom->inside_mask[static_cast<std::size_t>(i)]) continue;
        const double v = fn(u.dom->node_position(i));
        if (!std::isfinite(v)) throw NonFinite("field_from: sampled value is not finite");
        u.values[i] = v;
    }
    return u;
}

void apply_mask(ScalarField& u) {
    const Index n = u.dom->node_count();
    for (Index i = 0; i < n; ++i)
        if (!u.dom->inside_mask[static_cast<std::size_t>(i)]) u.values[i] = 0.0;
}

CellGradients gradients(const ScalarField& u) {
    const GridDomain& g = *u.dom;
    const Index nc = g.interior_cell_count();
    const int corners = 1 << g.dim;
    CellGradients cg;
    cg.dom = u.dom;
    cg.g.resize(g.dim, nc);
    const double denom = std::pow(2.0, g.dim - 1) * g.h;
    for (Index c = 0; c < nc; ++c) {
        for (int d = 0; d < g.dim; ++d) {
            double s = 0.0;
            for (int k = 0; k < corners; ++k) {
                const double v = u.values[g.cell_corners(k, c)];
                s += ((k >> d) & 1) ? v : -v;
            }
            cg.g(d, c) = s / denom;
        }
    }
    return cg;
}

Vec cell_means(const ScalarField& u) {
    const GridDomain& g = *u.dom;
    const Index nc = g.interior_cell_count();
    const int corners = 1 << g.dim;
    Vec m(nc);
    const double inv = 1.0 / corners;
    for (Index c = 0; c < nc; ++c) {
        double s = 0.0;
        for (int k = 0; k < corners; ++k) s += u.values[g.cell_corners(k, c)];
        m[c] = s * inv;
    }
    return m;
}

double lq_norm(const ScalarField& u, double q) {
    if (q < 1.0) throw OutOfRange("lq_norm: q must be >= 1");
    // |u| is averaged nodewise, so the norm only sees |values| and
    // lq_norm(|u|, q) = lq_norm(u, q) holds bit-exactly
    Eigen::ArrayXd m = cell_means(abs_field(u)).array();
    pow_abs_inplace(m, q);
    const double s = u.dom->cell_volume * pairwise_sum(m);
    return std::pow(s, 1.0 / q);
}

std::pair<ScalarField, ScalarField> truncate(const ScalarField& u, double level) {
    if (!(level > 0.0)) throw OutOfRange("truncate: level must be positive");
    ScalarField t = u, r = u;
    t.values = u.values.cwiseMax(-level).cwiseMin(level);
    r.values = u.values - t.values;
    return {std::move(t), std::move(r)};
}

ScalarField abs_field(const ScalarField& u) {
    ScalarField a = u;
    a.values = u.values.cwiseAbs();
    return a;
}

double interpolate(const ScalarField& u, const Vec& x) {
    const GridDomain& g = *u.dom;
    std::array<Index, 3> i0 = {0, 0, 0};
    std::array<double, 3> t = {0.0, 0.0, 0.0};
    for (int d = 0; d < g.dim; ++d) {
        const double f = (x[d] - g.origin[d]) / g.h;
        const Index i = static_cast<Index>(std::floor(f));
        if (i < 0 || i >= g.shape[d] - 1) return 0.0;
        i0[d] = i;
        t[d] = f - static_cast<double>(i);
    }
    const int corners = 1 << g.dim;
    double v = 0.0;
    for (int k = 0; k < corners; ++k) {
        double w = 1.0;
        std::array<Index, 3> idx = i0;
        for (int d = 0; d < g.dim; ++d) {
            if ((k >> d) & 1) {
                w *= t[d];
                idx[d] += 1;
            } else {
                w *= 1.0 - t[d];
            }
        }
        v += w * u.values[g.flat_index(idx[0], idx[1], g.dim == 3 ? idx[2] : 0)];
    }
    return v;
}

ScalarField pullback(const ScalarField& u, const Mat& T,
                     std::shared_ptr<const GridDomain> target) {
    if (T.rows() != u.dom->dim || T.cols() != u.dom->dim)
        throw GridMismatch("pullback: matrix dimension mismatch");
    if (std::abs(T.determinant()) < 1e-12) throw SingularMatrix("pullback: matrix is singular");
    ScalarField v = make_field(target);
    const Index n = target->node_count();
    for (Index i = 0; i < n; ++i) {
        if (!target->inside_mask[static_cast<std::size_t>(i)]) continue;
        v.values[i] = interpolate(u, T * target->node_position(i));
    }
    return v;
}

ScalarField random_smooth_field(std::shared_ptr<const GridDomain> dom, std::uint64_t seed,
                                int sweeps) {
    ScalarField u = make_field(dom);
    const GridDomain& g = *u.dom;

    // splitmix64 stream + Box-Muller keeps the values identical across
    // standard libraries
    std::uint64_t state = seed ^ 0x9e3779b97f4a7c15ull;
    auto next_bits = [&state]() {
        state += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    };
    auto uniform = [&next_bits]() {
        return (static_cast<double>(next_bits() >> 11) + 0.5) * 0x1.0p-53;
    };

    const Index n = g.node_count();
    for (Index i = 0; i < n; ++i) {
        if (!g.inside_mask[static_cast<std::size_t>(i)]) continue;
        const double u1 = uniform(), u2 = uniform();
        u.values[i] = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    Vec next(n);
    for (int sweep = 0; sweep < sweeps; ++sweep) {
        next.setZero();
        for (Index ix = 1; ix + 1 < g.shape[0]; ++ix)
            for (Index iy = 1; iy + 1 < g.shape[1]; ++iy)
                for (Index iz = g.dim == 3 ? 1 : 0; iz < (g.dim == 3 ? g.shape[2] - 1 : 1); ++iz) {
                    const Index c = g.flat_index(ix, iy, iz);
                    if (!g.inside_mask[static_cast<std::size_t>(c)]) continue;
                    double nb = u.values[g.flat_index(ix - 1, iy, iz)] +
                                u.values[g.flat_index(ix + 1, iy, iz)] +
                                u.values[g.flat_index(ix, iy - 1, iz)] +
                                u.values[g.flat_index(ix, iy + 1, iz)];
                    if (g.dim == 3)
                        nb += u.values[g.flat_index(ix, iy, iz - 1)] +
                              u.values[g.flat_index(ix, iy, iz + 1)];
                    const double deg = 2.0 * g.dim;
                    next[c] = 0.5 * (u.values[c] + nb / deg);
                }
        u.values.swap(next);
    }
    const double m = u.max_abs();
    if (m > 0.0) u.values /= m;
    return u;
}

RadialProfile radial_profile(const ScalarField& u, const Vec& center,
                             double max_radius_fraction) {
    const GridDomain& g = *u.dom;
    const double umax = u.max_abs();
    if (umax == 0.0) throw NotRadial("radial_profile: zero field");

    double rmax = 0.0;
    const Index n = g.node_count();
    for (Index i = 0; i < n; ++i)
        if (g.inside_mask[static_cast<std::size_t>(i)])
            rmax = std::max(rmax, (g.node_position(i) - center).norm());
    const double rcut = max_radius_fraction * rmax;

    const double bin = g.h;
    const int nbins = static_cast<int>(std::floor(rcut / bin)) + 1;
    std::vector<double> sum(nbins, 0.0);
    std::vector<int> cnt(nbins, 0);
    for (Index i = 0; i < n; ++i) {
        if (!g.inside_mask[static_cast<std::size_t>(i)]) continue;
        const double r = (g.node_position(i) - center).norm();
        if (r > rcut) continue;
        const int b = static_cast<int>(r / bin);
        if (b >= nbins) continue;
        sum[b] += u.values[i];
        ++cnt[b];
    }

    RadialProfile prof;
    std::vector<double> rs, ms;
    for (int b = 0; b < nbins; ++b) {
        if (cnt[b] < 1) continue;
        rs.push_back((b + 0.5) * bin);
        ms.push_back(sum[b] / cnt[b]);
    }
    prof.radius = Eigen::Map<const Vec>(rs.data(), static_cast<Index>(rs.size()));
    prof.mean = Eigen::Map<const Vec>(ms.data(), static_cast<Index>(ms.size()));

    // scatter = deviation from the ring-mean profile interpolated at each
    // node radius, which separates asymmetry from the radial trend
    auto profile_at = [&](double r) {
        if (rs.empty()) return 0.0;
        if (r <= rs.front()) return ms.front();
        if (r >= rs.back()) return ms.back();
        const auto it = std::upper_bound(rs.begin(), rs.end(), r);
        const std::size_t k = static_cast<std::size_t>(it - rs.begin());
        const double t = (r - rs[k - 1]) / (rs[k] - rs[k - 1]);
        return (1.0 - t) * ms[k - 1] + t * ms[k];
    };
    double dev2 = 0.0, devmax = 0.0;
    Index used = 0;
    for (Index i = 0; i < n; ++i) {
        if (!g.inside_mask[static_cast<std::size_t>(i)]) continue;
        const double r = (g.node_position(i) - center).norm();
        if (r > rcut) continue;
        const double res = u.values[i] - profile_at(r);
        dev2 += res * res;
        devmax = std::max(devmax, std::abs(res));
        ++used;
    }
    prof.scatter_rms = std::sqrt(dev2 / std::max<Index>(1, used)) / umax;
    prof.scatter_max = devmax / umax;
    return prof;
}

}  // namespace avlab
