#include "avlab/geometry.hpp"

#include "avlab/constants.hpp"

#include <cmath>

namespace avlab {

namespace {

bool point_in_polygon(const std::vector<Eigen::Vector2d>& v, double x, double y) {
    // even-odd ray casting
    bool in = false;
    const std::size_t n = v.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const bool crosses = (v[i].y() > y) != (v[j].y() > y);
        if (crosses &&
            x < (v[j].x() - v[i].x()) * (y - v[i].y()) / (v[j].y() - v[i].y()) + v[i].x())
            in = !in;
    }
    return in;
}

double polygon_area(const std::vector<Eigen::Vector2d>& v) {
    double a = 0.0;
    const std::size_t n = v.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++)
        a += v[j].x() * v[i].y() - v[i].x() * v[j].y();
    return 0.5 * std::abs(a);
}

}  // namespace

DomainSpec DomainSpec::rectangle(const Vec& center, const Vec& half_axes) {
    DomainSpec s;
    s.kind = Kind::Rectangle;
    s.dim = static_cast<int>(center.size());
    s.center = center;
    s.half_axes = half_axes;
    return s;
}

DomainSpec DomainSpec::ball(const Vec& center, double radius) {
    DomainSpec s;
    s.kind = Kind::Ball;
    s.dim = static_cast<int>(center.size());
    s.center = center;
    s.half_axes = Vec::Constant(1, radius);
    return s;
}

DomainSpec DomainSpec::ellipse(const Vec& center, const Vec& half_axes) {
    DomainSpec s;
    s.kind = Kind::Ellipse;
    s.dim = static_cast<int>(center.size());
    s.center = center;
    s.half_axes = half_axes;
    return s;
}

DomainSpec DomainSpec::polygon(std::vector<Eigen::Vector2d> vertices) {
    DomainSpec s;
    s.kind = Kind::Polygon;
    s.dim = 2;
    s.vertices = std::move(vertices);
    return s;
}

void DomainSpec::validate() const {
    if (dim != 2 && dim != 3) throw ValidationError("domain: dimension must be 2 or 3");
    switch (kind) {
        case Kind::Rectangle:
        case Kind::Ellipse:
            if (center.size() != dim || half_axes.size() != dim)
                throw ValidationError("domain: center/half_axes size mismatch");
            if ((half_axes.array() < 0.0).any())
                throw ValidationError("domain: half axes must be nonnegative");
            break;
        case Kind::Ball:
            if (center.size() != dim) throw ValidationError("domain: center size mismatch");
            if (half_axes.size() != 1 || half_axes[0] < 0.0)
                throw ValidationError("domain: radius must be nonnegative");
            break;
        case Kind::Polygon:
            if (dim != 2) throw ValidationError("domain: polygon is 2D only");
            if (vertices.size() < 3) throw ValidationError("domain: polygon needs >= 3 vertices");
            for (std::size_t i = 0, j = vertices.size() - 1; i < vertices.size(); j = i++)
                if ((vertices[i] - vertices[j]).norm() == 0.0)
                    throw ValidationError("domain: polygon has a zero-length edge");
            break;
    }
}

bool DomainSpec::inside(const Vec& x) const {
    switch (kind) {
        case Kind::Rectangle:
            return ((x - center).array().abs() < half_axes.array()).all();
        case Kind::Ball:
            return (x - center).norm() < half_axes[0];
        case Kind::Ellipse: {
            double s = 0.0;
            for (int d = 0; d < dim; ++d) {
                if (half_axes[d] == 0.0) return false;
                const double t = (x[d] - center[d]) / half_axes[d];
                s += t * t;
            }
            return s < 1.0;
        }
        case Kind::Polygon:
            return point_in_polygon(vertices, x[0], x[1]);
    }
    return false;
}

void DomainSpec::bounding_box(Vec& lo, Vec& hi) const {
    if (kind == Kind::Polygon) {
        lo = Vec::Constant(2, vertices[0].x());
        hi = lo;
        lo[1] = hi[1] = vertices[0].y();
        for (const auto& v : vertices) {
            lo[0] = std::min(lo[0], v.x());
            lo[1] = std::min(lo[1], v.y());
            hi[0] = std::max(hi[0], v.x());
            hi[1] = std::max(hi[1], v.y());
        }
        return;
    }
    const Vec a = kind == Kind::Ball ? Vec::Constant(dim, half_axes[0]) : half_axes;
    lo = center - a;
    hi = center + a;
}

double DomainSpec::volume() const {
    switch (kind) {
        case Kind::Rectangle:
            return std::pow(2.0, dim) * half_axes.prod();
        case Kind::Ball:
            return omega(dim) * std::pow(half_axes[0], dim);
        case Kind::Ellipse:
            return omega(dim) * half_axes.prod();
        case Kind::Polygon:
            return polygon_area(vertices);
    }
    return 0.0;
}

Vec GridDomain::node_position(Index flat) const {
    const Index iz = flat % shape[2];
    const Index iy = (flat / shape[2]) % shape[1];
    const Index ix = flat / (shape[1] * shape[2]);
    Vec x(dim);
    x[0] = origin[0] + h * static_cast<double>(ix);
    x[1] = origin[1] + h * static_cast<double>(iy);
    if (dim == 3) x[2] = origin[2] + h * static_cast<double>(iz);
    return x;
}

bool GridDomain::covers(const Vec& x) const {
    std::array<Index, 3> ic = {0, 0, 0};
    for (int d = 0; d < dim; ++d) {
        const double f = (x[d] - origin[d]) / h;
        ic[d] = static_cast<Index>(std::floor(f));
        if (ic[d] < 0 || ic[d] >= shape[d] - 1) return false;
    }
    const Index cy = shape[1] - 1;
    const Index cz = dim == 3 ? shape[2] - 1 : 1;
    return cell_inside[(ic[0] * cy + ic[1]) * cz + ic[2]] != 0;
}

namespace {

std::shared_ptr<const GridDomain> build_masked(int dim, const Vec& lo, const Vec& hi, double h,
                                               std::function<bool(const Vec&)> member) {
    auto g = std::make_shared<GridDomain>();
    g->dim = dim;
    g->h = h;
    g->origin = lo.array() - 2.0 * h;
    for (int d = 0; d < dim; ++d)
        g->shape[d] = static_cast<Index>(std::ceil((hi[d] - lo[d] + 4.0 * h) / h)) + 1;
    if (dim == 2) g->shape[2] = 1;
    g->cell_volume = std::pow(h, dim);

    const Index nnodes = g->node_count();
    g->inside_mask.assign(static_cast<std::size_t>(nnodes), 0);
    Index interior_nodes = 0;
    Vec x(dim);
    for (Index ix = 0; ix < g->shape[0]; ++ix)
        for (Index iy = 0; iy < g->shape[1]; ++iy)
            for (Index iz = 0; iz < g->shape[2]; ++iz) {
                x[0] = g->origin[0] + h * static_cast<double>(ix);
                x[1] = g->origin[1] + h * static_cast<double>(iy);
                if (dim == 3) x[2] = g->origin[2] + h * static_cast<double>(iz);
                if (member(x)) {
                    g->inside_mask[static_cast<std::size_t>(g->flat_index(ix, iy, iz))] = 1;
                    ++interior_nodes;
                }
            }
    if (interior_nodes == 0) throw EmptyDomain("build_grid: no node strictly inside the domain");

    const Index cx = g->shape[0] - 1;
    const Index cy = g->shape[1] - 1;
    const Index cz = dim == 3 ? g->shape[2] - 1 : 1;
    g->cell_inside.assign(static_cast<std::size_t>(cx * cy * cz), 0);

    std::vector<Index> cells;
    for (Index ix = 0; ix < cx; ++ix)
        for (Index iy = 0; iy < cy; ++iy)
            for (Index iz = 0; iz < cz; ++iz) {
                x[0] = g->origin[0] + h * (static_cast<double>(ix) + 0.5);
                x[1] = g->origin[1] + h * (static_cast<double>(iy) + 0.5);
                if (dim == 3) x[2] = g->origin[2] + h * (static_cast<double>(iz) + 0.5);
                if (member(x)) {
                    g->cell_inside[static_cast<std::size_t>((ix * cy + iy) * cz + iz)] = 1;
                    cells.push_back((ix * cy + iy) * cz + iz);
                }
            }

    const Index ncells = static_cast<Index>(cells.size());
    const int corners = 1 << dim;
    g->cell_centroids.resize(dim, ncells);
    g->cell_corners.resize(corners, ncells);
    for (Index c = 0; c < ncells; ++c) {
        const Index flat = cells[static_cast<std::size_t>(c)];
        const Index iz = flat % cz;
        const Index iy = (flat / cz) % cy;
        const Index ix = flat / (cy * cz);
        g->cell_centroids(0, c) = g->origin[0] + h * (static_cast<double>(ix) + 0.5);
        g->cell_centroids(1, c) = g->origin[1] + h * (static_cast<double>(iy) + 0.5);
        if (dim == 3) g->cell_centroids(2, c) = g->origin[2] + h * (static_cast<double>(iz) + 0.5);
        for (int k = 0; k < corners; ++k) {
            const Index jx = ix + ((k >> 0) & 1);
            const Index jy = iy + ((k >> 1) & 1);
            const Index jz = dim == 3 ? iz + ((k >> 2) & 1) : 0;
            g->cell_corners(k, c) = static_cast<int>(g->flat_index(jx, jy, jz));
        }
    }
    g->membership = std::move(member);
    return g;
}

}  // namespace

std::shared_ptr<const GridDomain> build_grid(const DomainSpec& spec, double h) {
    spec.validate();
    if (!(h > 0.0)) throw ValidationError("build_grid: spacing must be positive");
    Vec lo, hi;
    spec.bounding_box(lo, hi);
    DomainSpec copy = spec;
    return build_masked(spec.dim, lo, hi, h, [copy](const Vec& x) { return copy.inside(x); });
}

std::shared_ptr<const GridDomain> transform_domain(const GridDomain& dom, const Mat& T) {
    if (T.rows() != dom.dim || T.cols() != dom.dim)
        throw GridMismatch("transform_domain: matrix dimension mismatch");
    if (std::abs(T.determinant()) < 1e-12)
        throw SingularMatrix("transform_domain: matrix is singular");

    const Mat Tinv = T.inverse();
    // bounding box of T^{-1}(node bbox)
    Vec lo = Vec::Constant(dom.dim, std::numeric_limits<double>::infinity());
    Vec hi = -lo;
    const int corners = 1 << dom.dim;
    for (int k = 0; k < corners; ++k) {
        Vec c(dom.dim);
        for (int d = 0; d < dom.dim; ++d) {
            const double span = dom.h * static_cast<double>(dom.shape[d] - 1);
            c[d] = dom.origin[d] + (((k >> d) & 1) ? span : 0.0);
        }
        const Vec y = Tinv * c;
        lo = lo.cwiseMin(y);
        hi = hi.cwiseMax(y);
    }

    std::function<bool(const Vec&)> member;
    if (dom.membership) {
        auto inner = dom.membership;
        Mat Tc = T;
        member = [inner, Tc](const Vec& x) { return inner(Tc * x); };
    } else {
        GridDomain src = dom;  // value copy keeps the indicator alive
        Mat Tc = T;
        member = [src, Tc](const Vec& x) { return src.covers(Tc * x); };
    }
    return build_masked(dom.dim, lo, hi, dom.h, std::move(member));
}

namespace {

bool star_test(const Vec& x, const Vec& nu, const Vec& center) {
    return (x - center).dot(nu) > 0.0;
}

}  // namespace

bool is_star_shaped(const DomainSpec& spec, const Vec& center) {
    spec.validate();
    if (center.size() != spec.dim) throw ValidationError("is_star_shaped: center size mismatch");

    switch (spec.kind) {
        case DomainSpec::Kind::Rectangle: {
            const int k = spec.dim == 2 ? 64 : 12;  // samples per tangential axis
            std::vector<int> others;
            for (int d = 0; d < spec.dim; ++d)
                for (int side = -1; side <= 1; side += 2) {
                    others.clear();
                    for (int e = 0; e < spec.dim; ++e)
                        if (e != d) others.push_back(e);
                    const int ns = spec.dim == 2 ? k : k * k;
                    for (int s = 0; s < ns; ++s) {
                        Vec x = spec.center;
                        x[d] += side * spec.half_axes[d];
                        const double t0 = 2.0 * (s % k + 0.5) / k - 1.0;
                        x[others[0]] += 0.999 * t0 * spec.half_axes[others[0]];
                        if (others.size() == 2) {
                            const double t1 = 2.0 * (s / k + 0.5) / k - 1.0;
                            x[others[1]] += 0.999 * t1 * spec.half_axes[others[1]];
                        }
                        Vec nu = Vec::Zero(spec.dim);
                        nu[d] = side;
                        if (!star_test(x, nu, center)) return false;
                    }
                }
            return true;
        }
        case DomainSpec::Kind::Ball:
        case DomainSpec::Kind::Ellipse: {
            const Vec a = spec.kind == DomainSpec::Kind::Ball
                              ? Vec::Constant(spec.dim, spec.half_axes[0])
                              : spec.half_axes;
            if ((a.array() <= 0.0).any())
                throw ValidationError("is_star_shaped: degenerate axes");
            const int nth = spec.dim == 2 ? 512 : 48;
            const int nph = spec.dim == 2 ? 1 : 96;
            for (int i = 0; i < nth; ++i)
                for (int j = 0; j < nph; ++j) {
                    Vec d(spec.dim);
                    if (spec.dim == 2) {
                        const double th = 2.0 * M_PI * i / nth;
                        d << std::cos(th), std::sin(th);
                    } else {
                        const double th = M_PI * (i + 0.5) / nth;
                        const double ph = 2.0 * M_PI * j / nph;
                        d << std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th);
                    }
                    Vec x = spec.center + (a.array() * d.array()).matrix();
                    Vec nu(spec.dim);
                    for (int e = 0; e < spec.dim; ++e) nu[e] = d[e] / a[e];
                    nu.normalize();
                    if (!star_test(x, nu, center)) return false;
                }
            return true;
        }
        case DomainSpec::Kind::Polygon: {
            Vec lo, hi;
            spec.bounding_box(lo, hi);
            const double diam = (hi - lo).norm();
            const double eps = 1e-7 * diam;
            const std::size_t n = spec.vertices.size();
            for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
                const Eigen::Vector2d a = spec.vertices[j];
                const Eigen::Vector2d b = spec.vertices[i];
                const Eigen::Vector2d mid = 0.5 * (a + b);
                Eigen::Vector2d perp(-(b - a).y(), (b - a).x());
                perp.normalize();
                const bool plus_in = point_in_polygon(spec.vertices, mid.x() + eps * perp.x(),
                                                      mid.y() + eps * perp.y());
                const bool minus_in = point_in_polygon(spec.vertices, mid.x() - eps * perp.x(),
                                                       mid.y() - eps * perp.y());
                if (plus_in == minus_in)
                    throw UnsupportedShape("is_star_shaped: cannot orient polygon edge normal");
                const Eigen::Vector2d nu = plus_in ? (-perp).eval() : perp;
                const int samples = 32;
                for (int s = 0; s < samples; ++s) {
                    const double t = (s + 0.5) / samples;
                    const Eigen::Vector2d x = a + t * (b - a);
                    Vec xv(2), nv(2);
                    xv << x.x(), x.y();
                    nv << nu.x(), nu.y();
                    if (!star_test(xv, nv, center)) return false;
                }
            }
            return true;
        }
    }
    return false;
}

}  // namespace avlab
