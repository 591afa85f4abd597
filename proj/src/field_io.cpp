#include "avlab/field_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace avlab {

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_field(std::ostream& os, const ScalarField& u) {
    const GridDomain& g = *u.dom;
    os << "# affine-field v1\n";
    os << g.dim << ' ' << format_g17(g.h);
    for (int d = 0; d < g.dim; ++d) os << ' ' << g.shape[d];
    for (int d = 0; d < g.dim; ++d) os << ' ' << format_g17(g.origin[d]);
    os << '\n';
    // one x-line per row: for each (iz, iy) the values along ix
    const Index nz = g.dim == 3 ? g.shape[2] : 1;
    for (Index iz = 0; iz < nz; ++iz)
        for (Index iy = 0; iy < g.shape[1]; ++iy) {
            for (Index ix = 0; ix < g.shape[0]; ++ix) {
                if (ix) os << ' ';
                os << format_g17(u.values[g.flat_index(ix, iy, iz)]);
            }
            os << '\n';
        }
}

void write_field(const std::string& path, const ScalarField& u) {
    std::ofstream f(path);
    if (!f) throw Error("write_field: cannot open " + path);
    write_field(f, u);
}

FieldData read_field(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line.rfind("# affine-field v1", 0) != 0)
        throw ParseError("field file: missing 'affine-field v1' header", 1);
    if (!std::getline(is, line)) throw ParseError("field file: missing geometry line", 2);

    std::istringstream head(line);
    FieldData d;
    if (!(head >> d.dim >> d.h)) throw ParseError("field file: bad geometry line", 2);
    if (d.dim != 2 && d.dim != 3) throw ParseError("field file: dimension must be 2 or 3", 2);
    for (int k = 0; k < d.dim; ++k)
        if (!(head >> d.shape[k])) throw ParseError("field file: bad shape", 2);
    if (d.dim == 2) d.shape[2] = 1;
    d.origin.resize(d.dim);
    for (int k = 0; k < d.dim; ++k)
        if (!(head >> d.origin[k])) throw ParseError("field file: bad origin", 2);

    const Index total = d.shape[0] * d.shape[1] * d.shape[2];
    d.values.resize(total);
    Index got = 0;
    int lineno = 2;
    while (got < total && std::getline(is, line)) {
        ++lineno;
        std::istringstream row(line);
        double v;
        while (row >> v) {
            if (got >= total) throw ParseError("field file: too many values", lineno);
            // rows are x-lines for fixed (iy, iz); stored flat index is
            // (ix * ny + iy) * nz + iz
            const Index k = got;
            const Index ix = k % d.shape[0];
            const Index iy = (k / d.shape[0]) % d.shape[1];
            const Index iz = k / (d.shape[0] * d.shape[1]);
            d.values[(ix * d.shape[1] + iy) * d.shape[2] + iz] = v;
            ++got;
        }
    }
    if (got != total) throw ParseError("field file: expected " + std::to_string(total) + " values", lineno);
    return d;
}

FieldData read_field(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error("read_field: cannot open " + path);
    return read_field(f);
}

ScalarField attach(const FieldData& data, std::shared_ptr<const GridDomain> dom) {
    if (dom->dim != data.dim || dom->shape != data.shape || dom->h != data.h ||
        (dom->origin - data.origin).cwiseAbs().maxCoeff() > 1e-12 * dom->h)
        throw GridMismatch("attach: field layout does not match the grid");
    ScalarField u;
    u.dom = std::move(dom);
    u.values = data.values;
    apply_mask(u);
    return u;
}

void write_pgm(std::ostream& os, const ScalarField& u) {
    const GridDomain& g = *u.dom;
    const Index iz = g.dim == 3 ? g.shape[2] / 2 : 0;
    double lo = u.values[0], hi = u.values[0];
    for (Index iy = 0; iy < g.shape[1]; ++iy)
        for (Index ix = 0; ix < g.shape[0]; ++ix) {
            const double v = u.values[g.flat_index(ix, iy, iz)];
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    const double span = hi > lo ? hi - lo : 1.0;
    os << "P2\n" << g.shape[0] << ' ' << g.shape[1] << "\n255\n";
    for (Index iy = g.shape[1]; iy-- > 0;) {  // top row first
        for (Index ix = 0; ix < g.shape[0]; ++ix) {
            const double v = u.values[g.flat_index(ix, iy, iz)];
            const int pix = static_cast<int>(std::lround(255.0 * (v - lo) / span));
            os << pix << (ix + 1 < g.shape[0] ? ' ' : '\n');
        }
    }
}

void write_pgm(const std::string& path, const ScalarField& u) {
    std::ofstream f(path);
    if (!f) throw Error("write_pgm: cannot open " + path);
    write_pgm(f, u);
}

}  // namespace avlab
