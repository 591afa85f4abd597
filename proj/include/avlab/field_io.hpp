#pragma once

#include "avlab/fields.hpp"

#include <iosfwd>
#include <string>

namespace avlab {

/// "affine-field v1" dump:
///   # affine-field v1
///   dim h shape... origin...
///   row-major ASCII values, one x-line per row (17 significant digits)
/// Round-trips bit-exactly.
void write_field(std::ostream& os, const ScalarField& u);
void write_field(const std::string& path, const ScalarField& u);

/// Raw contents of a field file; the grid mask is not stored, so a domain to
/// attach the values to is supplied separately.
struct FieldData {
    int dim = 0;
    double h = 0.0;
    std::array<Index, 3> shape = {0, 0, 1};
    Vec origin;
    Vec values;
};

FieldData read_field(std::istream& is);
FieldData read_field(const std::string& path);

/// Attach loaded values to a grid; layouts must agree.
ScalarField attach(const FieldData& data, std::shared_ptr<const GridDomain> dom);

/// Plain-text grayscale pixmap (P2), min-max normalized to 0..255.
/// 3D fields dump the middle z-slab.
void write_pgm(std::ostream& os, const ScalarField& u);
void write_pgm(const std::string& path, const ScalarField& u);

/// 17-significant-digit decimal formatting used by every CSV writer.
std::string format_g17(double v);

}  // namespace avlab
