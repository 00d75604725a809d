#pragma once
// JSON (de)serialization of presentations, algebras, and reports. Rationals
// travel as "p/q" strings; spec files use the documented arity-3 file basis
// order (trees grouped {2,3} < {1,3} < {1,2}, decorations lexicographic by
// (bottom vertex, top vertex)).
#include "quadop/alghom.hpp"
#include "quadop/quadalg.hpp"
#include "json.hpp"

namespace quadop {

using Json = nlohmann::ordered_json;

// permutation from the file basis order to the internal basis order of an
// arity-3 free space: internal index of the j-th file basis vector
std::vector<int> file_basis_order(const FreeSpace &f);

Json mat_to_json(const Mat &m); // dense rows of rational strings
Mat mat_from_json(const Json &rows, int cols);

Json presentation_to_json(const QuadraticPresentation &p);
QuadraticPresentation presentation_from_json(const Json &j); // validates
void save_presentation(const std::string &path,
                       const QuadraticPresentation &p);
// accepts a preset name (com, lie, as, z2) or a path to a spec file
QuadraticPresentation load_presentation(const std::string &spec);

// {"dv": n, "super": bool, "S": rows in coinvariant coordinates}
QuadraticAlgebraPresentation
algebra_from_json(const Json &j, const QuadraticPresentation &host);
// {"dim": d, "mul": [d x d^2 matrix per generator]}; validated against host
PAlgebra palgebra_from_json(const Json &j, const QuadraticPresentation &host);

void write_json(const std::string &path, const Json &j); // dump(2) + newline

} // namespace quadop
