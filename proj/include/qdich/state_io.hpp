#ifndef QDICH_STATE_IO_HPP
#define QDICH_STATE_IO_HPP

#include <string>

#include "qdich/choi.hpp"
#include "qdich/hermitian.hpp"

namespace qdich {

// State file format: {"dim": d, "re": [[...]], "im": [[...]]}, row-major;
// an omitted "im" means an all-zero imaginary part.
Matrix load_matrix(const std::string& path);
HermitianOperator load_hermitian(const std::string& path);
DensityOperator load_density(const std::string& path);
void save_matrix(const std::string& path, const Matrix& m);

// Choi export: the state-file fields plus {"dim_in", "dim_out"}.
void save_choi(const std::string& path, const ChoiChannel& ch);
ChoiChannel load_choi(const std::string& path);

std::string matrix_to_json(const Matrix& m);

}  // namespace qdich

#endif
