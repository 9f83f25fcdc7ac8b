#ifndef QDICH_OPERATORS_HPP
#define QDICH_OPERATORS_HPP

#include <vector>

#include "qdich/hermitian.hpp"

namespace qdich {

std::pair<RealVector, Matrix> eig_hermitian(const HermitianOperator& h);

enum class SpectralFn { Power, Log2, Exp2 };

// Applies f to the spectrum. Power/Log2 follow the support conventions:
// 0^p = 0 and log restricted to the support (base 2 throughout). A negative
// power or a log on a singular operator requires on_support, otherwise a
// SingularOperatorError is raised. Eigenvalues below rank_tol*lambda_max count
// as outside the support; fractional powers reject genuinely negative spectra.
HermitianOperator spectral_transform(const HermitianOperator& a, SpectralFn fn, double p = 0.0,
                                     bool on_support = false, double rank_tol = kRankTol);

HermitianOperator matrix_power(const HermitianOperator& a, double p, bool on_support = false);
HermitianOperator matrix_log2(const HermitianOperator& a);   // support-restricted
HermitianOperator matrix_exp2(const HermitianOperator& a);

Matrix kron(const Matrix& a, const Matrix& b);
HermitianOperator tensor(const HermitianOperator& a, const HermitianOperator& b);
DensityOperator tensor(const DensityOperator& a, const DensityOperator& b);
DensityOperator tensor_power(const DensityOperator& a, int n);

// Partial trace of X on the product space with the given factor dimensions;
// keep lists the factor indices that survive, in ascending order.
HermitianOperator partial_trace(const HermitianOperator& x, const std::vector<int>& dims,
                                const std::vector<int>& keep);
Matrix partial_trace(const Matrix& x, const std::vector<int>& dims, const std::vector<int>& keep);

// supp(a) \subseteq supp(b), both PSD; leak measured as Tr[(I-P_b) a]
bool support_contained(const HermitianOperator& a, const HermitianOperator& b,
                       double leak_tol = kSupportLeakTol);
// supp(a) orthogonal to supp(b): Tr[P_a P_b] below tolerance
bool supports_orthogonal(const HermitianOperator& a, const HermitianOperator& b,
                         double tol = kSupportLeakTol);

// Orthonormal basis (columns) of range(P_a) \cap range(P_b), via the spectrum
// of P_a P_b P_a: eigenvectors with eigenvalue within tol of 1.
Matrix support_intersection_basis(const HermitianOperator& a, const HermitianOperator& b,
                                  double tol = 1e-9);
// Orthonormal basis of supp(a)
Matrix support_basis(const HermitianOperator& a, double rank_tol = kRankTol);

// compress h to the subspace spanned by the (orthonormal) columns of basis
Matrix compress(const Matrix& h, const Matrix& basis);
// embed a k x k block back into the full space
Matrix embed(const Matrix& block, const Matrix& basis);

}  // namespace qdich

#endif
