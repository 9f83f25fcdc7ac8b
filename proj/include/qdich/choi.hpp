#ifndef QDICH_CHOI_HPP
#define QDICH_CHOI_HPP

#include <vector>

#include "qdich/hermitian.hpp"

namespace qdich {

// Choi matrix of a CPTP map on the (in (x) out) space:
//   J = sum_{ij} |i><j|_in (x) N(|i><j|),  N(A) = Tr_in[(A^T (x) I) J].
class ChoiChannel {
 public:
  ChoiChannel(int dim_in, int dim_out, HermitianOperator choi, bool validate = true);

  static ChoiChannel identity(int dim);
  static ChoiChannel replacement(int dim_in, const DensityOperator& target);
  static ChoiChannel from_kraus(int dim_in, int dim_out, const std::vector<Matrix>& kraus);
  // classical channel in a given basis pair: stochastic (out x in), column-stochastic
  static ChoiChannel classical(const RealMatrix& stochastic, const Matrix& basis_in,
                               const Matrix& basis_out);

  int dim_in() const { return dim_in_; }
  int dim_out() const { return dim_out_; }
  const HermitianOperator& choi() const { return choi_; }

  HermitianOperator apply(const HermitianOperator& a) const;
  DensityOperator apply(const DensityOperator& rho) const;

  // residuals against the CPTP invariants
  double tp_residual() const;   // || Tr_out J - I ||_F
  double psd_floor() const;     // min eigenvalue of J

 private:
  int dim_in_;
  int dim_out_;
  HermitianOperator choi_;
};

}  // namespace qdich

#endif
