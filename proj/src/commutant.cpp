#include "qdh/commutant.hpp"

namespace qdh {

template struct CommutantOp<double>;
template struct CommutantOp<Rational>;

template PtMatrix<double> pt_matrix<double>(Dim);
template PtMatrix<Rational> pt_matrix<Rational>(Dim);

template std::pair<std::array<double, 4>, std::array<double, 4>> r_vectors<double>(Dim);
template std::pair<std::array<Rational, 4>, std::array<Rational, 4>> r_vectors<Rational>(Dim);

template std::pair<CommutantOp<double>, CommutantOp<double>> sigma_pair<double>(Dim);
template std::pair<CommutantOp<Rational>, CommutantOp<Rational>> sigma_pair<Rational>(Dim);

template std::pair<CommutantOp<double>, CommutantOp<double>> even_odd<double>(Dim, int, std::size_t);
template std::pair<CommutantOp<Rational>, CommutantOp<Rational>> even_odd<Rational>(Dim, int,
                                                                                    std::size_t);

template CommutantOp<double> apply_pt(const CommutantOp<double>&);
template CommutantOp<Rational> apply_pt(const CommutantOp<Rational>&);

template double trace_pair(const CommutantOp<double>&, const CommutantOp<double>&);
template Rational trace_pair(const CommutantOp<Rational>&, const CommutantOp<Rational>&);

template double trace_of(const CommutantOp<double>&);
template Rational trace_of(const CommutantOp<Rational>&);

}  // namespace qdh
