#pragma once

#include "nlw/logreal.hpp"
#include "nlw/quadrature.hpp"

namespace nlw {

// I(a) = int_a^1 r e^{4 a^2 log^2 r} dr for 0 < a < 1.
QuadResult lemma_I_a(double a);

// I(a, k) = int_{e^{-k/2}}^1 r e^{(4a^2/k) log^2 r} dr.
LogQuadResult lemma_I_ak(double a, double k);
// log of the bound 2 e^{(a^2-1) k}.
double lemma_I_ak_log_bound(double a, double k);

// J(A, lambda) = int_{A - lambda^2/A}^A du / sqrt(e^{A^2} - e^{u^2}) for 0 < lambda < A.
LogQuadResult lemma_J(double A, double lambda);
// log of A e^{2 lambda^2} e^{-A^2/2} / (A^2 - lambda^2).
double lemma_J_log_bound(double A, double lambda);

// I(A) = int_0^A du / sqrt(e^{A^2} - e^{u^2}).
LogQuadResult lemma_I_A(double A);
// I(A) e^{A^2/2} / A, bounded below by 1.
double lemma_I_A_ratio(double A);

}  // namespace nlw
