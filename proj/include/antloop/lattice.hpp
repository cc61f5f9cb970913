#pragma once

#include "antloop/matrix.hpp"

#include <optional>

namespace antloop {

struct HermiteForm {
    QMatrix H;  // row-style Hermite normal form, H = U * M
    QMatrix U;  // unimodular, |det U| = 1
};

// Row-style Hermite normal form of an integer matrix: H is in row echelon
// (staircase) shape with positive pivots and entries above each pivot
// reduced into [0, pivot). Throws if M has a non-integer entry.
HermiteForm hermite_normal_form(const QMatrix& m);

struct DiophantineSolution {
    QVector particular;           // one integer solution x0
    std::vector<QVector> lattice; // basis of the integer kernel; x = x0 + sum t_i * lattice_i
};

// Solves M x = d over the integers (M, d integer). nullopt when the system
// has no integer solution.
std::optional<DiophantineSolution> solve_diophantine(const QMatrix& m, const QVector& d);

}  // namespace antloop
