#pragma once

#include "antloop/matrix.hpp"
#include "antloop/poly.hpp"
#include "antloop/rational.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace antloop {

// The spectrum has a real eigenvalue outside the rationals; exact
// analysis over that spectrum is out of reach and the analyzer refuses
// rather than approximate.
struct IrrationalSpectrum : std::runtime_error {
    explicit IrrationalSpectrum(const std::string& factor)
        : std::runtime_error("irrational real eigenvalue detected; irreducible factor " + factor),
          irreducible_factor(factor) {}
    std::string irreducible_factor;
};

// One eigenvalue's slice of the analysis basis.
struct EigenSection {
    Rational lambda;
    int mult = 0;               // d_lambda
    int offset = 0;             // first coordinate of the section in the basis
    std::vector<int> blocks;    // chain lengths, ascending
};

// Update map in a modified Jordan basis together with the guard's
// coefficients in that basis: blocks are lambda * (unit upper bidiagonal),
// sections ordered zero first, then by |lambda| ascending with the
// positive eigenvalue before its negative.
struct SpectralData {
    int dim = 0;
    std::vector<EigenSection> sections;
    QMatrix basis;       // columns of the modified Jordan basis
    QMatrix basis_inv;
    std::vector<Rational> f_coeffs;  // Mat_B(f) = f . basis (empty if no guard attached)

    const EigenSection* section_of(const Rational& lambda) const;
    bool single_block_per_eigenvalue() const;
    QMatrix block_matrix() const;  // the block-diagonal form the basis realizes
};

// Eigen decomposition of a matrix whose characteristic polynomial has only
// rational roots (call sites sit behind the real-spectrum restriction).
// Throws IrrationalSpectrum / std::runtime_error otherwise.
SpectralData eigen_decompose(const QMatrix& a);

std::vector<Rational> f_coefficients(const QVector& f_row, const QMatrix& p);

// Modified Jordan basis of the generalized eigenspace of lambda != 0:
// chain vectors scaled so each block becomes lambda * T. Blocks ascend by
// size; chain selection ties break toward the lowest canonical index.
struct JordanSection {
    std::vector<QVector> columns;
    std::vector<int> block_sizes;
};
JordanSection modified_jordan_basis(const QMatrix& a, const Rational& lambda);

// K(A, f): intersection of the kernels of f, fA, ..., fA^{n-1} — the
// subspace the guard can never observe.
std::vector<QVector> guard_kernel(const QMatrix& a, const QVector& f_row);

struct RealRestriction {
    QMatrix a_r;     // restriction of A to the real-spectrum subspace
    QMatrix f_r;     // rows of F restricted (F_r = F * embed)
    QMatrix embed;   // columns express the subspace basis in original coordinates
    QMatrix proj;    // coordinates on the subspace along its complement
    int dim_r = 0;
    int dim_nr = 0;
    QPoly chi;
};

// Splits off the maximal A-stable subspace on which the spectrum is real
// (equivalently rational here). E^r is computed once from A and shared by
// every condition row.
RealRestriction real_spectrum_restriction(const QMatrix& a, const QMatrix& f);

struct ReductionTrace {
    QMatrix r;        // combined change of basis
    int dim_k = 0;
    int dim_e0 = 0;
    int n_a = 0;
    int dim_enr = 0;  // filled by the caller that did the real restriction
};

// Strips the guard-invisible subspace and the zero eigenvalue, producing a
// regular pair (T_a, w_a) with w_a normalized to all ones. The returned
// spectral data is the reduced system in its own coordinates (basis = I).
struct Reduction {
    SpectralData reduced;     // regular pair, dim n_a
    QMatrix t_a;
    std::vector<Rational> w_a;
    QMatrix r;                // full change of basis, B = R^{-1} A R
    QMatrix r_inv;
    QVector w;                // f . R
    ReductionTrace trace;
};
Reduction degenerate_reduction(const QMatrix& a, const QVector& f_row);

// Linear forms phi_{lambda,j} over the analysis coordinates: the k^j
// coefficients of the per-eigenvalue polynomials P_lambda(x_lambda, k).
// phi[s][j] is a full-dimension row vector (zeros outside section s).
struct PhiForms {
    std::vector<std::vector<QVector>> phi;
};
PhiForms phi_forms(const SpectralData& spec);

// P_{lambda,j}(k) = a_1 C(k,j-1) + ... + a_j for one section.
QPoly section_poly(const SpectralData& spec, size_t section_index, int j);

}  // namespace antloop
