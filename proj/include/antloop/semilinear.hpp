#pragma once

#include "antloop/matrix.hpp"
#include "antloop/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace antloop {

enum class Rel { EqZero, GtZero };

// One rational linear constraint: coeffs . x + offset {==, >} 0.
// Normal form: coefficients scaled by a positive rational to coprime
// integers; equalities additionally sign-normalized so the first nonzero
// coefficient is positive. Strict inequalities are never sign-flipped.
struct Atom {
    QVector coeffs;
    Rational offset;
    Rel rel = Rel::GtZero;

    Rational value_at(const QVector& point) const;
    bool holds_at(const QVector& point) const;
    bool is_constant() const { return antloop::is_zero(coeffs); }
    void normalize();
    Atom negated_gt() const;  // -(coeffs.x + offset) > 0, normalized

    bool operator==(const Atom& other) const;
    bool operator<(const Atom& other) const;
};

Atom eq_atom(QVector coeffs, Rational offset = Rational(0));
Atom gt_atom(QVector coeffs, Rational offset = Rational(0));

// Conjunction of atoms.
struct Cell {
    std::vector<Atom> atoms;

    // Normalizes atoms, drops constant-true ones, dedupes, and detects
    // directly contradictory pairs. Returns false when the cell is
    // trivially empty (a constant-false atom or a contradictory pair).
    bool normalize();
    bool holds_at(const QVector& point) const;
    bool is_homogeneous() const;

    bool operator==(const Cell& other) const { return atoms == other.atoms; }
};

// Finite disjunction of cells; the empty disjunction is the empty set.
class SemiLinearSet {
  public:
    SemiLinearSet() = default;
    SemiLinearSet(int ambient_dim, std::vector<std::string> names = {})
        : dim_(ambient_dim), names_(std::move(names)) {}

    static SemiLinearSet empty_set(int dim, std::vector<std::string> names = {});
    static SemiLinearSet full_space(int dim, std::vector<std::string> names = {});

    int ambient_dim() const { return dim_; }
    const std::vector<std::string>& variable_names() const { return names_; }
    void set_variable_names(std::vector<std::string> names) { names_ = std::move(names); }
    const std::vector<Cell>& cells() const { return cells_; }
    bool has_cells() const { return !cells_.empty(); }

    void add_cell(Cell cell);

    bool membership(const QVector& point) const;

    // Image {M x : x in this}; M must be invertible of matching size.
    SemiLinearSet transform(const QMatrix& m) const;

    // Substitutes x ↦ coeff_matrix * y + shift, producing a set over the
    // y variables (used for coordinate projections; not necessarily a
    // bijection).
    SemiLinearSet substitute(const QMatrix& coeff_matrix,
                             std::vector<std::string> new_names) const;

    // Pins the last coordinate to 1 and drops it.
    SemiLinearSet slice_last_coordinate() const;

    SemiLinearSet intersect(const SemiLinearSet& other) const;
    SemiLinearSet set_union(const SemiLinearSet& other) const;
    // this minus other; the cells carved out of any one source cell are
    // pairwise disjoint, and empty pieces are pruned as they appear.
    SemiLinearSet subtract(const SemiLinearSet& other) const;
    SemiLinearSet complement() const;

    bool is_empty_real() const;
    // Rational witness of nonemptiness (Fourier-Motzkin back-substitution).
    std::optional<QVector> rational_witness() const;
    // Over the rationals emptiness coincides with emptiness over the
    // reals: the constraints are rational and the witness extraction is
    // rational. Kept as its own entry point for the domain-level API.
    bool is_empty_rational() const { return is_empty_real(); }

    enum class IntStatus { Empty, NonEmpty, Unknown };
    struct IntResult {
        IntStatus status;
        std::optional<QVector> witness;  // integer point when NonEmpty
    };
    IntResult is_empty_integer(long node_budget = 20000) const;

    // Drops cells that are empty over the reals.
    SemiLinearSet pruned() const;

    std::string to_text() const;     // [[a,b]]OR[[c]] bracket style
    std::string to_json() const;     // cells -> arrays of {coeffs, offset, rel}
    std::string to_smt2() const;     // QF_LRA encoding

    std::string var_name(int i) const;

  private:
    int dim_ = 0;
    std::vector<std::string> names_;
    std::vector<Cell> cells_;
};

bool set_equivalent(const SemiLinearSet& a, const SemiLinearSet& b);

// Feasibility core shared by the real/integer deciders: constraints
// a.x + b > 0 (strict) or >= 0. Returns a rational witness when feasible.
struct LinearConstraint {
    QVector coeffs;
    Rational offset;
    bool strict = true;
};
std::optional<QVector> fourier_motzkin_witness(std::vector<LinearConstraint> cons, int nvars);

}  // namespace antloop
