#include "antloop/semilinear.hpp"

#include "antloop/lattice.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

namespace antloop {

bool Atom::operator==(const Atom& other) const {
    return rel == other.rel && offset == other.offset && coeffs == other.coeffs;
}

bool Atom::operator<(const Atom& other) const {
    if (rel != other.rel) return rel < other.rel;
    if (coeffs.size() != other.coeffs.size()) return coeffs.size() < other.coeffs.size();
    for (size_t i = 0; i < coeffs.size(); ++i) {
        int c = cmp(coeffs[i], other.coeffs[i]);
        if (c != 0) return c < 0;
    }
    return cmp(offset, other.offset) < 0;
}

Rational Atom::value_at(const QVector& point) const {
    if (point.size() != coeffs.size()) throw DimensionMismatch("atom evaluation");
    return dot(coeffs, point) + offset;
}

bool Atom::holds_at(const QVector& point) const {
    Rational v = value_at(point);
    return rel == Rel::EqZero ? v == 0 : v > 0;
}

void Atom::normalize() {
    // Positive scale to coprime integer coefficients (offset included in the
    // scaling but not in the gcd unless all coefficients vanish).
    BigInt lcm_den(1);
    for (const auto& c : coeffs) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den().get_mpz_t());
    mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), offset.get_den().get_mpz_t());
    BigInt content(0);
    for (const auto& c : coeffs) {
        BigInt scaled_num = BigInt(c.get_num()) * (lcm_den / BigInt(c.get_den()));
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), scaled_num.get_mpz_t());
    }
    if (content == 0) {
        BigInt off_num = BigInt(offset.get_num()) * (lcm_den / BigInt(offset.get_den()));
        content = abs(off_num);
    }
    if (content == 0) content = 1;
    Rational scale{lcm_den, content};
    scale.canonicalize();
    for (auto& c : coeffs) c *= scale;
    offset *= scale;
    if (rel == Rel::EqZero) {
        int s = 0;
        for (const auto& c : coeffs)
            if (c != 0) {
                s = sign(c);
                break;
            }
        if (s == 0) s = sign(offset);
        if (s < 0) {
            for (auto& c : coeffs) c = -c;
            offset = -offset;
        }
    }
}

Atom Atom::negated_gt() const {
    Atom a;
    a.coeffs.reserve(coeffs.size());
    for (const auto& c : coeffs) a.coeffs.push_back(-c);
    a.offset = -offset;
    a.rel = Rel::GtZero;
    a.normalize();
    return a;
}

Atom eq_atom(QVector coeffs, Rational offset) {
    Atom a{std::move(coeffs), std::move(offset), Rel::EqZero};
    a.normalize();
    return a;
}

Atom gt_atom(QVector coeffs, Rational offset) {
    Atom a{std::move(coeffs), std::move(offset), Rel::GtZero};
    a.normalize();
    return a;
}

bool Cell::normalize() {
    std::vector<Atom> kept;
    for (auto& atom : atoms) {
        atom.normalize();
        if (atom.is_constant()) {
            bool truth = atom.rel == Rel::EqZero ? atom.offset == 0 : atom.offset > 0;
            if (!truth) return false;
            continue;  // constant truths carry no information
        }
        kept.push_back(std::move(atom));
    }
    std::sort(kept.begin(), kept.end());
    kept.erase(std::unique(kept.begin(), kept.end()), kept.end());

    // Directly contradictory pairs on the same normalized form.
    for (const auto& a : kept) {
        Atom neg = a.negated_gt();
        for (const auto& b : kept) {
            if (&a == &b) continue;
            if (b.rel != Rel::GtZero) continue;
            if (b.coeffs == neg.coeffs && b.offset == neg.offset)
                return false;  // l > 0 with -l > 0, or l = 0 with -l > 0
            if (a.rel == Rel::EqZero && b.coeffs == a.coeffs && b.offset == a.offset)
                return false;  // l = 0 with l > 0
        }
    }
    atoms = std::move(kept);
    return true;
}

bool Cell::holds_at(const QVector& point) const {
    for (const auto& a : atoms)
        if (!a.holds_at(point)) return false;
    return true;
}

bool Cell::is_homogeneous() const {
    for (const auto& a : atoms)
        if (a.offset != 0) return false;
    return true;
}

SemiLinearSet SemiLinearSet::empty_set(int dim, std::vector<std::string> names) {
    return SemiLinearSet(dim, std::move(names));
}

SemiLinearSet SemiLinearSet::full_space(int dim, std::vector<std::string> names) {
    SemiLinearSet s(dim, std::move(names));
    s.add_cell(Cell{});
    return s;
}

void SemiLinearSet::add_cell(Cell cell) {
    for (const auto& a : cell.atoms)
        if (static_cast<int>(a.coeffs.size()) != dim_) throw DimensionMismatch("cell dimension");
    if (!cell.normalize()) return;
    if (std::find(cells_.begin(), cells_.end(), cell) != cells_.end()) return;
    cells_.push_back(std::move(cell));
}

bool SemiLinearSet::membership(const QVector& point) const {
    if (static_cast<int>(point.size()) != dim_) throw DimensionMismatch("membership point dimension");
    for (const auto& c : cells_)
        if (c.holds_at(point)) return true;
    return false;
}

SemiLinearSet SemiLinearSet::transform(const QMatrix& m) const {
    if (m.rows() != dim_ || m.cols() != dim_) throw DimensionMismatch("transform matrix");
    QMatrix minv = inverse(m);  // throws SingularMatrix
    SemiLinearSet out(dim_, names_);
    for (const auto& cell : cells_) {
        Cell mapped;
        for (const auto& a : cell.atoms) {
            Atom b;
            b.coeffs = a.coeffs * minv;
            b.offset = a.offset;
            b.rel = a.rel;
            mapped.atoms.push_back(std::move(b));
        }
        out.add_cell(std::move(mapped));
    }
    return out;
}

SemiLinearSet SemiLinearSet::substitute(const QMatrix& coeff_matrix,
                                        std::vector<std::string> new_names) const {
    if (coeff_matrix.rows() != dim_) throw DimensionMismatch("substitute matrix");
    SemiLinearSet out(coeff_matrix.cols(), std::move(new_names));
    for (const auto& cell : cells_) {
        Cell mapped;
        for (const auto& a : cell.atoms) {
            Atom b;
            b.coeffs = a.coeffs * coeff_matrix;
            b.offset = a.offset;
            b.rel = a.rel;
            mapped.atoms.push_back(std::move(b));
        }
        out.add_cell(std::move(mapped));
    }
    return out;
}

SemiLinearSet SemiLinearSet::slice_last_coordinate() const {
    if (dim_ < 2) throw DimensionMismatch("slice_last_coordinate needs dimension >= 2");
    std::vector<std::string> names;
    if (!names_.empty()) names.assign(names_.begin(), names_.end() - 1);
    SemiLinearSet out(dim_ - 1, std::move(names));
    for (const auto& cell : cells_) {
        Cell sliced;
        for (const auto& a : cell.atoms) {
            Atom b;
            b.coeffs.assign(a.coeffs.begin(), a.coeffs.end() - 1);
            b.offset = a.offset + a.coeffs.back();
            b.rel = a.rel;
            sliced.atoms.push_back(std::move(b));
        }
        out.add_cell(std::move(sliced));
    }
    return out;
}

SemiLinearSet SemiLinearSet::intersect(const SemiLinearSet& other) const {
    if (other.dim_ != dim_) throw DimensionMismatch("intersect dimension");
    SemiLinearSet out(dim_, names_.empty() ? other.names_ : names_);
    for (const auto& a : cells_)
        for (const auto& b : other.cells_) {
            Cell joined = a;
            joined.atoms.insert(joined.atoms.end(), b.atoms.begin(), b.atoms.end());
            out.add_cell(std::move(joined));
        }
    return out.pruned();
}

SemiLinearSet SemiLinearSet::set_union(const SemiLinearSet& other) const {
    if (other.dim_ != dim_) throw DimensionMismatch("union dimension");
    SemiLinearSet out = *this;
    for (const auto& c : other.cells_) out.add_cell(c);
    return out;
}

namespace {

std::optional<QVector> cell_witness(const Cell& cell, int dim);

// E minus D as pairwise disjoint cells: for each atom a_i of D, keep
// E and a_1 ... a_{i-1} and not(a_i); the negation of an atom is itself a
// union of one or two disjoint cells.
std::vector<Cell> cell_difference(const Cell& e, const Cell& d, int dim) {
    std::vector<Cell> out;
    Cell prefix = e;
    for (const auto& a : d.atoms) {
        auto emit = [&](Atom negation_part) {
            Cell piece = prefix;
            piece.atoms.push_back(std::move(negation_part));
            Cell normalized = piece;
            if (normalized.normalize() && cell_witness(normalized, dim)) out.push_back(normalized);
        };
        if (a.rel == Rel::EqZero) {
            emit(Atom{a.coeffs, a.offset, Rel::GtZero});
            emit(a.negated_gt());
        } else {
            emit(Atom{a.coeffs, a.offset, Rel::EqZero});
            emit(a.negated_gt());
        }
        prefix.atoms.push_back(a);
    }
    return out;
}

}  // namespace

SemiLinearSet SemiLinearSet::subtract(const SemiLinearSet& other) const {
    if (other.dim_ != dim_) throw DimensionMismatch("subtract dimension");
    SemiLinearSet out(dim_, names_);
    for (const auto& start : cells_) {
        std::vector<Cell> frontier{start};
        for (const auto& d : other.cells_) {
            std::vector<Cell> next;
            for (const auto& e : frontier) {
                auto pieces = cell_difference(e, d, dim_);
                next.insert(next.end(), std::make_move_iterator(pieces.begin()),
                            std::make_move_iterator(pieces.end()));
            }
            frontier = std::move(next);
            if (frontier.empty()) break;
        }
        for (auto& cell : frontier) out.add_cell(std::move(cell));
    }
    return out;
}

SemiLinearSet SemiLinearSet::complement() const {
    return full_space(dim_, names_).subtract(*this);
}

namespace {

struct EliminationLevel {
    std::vector<LinearConstraint> cons;  // constraints alive before eliminating this var
};

// Substitutes equalities away, then runs Fourier-Motzkin on the strict
// system. Returns a witness (arbitrary rational point) or nullopt.
std::optional<QVector> cell_witness(const Cell& cell, int dim) {
    // Equality elimination with recorded substitutions.
    std::vector<LinearConstraint> work;
    std::vector<std::pair<int, std::pair<QVector, Rational>>> substitutions;  // var -> expr
    std::vector<LinearConstraint> eqs;
    for (const auto& a : cell.atoms) {
        LinearConstraint c{a.coeffs, a.offset, true};
        if (a.rel == Rel::EqZero)
            eqs.push_back(std::move(c));
        else
            work.push_back(std::move(c));
    }
    std::vector<bool> eliminated(dim, false);
    for (size_t e = 0; e < eqs.size(); ++e) {
        auto& eq = eqs[e];
        int pivot = -1;
        for (int j = 0; j < dim; ++j)
            if (eq.coeffs[j] != 0) {
                pivot = j;
                break;
            }
        if (pivot < 0) {
            if (eq.offset != 0) return std::nullopt;
            continue;
        }
        // pivot_var = expr = -(rest + offset)/coeff
        Rational inv = -1 / eq.coeffs[pivot];
        QVector expr(dim, Rational(0));
        for (int j = 0; j < dim; ++j)
            if (j != pivot) expr[j] = eq.coeffs[j] * inv;
        Rational expr_off = eq.offset * inv;
        auto substitute = [&](LinearConstraint& c) {
            Rational f = c.coeffs[pivot];
            if (f == 0) return;
            c.coeffs[pivot] = 0;
            for (int j = 0; j < dim; ++j) c.coeffs[j] += f * expr[j];
            c.offset += f * expr_off;
        };
        for (size_t e2 = e + 1; e2 < eqs.size(); ++e2) substitute(eqs[e2]);
        for (auto& c : work) substitute(c);
        eliminated[pivot] = true;
        substitutions.push_back({pivot, {expr, expr_off}});
    }

    // Compress to the free variables.
    std::vector<int> free_vars;
    for (int j = 0; j < dim; ++j)
        if (!eliminated[j]) free_vars.push_back(j);
    std::vector<LinearConstraint> reduced;
    for (const auto& c : work) {
        LinearConstraint rc;
        rc.offset = c.offset;
        rc.strict = c.strict;
        rc.coeffs.resize(free_vars.size());
        for (size_t j = 0; j < free_vars.size(); ++j) rc.coeffs[j] = c.coeffs[free_vars[j]];
        reduced.push_back(std::move(rc));
    }

    auto fm = fourier_motzkin_witness(std::move(reduced), static_cast<int>(free_vars.size()));
    if (!fm) return std::nullopt;

    QVector point(dim, Rational(0));
    for (size_t j = 0; j < free_vars.size(); ++j) point[free_vars[j]] = (*fm)[j];
    // Replay substitutions in reverse: later equalities may reference
    // variables eliminated earlier, so earlier ones are resolved last.
    for (auto it = substitutions.rbegin(); it != substitutions.rend(); ++it) {
        const auto& [var, expr] = *it;
        point[var] = dot(expr.first, point) + expr.second;
    }
    return point;
}

}  // namespace

std::optional<QVector> fourier_motzkin_witness(std::vector<LinearConstraint> cons, int nvars) {
    std::vector<EliminationLevel> levels(nvars);
    std::vector<LinearConstraint> current = std::move(cons);
    for (auto& c : current) c.coeffs.resize(nvars);
    for (int v = nvars - 1; v >= 0; --v) {
        levels[v].cons = current;
        std::vector<LinearConstraint> lowers, uppers, next;
        for (auto& c : current) {
            int s = sign(c.coeffs[v]);
            if (s > 0)
                lowers.push_back(std::move(c));
            else if (s < 0)
                uppers.push_back(std::move(c));
            else
                next.push_back(std::move(c));
        }
        for (const auto& l : lowers)
            for (const auto& u : uppers) {
                // l: a x_v + r_l > 0 (a > 0); u: b x_v + r_u > 0 (b < 0).
                // a * r_u - b * r_l > 0 eliminates x_v.
                LinearConstraint c;
                Rational a = l.coeffs[v], b = u.coeffs[v];
                c.coeffs.resize(v);
                for (int j = 0; j < v; ++j) c.coeffs[j] = a * u.coeffs[j] - b * l.coeffs[j];
                c.offset = a * u.offset - b * l.offset;
                c.strict = l.strict || u.strict;
                next.push_back(std::move(c));
            }
        for (auto& c : next) c.coeffs.resize(v);
        current = std::move(next);
    }
    for (const auto& c : current) {
        if (c.strict ? !(c.offset > 0) : !(c.offset >= 0)) return std::nullopt;
    }

    QVector point(nvars);
    for (int v = 0; v < nvars; ++v) {
        std::optional<Rational> lo, hi;
        bool lo_strict = false, hi_strict = false;
        for (const auto& c : levels[v].cons) {
            int s = sign(c.coeffs[v]);
            if (s == 0) continue;
            Rational rest = c.offset;
            for (int j = 0; j < v; ++j) rest += c.coeffs[j] * point[j];
            Rational bound = -rest / c.coeffs[v];
            if (s > 0) {  // x_v > / >= bound
                if (!lo || bound > *lo) {
                    lo = bound;
                    lo_strict = c.strict;
                } else if (bound == *lo) {
                    lo_strict = lo_strict || c.strict;
                }
            } else {  // x_v < / <= bound
                if (!hi || bound < *hi) {
                    hi = bound;
                    hi_strict = c.strict;
                } else if (bound == *hi) {
                    hi_strict = hi_strict || c.strict;
                }
            }
        }
        if (lo && hi) {
            if (*lo == *hi)
                point[v] = *lo;  // only reachable when both bounds are loose
            else
                point[v] = (*lo + *hi) / 2;
        } else if (lo) {
            point[v] = lo_strict ? *lo + 1 : *lo;
        } else if (hi) {
            point[v] = hi_strict ? *hi - 1 : *hi;
        } else {
            point[v] = 0;
        }
    }
    return point;
}

bool SemiLinearSet::is_empty_real() const { return !rational_witness().has_value(); }

std::optional<QVector> SemiLinearSet::rational_witness() const {
    for (const auto& cell : cells_) {
        auto w = cell_witness(cell, dim_);
        if (w) return w;
    }
    return std::nullopt;
}

SemiLinearSet SemiLinearSet::pruned() const {
    SemiLinearSet out(dim_, names_);
    for (const auto& cell : cells_)
        if (cell_witness(cell, dim_)) out.add_cell(cell);
    return out;
}

namespace {

// Integer feasibility of one cell via equality lattice + branch and bound.
struct IntCellSolver {
    long budget;

    std::optional<QVector> relax_witness(const std::vector<LinearConstraint>& cons, int nvars) {
        return fourier_motzkin_witness(cons, nvars);
    }

    // cons are integer-coefficient loose constraints c.t + e >= 0.
    std::optional<QVector> branch_and_bound(std::vector<LinearConstraint> cons, int nvars) {
        if (budget-- <= 0) return std::nullopt;
        auto w = relax_witness(cons, nvars);
        if (!w) return std::nullopt;
        int frac = -1;
        for (int j = 0; j < nvars; ++j)
            if (!is_integer((*w)[j])) {
                frac = j;
                break;
            }
        if (frac < 0) return w;
        Rational lo(rat_floor((*w)[frac]));
        for (int side = 0; side < 2; ++side) {
            LinearConstraint c;
            c.coeffs.assign(nvars, Rational(0));
            c.strict = false;
            if (side == 0) {  // t_frac <= lo
                c.coeffs[frac] = -1;
                c.offset = lo;
            } else {  // t_frac >= lo + 1
                c.coeffs[frac] = 1;
                c.offset = -(lo + 1);
            }
            auto branch = cons;
            branch.push_back(std::move(c));
            auto r = branch_and_bound(std::move(branch), nvars);
            if (r) return r;
            if (budget <= 0) return std::nullopt;
        }
        return std::nullopt;
    }
};

}  // namespace

SemiLinearSet::IntResult SemiLinearSet::is_empty_integer(long node_budget) const {
    bool exhausted = false;
    for (const auto& cell : cells_) {
        // Homogeneous cells scale: a rational witness lifts to an integer one.
        if (cell.is_homogeneous()) {
            auto w = cell_witness(cell, dim_);
            if (!w) continue;
            BigInt lcm(1);
            for (const auto& x : *w) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den().get_mpz_t());
            QVector scaled_w = scaled(*w, Rational(lcm));
            if (cell.holds_at(scaled_w)) return {IntStatus::NonEmpty, scaled_w};
        }

        // Clear denominators so every atom has integer coefficients and
        // offset; positive scaling preserves semantics.
        std::vector<Atom> eqs, ineqs;
        for (Atom a : cell.atoms) {
            BigInt lcm(1);
            for (const auto& c : a.coeffs)
                mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den().get_mpz_t());
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), a.offset.get_den().get_mpz_t());
            if (lcm != 1) {
                for (auto& c : a.coeffs) c *= Rational(lcm);
                a.offset *= Rational(lcm);
            }
            (a.rel == Rel::EqZero ? eqs : ineqs).push_back(std::move(a));
        }
        QVector x0(dim_, Rational(0));
        std::vector<QVector> lattice;
        if (!eqs.empty()) {
            QMatrix m(static_cast<int>(eqs.size()), dim_);
            QVector d(eqs.size());
            for (size_t i = 0; i < eqs.size(); ++i) {
                for (int j = 0; j < dim_; ++j) m.at(static_cast<int>(i), j) = eqs[i].coeffs[j];
                d[i] = -eqs[i].offset;
            }
            auto sol = solve_diophantine(m, d);
            if (!sol) continue;  // cell has no integer point
            x0 = sol->particular;
            lattice = sol->lattice;
        } else {
            lattice.reserve(dim_);
            for (int j = 0; j < dim_; ++j) {
                QVector e(dim_, Rational(0));
                e[j] = 1;
                lattice.push_back(std::move(e));
            }
        }

        int p = static_cast<int>(lattice.size());
        std::vector<LinearConstraint> cons;
        bool infeasible_consts = false;
        for (const auto& a : ineqs) {
            // a.coeffs . (x0 + N t) + offset > 0 with integer coefficients:
            // the left side minus the (possibly fractional) offset is an
            // integer, so c.t > -base tightens to c.t >= floor(-base) + 1.
            LinearConstraint c;
            c.coeffs.resize(p);
            for (int j = 0; j < p; ++j) c.coeffs[j] = dot(a.coeffs, lattice[j]);
            Rational base = dot(a.coeffs, x0) + a.offset;
            c.offset = -(Rational(rat_floor(-base)) + 1);
            c.strict = false;
            if (is_zero(c.coeffs) && c.offset < 0) infeasible_consts = true;
            cons.push_back(std::move(c));
        }
        if (infeasible_consts) continue;
        if (p == 0) {
            if (cell.holds_at(x0)) return {IntStatus::NonEmpty, x0};
            continue;
        }

        IntCellSolver solver{node_budget};
        auto t = solver.branch_and_bound(std::move(cons), p);
        if (t) {
            QVector point = x0;
            for (int j = 0; j < p; ++j)
                for (int i = 0; i < dim_; ++i) point[i] += (*t)[j] * lattice[j][i];
            if (cell.holds_at(point)) return {IntStatus::NonEmpty, point};
            exhausted = true;  // should not happen; stay sound
        } else if (solver.budget <= 0) {
            exhausted = true;
        }
    }
    return {exhausted ? IntStatus::Unknown : IntStatus::Empty, std::nullopt};
}

namespace {

std::string term_string(const Rational& coeff, const std::string& var, bool leading) {
    std::string s;
    Rational a = abs(coeff);
    if (sign(coeff) < 0)
        s += "-";
    else if (!leading)
        s += "+";
    if (a != 1) s += to_string(a) + "*";
    s += var;
    return s;
}

}  // namespace

std::string SemiLinearSet::var_name(int i) const {
    if (i < static_cast<int>(names_.size()) && !names_[i].empty()) return names_[i];
    return "u" + std::to_string(i + 1);
}

std::string SemiLinearSet::to_text() const {
    if (cells_.empty()) return "empty";
    std::ostringstream os;
    bool first_cell = true;
    for (const auto& cell : cells_) {
        if (!first_cell) os << "OR";
        first_cell = false;
        os << "[[";
        if (cell.atoms.empty()) os << "true";
        bool first_atom = true;
        for (const auto& a : cell.atoms) {
            if (!first_atom) os << ",";
            first_atom = false;
            // Isolate the first variable: c0*v + rest + off {>,==} 0.
            int pivot = -1;
            for (size_t j = 0; j < a.coeffs.size(); ++j)
                if (a.coeffs[j] != 0) {
                    pivot = static_cast<int>(j);
                    break;
                }
            if (pivot < 0) {
                os << to_string(a.offset) << (a.rel == Rel::EqZero ? "==0" : ">0");
                continue;
            }
            Rational c0 = a.coeffs[pivot];
            os << var_name(pivot);
            os << (a.rel == Rel::EqZero ? "==" : (sign(c0) > 0 ? ">" : "<"));
            // rhs = -(rest + off)/c0
            std::string rhs;
            bool leading = true;
            for (size_t j = pivot + 1; j < a.coeffs.size(); ++j) {
                if (a.coeffs[j] == 0) continue;
                rhs += term_string(-a.coeffs[j] / c0, var_name(static_cast<int>(j)), leading);
                leading = false;
            }
            Rational off = -a.offset / c0;
            if (off != 0 || leading) {
                if (!leading && sign(off) > 0) rhs += "+";
                rhs += to_string(off);
            }
            os << rhs;
        }
        os << "]]";
    }
    return os.str();
}

std::string SemiLinearSet::to_json() const {
    nlohmann::ordered_json j;
    j["ambient_dim"] = dim_;
    j["variables"] = nlohmann::ordered_json::array();
    for (int i = 0; i < dim_; ++i) j["variables"].push_back(var_name(i));
    j["cells"] = nlohmann::ordered_json::array();
    for (const auto& cell : cells_) {
        nlohmann::ordered_json jc = nlohmann::ordered_json::array();
        for (const auto& a : cell.atoms) {
            nlohmann::ordered_json ja;
            ja["coeffs"] = nlohmann::ordered_json::array();
            for (const auto& c : a.coeffs) ja["coeffs"].push_back(to_string(c));
            ja["offset"] = to_string(a.offset);
            ja["rel"] = a.rel == Rel::EqZero ? "eq0" : "gt0";
            jc.push_back(ja);
        }
        j["cells"].push_back(jc);
    }
    return j.dump(2);
}

std::string SemiLinearSet::to_smt2() const {
    std::ostringstream os;
    os << "(set-logic QF_LRA)\n";
    for (int i = 0; i < dim_; ++i) os << "(declare-const " << var_name(i) << " Real)\n";
    auto rat_smt = [](const Rational& q) {
        std::string s;
        if (sign(q) < 0) s += "(- ";
        Rational a = abs(q);
        if (a.get_den() == 1)
            s += a.get_num().get_str();
        else
            s += "(/ " + a.get_num().get_str() + " " + a.get_den().get_str() + ")";
        if (sign(q) < 0) s += ")";
        return s;
    };
    os << "(assert ";
    if (cells_.empty()) {
        os << "false";
    } else {
        if (cells_.size() > 1) os << "(or ";
        for (const auto& cell : cells_) {
            if (cell.atoms.empty()) {
                os << "true ";
                continue;
            }
            if (cell.atoms.size() > 1) os << "(and ";
            for (const auto& a : cell.atoms) {
                os << "(" << (a.rel == Rel::EqZero ? "=" : ">") << " (+";
                for (int j = 0; j < dim_; ++j)
                    os << " (* " << rat_smt(a.coeffs[j]) << " " << var_name(j) << ")";
                os << " " << rat_smt(a.offset) << ") 0) ";
            }
            if (cell.atoms.size() > 1) os << ") ";
        }
        if (cells_.size() > 1) os << ")";
    }
    os << ")\n(check-sat)\n";
    return os.str();
}

bool set_equivalent(const SemiLinearSet& a, const SemiLinearSet& b) {
    if (a.ambient_dim() != b.ambient_dim()) throw DimensionMismatch("set_equivalent dimension");
    return !a.subtract(b).has_cells() && !b.subtract(a).has_cells();
}

}  // namespace antloop
