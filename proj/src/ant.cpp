#include "antloop/ant.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include <json.hpp>

namespace antloop {

bool is_normal(const SpectralData& spec) {
    for (const auto& s : spec.sections) {
        if (s.lambda == 0) return false;
        if (spec.section_of(-s.lambda)) return false;
    }
    return true;
}

std::vector<std::string> jordan_variable_names(const SpectralData& spec) {
    std::vector<std::string> names(spec.dim);
    for (const auto& s : spec.sections)
        for (int j = 1; j <= s.mult; ++j)
            names[s.offset + j - 1] = "x[" + to_string(s.lambda) + "," + std::to_string(j) + "]";
    return names;
}

namespace {

QVector unit_coeff(int dim, int index, const Rational& value) {
    QVector v(dim, Rational(0));
    v[index] = value;
    return v;
}

}  // namespace

SemiLinearSet ant_normal(const SpectralData& spec) {
    SemiLinearSet out(spec.dim, jordan_variable_names(spec));
    for (const auto& section : spec.sections) {
        if (section.lambda <= 0) continue;
        for (int k = 1; k <= section.mult; ++k) {
            Cell cell;
            for (const auto& other : spec.sections) {
                if (abs(other.lambda) <= section.lambda) continue;
                for (int h = 1; h <= other.mult; ++h)
                    cell.atoms.push_back(eq_atom(
                        unit_coeff(spec.dim, other.offset + h - 1, spec.f_coeffs[other.offset + h - 1])));
            }
            for (int h = k + 1; h <= section.mult; ++h)
                cell.atoms.push_back(eq_atom(
                    unit_coeff(spec.dim, section.offset + h - 1, spec.f_coeffs[section.offset + h - 1])));
            cell.atoms.push_back(gt_atom(
                unit_coeff(spec.dim, section.offset + k - 1, spec.f_coeffs[section.offset + k - 1])));
            out.add_cell(std::move(cell));
        }
    }
    return out.pruned();
}

namespace {

struct ModulusView {
    Rational modulus;
    const EigenSection* pos = nullptr;
    const EigenSection* neg = nullptr;
    int pos_index = -1, neg_index = -1;
    int e = 0;  // max multiplicity of the pair
};

std::vector<ModulusView> group_by_modulus(const SpectralData& spec) {
    std::vector<ModulusView> mods;
    for (size_t si = 0; si < spec.sections.size(); ++si) {
        const auto& s = spec.sections[si];
        Rational m = abs(s.lambda);
        auto it = std::find_if(mods.begin(), mods.end(),
                               [&](const ModulusView& v) { return v.modulus == m; });
        if (it == mods.end()) {
            mods.push_back(ModulusView{m, nullptr, nullptr, -1, -1, 0});
            it = mods.end() - 1;
        }
        if (s.lambda > 0) {
            it->pos = &s;
            it->pos_index = static_cast<int>(si);
        } else {
            it->neg = &s;
            it->neg_index = static_cast<int>(si);
        }
        it->e = std::max(it->e, s.mult);
    }
    std::sort(mods.begin(), mods.end(),
              [](const ModulusView& a, const ModulusView& b) { return a.modulus < b.modulus; });
    return mods;
}

}  // namespace

SemiLinearSet ant_regular(const SpectralData& spec) {
    if (!spec.single_block_per_eigenvalue())
        throw std::invalid_argument("ant_regular: multiple Jordan blocks; reduce to a regular pair first");
    for (const auto& s : spec.sections)
        if (s.lambda == 0)
            throw std::invalid_argument("ant_regular: zero eigenvalue; reduce to a regular pair first");

    PhiForms forms = phi_forms(spec);
    auto mods = group_by_modulus(spec);
    int dim = spec.dim;

    auto phi_of = [&](int section_index, int j) -> QVector {
        if (section_index < 0) return QVector(dim, Rational(0));
        const auto& s = spec.sections[section_index];
        if (j >= s.mult) return QVector(dim, Rational(0));
        return forms.phi[section_index][j];
    };
    auto plus_form = [&](const ModulusView& m, int j) {
        QVector v = phi_of(m.pos_index, j);
        QVector w = phi_of(m.neg_index, j);
        for (int i = 0; i < dim; ++i) v[i] += w[i];
        return v;
    };
    auto minus_form = [&](const ModulusView& m, int j) {
        QVector v = phi_of(m.pos_index, j);
        QVector w = phi_of(m.neg_index, j);
        for (int i = 0; i < dim; ++i) v[i] -= w[i];
        return v;
    };
    auto higher_moduli_zero = [&](Cell& cell, const Rational& above) {
        for (size_t si = 0; si < spec.sections.size(); ++si) {
            const auto& s = spec.sections[si];
            if (abs(s.lambda) <= above) continue;
            for (int j = 0; j < s.mult; ++j)
                cell.atoms.push_back(eq_atom(phi_of(static_cast<int>(si), j)));
        }
    };

    SemiLinearSet out(dim, jordan_variable_names(spec));

    // S: both parities dominated by the same modulus.
    for (const auto& m : mods) {
        if (!m.pos) continue;
        for (int k = 0; k < m.e; ++k) {
            for (int kp = 0; kp < m.e; ++kp) {
                Cell cell;
                higher_moduli_zero(cell, m.modulus);
                for (int j = k + 1; j < m.e; ++j) cell.atoms.push_back(eq_atom(plus_form(m, j)));
                for (int j = kp + 1; j < m.e; ++j) cell.atoms.push_back(eq_atom(minus_form(m, j)));
                cell.atoms.push_back(gt_atom(plus_form(m, k)));
                cell.atoms.push_back(gt_atom(minus_form(m, kp)));
                out.add_cell(std::move(cell));
            }
        }
    }

    // U: even iterates dominated by lambda, odd by a smaller modulus.
    // V: the mirrored case, with the roles of the parities exchanged.
    for (int variant = 0; variant < 2; ++variant) {
        auto vanish_form = [&](const ModulusView& m, int j) {
            return variant == 0 ? minus_form(m, j) : plus_form(m, j);
        };
        for (const auto& m : mods) {
            if (!m.pos) continue;
            int d_lambda = m.pos->mult;
            for (const auto& mp : mods) {
                if (!(mp.modulus < m.modulus)) continue;
                for (int k = 0; k < d_lambda; ++k) {
                    for (int kp = 0; kp < mp.e; ++kp) {
                        Cell cell;
                        higher_moduli_zero(cell, m.modulus);
                        for (int j = 0; j < m.e; ++j) cell.atoms.push_back(eq_atom(vanish_form(m, j)));
                        for (const auto& mid : mods) {
                            if (!(mp.modulus < mid.modulus && mid.modulus < m.modulus)) continue;
                            for (int j = 0; j < mid.e; ++j)
                                cell.atoms.push_back(eq_atom(vanish_form(mid, j)));
                        }
                        for (int j = k + 1; j < d_lambda; ++j)
                            cell.atoms.push_back(eq_atom(phi_of(m.pos_index, j)));
                        for (int j = kp + 1; j < mp.e; ++j)
                            cell.atoms.push_back(eq_atom(vanish_form(mp, j)));
                        cell.atoms.push_back(gt_atom(phi_of(m.pos_index, k)));
                        cell.atoms.push_back(gt_atom(vanish_form(mp, kp)));
                        out.add_cell(std::move(cell));
                    }
                }
            }
        }
    }
    return out.pruned();
}

bool point_ant(const SpectralData& spec, const QVector& x) {
    if (!spec.single_block_per_eigenvalue())
        throw std::invalid_argument("point_ant: requires a regular pair");
    for (const auto& s : spec.sections)
        if (s.lambda == 0) throw std::invalid_argument("point_ant: requires a regular pair");
    if (static_cast<int>(x.size()) != spec.dim) throw DimensionMismatch("point_ant point");

    auto mods = group_by_modulus(spec);
    auto section_value_poly = [&](int section_index) {
        QPoly p;
        if (section_index < 0) return p;
        const auto& s = spec.sections[section_index];
        for (int j = 1; j <= s.mult; ++j) {
            if (x[s.offset + j - 1] == 0) continue;
            p = p + x[s.offset + j - 1] * section_poly(spec, static_cast<size_t>(section_index), j);
        }
        return p;
    };

    bool even_ok = false, even_found = false;
    bool odd_ok = false, odd_found = false;
    // Scan moduli descending; the largest with a nonzero contribution wins.
    for (auto it = mods.rbegin(); it != mods.rend(); ++it) {
        QPoly pos = section_value_poly(it->pos_index);
        QPoly neg = section_value_poly(it->neg_index);
        if (!even_found) {
            QPoly q_plus = pos + neg;
            if (!q_plus.is_zero()) {
                even_found = true;
                even_ok = sign(q_plus.leading()) > 0;
            }
        }
        if (!odd_found) {
            QPoly q_minus = pos - neg;
            if (!q_minus.is_zero()) {
                odd_found = true;
                odd_ok = sign(q_minus.leading()) > 0;
            }
        }
        if (even_found && odd_found) break;
    }
    return even_found && odd_found && even_ok && odd_ok;
}

namespace {

SemiLinearSet lift_with_leading_free(const SemiLinearSet& set, int total_dim,
                                     std::vector<std::string> names) {
    int pad = total_dim - set.ambient_dim();
    SemiLinearSet out(total_dim, std::move(names));
    for (const auto& cell : set.cells()) {
        Cell lifted;
        for (const auto& a : cell.atoms) {
            Atom b;
            b.coeffs.assign(pad, Rational(0));
            b.coeffs.insert(b.coeffs.end(), a.coeffs.begin(), a.coeffs.end());
            b.offset = a.offset;
            b.rel = a.rel;
            lifted.atoms.push_back(std::move(b));
        }
        out.add_cell(std::move(lifted));
    }
    return out;
}

std::string verdicts_line(const AnalysisReport& r) {
    std::ostringstream os;
    os << "Verdicts: real=" << verdict_name(r.verdict_real)
       << " rational=" << verdict_name(r.verdict_rational)
       << " integer=" << verdict_name(r.verdict_integer);
    if (!r.integer_note.empty()) os << " (" << r.integer_note << ")";
    return os.str();
}

}  // namespace

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Terminating: return "Terminating";
        case Verdict::NonTerminating: return "NonTerminating";
        default: return "Unknown";
    }
}

AnalysisReport analyze(const LoopProgram& p, const AnalyzeOptions& opt) {
    AnalysisReport report;
    report.program = p;
    auto [analyzed, note] = homogenize(p);
    report.analyzed = analyzed;
    report.hom_note = note;

    RealRestriction restriction = real_spectrum_restriction(analyzed.a, analyzed.f);
    report.dim_er = restriction.dim_r;
    report.dim_enr = restriction.dim_nr;
    report.projection_convention = restriction.dim_nr > 0;

    int full_dim = analyzed.dim();
    SemiLinearSet combined;
    bool dead_row = false;
    bool first_row = true;

    if (restriction.dim_r == 0) {
        dead_row = true;  // no real-spectrum directions at all
    } else if (analyzed.conditions() == 0) {
        combined = SemiLinearSet::full_space(restriction.dim_r);
        first_row = false;
    } else {
        for (int i = 0; i < analyzed.conditions() && !dead_row; ++i) {
            QVector f_r = restriction.f_r.row(i);
            RowAnalysis row;
            row.row = i;
            if (antloop::is_zero(f_r)) {
                // The guard row cannot be strictly positive anywhere on the
                // restricted space; the whole intersection is empty.
                row.guard_row_zero = true;
                report.rows.push_back(std::move(row));
                dead_row = true;
                break;
            }
            Reduction red = degenerate_reduction(restriction.a_r, f_r);
            row.trace = red.trace;
            row.trace.dim_enr = restriction.dim_nr;
            row.normal = is_normal(red.reduced);
            row.fast_path = row.normal;
            row.ant_reduced = row.fast_path ? ant_normal(red.reduced) : ant_regular(red.reduced);
            row.reduced = red.reduced;

            SemiLinearSet lifted =
                lift_with_leading_free(row.ant_reduced, restriction.dim_r, {});
            SemiLinearSet in_er = lifted.transform(red.r);
            combined = first_row ? in_er : combined.intersect(in_er);
            first_row = false;
            report.rows.push_back(std::move(row));
        }
    }

    if (dead_row)
        report.ant_unsliced = SemiLinearSet::empty_set(full_dim, analyzed.var_names);
    else
        report.ant_unsliced = combined.substitute(restriction.proj, analyzed.var_names);

    report.ant_set = note.was_affine ? report.ant_unsliced.slice_last_coordinate().pruned()
                                     : report.ant_unsliced;
    report.ant_set.set_variable_names(p.var_names);
    report.terminating_underapprox = opt.with_complement
                                         ? report.ant_set.complement()
                                         : SemiLinearSet::empty_set(p.dim(), p.var_names);

    report.witness = report.ant_set.rational_witness();
    report.verdict_real = report.witness ? Verdict::NonTerminating : Verdict::Terminating;
    report.verdict_rational = report.verdict_real;

    if (!opt.integer_verdict) {
        report.verdict_integer = Verdict::Unknown;
        report.integer_note = "integer decision skipped";
        return report;
    }
    auto int_result = report.ant_set.is_empty_integer(opt.integer_budget);
    if (int_result.status == SemiLinearSet::IntStatus::Empty) {
        // Sound regardless of the spectrum: the emitted locus contains every
        // asymptotically non-terminating point.
        report.verdict_integer = Verdict::Terminating;
    } else if (int_result.status == SemiLinearSet::IntStatus::NonEmpty) {
        bool stable = p.a.is_integer();
        for (const auto& ci : p.c)
            if (ci.get_den() != 1) stable = false;
        if (restriction.dim_nr > 0) {
            report.verdict_integer = Verdict::Unknown;
            report.integer_note = "non-real eigenvalues present; integer membership in the "
                                  "projected locus is inconclusive";
        } else if (!stable) {
            report.verdict_integer = Verdict::Unknown;
            report.integer_note = "update is not integer, so the integer lattice is not stable "
                                  "under the loop; the locus has an integer point but no "
                                  "non-termination witness follows";
        } else {
            report.verdict_integer = Verdict::NonTerminating;
            report.integer_witness = int_result.witness;
        }
    } else {
        report.verdict_integer = Verdict::Unknown;
        report.integer_note = "integer feasibility budget exhausted";
    }
    return report;
}

TerminationAnswer decide_termination(const LoopProgram& p, Domain domain, long budget) {
    AnalyzeOptions opt;
    opt.integer_budget = budget;
    opt.integer_verdict = domain == Domain::Integer;
    AnalysisReport r = analyze(p, opt);
    switch (domain) {
        case Domain::Real: return {r.verdict_real, r.witness, ""};
        case Domain::Rational: return {r.verdict_rational, r.witness, ""};
        default: return {r.verdict_integer, r.integer_witness, r.integer_note};
    }
}

std::string report_to_text(const AnalysisReport& r, bool with_trace) {
    std::ostringstream os;
    os << "Locus of ANT:" << r.ant_set.to_text() << "\n";
    if (r.projection_convention)
        os << "(projection convention: the locus constrains only the real-spectrum "
              "coordinates)\n";
    os << "Terminating under-approximation:" << r.terminating_underapprox.to_text() << "\n";
    os << verdicts_line(r) << "\n";
    if (r.witness) {
        os << "Witness (rational): (";
        for (size_t i = 0; i < r.witness->size(); ++i)
            os << (i ? ", " : "") << to_string((*r.witness)[i]);
        os << ")\n";
    }
    if (r.integer_witness) {
        os << "Witness (integer): (";
        for (size_t i = 0; i < r.integer_witness->size(); ++i)
            os << (i ? ", " : "") << to_string((*r.integer_witness)[i]);
        os << ")\n";
    }
    if (with_trace) {
        os << "Trace: dim=" << r.analyzed.dim() << " dim_Er=" << r.dim_er
           << " dim_Enr=" << r.dim_enr << (r.hom_note.was_affine ? " homogenized" : "") << "\n";
        for (const auto& row : r.rows) {
            os << "  row " << row.row << ": ";
            if (row.guard_row_zero) {
                os << "guard vanishes on the restricted space\n";
                continue;
            }
            os << "dim_K=" << row.trace.dim_k << " dim_E0=" << row.trace.dim_e0
               << " n_a=" << row.trace.n_a << " path=" << (row.fast_path ? "normal" : "regular")
               << " eigenvalues=[";
            for (size_t s = 0; s < row.reduced.sections.size(); ++s) {
                const auto& sec = row.reduced.sections[s];
                os << (s ? ", " : "") << to_string(sec.lambda) << ":" << sec.mult;
            }
            os << "]\n";
        }
    }
    return os.str();
}

std::string report_to_json(const AnalysisReport& r, bool with_trace) {
    nlohmann::ordered_json j;
    j["variables"] = r.program.var_names;
    j["ant_locus"] = nlohmann::ordered_json::parse(r.ant_set.to_json());
    j["ant_locus_text"] = r.ant_set.to_text();
    j["terminating_underapprox"] = nlohmann::ordered_json::parse(r.terminating_underapprox.to_json());
    j["projection_convention"] = r.projection_convention;
    j["verdicts"]["real"] = verdict_name(r.verdict_real);
    j["verdicts"]["rational"] = verdict_name(r.verdict_rational);
    j["verdicts"]["integer"] = verdict_name(r.verdict_integer);
    if (!r.integer_note.empty()) j["verdicts"]["integer_note"] = r.integer_note;
    auto vec = [](const QVector& v) {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& x : v) arr.push_back(to_string(x));
        return arr;
    };
    if (r.witness) j["witness_rational"] = vec(*r.witness);
    if (r.integer_witness) j["witness_integer"] = vec(*r.integer_witness);
    if (with_trace) {
        nlohmann::ordered_json t;
        t["homogenized"] = r.hom_note.was_affine;
        t["dim"] = r.analyzed.dim();
        t["dim_Er"] = r.dim_er;
        t["dim_Enr"] = r.dim_enr;
        t["rows"] = nlohmann::ordered_json::array();
        for (const auto& row : r.rows) {
            nlohmann::ordered_json jr;
            jr["row"] = row.row;
            jr["guard_row_zero"] = row.guard_row_zero;
            if (!row.guard_row_zero) {
                jr["dim_K"] = row.trace.dim_k;
                jr["dim_E0"] = row.trace.dim_e0;
                jr["n_a"] = row.trace.n_a;
                jr["path"] = row.fast_path ? "normal" : "regular";
                nlohmann::ordered_json evs = nlohmann::ordered_json::array();
                for (const auto& sec : row.reduced.sections) {
                    nlohmann::ordered_json je;
                    je["lambda"] = to_string(sec.lambda);
                    je["mult"] = sec.mult;
                    evs.push_back(je);
                }
                jr["eigenvalues"] = evs;
            }
            t["rows"].push_back(jr);
        }
        j["trace"] = t;
    }
    return j.dump(2);
}

}  // namespace antloop
