#include "antloop/spectra.hpp"

#include <algorithm>
#include <cassert>

namespace antloop {

namespace {

// Orders sections: zero eigenvalue first, then |lambda| ascending with the
// positive one of a +-pair first.
bool section_before(const Rational& a, const Rational& b) {
    if (a == b) return false;
    if (a == 0) return true;
    if (b == 0) return false;
    Rational aa = abs(a), ab = abs(b);
    if (aa != ab) return aa < ab;
    return a > b;  // positive before negative
}

struct RankTester {
    QMatrix rows{0, 0};
    int current_rank = 0;
    explicit RankTester(int dim) : rows(QMatrix::zero(0, dim)), dim_(dim) {}
    bool try_add(const QVector& v) {
        std::vector<QVector> all;
        for (int i = 0; i < rows.rows(); ++i) all.push_back(rows.row(i));
        all.push_back(v);
        QMatrix m = QMatrix::from_rows(all);
        if (rank(m) == static_cast<int>(all.size())) {
            rows = m;
            ++current_rank;
            return true;
        }
        return false;
    }
    int dim_;
};

// Jordan chains of A at eigenvalue lambda (lambda = 0 allowed): returns
// chains as vectors ordered eigenvector-first, chain sizes ascending.
std::vector<std::vector<QVector>> jordan_chains(const QMatrix& a, const Rational& lambda) {
    int n = a.rows();
    QMatrix nmat = a;
    for (int i = 0; i < n; ++i) nmat.at(i, i) -= lambda;

    std::vector<QMatrix> powers{QMatrix::identity(n)};
    std::vector<std::vector<QVector>> kernels{{}};
    int prev_dim = 0;
    while (true) {
        powers.push_back(powers.back() * nmat);
        kernels.push_back(kernel_basis(powers.back()));
        int d = static_cast<int>(kernels.back().size());
        if (d == prev_dim) {
            powers.pop_back();
            kernels.pop_back();
            break;
        }
        prev_dim = d;
    }
    int depth = static_cast<int>(kernels.size()) - 1;
    if (depth == 0) return {};

    // Select chain tops level by level, highest first. At level k the new
    // tops extend Ker(N^{k-1}) + N * (tops above) to span Ker(N^k);
    // candidates are scanned in canonical kernel-basis order.
    std::vector<std::pair<int, QVector>> tops;  // (level, top vector)
    for (int k = depth; k >= 1; --k) {
        RankTester tester(n);
        for (const auto& v : kernels[k - 1]) tester.try_add(v);
        for (const auto& [lvl, top] : tops) {
            QVector down = top;
            for (int step = 0; step < lvl - k; ++step) down = nmat * down;
            if (!tester.try_add(down))
                throw std::runtime_error("jordan_chains: dependent chain continuation");
        }
        int target = static_cast<int>(kernels[k].size());
        for (const auto& cand : kernels[k]) {
            if (tester.current_rank >= target) break;
            if (tester.try_add(cand)) tops.push_back({k, cand});
        }
        if (tester.current_rank != target)
            throw std::runtime_error("jordan_chains: failed to span a kernel level");
    }

    std::vector<std::vector<QVector>> chains;
    for (const auto& [lvl, top] : tops) {
        std::vector<QVector> chain(lvl);
        QVector v = top;
        for (int i = lvl; i >= 1; --i) {
            chain[i - 1] = v;
            if (i > 1) v = nmat * v;
        }
        chains.push_back(std::move(chain));
    }
    std::stable_sort(chains.begin(), chains.end(),
                     [](const auto& x, const auto& y) { return x.size() < y.size(); });
    return chains;
}

}  // namespace

const EigenSection* SpectralData::section_of(const Rational& lambda) const {
    for (const auto& s : sections)
        if (s.lambda == lambda) return &s;
    return nullptr;
}

bool SpectralData::single_block_per_eigenvalue() const {
    for (const auto& s : sections)
        if (s.blocks.size() != 1) return false;
    return true;
}

QMatrix SpectralData::block_matrix() const {
    QMatrix t = QMatrix::zero(dim, dim);
    for (const auto& s : sections) {
        int pos = s.offset;
        for (int size : s.blocks) {
            for (int i = 0; i < size; ++i) {
                t.at(pos + i, pos + i) = s.lambda;
                if (i + 1 < size) t.at(pos + i, pos + i + 1) = s.lambda == 0 ? Rational(1) : s.lambda;
            }
            pos += size;
        }
    }
    return t;
}

JordanSection modified_jordan_basis(const QMatrix& a, const Rational& lambda) {
    if (lambda == 0)
        throw std::invalid_argument("modified_jordan_basis: zero eigenvalue is handled by the degenerate reduction");
    auto chains = jordan_chains(a, lambda);
    JordanSection out;
    for (const auto& chain : chains) {
        Rational scale(1);
        for (size_t i = 0; i < chain.size(); ++i) {
            out.columns.push_back(scaled(chain[i], scale));
            scale *= lambda;
        }
        out.block_sizes.push_back(static_cast<int>(chain.size()));
    }
    return out;
}

SpectralData eigen_decompose(const QMatrix& a) {
    if (a.rows() != a.cols()) throw DimensionMismatch("eigen_decompose of non-square matrix");
    int n = a.rows();
    SpectralData spec;
    spec.dim = n;
    if (n == 0) {
        spec.basis = QMatrix::zero(0, 0);
        spec.basis_inv = QMatrix::zero(0, 0);
        return spec;
    }
    QPoly chi = char_poly(a);
    auto roots = rational_roots(chi);
    int total = 0;
    for (const auto& [root, mult] : roots) total += mult;
    if (total != n) {
        if (has_irrational_real_root(chi)) throw IrrationalSpectrum(chi.to_string());
        throw std::runtime_error("eigen_decompose: spectrum is not fully rational/real");
    }
    std::sort(roots.begin(), roots.end(),
              [](const auto& x, const auto& y) { return section_before(x.first, y.first); });

    std::vector<QVector> columns;
    for (const auto& [lambda, mult] : roots) {
        EigenSection section;
        section.lambda = lambda;
        section.mult = mult;
        section.offset = static_cast<int>(columns.size());
        if (lambda == 0) {
            for (const auto& chain : jordan_chains(a, lambda)) {
                section.blocks.push_back(static_cast<int>(chain.size()));
                for (const auto& v : chain) columns.push_back(v);
            }
        } else {
            JordanSection js = modified_jordan_basis(a, lambda);
            section.blocks = js.block_sizes;
            for (auto& v : js.columns) columns.push_back(std::move(v));
        }
        spec.sections.push_back(std::move(section));
    }
    spec.basis = QMatrix::from_columns(columns);
    spec.basis_inv = inverse(spec.basis);
    return spec;
}

std::vector<Rational> f_coefficients(const QVector& f_row, const QMatrix& p) {
    return f_row * p;
}

std::vector<QVector> guard_kernel(const QMatrix& a, const QVector& f_row) {
    int n = a.rows();
    std::vector<QVector> rows;
    QVector cur = f_row;
    for (int k = 0; k < n; ++k) {
        rows.push_back(cur);
        cur = cur * a;
    }
    return kernel_basis(QMatrix::from_rows(rows));
}

RealRestriction real_spectrum_restriction(const QMatrix& a, const QMatrix& f) {
    if (a.rows() != a.cols()) throw DimensionMismatch("real_spectrum_restriction");
    if (f.cols() != a.cols()) throw DimensionMismatch("guard row width");
    int n = a.rows();
    RealRestriction out;
    out.chi = char_poly(a);

    auto roots = rational_roots(out.chi);
    QPoly cofactor = out.chi;
    for (const auto& [root, mult] : roots) {
        QPoly lin(QVector{-root, Rational(1)});
        for (int i = 0; i < mult; ++i) cofactor = divmod(cofactor, lin).first;
    }
    if (has_irrational_real_root(out.chi)) {
        QPoly sf = divmod(cofactor, poly_gcd(cofactor, cofactor.derivative())).first;
        if (sign(sf.leading()) < 0) sf = Rational(-1) * sf;
        throw IrrationalSpectrum(sf.to_string());
    }

    QMatrix g = QMatrix::identity(n);
    for (const auto& [root, mult] : roots) {
        QMatrix lin = a;
        for (int i = 0; i < n; ++i) lin.at(i, i) -= root;
        for (int i = 0; i < mult; ++i) g = g * lin;
    }
    std::vector<QVector> basis = kernel_basis(g);
    out.dim_r = static_cast<int>(basis.size());
    out.dim_nr = n - out.dim_r;

    if (out.dim_r == 0) {
        out.embed = QMatrix::zero(n, 0);
        out.proj = QMatrix::zero(0, n);
        out.a_r = QMatrix::zero(0, 0);
        out.f_r = QMatrix::zero(f.rows(), 0);
        return out;
    }

    out.embed = QMatrix::from_columns(basis);
    out.a_r = solve_exact(out.embed, a * out.embed);
    out.f_r = f * out.embed;

    if (out.dim_nr == 0) {
        out.proj = inverse(out.embed);
    } else {
        QMatrix nr_part = eval_at_matrix(cofactor, a);
        std::vector<QVector> nr_basis = kernel_basis(nr_part);
        assert(static_cast<int>(nr_basis.size()) == out.dim_nr);
        std::vector<QVector> combined = basis;
        combined.insert(combined.end(), nr_basis.begin(), nr_basis.end());
        QMatrix c = QMatrix::from_columns(combined);
        out.proj = inverse(c).block(0, 0, out.dim_r, n);
    }
    return out;
}

Reduction degenerate_reduction(const QMatrix& a, const QVector& f_row) {
    int n = a.rows();
    Reduction out;

    std::vector<QVector> k_basis = guard_kernel(a, f_row);
    int dim_k = static_cast<int>(k_basis.size());

    // Complete to a basis with canonical vectors, lowest index first.
    RankTester tester(n);
    for (const auto& v : k_basis) tester.try_add(v);
    std::vector<QVector> columns = k_basis;
    for (int j = 0; j < n && static_cast<int>(columns.size()) < n; ++j) {
        QVector e(n, Rational(0));
        e[j] = 1;
        if (tester.try_add(e)) columns.push_back(std::move(e));
    }
    QMatrix p = QMatrix::from_columns(columns);
    QMatrix p_inv = inverse(p);
    QMatrix conj = p_inv * a * p;
    int n1 = n - dim_k;
    if (!conj.block(dim_k, 0, n1, dim_k).is_zero())
        throw std::runtime_error("degenerate_reduction: the guard kernel is not update-stable");
    QMatrix a1 = conj.block(dim_k, dim_k, n1, n1);

    QVector f_conj = f_row * p;
    for (int i = 0; i < dim_k; ++i)
        if (f_conj[i] != 0)
            throw std::runtime_error("degenerate_reduction: guard does not vanish on its kernel");
    QVector f1(f_conj.begin() + dim_k, f_conj.end());

    // Sections of A1, zero eigenvalue first.
    QPoly chi1 = char_poly(a1);
    std::vector<std::pair<Rational, int>> roots;
    if (n1 > 0) {
        roots = rational_roots(chi1);
        int total = 0;
        for (const auto& [root, mult] : roots) total += mult;
        if (total != n1) throw std::runtime_error("degenerate_reduction: non-rational spectrum survived the restriction");
        std::sort(roots.begin(), roots.end(),
                  [](const auto& x, const auto& y) { return section_before(x.first, y.first); });
    }

    std::vector<QVector> p1_columns;
    int dim_e0 = 0;
    SpectralData reduced;
    int a_offset = 0;
    for (const auto& [lambda, mult] : roots) {
        if (lambda == 0) {
            dim_e0 = mult;
            for (auto& chain : jordan_chains(a1, lambda)) {
                // Scale so the guard sees 1 on the first chain vector it
                // can see at all (K = 0 in the quotient guarantees one).
                Rational seen(0);
                for (const auto& v : chain) {
                    Rational mu = dot(f1, v);
                    if (mu != 0) {
                        seen = mu;
                        break;
                    }
                }
                if (seen == 0)
                    throw std::runtime_error(
                        "degenerate_reduction: zero-eigenvalue chain invisible to the guard");
                for (auto& v : chain) p1_columns.push_back(scaled(v, 1 / seen));
            }
            continue;
        }
        auto chains = jordan_chains(a1, lambda);
        if (chains.size() != 1)
            throw std::runtime_error(
                "degenerate_reduction: eigenvalue " + to_string(lambda) +
                " kept multiple Jordan blocks after the guard-kernel quotient");
        // Modified scaling: block becomes lambda * (unit upper bidiagonal).
        std::vector<QVector> chain = chains[0];
        Rational scale(1);
        for (auto& v : chain) {
            v = scaled(v, scale);
            scale *= lambda;
        }
        // Commutant renormalization: replace the chain by u_j = sum_m c_m v_{j-m}
        // so that every guard coefficient becomes exactly 1.
        int d = static_cast<int>(chain.size());
        QVector acoef(d);
        for (int i = 0; i < d; ++i) acoef[i] = dot(f1, chain[i]);
        if (acoef[0] == 0)
            throw std::runtime_error("degenerate_reduction: guard vanishes on an eigenvector (K should be zero)");
        QVector c(d);
        c[0] = 1 / acoef[0];
        for (int j = 2; j <= d; ++j) {
            Rational acc(1);
            for (int m = 0; m <= j - 2; ++m) acc -= c[m] * acoef[j - 1 - m];
            c[j - 1] = acc / acoef[0];
        }
        std::vector<QVector> normalized(d, QVector(n1, Rational(0)));
        for (int j = 0; j < d; ++j)
            for (int m = 0; m <= j; ++m)
                for (int i = 0; i < n1; ++i) normalized[j][i] += c[m] * chain[j - m][i];
        for (auto& v : normalized) p1_columns.push_back(std::move(v));

        EigenSection section;
        section.lambda = lambda;
        section.mult = mult;
        section.offset = a_offset;
        section.blocks = {d};
        reduced.sections.push_back(std::move(section));
        a_offset += d;
    }

    int n_a = a_offset;
    QMatrix p1 = n1 > 0 ? QMatrix::from_columns(p1_columns) : QMatrix::zero(0, 0);

    QMatrix q = QMatrix::identity(n);
    if (n1 > 0) {
        for (int i = 0; i < n1; ++i)
            for (int j = 0; j < n1; ++j) q.at(dim_k + i, dim_k + j) = p1.at(i, j);
    }
    out.r = p * q;
    out.r_inv = inverse(out.r);
    out.w = f_row * out.r;

    QMatrix b = out.r_inv * a * out.r;
    out.t_a = b.block(n - n_a, n - n_a, n_a, n_a);
    out.w_a.assign(out.w.end() - n_a, out.w.end());
    for (const auto& x : out.w_a)
        if (x != 1) throw std::runtime_error("degenerate_reduction: guard normalization failed");

    reduced.dim = n_a;
    reduced.basis = QMatrix::identity(n_a);
    reduced.basis_inv = QMatrix::identity(n_a);
    reduced.f_coeffs = out.w_a;
    if (!(out.t_a == reduced.block_matrix()))
        throw std::runtime_error("degenerate_reduction: conjugation did not reach the block form");
    out.reduced = std::move(reduced);

    out.trace.r = out.r;
    out.trace.dim_k = dim_k;
    out.trace.dim_e0 = dim_e0;
    out.trace.n_a = n_a;
    return out;
}

QPoly section_poly(const SpectralData& spec, size_t section_index, int j) {
    const EigenSection& s = spec.sections[section_index];
    QPoly p;
    for (int i = 1; i <= j; ++i) {
        const Rational& a = spec.f_coeffs[s.offset + i - 1];
        if (a != 0) p = p + a * binomial_poly(j - i);
    }
    return p;
}

PhiForms phi_forms(const SpectralData& spec) {
    PhiForms out;
    out.phi.resize(spec.sections.size());
    for (size_t si = 0; si < spec.sections.size(); ++si) {
        const EigenSection& s = spec.sections[si];
        out.phi[si].assign(s.mult, QVector(spec.dim, Rational(0)));
        for (int l = 1; l <= s.mult; ++l) {
            QPoly p = section_poly(spec, si, l);
            for (int j = 0; j < s.mult; ++j) out.phi[si][j][s.offset + l - 1] = p.coeff(j);
        }
    }
    return out;
}

}  // namespace antloop
