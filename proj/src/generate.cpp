#include "antloop/generate.hpp"

#include <filesystem>
#include <fstream>

#include <json.hpp>

namespace antloop {

uint64_t Rng::next() {
    // xorshift64*; fixed algorithm keeps corpora byte-identical across
    // platforms (std::uniform_int_distribution is not portable).
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 0x2545F4914F6CDD1Dull;
}

long Rng::range(long lo, long hi) {
    uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
    uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    uint64_t v;
    do {
        v = next();
    } while (v >= limit);
    return lo + static_cast<long>(v % span);
}

Rational Rng::rational(long max_abs_num, long max_den) {
    Rational q(range(-max_abs_num, max_abs_num), range(1, max_den));
    q.canonicalize();
    return q;
}

namespace {

QMatrix random_unimodular(Rng& rng, int n) {
    QMatrix p = QMatrix::identity(n);
    int ops = 3 * n + 2;
    for (int t = 0; t < ops; ++t) {
        int i = static_cast<int>(rng.range(0, n - 1));
        int j = static_cast<int>(rng.range(0, n - 1));
        if (i == j) continue;
        long c = rng.range(-2, 2);
        if (c == 0) c = 1;
        for (int col = 0; col < n; ++col) p.at(i, col) += Rational(c) * p.at(j, col);
    }
    return p;
}

QMatrix random_spectrum_matrix(Rng& rng, int n, bool jordan) {
    QMatrix d = QMatrix::zero(n, n);
    int pos = 0;
    while (pos < n) {
        int block = 1;
        if (jordan && n - pos >= 2 && rng.range(0, 2) == 0)
            block = static_cast<int>(rng.range(2, std::min(3L, static_cast<long>(n - pos))));
        Rational lambda;
        do {
            long num = rng.range(-4, 7);
            long den = rng.range(0, 3) == 0 ? 2 : 1;
            lambda = Rational(num, den);
            lambda.canonicalize();
        } while (block > 1 && lambda == 0);  // nilpotent blocks stay size 1 here
        for (int i = 0; i < block; ++i) {
            d.at(pos + i, pos + i) = lambda;
            if (i + 1 < block) d.at(pos + i, pos + i + 1) = 1;
        }
        pos += block;
    }
    QMatrix p = random_unimodular(rng, n);
    return p * d * inverse(p);
}

}  // namespace

std::vector<LoopProgram> generate_programs(const GenerateParams& params) {
    std::vector<LoopProgram> out;
    for (int idx = 0; idx < params.count; ++idx) {
        Rng rng(params.seed * 0x100000001B3ull + static_cast<uint64_t>(idx) + 1);
        int n = static_cast<int>(rng.range(params.n_min, params.n_max));
        int m = params.cls == LoopClass::Homogeneous
                    ? 1
                    : static_cast<int>(rng.range(params.m_min, params.m_max));
        LoopProgram p;
        for (int i = 0; i < n; ++i) p.var_names.push_back("x" + std::to_string(i + 1));
        p.a = random_spectrum_matrix(rng, n, params.jordan_blocks);
        p.f = QMatrix::zero(m, n);
        for (int i = 0; i < m; ++i) {
            bool nonzero = false;
            while (!nonzero) {
                for (int j = 0; j < n; ++j) {
                    p.f.at(i, j) = Rational(rng.range(-3, 3));
                    if (p.f.at(i, j) != 0) nonzero = true;
                }
            }
        }
        p.c = QVector(n, Rational(0));
        p.b = QVector(m, Rational(0));
        if (params.cls == LoopClass::Affine) {
            for (int i = 0; i < n; ++i) p.c[i] = Rational(rng.range(-3, 3));
            for (int i = 0; i < m; ++i) p.b[i] = Rational(rng.range(-3, 3));
        }
        p.classify();
        out.push_back(std::move(p));
    }
    return out;
}

void write_corpus(const std::vector<LoopProgram>& programs, const GenerateParams& params,
                  const std::string& directory) {
    namespace fs = std::filesystem;
    fs::create_directories(directory);
    nlohmann::ordered_json manifest;
    manifest["seed"] = params.seed;
    manifest["count"] = params.count;
    manifest["n_min"] = params.n_min;
    manifest["n_max"] = params.n_max;
    manifest["m_min"] = params.m_min;
    manifest["m_max"] = params.m_max;
    manifest["class"] = params.cls == LoopClass::Homogeneous
                            ? "H"
                            : params.cls == LoopClass::GeneralizedHomogeneous ? "G" : "A";
    manifest["jordan_blocks"] = params.jordan_blocks;
    manifest["programs"] = nlohmann::ordered_json::array();
    for (size_t i = 0; i < programs.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof(name), "prog_%04zu.json", i);
        std::ofstream f(fs::path(directory) / name);
        f << program_to_json(programs[i]) << "\n";
        manifest["programs"].push_back(name);
    }
    std::ofstream mf(fs::path(directory) / "manifest.json");
    mf << manifest.dump(2) << "\n";
}

}  // namespace antloop
