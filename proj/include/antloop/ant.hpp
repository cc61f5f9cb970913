#pragma once

#include "antloop/loop_program.hpp"
#include "antloop/semilinear.hpp"
#include "antloop/spectra.hpp"

#include <optional>
#include <string>

namespace antloop {

// True iff no real eigenvalue occurs together with its additive inverse
// (a zero eigenvalue counts as its own inverse). Enables the short
// dominant-coordinate formula.
bool is_normal(const SpectralData& spec);

// Dominant-coordinate cells S_{lambda,k} for a normal spectrum: one cell
// per positive eigenvalue lambda and index k in 1..d_lambda, consisting of
//   (1) a_{mu,h} x_{mu,h} = 0 for every |mu| > lambda,
//   (2) a_{lambda,h} x_{lambda,h} = 0 for h > k,
//   (3) a_{lambda,k} x_{lambda,k} > 0.
// Cells whose positivity atom has a zero coefficient are unsatisfiable and
// dropped. Caller contract: normal spectrum, guard coefficients attached.
SemiLinearSet ant_normal(const SpectralData& spec);

// General regular-pair cells S, U and V over the phi linear forms; valid
// for normal and non-normal spectra. Requires a regular pair: one block
// per eigenvalue and no zero eigenvalue.
SemiLinearSet ant_regular(const SpectralData& spec);

// Per-point decision in analysis coordinates, independent of the set
// construction: evaluates the per-eigenvalue polynomials and decides
// eventual positivity of the guard on even and odd iterates separately.
bool point_ant(const SpectralData& spec, const QVector& x);

std::vector<std::string> jordan_variable_names(const SpectralData& spec);

enum class Verdict { Terminating, NonTerminating, Unknown };
std::string verdict_name(Verdict v);

struct AnalyzeOptions {
    long integer_budget = 20000;
    bool integer_verdict = true;   // set false to skip the integer decision
    bool with_complement = true;   // materialize the terminating under-approximation
};

struct RowAnalysis {
    int row = 0;
    bool guard_row_zero = false;    // guard vanishes on the restricted space
    bool normal = false;
    bool fast_path = false;         // dominant-coordinate formula used
    ReductionTrace trace;
    SpectralData reduced;           // regular pair of this row
    SemiLinearSet ant_reduced;      // over the regular pair's coordinates
};

struct AnalysisReport {
    LoopProgram program;            // as given
    LoopProgram analyzed;           // homogenized when affine
    HomogenizeNote hom_note;
    int dim_er = 0, dim_enr = 0;
    bool projection_convention = false;  // E^nr != 0: locus constrains only
                                         // the real-spectrum coordinates
    std::vector<RowAnalysis> rows;

    SemiLinearSet ant_unsliced;     // over the (possibly homogenized) space
    SemiLinearSet ant_set;          // over the source variables
    SemiLinearSet terminating_underapprox;

    Verdict verdict_real = Verdict::Terminating;
    Verdict verdict_rational = Verdict::Terminating;
    Verdict verdict_integer = Verdict::Unknown;
    std::string integer_note;
    std::optional<QVector> witness;          // rational member of the locus
    std::optional<QVector> integer_witness;
};

// Full pipeline: homogenize, restrict to the real spectrum, reduce each
// condition row to a regular pair, instantiate the ANT cells, pull back,
// intersect across rows, slice, complement, and decide emptiness.
AnalysisReport analyze(const LoopProgram& p, const AnalyzeOptions& opt = {});

struct TerminationAnswer {
    Verdict verdict;
    std::optional<QVector> witness;
    std::string note;
};
enum class Domain { Real, Rational, Integer };
TerminationAnswer decide_termination(const LoopProgram& p, Domain domain, long budget = 20000);

std::string report_to_text(const AnalysisReport& r, bool with_trace = false);
std::string report_to_json(const AnalysisReport& r, bool with_trace = false);

}  // namespace antloop
